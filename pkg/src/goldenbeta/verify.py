"""Named self-checks over the whole library, at two depths.

``fast`` runs the cheap identities and a thousand randomized
value-preservation trials; ``full`` additionally runs the desk-scale
classification sweeps and cross-route comparisons.  Every check is a pure
function of the seed, so reports are byte-reproducible.
"""

from __future__ import annotations

import random
import zlib
from fractions import Fraction

from .algebra import (
    EVEN,
    IN_F,
    IN_S,
    ODD,
    FieldElem,
    Params,
    fe_membership,
    format_field,
    make_params,
)
from .fseq import decompose_F, f_seq, fn_identity_check
from .words import DigitWord, EvPeriodicWord, Word, format_word, word_value
from . import expand, rewrite


def _random_finite(rng: random.Random, params: Params, max_len=8) -> DigitWord:
    n = rng.randint(0, max_len)
    return DigitWord(0, tuple(rng.randint(0, params.m) for _ in range(n)))


def _random_word(rng: random.Random, params: Params) -> Word:
    if rng.random() < 0.5:
        return _random_finite(rng, params)
    pre = tuple(rng.randint(0, params.m) for _ in range(rng.randint(0, 3)))
    per = tuple(rng.randint(0, params.m) for _ in range(rng.randint(1, 3)))
    return EvPeriodicWord(0, pre, per)


def _with_first(w: Word, first: int, int_part: int) -> Word:
    if isinstance(w, DigitWord):
        return DigitWord(int_part, (first, *w.digits))
    return EvPeriodicWord(int_part, (first, *w.preperiod), w.period)


def _values_equal(a: FieldElem, b: FieldElem) -> bool:
    return (a - b).is_zero()


# -- individual checks -----------------------------------------------------
# each returns (passed, detail)

def check_fn_identity(rng, n_max=30):
    for k in (1, 2, 3):
        params = make_params(k, ODD)
        for n in range(1, n_max + 1):
            if not fn_identity_check(params, n):
                return False, f"identity fails at k={k}, n={n}"
    return True, f"k<=3, n<={n_max}"


def check_decompose(rng):
    for k in (1, 2, 3):
        seq = f_seq(k, 8)
        for n in range(seq[7]):
            dec = decompose_F(k, n)
            if dec.reconstruct(k) != n:
                return False, f"reconstruction fails at k={k}, n={n}"
            if any(not 0 <= c <= k + 1 for c in dec.coeffs):
                return False, f"coefficient out of range at k={k}, n={n}"
            # fewer than l terms whenever n < F_l
            for l in range(1, 9):
                if n < seq[l - 1] and dec.length >= l:
                    return False, f"length bound fails at k={k}, n={n}, l={l}"
    return True, "all n < F_8, k<=3"


def check_growth_ratio(rng):
    """F_{n+1} <= (k+2)F_n for n >= 2, equality exactly at n = 2."""
    for k in (1, 2, 3, 5):
        seq = f_seq(k, 12)
        if seq[2] != (k + 2) * seq[1]:
            return False, f"F_3 != (k+2)F_2 at k={k}"
        for n in range(3, 12):
            if not seq[n] < (k + 2) * seq[n - 1]:
                return False, f"ratio bound fails at k={k}, n={n}"
    return True, "equality at n=2, strict after"


def check_one_family(rng, depth=8):
    for k in (1, 2, 3):
        params = make_params(k, ODD)
        tree = expand.enumerate_prefixes(params.one, depth, params)
        family = {w.prefix(depth) for w in expand.expansions_of_one(depth, params)}
        if family != set(tree.prefixes_at()):
            return False, f"family/tree mismatch at k={k}, depth={depth}"
        for w in expand.expansions_of_one(depth, params):
            if not _values_equal(word_value(w, params), params.one):
                return False, f"family member not equal to 1 at k={k}"
    return True, f"k<=3, depth={depth}"


def check_value_preservation(rng, samples=1000):
    params_pool = [make_params(k, ODD) for k in (1, 2, 3)]
    for trial in range(samples):
        params = params_pool[trial % len(params_pool)]
        k = params.k
        which = trial % 8
        try:
            if which == 0:
                w = _random_finite(rng, params)
                out = rewrite.cr_step(w, params)
            elif which == 1:
                w = _random_finite(rng, params)
                out = rewrite.b_separate(w, params)
            elif which == 2:
                w = _with_first(_random_word(rng, params),
                                rng.randint(k + 2, 2 * k + 1), 0)
                out = rewrite.carry_T_plus(w, params)
                if not (out.is_valid(params) and out.int_part == 1):
                    return False, f"carry output invalid on {format_word(w)}"
            elif which == 3:
                w = _with_first(_random_word(rng, params), rng.randint(0, k - 1), 1)
                out = rewrite.borrow_T_minus(w, params)
                if not (out.is_valid(params) and out.int_part == 0):
                    return False, f"borrow output invalid on {format_word(w)}"
            elif which == 4:
                w = _random_finite(rng, params)
                out = rewrite.reduce_digits(w, params)
                if any(d > k + 1 for d in out.digits):
                    return False, f"reduce left a digit above k+1 on {format_word(w)}"
            elif which == 5:
                a, b = _random_finite(rng, params), _random_finite(rng, params)
                out = rewrite.add_words(a, b, params)
                want = word_value(a, params) + word_value(b, params)
                got = word_value(out, params)
                if not (_values_equal(want, got) and out.is_valid(params)):
                    return False, f"add mismatch on {format_word(a)} + {format_word(b)}"
                continue
            elif which == 6:
                w = _random_finite(rng, params)
                out = rewrite.div_word_by_k1(w, params)
                want = word_value(w, params) / (k + 1)
                if not _values_equal(want, word_value(out, params)):
                    return False, f"div mismatch on {format_word(w)}"
                continue
            else:
                limit = params.interval_bound.div_beta()
                while True:
                    w = _random_finite(rng, params, max_len=5)
                    if word_value(w, params) < limit:
                        break
                out = rewrite.mul_beta_word(w, params)
                want = word_value(w, params).mul_beta()
                if not (_values_equal(want, word_value(out, params))
                        and out.is_valid(params)):
                    return False, f"mul_beta mismatch on {format_word(w)}"
                continue
        except Exception as exc:  # noqa: BLE001 - report, don't crash the suite
            return False, f"exception in trial {trial}: {exc!r}"
        if not _values_equal(word_value(w, params), word_value(out, params)):
            return False, f"value changed: {format_word(w)} -> {format_word(out)}"
    return True, f"{samples} randomized trials"


def _canonical_members_k1(params: Params, bound_pq=20, n_max=4):
    """Canonical (p*beta+q)/2^n strictly inside (0, beta-1), k=1."""
    seen = set()
    out = []
    top = params.interval_bound
    for n in range(n_max + 1):
        r = 2 ** n
        for p in range(-bound_pq, bound_pq + 1):
            for q in range(-bound_pq, bound_pq + 1):
                x = FieldElem(params, p, q, r)
                if x in seen:
                    continue
                seen.add(x)
                if x.sign() > 0 and x < top:
                    out.append(x)
    return out


def check_member_classification(rng, bound_pq=20, n_max=4, max_len=40):
    params = make_params(1, ODD)
    members = _canonical_members_k1(params, bound_pq, n_max)
    for x in members:
        c = expand.classify(x, params)
        if c.verdict != expand.COUNTABLY_INFINITE:
            return False, f"{format_field(x)} misclassified as {c.verdict}"
        w = c.certificate
        if len(w.digits) > max_len:
            return False, f"certificate too long for {format_field(x)}"
        if not _values_equal(word_value(w, params), x):
            return False, f"certificate does not round-trip for {format_field(x)}"
    return True, f"{len(members)} members, certificates <= {max_len} digits"


def _sample_nonmembers_k1(rng, params, count=200):
    out = []
    while len(out) < count:
        den = rng.choice((3, 5, 7)) * rng.choice((1, 1, 2, 4))
        p = rng.randint(-6, 6)
        q = rng.randint(-6, 12)
        x = FieldElem(params, p, q, den)
        if x.sign() <= 0 or x >= params.interval_bound:
            continue
        if fe_membership(x) in (IN_S, IN_F):
            continue
        out.append(x)
    return out


def check_nonmember_classification(rng, count=200, depth=24, budget=256):
    params = make_params(1, ODD)
    for x in _sample_nonmembers_k1(rng, params, count):
        c = expand.classify(x, params)
        if c.verdict != expand.CONTINUUM:
            return False, f"{format_field(x)} misclassified as {c.verdict}"
        ws = expand.branch_witness(x, depth, budget, params)
        if len(set(ws)) < budget:
            return False, f"only {len(set(ws))} witnesses for {format_field(x)}"
    return True, f"{count} non-members, {budget} witnesses each"


def check_growth_dichotomy(rng, depth=20):
    params = make_params(1, ODD)
    linear = expand.enumerate_prefixes(params.one, depth, params)
    for d in range(1, depth + 1):
        if linear.count_at(d) > 2 * d + 2:
            return False, f"count at depth {d} exceeds 2d+2 for x=1"
    third = expand.enumerate_prefixes(params.from_rational(1, 3), depth, params)
    if third.count_at(depth) <= 2 ** 10:
        return False, f"count at depth {depth} for 1/3 is {third.count_at(depth)}"
    return True, (f"x=1 linear (<=2d+2), x=1/3 reaches "
                  f"{third.count_at(depth)} at depth {depth}")


def check_cross_route(rng, count=100):
    params = make_params(1, ODD)
    members = _canonical_members_k1(params)
    agreed = 0
    for x in members:
        if agreed >= count:
            break
        w = expand.construct_route(x, params)
        if w is None:
            continue
        v1 = word_value(w, params)
        v2 = word_value(expand.synth_finite(x, params), params)
        if not _values_equal(v1, v2):
            return False, f"route disagreement at {format_field(x)}"
        agreed += 1
    if agreed < count:
        return False, f"constructive route succeeded on only {agreed} inputs"
    return True, f"{agreed} member inputs agree across routes"


def check_even_parity(rng, n_max=6):
    for k in (1, 2):
        params = make_params(k, EVEN)
        base = k + 1
        for n in range(n_max + 1):
            den = base ** n
            for p in range(1, 2 * den):
                if Fraction(p, den).denominator != den:
                    continue
                x = params.from_rational(p, den)
                c = expand.classify(x, params)
                if c.verdict != expand.COUNTABLY_INFINITE:
                    return False, f"p/(k+1)^n misclassified: {p}/{den}, k={k}"
                if not _values_equal(word_value(c.certificate, params), x):
                    return False, f"certificate mismatch at {p}/{den}, k={k}"
    params = make_params(1, EVEN)
    for num in (1, 2, 4, 5):
        x = params.from_rational(num, 3)
        c = expand.classify(x, params)
        if c.verdict != expand.CONTINUUM:
            return False, f"{num}/3 misclassified as {c.verdict}"
        ws = expand.branch_witness(x, 24, 256, params)
        if len(set(ws)) < 256:
            return False, f"only {len(set(ws))} witnesses for {num}/3"
    return True, f"k in {{1,2}}, n<={n_max}, plus thirds"


_FAST = (
    ("fn-identity", check_fn_identity),
    ("f-decomposition", check_decompose),
    ("f-growth-ratio", check_growth_ratio),
    ("one-family-completeness", check_one_family),
    ("value-preservation", check_value_preservation),
)

_FULL_EXTRA = (
    ("one-family-depth-12", lambda rng: check_one_family(rng, depth=12)),
    ("value-preservation-10k", lambda rng: check_value_preservation(rng, samples=10_000)),
    ("member-classification", check_member_classification),
    ("nonmember-classification", check_nonmember_classification),
    ("growth-dichotomy", check_growth_dichotomy),
    ("cross-route-consistency", check_cross_route),
    ("even-parity-classification", check_even_parity),
)

LEVELS = ("fast", "full")


def verify_suite(level: str = "fast", seed: int = 0) -> dict:
    """Run all checks for ``level``; returns a machine-readable report."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    checks = _FAST if level == "fast" else _FAST + _FULL_EXTRA
    results = []
    for name, fn in checks:
        rng = random.Random(seed ^ zlib.crc32(name.encode()))
        passed, detail = fn(rng)
        results.append({"name": name, "passed": passed, "detail": detail})
    return {
        "level": level,
        "seed": seed,
        "passed": all(r["passed"] for r in results),
        "checks": results,
    }
