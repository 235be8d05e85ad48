"""Expansion enumeration, synthesis, and the countable/continuum classifier.

A depth-d prefix of an expansion of x is valid exactly when its remainder
beta^d*(x - value(prefix)) stays inside [0, m/(beta-1)]; everything here is
built on that exact branching test.  Points of the distinguished set
(denominator a power of k+1) get finite expansion certificates; all other
interior points get finite-depth branch witnesses generated from local
value-preserving rewrites.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .algebra import (
    IN_F,
    IN_S,
    ODD,
    DomainError,
    FieldElem,
    Params,
    fe_membership,
)
from .fseq import decompose_F, f_seq
from .words import DigitWord, EvPeriodicWord, word_value
from . import rewrite

log = logging.getLogger(__name__)

COUNTABLY_INFINITE = "CountablyInfinite"
CONTINUUM = "Continuum"
UNIQUE_ENDPOINT = "UniqueEndpoint"


@dataclass(frozen=True)
class Classification:
    verdict: str
    certificate: object  # word, (denominator, offending prime), or endpoint tag


@dataclass(frozen=True)
class PrefixTree:
    x: FieldElem
    depth: int
    # levels[d] lists (prefix, exact remainder) pairs, lexicographic
    levels: tuple[tuple[tuple[tuple[int, ...], FieldElem], ...], ...] = field(repr=False)

    def prefixes_at(self, depth: int | None = None) -> list[tuple[int, ...]]:
        d = self.depth if depth is None else depth
        return [pfx for pfx, _ in self.levels[d]]

    def count_at(self, depth: int) -> int:
        return len(self.levels[depth])


def enumerate_prefixes(x: FieldElem, depth: int, params: Params) -> PrefixTree:
    """All length-``depth`` prefixes of expansions of x, with exact
    remainders; prefixes in lexicographic order."""
    bound = params.interval_bound
    if x.sign() < 0 or x > bound:
        raise DomainError("x outside the expansion interval")
    levels = [(((), x),)]
    for _ in range(depth):
        nxt = []
        for pfx, r in levels[-1]:
            shifted = r.mul_beta()
            for e in range(params.m + 1):
                r2 = shifted - e
                if r2.sign() >= 0 and r2 <= bound:
                    nxt.append((pfx + (e,), r2))
        levels.append(tuple(nxt))
    return PrefixTree(x, depth, tuple(levels))


def expansions_of_one(depth: int, params: Params) -> list[EvPeriodicWord]:
    """The complete closed-form family of expansions of 1 (odd parity):
    0.((k+1)k)^j k (2k+1)*, 0.((k+1)k)^j (k+1)(k+1), and 0.((k+1)k)*,
    listed far enough out that depth-``depth`` truncations are exhaustive.
    """
    if params.parity != ODD:
        raise DomainError("the closed-form family exists for odd parity only")
    k = params.k
    block = (k + 1, k)
    words: list[EvPeriodicWord] = []
    for j in range(depth // 2 + 2):
        words.append(EvPeriodicWord(0, block * j + (k,), (2 * k + 1,)))
        words.append(EvPeriodicWord(0, block * j + (k + 1, k + 1), (0,)))
    words.append(EvPeriodicWord(0, (), block))
    return words


def synth_finite(x: FieldElem, params: Params, max_nodes: int = 2_000_000) -> DigitWord:
    """Finite word evaluating exactly to x, by breadth-first search over
    exact remainders (deduplicated: the remainder orbit of any point with
    bounded denominator is finite, so the search always halts)."""
    membership = fe_membership(x)
    if membership not in (IN_S, IN_F):
        raise DomainError("x has no finite expansion; synthesis refused")
    bound = params.interval_bound
    parent: dict[FieldElem, tuple[FieldElem | None, int]] = {x: (None, -1)}
    frontier = [x]
    nodes = 0
    while frontier:
        nxt = []
        for r in frontier:
            shifted = r.mul_beta()
            for e in range(params.m + 1):
                r2 = shifted - e
                if r2.sign() < 0 or r2 > bound or r2 in parent:
                    continue
                parent[r2] = (r, e)
                if r2.is_zero():
                    return _backtrack(x, r2, parent)
                nxt.append(r2)
                nodes += 1
                if nodes > max_nodes:
                    raise DomainError("finite-expansion search exceeded node budget")
        frontier = nxt
    raise DomainError("remainder orbit exhausted without reaching 0")


def _backtrack(x, end, parent) -> DigitWord:
    digits = []
    r = end
    while True:
        prev, e = parent[r]
        if prev is None:
            break
        digits.append(e)
        r = prev
    return DigitWord(0, tuple(reversed(digits)))


def expansion_of_inv_power(n: int, params: Params) -> DigitWord:
    """Finite word for (k+1)^(-n): divide 0.(k+1)(k+1) = 1 by k+1, n times."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    k = params.k
    w = DigitWord(0, (k + 1, k + 1))
    for _ in range(n):
        w = rewrite.div_word_by_k1(w, params)
    return w


def construct_route(x: FieldElem, params: Params,
                term_budget: int = 20_000) -> DigitWord | None:
    """Constructive synthesis through the F-sequence decomposition.

    Writes x = (p*beta+q)/(k+1)^n, decomposes p greedily over the F_i, and
    assembles the nonnegative terms n_i/(beta^i (k+1)^(n-i)) plus
    M/(k+1)^n by repeated word addition.  Returns None when the assembly
    would need a negative term (the subtraction step the construction
    does not supply) or grows past ``term_budget`` additions.
    """
    if params.parity != ODD:
        return None
    k = params.k
    k1 = k + 1
    n, power = 0, 1
    while power % x.r != 0:
        power *= k1
        n += 1
        if n > 64:
            return None  # denominator not supported on k+1
    scale = power // x.r
    p, q = x.p * scale, x.q * scale
    coeffs = decompose_F(k, p).coeffs
    seq = f_seq(k, len(coeffs) + 2)
    M = sum(c * seq[i + 1] for i, c in enumerate(coeffs)) + q
    if M < 0:
        return None
    terms: list[tuple[int, int, int]] = []  # (count, shift, inverse power)
    for i, ni in enumerate(coeffs, start=1):
        if ni == 0:
            continue
        signed = ni if i % 2 == 1 else -ni
        if signed < 0:
            return None
        e = n - i
        count = signed * (k1 ** max(-e, 0))
        terms.append((count, i, max(e, 0)))
    if M + sum(c for c, _, _ in terms) > term_budget:
        return None
    acc = DigitWord(0, ())
    base = expansion_of_inv_power(n, params)
    for _ in range(M):
        acc = rewrite.add_words(acc, base, params)
    for count, shift, e in terms:
        piece = expansion_of_inv_power(e, params)
        piece = DigitWord(0, (0,) * shift + piece.digits)
        for _ in range(count):
            acc = rewrite.add_words(acc, piece, params)
    # interior values sit below m/(beta-1) < 2, so at most one borrow is
    # needed to push the integer part back under the point; words shaped
    # 1.k(big)... fall outside the borrow patterns, and the construction
    # gives up on them rather than improvising
    while acc.int_part > 0:
        try:
            acc = rewrite.borrow_T_minus(acc, params)
        except DomainError:
            return None
    assert (word_value(acc, params) - x).is_zero()
    return acc


def synth_finite_constructive(x: FieldElem, params: Params) -> DigitWord:
    """Like ``synth_finite`` but through the constructive F-sequence route,
    falling back to the search when the construction needs a subtraction."""
    w = construct_route(x, params)
    if w is not None:
        return w
    log.warning("constructive route hit a negative term for %r; "
                "falling back to search synthesis", x)
    return synth_finite(x, params)


def classify(x: FieldElem, params: Params) -> Classification:
    bound = params.interval_bound
    s = x.sign()
    if s < 0 or x > bound:
        raise DomainError("x outside the closed expansion interval")
    if s == 0:
        return Classification(UNIQUE_ENDPOINT, "0")
    if (x - bound).is_zero():
        return Classification(UNIQUE_ENDPOINT, "m")
    if fe_membership(x) in (IN_S, IN_F):
        return Classification(COUNTABLY_INFINITE, synth_finite(x, params))
    return Classification(CONTINUUM, (x.r, _offending_prime(x.r, params.k + 1)))


def _offending_prime(r: int, base: int) -> int:
    n = r
    d = 2
    while d * d <= n:
        if n % d == 0:
            if base % d != 0:
                return d
            while n % d == 0:
                n //= d
        else:
            d += 1
    assert n > 1 and base % n != 0
    return n


def branch_witness(x: FieldElem, depth: int, budget: int,
                   params: Params) -> list[tuple[int, ...]]:
    """Pairwise-distinct extendable expansion prefixes of x, certifying
    expansion multiplicity at finite depth.

    Takes the greedy (largest-digit-first) prefix and toggles local
    value-preserving rewrites at disjoint sites, one subset per bitmask;
    every output has the same exact remainder as the base prefix.  The
    greedy prefix keeps remainders small, so runs of small digits (and
    with them rewrite sites) recur; it is extended past ``depth`` when it
    does not yet carry enough sites, and for the rare digit streams with
    no sites at all the generator falls back to collecting distinct
    prefixes straight off the prefix tree.
    """
    if fe_membership(x) in (IN_S, IN_F):
        raise DomainError("branch witnesses are for points without finite expansions")
    target = min(budget, 2 ** (depth // 3))
    bound = params.interval_bound
    digits: list[int] = []
    rems: list[FieldElem] = [x]

    def extend(to_len: int) -> None:
        while len(digits) < to_len:
            shifted = rems[-1].mul_beta()
            for e in range(params.m, -1, -1):
                r2 = shifted - e
                if r2.sign() >= 0 and r2 <= bound:
                    digits.append(e)
                    rems.append(r2)
                    break
            else:
                raise AssertionError("in-interval remainder with no valid digit")

    length = depth
    while True:
        extend(length)
        sites = _rewrite_sites(digits, params)
        if 2 ** len(sites) >= target:
            break
        if length > 8 * depth + 240:
            return _witnesses_from_tree(x, depth, target, params)
        length += max(depth // 2, 6)

    nbits = max(target - 1, 0).bit_length()
    chosen = sites[:max(nbits, 1)]
    out = []
    for mask in range(target):
        d = list(digits)
        for bit, (pos, repl) in enumerate(chosen):
            if (mask >> bit) & 1:
                d[pos : pos + len(repl)] = repl
        out.append(tuple(d))
    # spot-check: the fully rewritten prefix keeps the exact remainder
    r = x
    for e in out[-1]:
        r = r.mul_beta() - e
    assert (r - rems[len(out[-1])]).is_zero()
    return out


def _witnesses_from_tree(x: FieldElem, depth: int, target: int,
                         params: Params) -> list[tuple[int, ...]]:
    """Distinct valid prefixes straight off the branching recursion, going
    past ``depth`` if the tree is not yet wide enough there."""
    bound = params.interval_bound
    level: list[tuple[tuple[int, ...], FieldElem]] = [((), x)]
    d = 0
    while d < depth or len(level) < target:
        nxt = []
        for pfx, r in level:
            shifted = r.mul_beta()
            for e in range(params.m + 1):
                r2 = shifted - e
                if r2.sign() >= 0 and r2 <= bound:
                    nxt.append((pfx + (e,), r2))
        level = nxt
        d += 1
        if d > 40 * depth:
            raise DomainError("prefix tree never reached the witness target")
    return [pfx for pfx, _ in level[:target]]


def _rewrite_sites(digits: list[int], params: Params):
    """Disjoint positions where a local equal-value digit replacement
    applies; each entry is (start index, replacement digits)."""
    k = params.k
    sites = []
    i = 0
    if params.parity == ODD:
        while i + 2 < len(digits):
            a, b, c = digits[i], digits[i + 1], digits[i + 2]
            if params.in_big(b) and params.in_big(c) and a <= 2 * k:
                sites.append((i, (a + 1, b - k - 1, c - k - 1)))
                i += 3
            elif params.in_small(b) and params.in_small(c) and a >= 1:
                sites.append((i, (a - 1, b + k + 1, c + k + 1)))
                i += 3
            else:
                i += 1
    else:
        while i + 1 < len(digits):
            a, b = digits[i], digits[i + 1]
            if a >= 1 and b <= params.m - (k + 1):
                sites.append((i, (a - 1, b + k + 1)))
                i += 2
            elif a <= params.m - 1 and b >= k + 1:
                sites.append((i, (a + 1, b - k - 1)))
                i += 2
            else:
                i += 1
    return sites
