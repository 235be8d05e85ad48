"""Command-line front end: classify, enumerate, ones, synth, rewrite,
census, verify.

All numbers are field literals like ``3/4`` or ``(1+1*b)/6``; words use the
grammar ``INT.d1,d2,...`` with an optional ``(p1,p2)*`` periodic tail.
Output is JSON (CSV for census on request), written to stdout or --out,
and is byte-deterministic for fixed flags and seed.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from functools import cmp_to_key

from .algebra import (
    EVEN,
    ODD,
    DomainError,
    FieldElem,
    ParameterError,
    Params,
    format_field,
    make_params,
    parse_field,
)
from .words import ParseError, format_word, parse_word
from . import expand, rewrite, verify


def _payload(params: Params, input_repr, result, certificate=None) -> dict:
    return {
        "params": {"k": params.k, "parity": params.parity},
        "input": input_repr,
        "result": result,
        "certificate": certificate,
    }


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out_path: str | None) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", out_path)


def _certificate_json(c: expand.Classification):
    if c.verdict == expand.COUNTABLY_INFINITE:
        return format_word(c.certificate)
    if c.verdict == expand.CONTINUUM:
        den, prime = c.certificate
        return {"denominator": den, "prime": prime}
    return c.certificate  # endpoint tag


# -- census ----------------------------------------------------------------

def census_elements(params: Params, den_bound: int, num_bound: int) -> list[FieldElem]:
    """Canonical field elements strictly inside the expansion interval with
    denominator <= den_bound and |p|, |q| <= num_bound, sorted by value."""
    top = params.interval_bound
    seen = set()
    out = []
    p_range = range(-num_bound, num_bound + 1) if params.parity == ODD else (0,)
    for r in range(1, den_bound + 1):
        for p in p_range:
            for q in range(-num_bound, num_bound + 1):
                x = FieldElem(params, p, q, r)
                if x.r > den_bound or abs(x.p) > num_bound or abs(x.q) > num_bound:
                    continue  # reduced out of the requested window
                if x in seen:
                    continue
                seen.add(x)
                if x.sign() > 0 and x < top:
                    out.append(x)
    out.sort(key=cmp_to_key(lambda a, b: a.compare(b)))
    return out


def _census_row(x: FieldElem, params: Params, depths: list[int]) -> dict:
    c = expand.classify(x, params)
    tree = expand.enumerate_prefixes(x, max(depths, default=0), params)
    return {
        "x": format_field(x),
        "k": params.k,
        "parity": params.parity,
        "verdict": c.verdict,
        "certificate": _certificate_json(c),
        "prefix_count_at_depth": [[d, tree.count_at(d)] for d in depths],
    }


def census_sweep(params: Params, den_bound: int, num_bound: int,
                 depths: list[int], threads: int = 1) -> list[dict]:
    xs = census_elements(params, den_bound, num_bound)
    if threads <= 1:
        return [_census_row(x, params, depths) for x in xs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda x: _census_row(x, params, depths), xs))


def _census_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "k", "parity", "verdict", "certificate", "prefix_counts"])
    for row in rows:
        cert = row["certificate"]
        if isinstance(cert, dict):
            cert = f"denominator={cert['denominator']};prime={cert['prime']}"
        counts = ";".join(f"{d}:{c}" for d, c in row["prefix_count_at_depth"])
        writer.writerow([row["x"], row["k"], row["parity"], row["verdict"], cert, counts])
    return buf.getvalue()


# -- argument plumbing -------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="goldenbeta",
        description="Exact expansion analysis in generalized golden ratio bases.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--k", type=int, default=1, help="digit parameter k >= 1")
        p.add_argument("--parity", choices=(ODD, EVEN), default=ODD,
                       help="odd: m=2k+1 digits, quadratic base; even: m=2k, integer base")
        p.add_argument("--out", metavar="PATH", default=None, help="write output to PATH")
        return p

    p = common(sub.add_parser("classify", help="countable/continuum verdict for a point"))
    p.add_argument("x", help="field literal, e.g. 3/4 or (1+1*b)/6")

    p = common(sub.add_parser("enumerate", help="all valid expansion prefixes of a point"))
    p.add_argument("x")
    p.add_argument("--depth", type=int, default=8)

    p = common(sub.add_parser("ones", help="the closed-form expansions of 1 (odd parity)"))
    p.add_argument("--depth", type=int, default=12)

    p = common(sub.add_parser("synth", help="finite expansion of a point with finite expansions"))
    p.add_argument("x")
    p.add_argument("--route", choices=("search", "construct"), default="search")

    p = common(sub.add_parser("rewrite", help="apply one digit-rewriting rule"))
    p.add_argument("rule", choices=rewrite.RULES)
    p.add_argument("words", nargs="+", metavar="WORD",
                   help="word literal(s), e.g. 0.3,2 or 0.3,(0,3)*")

    p = common(sub.add_parser("census", help="classification sweep over a window of points"))
    p.add_argument("--den-bound", type=int, default=4)
    p.add_argument("--num-bound", type=int, default=4)
    p.add_argument("--depths", default="6", help="comma-separated depths, e.g. 6,12")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=1)

    p = common(sub.add_parser("verify", help="run the self-check suite"))
    p.add_argument("--level", choices=verify.LEVELS, default="fast")
    p.add_argument("--seed", type=int, default=0)
    return top


def _run(args) -> int:
    params = make_params(args.k, args.parity)

    if args.command == "classify":
        x = parse_field(args.x, params)
        c = expand.classify(x, params)
        _emit_json(_payload(params, args.x, c.verdict, _certificate_json(c)), args.out)
        return 0

    if args.command == "enumerate":
        x = parse_field(args.x, params)
        tree = expand.enumerate_prefixes(x, args.depth, params)
        prefixes = [list(p) for p in tree.prefixes_at()]
        result = {"depth": args.depth, "count": len(prefixes), "prefixes": prefixes}
        _emit_json(_payload(params, args.x, result), args.out)
        return 0

    if args.command == "ones":
        words = expand.expansions_of_one(args.depth, params)
        result = [format_word(w) for w in words]
        _emit_json(_payload(params, "1", result), args.out)
        return 0

    if args.command == "synth":
        x = parse_field(args.x, params)
        if args.route == "construct":
            w = expand.synth_finite_constructive(x, params)
        else:
            w = expand.synth_finite(x, params)
        _emit_json(_payload(params, args.x, format_word(w), format_word(w)), args.out)
        return 0

    if args.command == "rewrite":
        words = [parse_word(t, params) for t in args.words]
        trace = rewrite.apply_rule(args.rule, params, *words)
        result = format_word(trace.output)
        cert = {
            "value": format_field(trace.value),
            "steps": [list(s) for s in trace.steps],
        }
        _emit_json(_payload(params, args.words, result, cert), args.out)
        return 0

    if args.command == "census":
        depths = [int(t) for t in args.depths.split(",") if t]
        rows = census_sweep(params, args.den_bound, args.num_bound, depths,
                            threads=args.threads)
        if args.format == "csv":
            _emit(_census_csv(rows), args.out)
        else:
            _emit_json(_payload(params, {"den_bound": args.den_bound,
                                         "num_bound": args.num_bound,
                                         "depths": depths}, rows), args.out)
        return 0

    if args.command == "verify":
        report = verify.verify_suite(args.level, args.seed)
        _emit_json(report, args.out)
        return 0 if report["passed"] else 1

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _run(args)
    except (DomainError, ParameterError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
