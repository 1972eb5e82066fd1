"""Command-line frontend.

Exit status: 0 when every check a command performs passes, 1 when a
verification fails, 2 on usage or input errors. Results go to stdout,
diagnostics to stderr. Text output prints floats at --precision decimal
places (default 6); --json switches to machine-readable output with
full-precision numbers.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from ._backend import BACKEND
from .errors import FuzznestError
from .fuzzy_core import (
    FuzzySet,
    VerificationReport,
    construct_fuzzy_set,
    fuzzy_power_set,
    fuzzyset_from_json,
    propagate_membership,
    scalar_cardinality,
    verify_power_cardinality,
)
from .seq_codec import (
    BinarySequence,
    SolverConfig,
    decode,
    encode,
    expand_to_fuzzy,
    iterate_level,
    parse_sequence,
    print_sequence,
    sequence_from_json,
    series_cardinality,
)
from .set_expr import parse_expr, print_expr, structural_depth

# ------------------------------------------------------------ formatting


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}f}"


def _table(rows: list[tuple[str, str]]) -> str:
    width = max(len(label) for label, _ in rows) + 2
    return "\n".join(f"{label:<{width}}{value}" for label, value in rows)


def _emit_json(obj) -> int:
    print(json.dumps(obj))
    return 0


def _report_rows(report: VerificationReport, precision: int) -> list[tuple[str, str]]:
    return [
        ("computed", _fmt(report.computed, precision)),
        ("expected", _fmt(report.expected, precision)),
        ("abs diff", f"{report.abs_diff:.3e}"),
    ]


def _report_json(report: VerificationReport) -> dict:
    return {
        "label": report.label,
        "computed": report.computed,
        "expected": report.expected,
        "abs_diff": report.abs_diff,
        "tolerance": report.tolerance,
        "pass": report.passed,
    }


def _verdict(passed: bool, tolerance: float) -> str:
    return f"{'PASS' if passed else 'FAIL'} (tol {tolerance:g})"


def _read_fuzzyset(path: str) -> FuzzySet:
    return fuzzyset_from_json(Path(path).read_text(encoding="utf-8"))


def _read_sequence(text: str) -> BinarySequence:
    if text.lstrip().startswith("{"):
        return sequence_from_json(text)
    return parse_sequence(text)


# -------------------------------------------------------------- commands


def cmd_parse(args) -> int:
    expr = parse_expr(args.expr)
    if args.json:
        return _emit_json(
            {
                "input": args.expr,
                "canonical": print_expr(expr),
                "depth": structural_depth(expr),
            }
        )
    print(print_expr(expr))
    return 0


def cmd_propagate(args) -> int:
    base = _read_fuzzyset(args.fuzzyset)
    exprs = [parse_expr(text) for text in args.expr]
    result = construct_fuzzy_set(base, exprs)
    if args.json:
        return _emit_json(
            {
                "elements": [
                    {"expr": print_expr(e), "mu": mu} for e, mu in result.elements
                ]
            }
        )
    rows = [(print_expr(e), _fmt(mu, args.precision)) for e, mu in result.elements]
    print(_table(rows))
    return 0


def cmd_card(args) -> int:
    base = _read_fuzzyset(args.fuzzyset)
    value = scalar_cardinality(base)
    if args.json:
        return _emit_json({"cardinality": value})
    print(_fmt(value, args.precision))
    return 0


def cmd_powerset(args) -> int:
    base = _read_fuzzyset(args.fuzzyset)
    power = fuzzy_power_set(base, cap=args.cap)
    report = None
    if args.verify:
        computed = scalar_cardinality(power)
        expected = 2.0 ** scalar_cardinality(base)
        report = VerificationReport.check(
            "power-set cardinality law", computed, expected, args.tol
        )
    if args.json:
        out = {
            "elements": [
                {"expr": print_expr(e), "mu": mu} for e, mu in power.elements
            ]
        }
        if report is not None:
            out["report"] = _report_json(report)
        _emit_json(out)
    else:
        rows = [(print_expr(e), _fmt(mu, args.precision)) for e, mu in power.elements]
        print(_table(rows))
        if report is not None:
            print(_table(_report_rows(report, args.precision)))
            print(_verdict(report.passed, report.tolerance))
    return 0 if report is None or report.passed else 1


def _encode_fields(seq: BinarySequence, w: float) -> tuple[list[int], float]:
    indices = list(seq.nonzero_indices)
    residual = series_cardinality(seq, w) - 1.0
    return indices, residual


def cmd_encode(args) -> int:
    cfg = SolverConfig(
        tol_residual=args.tol, max_terms=args.max_terms, max_index=args.max_index
    )
    seq = encode(args.value, cfg)
    indices, residual = _encode_fields(seq, args.value)
    if args.json:
        return _emit_json(
            {
                "m_star": seq.m_star,
                "bits": list(seq.bits),
                "truncated": seq.truncated,
                "value": args.value,
                "nonzero_indices": indices,
                "residual": residual,
            }
        )
    rows = [
        ("sequence", print_sequence(seq)),
        ("m_star", str(seq.m_star)),
        ("indices", " ".join(str(k) for k in indices)),
        ("truncated", "yes" if seq.truncated else "no"),
        ("residual", f"{residual:.3e}"),
    ]
    print(_table(rows))
    return 0


def cmd_decode(args) -> int:
    seq = _read_sequence(args.sequence)
    cfg = SolverConfig(tol_root=args.tol)
    value = decode(seq, cfg)
    expansion = expand_to_fuzzy(seq, "x", cfg)
    card = scalar_cardinality(expansion)
    if args.json:
        return _emit_json(
            {
                "value": value,
                "m_star": seq.m_star,
                "truncated": seq.truncated,
                "expansion": [
                    {"expr": print_expr(e), "mu": mu} for e, mu in expansion.elements
                ],
                "cardinality": card,
            }
        )
    rows = [("value", _fmt(value, args.precision))]
    rows += [
        (print_expr(e), _fmt(mu, args.precision)) for e, mu in expansion.elements
    ]
    rows.append(("cardinality", _fmt(card, args.precision)))
    print(_table(rows))
    return 0


def cmd_roundtrip(args) -> int:
    cfg = SolverConfig(max_terms=args.max_terms)
    if args.value is not None:
        values = [args.value]
    else:
        rng = random.Random(args.seed)
        values = [0.01 + 0.98 * rng.random() for _ in range(args.count)]
    worst = 0.0
    for w in values:
        worst = max(worst, abs(decode(encode(w, cfg), cfg) - w))
    passed = worst <= args.tol
    if args.json:
        _emit_json(
            {
                "trials": len(values),
                "max_abs_error": worst,
                "tolerance": args.tol,
                "pass": passed,
            }
        )
    else:
        rows = [
            ("trials", str(len(values))),
            ("max abs error", f"{worst:.3e}"),
        ]
        print(_table(rows))
        print(_verdict(passed, args.tol))
    return 0 if passed else 1


def _theorem_one_diff(rng: random.Random, tol: float) -> float:
    n = rng.randint(1, 12)
    base = FuzzySet.flat([(f"x{i + 1}", rng.random()) for i in range(n)])
    return verify_power_cardinality(base, tol).abs_diff


def _theorem_two_diff(rng: random.Random) -> float:
    u = rng.random()
    m = rng.randint(-6, 6)
    n = rng.randint(-6, 6)
    a = iterate_level(iterate_level(u, m), n)
    b = iterate_level(iterate_level(u, n), m)
    c = iterate_level(u, m + n)
    return max(abs(a - b), abs(a - c), abs(b - c))


def cmd_verify_theorem(args) -> int:
    rng = random.Random(args.seed)
    if args.id == 1:
        label = "power-set cardinality law: card(P(A)) = 2^card(A)"
        tol = args.tol if args.tol is not None else 1e-9
        worst = max(_theorem_one_diff(rng, tol) for _ in range(args.trials))
    else:
        label = "level composition law: u_m after u_n = u_(m+n)"
        tol = args.tol if args.tol is not None else 1e-12
        worst = max(_theorem_two_diff(rng) for _ in range(args.trials))
    passed = worst <= tol
    if args.json:
        _emit_json(
            {
                "id": args.id,
                "label": label,
                "trials": args.trials,
                "max_abs_diff": worst,
                "tolerance": tol,
                "pass": passed,
            }
        )
    else:
        rows = [
            ("check", label),
            ("trials", str(args.trials)),
            ("max abs diff", f"{worst:.3e}"),
        ]
        print(_table(rows))
        print(_verdict(passed, tol))
    return 0 if passed else 1


# ----------------------------------------------------- worked examples


def _example_membership_construction(precision: int) -> tuple[str, bool]:
    base = FuzzySet.flat([("x1", 0.2), ("x2", 0.3), ("x3", 0.5), ("x4", 1.0)])
    texts = ["{∅,x1}", "{{x2},{x3}}", "{x1,{x2,{x3,{x4}}}}"]
    result = construct_fuzzy_set(base, [parse_expr(t) for t in texts])
    rows = [
        ("base", " ".join(f"{n}={_fmt(mu, precision)}" for n, mu in
                          (("x1", 0.2), ("x2", 0.3), ("x3", 0.5), ("x4", 1.0))))
    ]
    rows += [(print_expr(e), _fmt(mu, precision)) for e, mu in result.elements]
    return _table(rows), True


def _example_power_cardinality(precision: int) -> tuple[str, bool]:
    base = FuzzySet.flat([("x1", 0.2), ("x2", 0.3), ("x3", 0.5)])
    power = fuzzy_power_set(base)
    report = verify_power_cardinality(base, tol=1e-12)
    rows = [
        ("base", " ".join(f"{n}={_fmt(mu, precision)}" for n, mu in
                          (("x1", 0.2), ("x2", 0.3), ("x3", 0.5))))
    ]
    rows += [(print_expr(e), _fmt(mu, precision)) for e, mu in power.elements]
    rows += _report_rows(report, precision)
    text = _table(rows) + "\n" + _verdict(report.passed, report.tolerance)
    return text, report.passed


def _example_decoding(precision: int) -> tuple[str, bool]:
    blocks = []
    for text in ("10|01", "|01001"):
        seq = parse_sequence(text)
        value = decode(seq)
        expansion = expand_to_fuzzy(seq)
        rows = [("sequence", print_sequence(seq)), ("value", _fmt(value, precision))]
        rows += [
            (print_expr(e), _fmt(mu, precision)) for e, mu in expansion.elements
        ]
        rows.append(("cardinality", _fmt(scalar_cardinality(expansion), precision)))
        blocks.append(_table(rows))
    return "\n\n".join(blocks), True


def _example_encoding(precision: int) -> tuple[str, bool]:
    blocks = []
    for w in (0.3, 0.8):
        seq = encode(w)
        indices, residual = _encode_fields(seq, w)
        rows = [
            ("value", _fmt(w, precision)),
            ("sequence", print_sequence(seq)),
            ("m_star", str(seq.m_star)),
            ("indices", " ".join(str(k) for k in indices)),
            ("truncated", "yes" if seq.truncated else "no"),
            ("residual", f"{residual:.3e}"),
        ]
        blocks.append(_table(rows))
    return "\n\n".join(blocks), True


_EXAMPLES = {
    1: _example_membership_construction,
    2: _example_power_cardinality,
    3: _example_decoding,
    4: _example_encoding,
}


def cmd_examples(args) -> int:
    text, passed = _EXAMPLES[args.id](args.precision)
    print(text)
    return 0 if passed else 1


def cmd_backend(args) -> int:
    if args.json:
        return _emit_json({"backend": BACKEND})
    print(BACKEND)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="emit machine-readable JSON"
    )
    common.add_argument(
        "--precision",
        type=int,
        default=6,
        metavar="N",
        help="decimal places in text output (default 6)",
    )

    parser = argparse.ArgumentParser(
        prog="fuzznest",
        description=(
            "Fuzzy sets over nested-set universes: membership propagation, "
            "power-set cardinality checks, and binary-sequence encoding of "
            "membership values."
        ),
    )
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    p = sub.add_parser(
        "parse", parents=[common], help="canonicalize a set expression"
    )
    p.add_argument("expr", help="expression text, e.g. '{x1,{x2}}'")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser(
        "propagate",
        parents=[common],
        help="derive memberships for expressions from a base fuzzy set",
    )
    p.add_argument("fuzzyset", help="path to a fuzzy set JSON file")
    p.add_argument("expr", nargs="+", help="expression text(s)")
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser(
        "card", parents=[common], help="scalar cardinality of a fuzzy set"
    )
    p.add_argument("fuzzyset", help="path to a fuzzy set JSON file")
    p.set_defaults(func=cmd_card)

    p = sub.add_parser(
        "powerset",
        parents=[common],
        help="fuzzy power set of a flat fuzzy set",
    )
    p.add_argument("fuzzyset", help="path to a fuzzy set JSON file")
    p.add_argument(
        "--verify",
        action="store_true",
        help="check card(P(A)) = 2^card(A); exit 1 on failure",
    )
    p.add_argument("--tol", type=float, default=1e-9, help="tolerance (default 1e-9)")
    p.add_argument(
        "--cap", type=int, default=20, help="max atom count (default 20)"
    )
    p.set_defaults(func=cmd_powerset)

    p = sub.add_parser(
        "encode",
        parents=[common],
        help="greedy binary-sequence expansion of a membership value",
    )
    p.add_argument("value", type=float, help="membership value in (0,1]")
    p.add_argument(
        "--max-terms", type=int, default=64, help="bit budget (default 64)"
    )
    p.add_argument(
        "--tol", type=float, default=1e-12, help="residual tolerance (default 1e-12)"
    )
    p.add_argument(
        "--max-index", type=int, default=256, help="level cap (default 256)"
    )
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser(
        "decode",
        parents=[common],
        help="membership value of a binary sequence, with its expansion",
    )
    p.add_argument(
        "sequence",
        help="sequence text like '10|01', or its JSON form",
    )
    p.add_argument(
        "--tol", type=float, default=1e-12, help="root tolerance (default 1e-12)"
    )
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser(
        "roundtrip",
        parents=[common],
        help="check decode(encode(w)) = w for one or many values",
    )
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--value", type=float, help="single value to roundtrip")
    group.add_argument("--count", type=int, help="number of random trials")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument(
        "--tol", type=float, default=1e-10, help="error tolerance (default 1e-10)"
    )
    p.add_argument(
        "--max-terms", type=int, default=64, help="encoder bit budget (default 64)"
    )
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser(
        "verify-theorem",
        parents=[common],
        help="randomized check: 1 = power-set cardinality law, "
        "2 = level composition law",
    )
    p.add_argument("id", type=int, choices=(1, 2))
    p.add_argument("--trials", type=int, default=100, help="default 100")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument(
        "--tol",
        type=float,
        default=None,
        help="tolerance (default 1e-9 for 1, 1e-12 for 2)",
    )
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser(
        "examples",
        parents=[common],
        help="reproduce a worked example (1 construction, 2 power set, "
        "3 decoding, 4 encoding)",
    )
    p.add_argument("id", type=int, choices=(1, 2, 3, 4))
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser(
        "backend", parents=[common], help="print the active numeric backend"
    )
    p.set_defaults(func=cmd_backend)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FuzznestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
