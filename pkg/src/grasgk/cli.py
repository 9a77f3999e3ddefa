"""Command-line front end: counting, GK estimation, identity verification,
and rank certification, with reproducible configuration embedded in every
output.

Exit codes: 0 success / MATCH, 1 mathematical mismatch or failed
verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional

from . import __version__
from .scalar import FieldSpec, InvalidFieldError
from .grassmann import GradingSpec
from .freealg import MultiDegree, identity_templates, parse_word, verify_identity
from .spanning import (
    EK_BOUNDS,
    _multidegrees,
    compare_counts,
    gk_estimate,
    growth_table,
    hilbert_coeffs,
)
from .oracle import component_dimension

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

#: totals above this are refused without --force (word count grows factorially)
MAX_WORD_TOTAL = 8


@dataclass
class RunConfig:
    """Fully resolved parameters of one command invocation."""

    command: str
    grading: str
    characteristic: int
    m: int
    t_max: Optional[int] = None
    total: Optional[int] = None
    n: Optional[int] = None
    seed: int = 0
    points_budget: int = 40
    trials: int = 100
    window: int = 8
    ek_bound: str = "derived"
    fmt: str = "json"
    version: str = __version__

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def default_truncation(total: int, m: int, g: GradingSpec) -> int:
    """Truncation large enough for the structured substitutions at this size."""
    k = g.k if g.kind != "inf" else 0
    return 2 * total + 4 * m + k + 8


def _emit(payload: dict, config: RunConfig, out, rows=None, latex: bool = False):
    payload = {"config": config.to_dict(), **payload}
    if config.fmt == "csv" and rows is not None:
        writer = csv.writer(out)
        writer.writerow(["t", "per_degree", "cumulative", "closed_form", "delta"])
        for row in rows:
            writer.writerow(row)
        return
    if latex and rows is not None:
        out.write("\\begin{tabular}{rrrrr}\n")
        out.write("t & per degree & cumulative & closed form & delta \\\\\n")
        for row in rows:
            out.write(" & ".join(str(x) for x in row) + " \\\\\n")
        out.write("\\end{tabular}\n")
        return
    json.dump(payload, out, indent=2)
    out.write("\n")


def _char_proximity_warning(field: FieldSpec, t: int) -> Optional[str]:
    p = field.characteristic
    if p and t >= p - 1:
        return (
            f"degree {t} approaches characteristic {p}: F_{p} substitutions may "
            f"identify powers (u^{p} = u for scalars); interpret ranks as lower bounds"
        )
    return None


def cmd_count(config: RunConfig, out) -> int:
    g = GradingSpec.parse(config.grading)
    field = FieldSpec(config.characteristic)
    table = growth_table(g, field, config.m, config.t_max, config.ek_bound)
    report = compare_counts(g, field, config.m, config.t_max, config.ek_bound)
    rows = [
        (
            t,
            table.per_degree[t],
            table.cumulative[t],
            report.rows[t].closed_form,
            report.rows[t].delta,
        )
        for t in table.degrees()
    ]
    payload = {
        "growth": table.to_dict(),
        "compare": report.to_dict(),
        "hilbert": [r.to_dict() for r in hilbert_coeffs(g, field, config.m, config.t_max, "univariate", config.ek_bound)],
    }
    warning = _char_proximity_warning(field, config.t_max)
    if warning:
        payload["warning"] = warning
        print(f"warning: {warning}", file=sys.stderr)
    _emit(payload, config, out, rows=rows, latex=config.fmt == "latex")
    return EXIT_OK


def expected_gk(g: GradingSpec, field: FieldSpec, m: int) -> int:
    """Growth degree predicted for the grading/characteristic pair."""
    if g.kind == "inf" and field.characteristic == 0:
        return 2 * m
    return m


def cmd_gk(config: RunConfig, out) -> int:
    g = GradingSpec.parse(config.grading)
    field = FieldSpec(config.characteristic)
    table = growth_table(g, field, config.m, config.t_max, config.ek_bound)
    degree, confidence = gk_estimate(table, config.window)
    expect = expected_gk(g, field, config.m)
    match = degree == expect and confidence == "HIGH"
    payload = {
        "estimate": degree,
        "confidence": confidence,
        "expected": expect,
        "verdict": "MATCH" if match else "MISMATCH",
        "growth": table.to_dict(),
        "note": "degree of the cumulative (not per-degree) growth sequence",
    }
    _emit(payload, config, out)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_verify(config: RunConfig, out, extra: List[str]) -> int:
    g = GradingSpec.parse(config.grading)
    field = FieldSpec(config.characteristic)
    templates, skipped = identity_templates(g, field, config.m)
    reports = []
    ok = True
    for tpl in templates:
        rep = verify_identity(
            tpl.poly, g, field, config.n, config.trials, config.seed, tpl.name
        )
        reports.append(rep.to_dict())
        ok = ok and rep.status == "PASS"
    for text in extra:
        poly = parse_word(field, text)
        rep = verify_identity(
            poly, g, field, config.n, config.trials, config.seed, f"extra:{text}"
        )
        reports.append(rep.to_dict())
        ok = ok and rep.status == "PASS"
    payload = {
        "templates": reports,
        "skipped": skipped,
        "verdict": "PASS" if ok else "FAIL",
    }
    _emit(payload, config, out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_rank(config: RunConfig, out, strict: bool, force: bool) -> int:
    g = GradingSpec.parse(config.grading)
    field = FieldSpec(config.characteristic)
    total = config.total
    if total > MAX_WORD_TOTAL and not force:
        print(
            f"error: total {total} exceeds {MAX_WORD_TOTAL} "
            f"({_factorial_words(total)} words per multidegree); pass --force to override",
            file=sys.stderr,
        )
        return EXIT_USAGE
    results = []
    all_exact = True
    certified_sum = 0
    for t in range(0, total + 1):
        for d in _multidegrees(config.m, t):
            n = config.n or default_truncation(t, config.m, g)
            res = component_dimension(
                g,
                field,
                config.m,
                d,
                n,
                config.points_budget,
                config.seed,
                config.ek_bound,
            )
            results.append(res.to_dict())
            all_exact = all_exact and res.exact
            certified_sum += res.lower
    payload = {
        "results": results,
        "all_exact": all_exact,
        "certified_dimension_sum": certified_sum,
    }
    warning = _char_proximity_warning(field, total)
    if warning:
        payload["warning"] = warning
        print(f"warning: {warning}", file=sys.stderr)
    _emit(payload, config, out)
    if strict and not all_exact:
        return EXIT_MISMATCH
    return EXIT_OK


def _factorial_words(total: int) -> str:
    from math import factorial

    return f"up to {factorial(total)}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grasgk",
        description=(
            "Exact graded Grassmann algebra computations: spanning counts, "
            "GK growth, identity verification, rank certificates"
        ),
    )
    parser.add_argument("--out", help="write output to FILE instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tmax=None, total=None):
        p.add_argument("--grading", required=True, help="kstar:K | inf | k:K")
        p.add_argument("--char", type=int, default=0, help="0 or an odd prime")
        p.add_argument("--m", type=int, default=1, help="variable pairs (y_i, z_i)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--ek-bound",
            default="derived",
            choices=EK_BOUNDS,
            help="admissibility reading for the deg_k grading",
        )
        p.add_argument("--format", default="json", choices=["json", "csv"])
        p.add_argument("--latex", action="store_true", help="emit a LaTeX tabular")
        if tmax is not None:
            p.add_argument("--tmax", type=int, default=tmax)
        if total is not None:
            p.add_argument("--total", type=int, default=total)

    p_count = sub.add_parser("count", help="growth/Hilbert tables + reconciliation")
    common(p_count, tmax=20)

    p_gk = sub.add_parser("gk", help="empirical GK dimension with MATCH verdict")
    common(p_gk, tmax=30)
    p_gk.add_argument("--window", type=int, default=8)

    p_verify = sub.add_parser("verify", help="randomized identity verification")
    common(p_verify)
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--n", type=int, default=12, help="truncation E(n)")
    p_verify.add_argument(
        "--extra",
        action="append",
        default=[],
        help="additional word to test, e.g. 'z1^5' or 'y1*z2'",
    )

    p_rank = sub.add_parser("rank", help="certified component dimensions")
    common(p_rank, total=4)
    p_rank.add_argument("--n", type=int, help="truncation (auto-derived if omitted)")
    p_rank.add_argument("--points-budget", type=int, default=40)
    p_rank.add_argument("--strict", action="store_true", help="nonzero exit unless all exact")
    p_rank.add_argument("--force", action="store_true", help="allow totals above the word cap")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        GradingSpec.parse(args.grading)
        FieldSpec(args.char)
    except (ValueError, InvalidFieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    fmt = "csv" if args.format == "csv" else ("latex" if args.latex else "json")
    config = RunConfig(
        command=args.command,
        grading=args.grading,
        characteristic=args.char,
        m=args.m,
        seed=args.seed,
        ek_bound=args.ek_bound,
        fmt=fmt,
    )
    out = sys.stdout
    close = False
    if args.out:
        out = open(args.out, "w")
        close = True
    try:
        if args.command == "count":
            config.t_max = args.tmax
            return cmd_count(config, out)
        if args.command == "gk":
            config.t_max = args.tmax
            config.window = args.window
            return cmd_gk(config, out)
        if args.command == "verify":
            config.trials = args.trials
            config.n = args.n
            return cmd_verify(config, out, args.extra)
        if args.command == "rank":
            config.total = args.total
            config.n = args.n
            config.points_budget = args.points_budget
            return cmd_rank(config, out, args.strict, args.force)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if close:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
