"""Argument parsing and per-subcommand runners for the probprem CLI.

Every runner takes the parsed namespace and returns the text to emit, so the
same code serves the console script and the tests.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path
from typing import Any, Callable

import logfire

from .acceptance import CHECKS
from .attitude import classify, kink_slope
from .comparative import (
    check_index_dominance,
    check_premium_dominance,
    find_premium_counterexample,
    sample_specs,
)
from .exceptions import NoBracket
from .lottery import NStateSpread, SpreadSpec
from .premium import nstate_premium_exact, probability_premium_exact, risk_premium_exact
from .preferences import UtilityModel, WeightingModel, parse_utility, parse_weighting
from .sharing import best_budget_point, critical_m_pool, prefers_pool, trace_indifference
from .utils import render_triangle_svg, to_json, trace_to_csv

SUBCOMMANDS = ("premium", "riskpremium", "nstate", "attitude", "kink", "compare", "share", "triangle", "check")


def _model_type(parse: Callable[[str], Any]) -> Callable[[str], Any]:
    """Wrap a model parser so argparse reports failures against the flag."""

    def convert(text: str) -> Any:
        try:
            return parse(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"{text!r}: {str(exc).splitlines()[0]}") from exc

    convert.__name__ = parse.__name__.replace("parse_", "")
    return convert


utility_type = _model_type(parse_utility)
weighting_type = _model_type(parse_weighting)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="absolute root tolerance; PROBPREM_TOL when omitted")
    common.add_argument(
        "--grid",
        type=int,
        default=None,
        help="grid size for comparisons and curves; PROBPREM_COMPARE_GRID and PROBPREM_TRIANGLE_GRID when omitted",
    )
    common.add_argument("-v", "--verbose", action="store_true", help="print logfire spans and logs to the console")
    return common


def _add_models(parser: argparse.ArgumentParser, suffix: str = "") -> None:
    parser.add_argument(
        f"--utility{suffix}", type=utility_type, default="linear", help="utility specifier, e.g. crra:gamma=2"
    )
    parser.add_argument(
        f"--weighting{suffix}",
        type=weighting_type,
        default="identity",
        help="weighting specifier, e.g. prelec:alpha=0.65",
    )


def _add_spread(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--w0", type=float, default=0.0, help="initial wealth")
    parser.add_argument("--p0", type=float, default=0.5, help="probability of the unfavorable branch")
    parser.add_argument("--eps1", type=float, required=True, help="probability mass moved to w0")
    parser.add_argument("--eps2", type=float, required=True, help="payoff spread")


def build_parser() -> argparse.ArgumentParser:
    """Parser with one sub-parser per analysis; every flag shows its default."""
    common = _common_parser()
    formatter = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="probprem",
        description="Probability premia under expected utility, dual theory and rank-dependent utility",
        formatter_class=formatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    premium = sub.add_parser("premium", parents=[common], formatter_class=formatter, help="exact and approximate probability premium")
    _add_models(premium)
    _add_spread(premium)

    risk = sub.add_parser("riskpremium", parents=[common], formatter_class=formatter, help="exact and approximate risk premium")
    _add_models(risk)
    _add_spread(risk)

    nstate = sub.add_parser("nstate", parents=[common], formatter_class=formatter, help="premium of an n-state spread read from JSON")
    _add_models(nstate)
    nstate.add_argument("--spec", type=Path, required=True, help='JSON file {"payoffs": [...], "eps1": r, "p0": r, "w0": r}')

    attitude = sub.add_parser("attitude", parents=[common], formatter_class=formatter, help="order of the attitude towards probability")
    _add_models(attitude)
    attitude.add_argument("--w0", type=float, default=0.0, help="initial wealth")
    attitude.add_argument("--p0", type=float, default=0.5, help="probability of the unfavorable branch")
    attitude.add_argument("--eps2", type=float, default=1.0, help="payoff spread")
    attitude.add_argument("--levels", type=int, default=None, help="halvings of eps1; PROBPREM_CLASSIFY_LEVELS when omitted")

    kink = sub.add_parser("kink", parents=[common], formatter_class=formatter, help="limit slope of the premium at a kink")
    kink.add_argument("--weighting", type=weighting_type, required=True, help="weighting specifier, e.g. avar:p0=0.5")
    kink.add_argument("--p0", type=float, required=True, help="kink location")

    compare = sub.add_parser("compare", parents=[common], formatter_class=formatter, help="index and premium dominance")
    _add_models(compare, "1")
    _add_models(compare, "2")
    compare.add_argument("--samples", type=int, default=None, help="random specs for the premium check; PROBPREM_PREMIUM_SAMPLES when omitted")
    compare.add_argument("--seed", type=int, default=None, help="sampling seed; PROBPREM_SEED when omitted")

    share = sub.add_parser("share", parents=[common], formatter_class=formatter, help="pooling versus bearing the loss alone")
    _add_models(share)
    share.add_argument("--n", type=int, default=2, help="pool size")
    share.add_argument("--m", type=float, default=0.0, help="unfairness of the individual price")
    share.add_argument("--eps1", type=float, required=True, help="loss probability")
    share.add_argument("--loss", type=float, default=1.0, help="size of the loss")
    share.add_argument("--w0", type=float, default=0.0, help="initial wealth")
    share.add_argument("--p0", type=float, default=None, help="also report the best point of the budget segment")

    triangle = sub.add_parser("triangle", parents=[common], formatter_class=formatter, help="indifference curve in the (q, p) triangle")
    _add_models(triangle)
    triangle.add_argument("--p0", type=float, required=True, help="loss probability without sharing")
    triangle.add_argument("--loss", type=float, default=1.0, help="size of the loss")
    triangle.add_argument("--w0", type=float, default=0.0, help="initial wealth")
    triangle.add_argument("--format", choices=("csv", "svg"), default="csv", help="output format")
    triangle.add_argument("--out", type=Path, default=None, help="output file (stdout when omitted)")

    check = sub.add_parser("check", parents=[common], formatter_class=formatter, help="run the acceptance checks")
    check.add_argument(
        "--only", action="append", default=None, choices=list(CHECKS), metavar="NAME", help="run only the named check"
    )
    return parser


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments.

    Example:
        >>> parse_args(["kink", "--weighting", "avar:p0=0.5", "--p0", "0.5"]).command
        'kink'
    """
    return build_parser().parse_args(argv)


def _spread(args: argparse.Namespace) -> SpreadSpec:
    return SpreadSpec(w0=args.w0, p0=args.p0, eps1=args.eps1, eps2=args.eps2)


def run_premium(args: argparse.Namespace) -> str:
    report = probability_premium_exact(_spread(args), args.utility, args.weighting)
    return to_json(report)


def run_riskpremium(args: argparse.Namespace) -> str:
    report = risk_premium_exact(_spread(args), args.utility, args.weighting)
    return to_json(report)


def load_nstate(path: Path) -> NStateSpread:
    """Read an n-state spread from ``{"payoffs": [...], "eps1": r, "p0": r, "w0": r}``."""
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return NStateSpread.model_validate({**data, "payoffs": tuple(data.get("payoffs", ()))})


def run_nstate(args: argparse.Namespace) -> str:
    report = nstate_premium_exact(load_nstate(args.spec), args.utility, args.weighting)
    return to_json(report)


def run_attitude(args: argparse.Namespace) -> str:
    result = classify(args.w0, args.p0, args.eps2, args.utility, args.weighting, levels=args.levels)
    return to_json(result)


def run_kink(args: argparse.Namespace) -> str:
    return to_json({"p0": args.p0, "kink_slope": kink_slope(args.weighting, args.p0)})


def run_compare(args: argparse.Namespace) -> str:
    u1, u2 = args.utility1, args.utility2
    h1, h2 = args.weighting1, args.weighting2
    index = check_index_dominance(u1, u2, h1, h2)
    premium = check_premium_dominance(u1, u2, h1, h2, sample_specs(u1, u2, count=args.samples, seed=args.seed))
    witnesses = [v.worst for v in (index, premium) if v.worst is not None]
    if not index.holds:
        counterexample = find_premium_counterexample(u1, u2, h1, h2, seed=args.seed)
        if counterexample is not None and counterexample != premium.worst:
            witnesses.append(counterexample)
    return to_json(
        {
            "index_dominance": index.holds,
            "premium_dominance": premium.holds,
            "checked": {"index": index.checked, "premium": premium.checked},
            "witnesses": witnesses,
        }
    )


def run_share(args: argparse.Namespace) -> str:
    u: UtilityModel = args.utility
    h: WeightingModel = args.weighting
    decision = prefers_pool(args.n, args.m, args.eps1, args.loss, args.w0, u, h)
    try:
        m_star: float | None = critical_m_pool(args.n, args.eps1, args.loss, args.w0, u, h)
    except NoBracket:
        m_star = None
    payload: dict[str, Any] = decision.model_copy(update={"critical_m": m_star}).model_dump(mode="json")
    if args.p0 is not None:
        point, value = best_budget_point(args.p0, args.m, args.eps1, args.loss, args.w0, u, h)
        payload["best_budget_point"] = {"q": point.q, "p": point.p, "value": value}
    return to_json(payload)


def run_triangle(args: argparse.Namespace) -> str:
    trace = trace_indifference(args.p0, args.loss, args.w0, args.utility, args.weighting)
    if args.format == "svg":
        label = f"{args.utility.label()} / {args.weighting.label()}"
        return render_triangle_svg(args.p0, [trace], [label])
    return trace_to_csv(trace)


RUNNERS: dict[str, Callable[[argparse.Namespace], str]] = {
    "premium": run_premium,
    "riskpremium": run_riskpremium,
    "nstate": run_nstate,
    "attitude": run_attitude,
    "kink": run_kink,
    "compare": run_compare,
    "share": run_share,
    "triangle": run_triangle,
}


def run_command(args: argparse.Namespace) -> str:
    """Run a result-producing subcommand inside a logfire span."""
    with logfire.span("probprem {command}", command=args.command):
        return RUNNERS[args.command](args)


__all__ = ["SUBCOMMANDS", "RUNNERS", "build_parser", "parse_args", "load_nstate", "run_command"]
