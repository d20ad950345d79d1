"""Command-line front end.

Subcommands: payoffs, thresholds, region, appendix, validate.
Exit codes: 0 success, 1 usage/config error, 2 reproduction or validation
mismatch. All numeric output is locale-independent fixed point.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Sequence

from . import coalition, dominance, oracle, report
from .config import ConfigError, build_parameters
from .dominance import Sentinel, ThresholdResult
from .model import (
    AuditRegime,
    Event,
    SanctionBaseMode,
    Scenario,
    TaxPolicy,
    TransactionEndowments,
    UndefinedEventError,
    conservation_residual,
    defined_events,
    expected_payoff,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2

_SCENARIOS = {s.value: s for s in Scenario}
_EVENTS = {e.value: e for e in Event}
_MODES = {m.value: m for m in SanctionBaseMode}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the CLI contract wants 1.
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise SystemExit(self.exit_with_usage(message))

    def exit_with_usage(self, message: str) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return EXIT_USAGE


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}f}"


def _regime_name(gamma: float) -> str:
    if gamma == 0.0:
        return "no-audit"
    if gamma == 1.0:
        return "certain-audit"
    return "bayesian"


def _emit(rows: list[dict[str, object]], fmt: str, precision: int, out: str | None) -> None:
    if fmt == "json":
        payload = [
            {
                k: (round(v, precision) if isinstance(v, float) else v)
                for k, v in row.items()
            }
            for row in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        if not rows:
            text = ""
        else:
            header = ",".join(rows[0].keys())
            lines = [header]
            for row in rows:
                lines.append(
                    ",".join(
                        _fmt(v, precision) if isinstance(v, float) else str(v)
                        for v in row.values()
                    )
                )
            text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _threshold_cell(result: ThresholdResult) -> object:
    if result.sentinel is Sentinel.VALUE:
        return float(result.value)
    return result.sentinel.value


# ---------------------------------------------------------------- payoffs


def cmd_payoffs(args: argparse.Namespace) -> int:
    policy, te = build_parameters(args.preset, args.config, args.set)
    mode = _MODES[args.mode]
    scenario = _SCENARIOS[args.scenario]
    gamma = {"no-audit": 0.0, "certain-audit": 1.0, "bayesian": args.gamma}[args.regime]
    if gamma is None:
        raise ConfigError("--gamma is required with --regime bayesian")
    regime = AuditRegime(gamma)

    if args.event is not None:
        events: Sequence[Event] = (_EVENTS[args.event],)
    else:
        events = defined_events(scenario, audited=gamma == 1.0)
        if gamma > 0.0:
            events = [e for e in events if e is not Event.EVADE_LT_APPENDIX]

    rows = []
    for event in events:
        pv = expected_payoff(scenario, regime, event, policy, te, mode)
        rows.append(
            {
                "scenario": scenario.value,
                "regime": _regime_name(gamma),
                "gamma": float(gamma),
                "event": event.value,
                "y_buyer": pv.buyer,
                "y_seller": pv.seller,
                "y_gov": pv.government,
                "total": pv.total(),
                "residual": conservation_residual(pv, te),
            }
        )
    _emit(rows, args.format, args.precision, args.out)
    return EXIT_OK


# -------------------------------------------------------------- thresholds


def cmd_thresholds(args: argparse.Namespace) -> int:
    policy, te = build_parameters(args.preset, args.config, args.set)
    mode = _MODES[args.mode]

    rows: list[dict[str, object]] = []

    def scalar(name: str, tag: str, result: ThresholdResult) -> None:
        rows.append(
            {
                "name": name,
                "tag": tag,
                "value": _threshold_cell(result),
                "slope": "",
                "feasible": str(result.feasible_in_unit_interval).lower(),
                "mode": mode.value,
            }
        )

    scalar("seller_tax_threshold", "eq5", dominance.seller_tax_threshold(policy, te))
    scalar("vat_rate_threshold", "eq7", dominance.vat_rate_threshold(policy, te))
    scalar(
        "buyer_theta_no_audit",
        "eq9",
        dominance.buyer_theta_threshold(AuditRegime(0.0), policy, mode),
    )
    scalar(
        "buyer_theta_certain_audit",
        "prop11",
        dominance.buyer_theta_threshold(AuditRegime(1.0), policy, mode),
    )
    scalar("buyer_gamma_threshold", "result6", dominance.buyer_gamma_threshold(policy))
    scalar(
        "seller_gamma_threshold_ewt",
        "result7",
        dominance.seller_gamma_threshold_ewt(policy, te),
    )
    scalar(
        "seller_gamma_threshold_elt2",
        "eq14",
        dominance.seller_gamma_threshold_elt2(policy, te),
    )

    published_tags = {
        Event.EVADE_LT1: ("theta1", "eq17"),
        Event.EVADE_LT2: ("theta2", "eq18"),
        Event.EVADE_WT: ("theta3", "eq19"),
    }
    for variant in coalition.FRONTIER_VARIANTS:
        name, tag = published_tags[variant]
        line = coalition.published_theta_frontier(variant, policy, te, mode)
        rows.append(
            {
                "name": name,
                "tag": tag,
                "value": line.intercept,
                "slope": line.slope,
                "feasible": str(0.0 <= line.intercept <= 1.0).lower(),
                "mode": mode.value,
            }
        )
        derived = coalition.theta_frontier(variant, policy, te, mode)
        rows.append(
            {
                "name": f"frontier_{variant.value.removeprefix('evade-')}",
                "tag": "payoff-derived",
                "value": derived.intercept,
                "slope": derived.slope,
                "feasible": str(0.0 <= derived.intercept <= 1.0).lower(),
                "mode": mode.value,
            }
        )
        gamma0 = coalition.gamma_for_compliance_without_deductions(
            variant, policy, te, mode
        )
        scalar(
            f"gamma_at_theta0_{variant.value.removeprefix('evade-')}",
            "remark19",
            gamma0,
        )

    _emit(rows, args.format, args.precision, args.out)
    return EXIT_OK


# ------------------------------------------------------------------ region


def _axis(lo: float, hi: float, step: float, name: str) -> list[float]:
    if step <= 0.0:
        raise ConfigError(f"{name} step must be positive")
    if not 0.0 <= lo <= hi <= 1.0:
        raise ConfigError(f"{name} axis must satisfy 0 <= min <= max <= 1")
    values = []
    k = 0
    while True:
        x = lo + k * step
        if x > hi + 1e-12:
            break
        values.append(min(x, hi))
        k += 1
    return values


def cmd_region(args: argparse.Namespace) -> int:
    policy, te = build_parameters(args.preset, args.config, args.set)
    mode = _MODES[args.mode]
    thetas = _axis(args.theta_min, args.theta_max, args.theta_step, "theta")
    gammas = _axis(args.gamma_min, args.gamma_max, args.gamma_step, "gamma")

    rows = []
    for theta in thetas:  # theta outer, gamma inner, row-major
        p = dataclasses.replace(policy, theta=theta)
        for gamma in gammas:
            best = coalition.coalition_best_event(gamma, p, te, mode)[0]
            rows.append(
                {
                    "theta": float(theta),
                    "gamma": float(gamma),
                    "best_event": best.value,
                    "complies": str(best is Event.COMPLY).lower(),
                }
            )
    _emit(rows, args.format, args.precision, args.out)

    frontier_rows = [
        {
            "variant": line.variant.value.removeprefix("evade-"),
            "intercept": line.intercept,
            "slope": line.slope,
            "mode": mode.value,
        }
        for line in (
            coalition.theta_frontier(v, policy, te, mode)
            for v in coalition.FRONTIER_VARIANTS
        )
    ]
    companion = _companion_path(args.out, args.format)
    _emit(frontier_rows, args.format, args.precision, companion)
    return EXIT_OK


def _companion_path(out: str | None, fmt: str) -> str | None:
    if out is None:
        return None
    path = Path(out)
    return str(path.with_name(path.stem + ".frontiers" + path.suffix))


# ---------------------------------------------------------------- appendix


def cmd_appendix(args: argparse.Namespace) -> int:
    if args.preset is None and args.config is None and not args.set:
        policy, te = build_parameters("appendix", None, None)
    else:
        policy, te = build_parameters(args.preset, args.config, args.set)

    table = report.compute_appendix_table(policy, te)
    rows = [
        {"row": row, **{col: table[row][col] for col in report.APPENDIX_COLUMNS}}
        for row in report.APPENDIX_ROWS
    ]
    _emit(rows, args.format, args.precision, args.out)

    mismatches = report.diff_appendix_table(table, tolerance=args.tolerance)
    if mismatches:
        for m in mismatches:
            print(
                f"MISMATCH {m.row}/{m.column}: computed {m.computed:.2f} "
                f"vs published {m.published:.2f} (diff {m.deviation:+.2f})",
                file=sys.stderr,
            )
        return EXIT_MISMATCH
    print("appendix reproduction: all cells match published values", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------- validate


def cmd_validate(args: argparse.Namespace) -> int:
    if args.draws < 1:
        raise ConfigError("--draws must be >= 1")
    rep = oracle.validate(
        seed=args.seed,
        draws=args.draws,
        mode=_MODES[args.mode],
        thresholds_every=args.thresholds_every,
    )
    for line in rep.summary_lines():
        print(line)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=["appendix", "section6"], default=None)
    common.add_argument("--config", metavar="FILE", default=None)
    common.add_argument(
        "--set",
        metavar="KEY=VALUE",
        action="append",
        default=[],
        help="override a single parameter (highest precedence, repeatable)",
    )
    common.add_argument(
        "--mode", choices=list(_MODES), default=SanctionBaseMode.CORRECTED.value
    )
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--precision", type=int, default=6, metavar="N")
    common.add_argument("--out", metavar="PATH", default=None)

    parser = _Parser(prog="vat-game", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("payoffs", parents=[common], help="payoff table per event")
    p.add_argument("--scenario", choices=list(_SCENARIOS), default=Scenario.TAX.value)
    p.add_argument(
        "--regime", choices=["no-audit", "certain-audit", "bayesian"], default="no-audit"
    )
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--event", choices=list(_EVENTS), default=None)
    p.set_defaults(func=cmd_payoffs)

    p = sub.add_parser("thresholds", parents=[common], help="all closed-form thresholds")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("region", parents=[common], help="(theta, gamma) compliance raster")
    p.add_argument("--theta-min", type=float, default=0.0)
    p.add_argument("--theta-max", type=float, default=1.0)
    p.add_argument("--theta-step", type=float, default=0.01)
    p.add_argument("--gamma-min", type=float, default=0.0)
    p.add_argument("--gamma-max", type=float, default=1.0)
    p.add_argument("--gamma-step", type=float, default=0.01)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("appendix", parents=[common], help="reproduce the worked example")
    p.add_argument("--tolerance", type=float, default=0.5, metavar="CURRENCY")
    p.set_defaults(func=cmd_appendix)

    p = sub.add_parser("validate", parents=[common], help="brute-force oracle run")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--draws", type=int, default=10_000)
    p.add_argument(
        "--thresholds-every",
        type=int,
        default=1,
        metavar="K",
        help="bisect thresholds on every K-th draw",
    )
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ConfigError, UndefinedEventError, FileNotFoundError) as exc:
        print(f"vat-game: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
