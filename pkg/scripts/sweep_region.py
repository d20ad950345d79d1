#!/usr/bin/env python
"""Rasterize the (theta, gamma) compliance region for both sanction base modes.

Writes region + frontier CSVs for the section6 preset into ./out/ and
prints where each frontier crosses theta = 0.
"""

from pathlib import Path

from vat_game import cli, coalition
from vat_game.config import build_parameters
from vat_game.model import SanctionBaseMode


def main() -> None:
    out = Path("out")
    out.mkdir(exist_ok=True)
    policy, te = build_parameters("section6", None, None)
    for mode in SanctionBaseMode:
        target = out / f"region_{mode.value}.csv"
        cli.main(
            [
                "region",
                "--preset",
                "section6",
                "--mode",
                mode.value,
                "--theta-step",
                "0.01",
                "--gamma-step",
                "0.01",
                "--out",
                str(target),
            ]
        )
        print(f"wrote {target} and companion frontier file")
        for variant in coalition.FRONTIER_VARIANTS:
            crossing = coalition.gamma_for_compliance_without_deductions(
                variant, policy, te, mode
            )
            print(f"  {mode.value} {variant.value}: gamma at theta=0 -> {crossing}")


if __name__ == "__main__":
    main()
