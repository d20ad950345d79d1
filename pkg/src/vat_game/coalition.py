"""Bayesian coalition game: buyer+seller joint payoffs and theta(gamma) frontiers.

The coalition only disagrees internally in the deduction scenario, so the
compliant joint strategy is priced there while every evasion variant is
priced in the plain tax scenario.

Two frontier notions coexist:

* ``theta_frontier`` reconstructs the exact compliance boundary from the
  payoff engine (the joint payoff margin is affine in both theta and
  gamma, so two evaluations per axis pin the line down).
* ``published_theta_frontier`` evaluates the closed-form lines printed in
  the source analysis. Its slope agrees with the reconstruction in both
  sanction base modes, and the whole-transaction intercept agrees too, but
  the printed last-transaction intercepts are inconsistent with the payoff
  definitions they were derived from; they are kept as reproduction
  anchors and for the published trade-off discussion.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .dominance import ThresholdResult
from .model import (
    AuditRegime,
    Event,
    SanctionBaseMode,
    Scenario,
    TaxPolicy,
    TransactionEndowments,
    UndefinedEventError,
    expected_payoff,
)

#: Evasion variants that have a compliance frontier.
FRONTIER_VARIANTS = (Event.EVADE_LT1, Event.EVADE_LT2, Event.EVADE_WT)

#: Joint strategies competing in the coalition game, canonical order.
COALITION_EVENTS = (Event.COMPLY,) + FRONTIER_VARIANTS


@dataclass(frozen=True)
class ThresholdLine:
    """Affine compliance bound theta(gamma) = intercept + slope * gamma."""

    variant: Event
    intercept: float
    slope: float
    mode: SanctionBaseMode

    def theta_at(self, gamma: float) -> float:
        return self.intercept + self.slope * gamma


def coalition_payoff(
    event: Event,
    gamma: float,
    policy: TaxPolicy,
    te: TransactionEndowments,
    mode: SanctionBaseMode = SanctionBaseMode.CORRECTED,
) -> float:
    """Summed buyer+seller expected payoff of a joint strategy.

    COMPLY is priced in the deduction scenario; evasion variants in the
    plain tax scenario (deductions only exist on documented transactions).
    """
    if event is Event.EVADE_LT_APPENDIX:
        raise UndefinedEventError(
            "the appendix variant does not participate in the coalition game"
        )
    scenario = Scenario.TAX_WITH_DEDUCTIONS if event is Event.COMPLY else Scenario.TAX
    pv = expected_payoff(scenario, AuditRegime(gamma), event, policy, te, mode)
    return pv.buyer + pv.seller


def theta_frontier(
    variant: Event,
    policy: TaxPolicy,
    te: TransactionEndowments,
    mode: SanctionBaseMode = SanctionBaseMode.CORRECTED,
) -> ThresholdLine:
    """Compliance frontier reconstructed exactly from the payoff engine.

    The margin comply(theta, gamma) - evade(gamma) is affine in theta with
    coefficient x_o*(1 + v*delta) and affine in gamma, so evaluating it at
    theta in {0, 1} and gamma in {0, 1} determines the boundary line.
    """
    if variant not in FRONTIER_VARIANTS:
        raise ValueError(f"no compliance frontier for {variant}")
    if te.x_o * (1.0 + policy.v * policy.delta) == 0.0:
        raise ZeroDivisionError("frontier undefined: x_o*(1 + v*delta) = 0")

    def margin(theta: float, gamma: float) -> float:
        p = replace(policy, theta=theta)
        return coalition_payoff(Event.COMPLY, gamma, p, te, mode) - coalition_payoff(
            variant, gamma, p, te, mode
        )

    base = margin(0.0, 0.0)
    theta_coeff = margin(1.0, 0.0) - base
    gamma_coeff = margin(0.0, 1.0) - base
    return ThresholdLine(
        variant=variant,
        intercept=-base / theta_coeff,
        slope=-gamma_coeff / theta_coeff,
        mode=mode,
    )


def published_theta_frontier(
    variant: Event,
    policy: TaxPolicy,
    te: TransactionEndowments,
    mode: SanctionBaseMode = SanctionBaseMode.PAPER_LITERAL,
) -> ThresholdLine:
    """Compliance frontier as printed in the source analysis.

    Intercept numerators (over x_o*(1 + v*delta)):
      LT1:  v*(delta*x_o + (t_s - v)*x_i)
      LT2:  x_o*delta*v - v*x_i*(1 + t_s)
      WT:   t_s*(x_o - x_i) + v*delta*x_o
    The common slope numerator is v*(1+s_v) + t_s*x_o*(1+s_ys) in
    PAPER_LITERAL mode; CORRECTED restores the x_o factor on the VAT
    sanction term, giving x_o*(v*(1+s_v) + t_s*(1+s_ys)).
    """
    if variant not in FRONTIER_VARIANTS:
        raise ValueError(f"no compliance frontier for {variant}")
    t_s, v, delta = policy.t_s, policy.v, policy.delta
    x_o, x_i = te.x_o, te.x_i
    denom = x_o * (1.0 + v * delta)
    if denom == 0.0:
        raise ZeroDivisionError("frontier undefined: x_o*(1 + v*delta) = 0")

    if variant is Event.EVADE_LT1:
        numerator = v * (delta * x_o + (t_s - v) * x_i)
    elif variant is Event.EVADE_LT2:
        numerator = x_o * delta * v - v * x_i * (1.0 + t_s)
    else:
        numerator = t_s * (x_o - x_i) + v * delta * x_o

    vat_sanction = v * (1.0 + policy.s_v)
    if mode is SanctionBaseMode.CORRECTED:
        vat_sanction *= x_o
    slope_numerator = vat_sanction + t_s * x_o * (1.0 + policy.s_ys)
    return ThresholdLine(
        variant=variant,
        intercept=numerator / denom,
        slope=-slope_numerator / denom,
        mode=mode,
    )


def gamma_for_compliance_without_deductions(
    variant: Event,
    policy: TaxPolicy,
    te: TransactionEndowments,
    mode: SanctionBaseMode = SanctionBaseMode.PAPER_LITERAL,
) -> ThresholdResult:
    """Audit probability at which theta = 0 already sustains joint compliance.

    The gamma-axis crossing -intercept/slope of the published frontier.
    Values above 1 are reported with the feasibility flag down: auditing
    alone cannot do it and deductions are necessary.
    """
    line = published_theta_frontier(variant, policy, te, mode)
    if line.slope == 0.0:
        return ThresholdResult.undefined()
    if line.intercept <= 0.0:
        return ThresholdResult.of(0.0)
    return ThresholdResult.of(-line.intercept / line.slope)


def coalition_best_event(
    gamma: float,
    policy: TaxPolicy,
    te: TransactionEndowments,
    mode: SanctionBaseMode = SanctionBaseMode.CORRECTED,
) -> tuple[Event, ...]:
    """Joint strategies maximizing the coalition payoff, ties in canonical order."""
    payoffs = {
        event: coalition_payoff(event, gamma, policy, te, mode)
        for event in COALITION_EVENTS
    }
    best = max(payoffs.values())
    tol = 1e-9 * te.scale
    return tuple(e for e in COALITION_EVENTS if payoffs[e] >= best - tol)
