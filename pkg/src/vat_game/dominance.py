"""Pairwise strategy comparisons and closed-form compliance thresholds.

Every threshold here is an explicit formula; the oracle module re-derives
each one by bisection over the payoff engine, and the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import (
    CANONICAL_EVENTS,
    AuditRegime,
    Event,
    PayoffVector,
    SanctionBaseMode,
    Scenario,
    TaxPolicy,
    TransactionEndowments,
    expected_payoff,
)

#: Relative tolerance used to classify payoff ties.
TIE_RTOL = 1e-9


class Agent(Enum):
    BUYER = "buyer"
    SELLER = "seller"


def agent_payoff(agent: Agent, pv: PayoffVector) -> float:
    return pv.buyer if agent is Agent.BUYER else pv.seller


class Relation(Enum):
    FIRST_STRICT = "first-strict"
    SECOND_STRICT = "second-strict"
    INDIFFERENT = "indifferent"


@dataclass(frozen=True)
class Preference:
    relation: Relation
    margin: float  # first minus second, in currency units


class Sentinel(Enum):
    VALUE = "value"
    ALWAYS_SATISFIED = "always-satisfied"
    NEVER_SATISFIED = "never-satisfied"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class ThresholdResult:
    """A closed-form bound, or a sentinel when the formula degenerates.

    feasible_in_unit_interval reports whether the bound can bind for a
    rate-valued parameter; values outside [0, 1] are reported as-is, never
    clamped.
    """

    sentinel: Sentinel
    value: float | None = None
    feasible_in_unit_interval: bool = False

    @classmethod
    def of(cls, value: float) -> "ThresholdResult":
        return cls(Sentinel.VALUE, value, 0.0 <= value <= 1.0)

    @classmethod
    def undefined(cls) -> "ThresholdResult":
        return cls(Sentinel.UNDEFINED)

    @classmethod
    def always_satisfied(cls) -> "ThresholdResult":
        return cls(Sentinel.ALWAYS_SATISFIED)

    @classmethod
    def never_satisfied(cls) -> "ThresholdResult":
        return cls(Sentinel.NEVER_SATISFIED)


def compare(
    agent: Agent,
    first: Event,
    second: Event,
    scenario: Scenario,
    regime: AuditRegime,
    policy: TaxPolicy,
    te: TransactionEndowments,
    mode: SanctionBaseMode = SanctionBaseMode.CORRECTED,
) -> Preference:
    """Classify the sign of the agent's expected-payoff margin first-second."""
    margin = agent_payoff(
        agent, expected_payoff(scenario, regime, first, policy, te, mode)
    ) - agent_payoff(agent, expected_payoff(scenario, regime, second, policy, te, mode))
    tol = TIE_RTOL * te.scale
    if abs(margin) <= tol:
        relation = Relation.INDIFFERENT
    elif margin > 0:
        relation = Relation.FIRST_STRICT
    else:
        relation = Relation.SECOND_STRICT
    return Preference(relation, margin)


def seller_tax_threshold(policy: TaxPolicy, te: TransactionEndowments) -> ThresholdResult:
    """Income-tax rate above which the seller prefers EVADE_LT2 to complying.

    t_s* = v*x_i / (x_o - x_i); undefined for a zero-value transaction.
    """
    if te.x_o == te.x_i:
        return ThresholdResult.undefined()
    if te.x_i == 0.0:
        return ThresholdResult.of(0.0)
    return ThresholdResult.of(policy.v * te.x_i / (te.x_o - te.x_i))


def vat_rate_threshold(policy: TaxPolicy, te: TransactionEndowments) -> ThresholdResult:
    """VAT rate below which EVADE_LT2 beats complying for the seller.

    v* = t_s*(x_o - x_i)/x_i; with no input costs the VAT-refund motive
    vanishes and the bound is vacuous (always satisfied).
    """
    if te.x_i == 0.0:
        return ThresholdResult.always_satisfied()
    return ThresholdResult.of(policy.t_s * (te.x_o - te.x_i) / te.x_i)


def buyer_theta_threshold(
    regime: AuditRegime,
    policy: TaxPolicy,
    mode: SanctionBaseMode = SanctionBaseMode.CORRECTED,
) -> ThresholdResult:
    """Deduction share above which the buyer complies in the deduction scenario.

    theta* = (v*delta - gamma*v*(1+s_v)) / (1 + v*delta). The no-audit and
    certain-audit bounds are the gamma=0 and gamma=1 specializations. A
    negative bound means any theta >= 0 already induces buyer compliance.

    The formula is scale-free in x_o, so it is the same in both sanction
    base modes; `mode` is accepted for API uniformity only.
    """
    del mode
    v, delta = policy.v, policy.delta
    value = (v * delta - regime.gamma * v * (1.0 + policy.s_v)) / (1.0 + v * delta)
    return ThresholdResult.of(value)


def buyer_gamma_threshold(policy: TaxPolicy) -> ThresholdResult:
    """Audit probability above which the buyer complies without deductions.

    gamma* = 1 / (1 + s_v).
    """
    return ThresholdResult.of(1.0 / (1.0 + policy.s_v))


def seller_gamma_threshold_ewt(
    policy: TaxPolicy, te: TransactionEndowments
) -> ThresholdResult:
    """Audit probability above which the seller drops whole-transaction evasion.

    gamma* = (x_o - x_i) / (x_o*(1 + s_ys)).
    """
    if te.x_o == 0.0:
        return ThresholdResult.undefined()
    return ThresholdResult.of((te.x_o - te.x_i) / (te.x_o * (1.0 + policy.s_ys)))


def seller_gamma_threshold_elt2(
    policy: TaxPolicy, te: TransactionEndowments
) -> ThresholdResult:
    """Audit probability above which the seller drops EVADE_LT2.

    gamma* = (t_s*(x_o - x_i) - v*x_i) / (t_s*x_o*(1 + s_ys)). When the
    numerator is negative that evasion variant never pays and any audit
    probability deters it; at gamma=0 the condition reduces to the
    seller_tax_threshold comparison.
    """
    if policy.t_s * te.x_o == 0.0:
        return ThresholdResult.undefined()
    gain = policy.t_s * (te.x_o - te.x_i) - policy.v * te.x_i
    if gain < 0.0:
        return ThresholdResult.never_satisfied()
    return ThresholdResult.of(gain / (policy.t_s * te.x_o * (1.0 + policy.s_ys)))


def dominant_events(
    agent: Agent,
    scenario: Scenario,
    regime: AuditRegime,
    policy: TaxPolicy,
    te: TransactionEndowments,
    mode: SanctionBaseMode = SanctionBaseMode.CORRECTED,
) -> tuple[Event, ...]:
    """Events maximizing the agent's expected payoff, by direct enumeration.

    Only the four canonical events compete; the appendix reproduction
    variant is excluded. Ties (within the tie tolerance) are all returned,
    in canonical order.
    """
    payoffs = {
        event: agent_payoff(
            agent, expected_payoff(scenario, regime, event, policy, te, mode)
        )
        for event in CANONICAL_EVENTS
    }
    best = max(payoffs.values())
    tol = TIE_RTOL * te.scale
    return tuple(e for e in CANONICAL_EVENTS if payoffs[e] >= best - tol)
