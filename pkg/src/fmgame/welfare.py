"""Welfare decomposition and the full-openness mandate counterfactual.

Surplus is split four ways: the incumbent developer's fee revenue, the
entrant's fee revenue, the deployer's fine-tuning surplus, and end-user
surplus. End users with heterogeneous tastes generate engagement alpha_t
per period; aggregate consumer surplus is sum_t alpha_t^2 / 2. Social
welfare is the plain sum of the four components (government outlays under a
subsidy are accounted separately by the policy comparison, never netted out
silently here).

Every component is computed twice: once from the closed-form welfare tables
(rational functions of k) and once rebuilt from the equilibrium efforts
(fee revenue = w * alpha, deployer surplus = margin * alpha - cost, consumer
surplus from engagements). The two routes must agree to 1e-6 relative; a
mismatch aborts with the offending component and regime named, since it
means a table row or the regime mapping was mistranscribed.

The mandate counterfactual pins period-1 openness at the cap. The incumbent
then cannot defend the deployer at any admissible flywheel strength, so the
harvest outcome obtains regardless of k. For strong flywheels the baseline
would have delivered the dominate outcome, whose efforts grow without the
openness distortion; past a threshold k the mandate therefore lowers
deployer surplus, consumer surplus, and social welfare. That threshold is
located by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import numerics
from .closed_form import (
    Equilibrium,
    Regime,
    Winner,
    equilibrium_for_regime,
    regime_thresholds,
    scenario_profits,
    solve_baseline,
)
from .params import InvalidParams, ModelParams, ValidationReport, k_max, require_valid

#: Relative tolerance for the table-vs-rebuild cross-validation.
_CROSS_TOL = 1e-6


@dataclass(frozen=True)
class WelfareBreakdown:
    """Four-component surplus split; social is their exact sum."""

    dev1: float
    dev2: float
    deployer: float
    consumer: float
    social: float

    @classmethod
    def from_components(cls, dev1: float, dev2: float, deployer: float,
                        consumer: float) -> "WelfareBreakdown":
        return cls(dev1=dev1, dev2=dev2, deployer=deployer, consumer=consumer,
                   social=dev1 + dev2 + deployer + consumer)

    def delta(self, other: "WelfareBreakdown") -> "WelfareBreakdown":
        """Component-wise self - other."""
        return WelfareBreakdown.from_components(
            self.dev1 - other.dev1,
            self.dev2 - other.dev2,
            self.deployer - other.deployer,
            self.consumer - other.consumer,
        )


@dataclass(frozen=True)
class PolicyComparison:
    """Paired baseline vs counterfactual welfare for one intervention."""

    intervention: str
    region: str
    baseline_equilibrium: Equilibrium
    baseline: WelfareBreakdown
    counterfactual: WelfareBreakdown
    delta: WelfareBreakdown
    counterfactual_outcome: object | None = None
    subsidy_spend: float = 0.0
    sw_net_of_spend: float | None = None


def _table_components(params: ModelParams, regime: Regime) -> tuple[float, float, float, float]:
    # Closed-form welfare table rows, written as the appendix states them
    # (expanded numerators), with t = theta + s carrying the subsidy.
    t = params.theta + params.s
    c = params.c
    c2 = 2.0 * c
    eta = params.eta_cap
    w_h, w_l = params.w_high, params.w_low
    m_h = t - w_h
    m_l = t - w_l
    one = 1.0 + eta

    prof = scenario_profits(params)

    if regime is Regime.HARVEST:
        dev1 = prof.pi_s0
        dev2 = one * one * m_l * w_l / c2
        deployer = one * (
            (2.0 + eta) * t * t + w_h * w_h + one * w_l * w_l
            - 2.0 * t * (w_h + w_l + eta * w_l)
        ) / (4.0 * c)
        consumer = one * one * (m_h * m_h + one * one * m_l * m_l) / (8.0 * c * c)
    elif regime is Regime.DEFEND:
        d_h = c2 - params.k * m_h
        dev1 = prof.pi_s1
        dev2 = 0.0
        deployer = (
            (2.0 + eta) * t * t + w_h * w_h + one * w_l * w_l
            - 2.0 * t * (w_h + w_l + eta * w_l)
        ) / (2.0 * d_h)
        consumer = (
            (2.0 + eta * (2.0 + eta)) * t * t + w_h * w_h + one * one * w_l * w_l
            - 2.0 * t * (w_h + one * one * w_l)
        ) / (2.0 * d_h * d_h)
    else:
        d_l = c2 - params.k * m_l
        dev1 = prof.pi_s2
        dev2 = 0.0
        deployer = (2.0 + eta) * m_l * m_l / (2.0 * d_l)
        consumer = (2.0 + eta * (2.0 + eta)) * m_l * m_l / (2.0 * d_l * d_l)
    return dev1, dev2, deployer, consumer


def _rebuilt_components(params: ModelParams, eq: Equilibrium) -> tuple[float, float, float, float]:
    # Independent route: rebuild every component from the equilibrium efforts.
    t = params.theta + params.s
    c = params.c
    a1 = eq.period1.engagement
    a2 = eq.period2.engagement
    w1 = eq.strategy.w1
    w2 = eq.w2

    if eq.winner2 is Winner.INCUMBENT:
        dev1 = w1 * a1 + w2 * a2
        dev2 = 0.0
        d2_eff = (1.0 + params.k * a1) * (1.0 + eq.eta2)
    else:
        dev1 = w1 * a1
        dev2 = w2 * a2
        d2_eff = (1.0 + eq.strategy.eta1) * (1.0 + eq.eta2_tilde)

    d1_eff = 1.0 + eq.strategy.eta1
    deployer = ((t - w1) * a1 - c * a1 * a1 / d1_eff) \
        + ((t - w2) * a2 - c * a2 * a2 / d2_eff)
    consumer = 0.5 * (a1 * a1 + a2 * a2)
    return dev1, dev2, deployer, consumer


_COMPONENT_NAMES = ("dev1", "dev2", "deployer", "consumer")


def welfare_for_equilibrium(params: ModelParams, eq: Equilibrium) -> WelfareBreakdown:
    """Welfare breakdown for a solved (or imposed) equilibrium.

    Evaluates the regime's closed-form table row and cross-validates it
    against the rebuild from efforts; raises RuntimeError naming the first
    disagreeing component if the two routes drift beyond 1e-6 relative.
    """
    table = _table_components(params, eq.regime)
    rebuilt = _rebuilt_components(params, eq)
    for name, a, b in zip(_COMPONENT_NAMES, table, rebuilt):
        scale = max(1.0, abs(a), abs(b))
        if abs(a - b) > _CROSS_TOL * scale:
            raise RuntimeError(
                "welfare cross-validation failed for component %r in regime %r: "
                "table %r vs rebuild %r" % (name, eq.regime.value, a, b)
            )
    return WelfareBreakdown.from_components(*table)


def welfare_baseline(params: ModelParams) -> WelfareBreakdown:
    """Equilibrium welfare of the baseline game (s = 0)."""
    eq = solve_baseline(params)
    return welfare_for_equilibrium(params, eq)


def mandate_equilibrium(params: ModelParams) -> Equilibrium:
    """Outcome when period-1 openness is mandated at the cap.

    Full openness hands the entrant the whole spillover, so the incumbent
    cannot retain the deployer at any admissible k; the harvest outcome
    obtains regardless of the flywheel strength, and the premium fee is the
    incumbent's best remaining choice.
    """
    require_valid(params)
    if params.s != 0.0:
        raise InvalidParams(ValidationReport(("mandate analysis requires s = 0",)))
    return equilibrium_for_regime(params, Regime.HARVEST)


def welfare_mandate(params: ModelParams) -> WelfareBreakdown:
    """Welfare under the full-openness mandate (k-independent)."""
    eq = mandate_equilibrium(params)
    return welfare_for_equilibrium(params, eq)


def openness_trap_threshold(params: ModelParams, k_grid_points: int = 512) -> float | None:
    """Flywheel strength past which the mandate lowers social welfare.

    Scans (k_bar_1, k_max] for sign changes of
    f(k) = SW_baseline(k) - SW_mandate and bisects the final bracket to a
    k-resolution of 1e-13 (so the SW gap at the root is far below 1e-8).
    Returns None when f never turns positive on the admissible range (no
    trap: the mandate helps everywhere it binds). k is the only moving
    part; params.k is ignored.
    """
    require_valid(params)
    if params.s != 0.0:
        raise InvalidParams(ValidationReport(("mandate analysis requires s = 0",)))
    from dataclasses import replace

    k_hi = k_max(params)
    th = regime_thresholds(params)
    sw_mandate = welfare_mandate(replace(params, k=0.0)).social
    k_lo = max(th.k_bar_1, 0.0)
    if k_lo >= k_hi:
        return None   # the mandate never binds on the admissible range

    def gap(k: float) -> float:
        return welfare_baseline(replace(params, k=k)).social - sw_mandate

    # Open the interval on the left: at k_bar_1 itself the mandate does not bind.
    eps = 1e-12 * max(1.0, k_hi)
    grid = [k_lo + eps + (k_hi - k_lo - eps) * i / (k_grid_points - 1)
            for i in range(k_grid_points)]
    brackets = numerics.sign_change_brackets(gap, grid)
    if not brackets:
        return None
    lo, hi = brackets[-1]
    if lo == hi:
        return lo
    return numerics.bisect_root(gap, lo, hi, xtol=1e-13)


def mandate_comparison(params: ModelParams) -> PolicyComparison:
    """Baseline vs mandated-openness welfare at the params' own k."""
    base_eq = solve_baseline(params)
    base = welfare_for_equilibrium(params, base_eq)
    counter = welfare_mandate(params)
    th = regime_thresholds(params)
    if params.k <= th.k_bar_1:
        region = "mandate_slack"          # harvest anyway, mandate changes nothing
    else:
        trap = openness_trap_threshold(params)
        region = "trap" if (trap is not None and params.k > trap) else "mandate_binding"
    return PolicyComparison(
        intervention="mandate",
        region=region,
        baseline_equilibrium=base_eq,
        baseline=base,
        counterfactual=counter,
        delta=counter.delta(base),
        counterfactual_outcome=mandate_equilibrium(params),
    )
