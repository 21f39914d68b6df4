"""Policy extensions: vertical integration and an adoption subsidy.

Vertical integration merges the incumbent developer and the deployer. The
per-unit fee becomes an internal transfer, so the merged firm fine-tunes
against the full quality value theta; it opens up fully in both periods
(openness is now pure cost relief, there is no rival left to feed because
the deployer never switches) and the entrant is foreclosed. Integration
trades the entrant's surplus and the double-marginalization wedge against
the openness distortions of the decentralized play; whether the chain, the
consumers, or society gain flips at flywheel thresholds located numerically.

The adoption subsidy pays the deployer s per unit of usage in both periods;
developers still receive their full fee. All margins shift from theta - w
to theta - w + s, which shifts both regime thresholds upward: the subsidy
extends the harvest range (everyone gains, the entrant's arrival is what
the extra engagement feeds) but it also extends the defend range, where the
incumbent strategically *contracts* openness that the baseline would have
conceded, and efforts plus social welfare fall. Subsidy outlays are
reported separately, never silently netted out of social welfare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import numerics
from .closed_form import (
    Equilibrium,
    _solve,
    eta_bar_high,
    eta_bar_low,
    regime_thresholds,
    solve_baseline,
)
from .outcomes import IntegratedOutcome
from .params import InvalidParams, ModelParams, ValidationReport, k_max, require_valid
from .welfare import (
    PolicyComparison,
    WelfareBreakdown,
    welfare_baseline,
    welfare_for_equilibrium,
)

#: Relative tolerance for the closed-form vs rebuild checks in this module.
_CROSS_TOL = 1e-6


@dataclass(frozen=True)
class SubsidizedEquilibrium(Equilibrium):
    """Equilibrium of the subsidized game plus the shifted thresholds."""

    subsidy_spend: float = 0.0
    k_bar_1g: float = math.nan
    k_bar_2g: float = math.nan
    eta_bar_hg: float = math.nan
    eta_bar_lg: float = math.nan


@dataclass(frozen=True)
class ThresholdCrossing:
    """One numerically located policy threshold in k.

    status is "crossing" (value holds the root), "always" (the intervention
    helps on the whole admissible range) or "never" (it never helps).
    """

    value: float | None
    status: str
    n_crossings: int = 0


@dataclass(frozen=True)
class IntegrationThresholds:
    """Flywheel thresholds past which integration helps chain, users, society."""

    chain: ThresholdCrossing
    consumer: ThresholdCrossing
    social: ThresholdCrossing


def solve_integrated(params: ModelParams) -> IntegratedOutcome:
    """Closed-form outcome under vertical integration.

    The merged firm opens fully in both periods and fine-tunes against the
    full margin theta. Efforts are chosen per period (the effort planner is
    myopic, matching the decentralized deployer), so the period-1 effort
    ignores its own flywheel payoff. Fees are internal transfers and the
    subsidy plays no role. Profit and consumer surplus are cross-checked
    against a rebuild from the efforts.
    """
    require_valid(params)
    th, c, k = params.theta, params.c, params.k
    one = 1.0 + params.eta_cap
    q1v = one * th / (2.0 * c)
    q2v = one * (2.0 * c + k * th * one) * th / (4.0 * c * c)

    profit = one * (4.0 * c + one * k * th) * th * th / (8.0 * c * c)
    consumer = one * one * th * th * (1.0 + (1.0 + one * k * th / (2.0 * c)) ** 2) / (8.0 * c * c)

    # Rebuild both from the efforts; abort on drift.
    d2 = (1.0 + k * q1v) * one
    profit_rebuilt = (th * q1v - c * q1v * q1v / one) + (th * q2v - c * q2v * q2v / d2)
    consumer_rebuilt = 0.5 * (q1v * q1v + q2v * q2v)
    for name, a, b in (("profit", profit, profit_rebuilt),
                       ("consumer", consumer, consumer_rebuilt)):
        if abs(a - b) > _CROSS_TOL * max(1.0, abs(a), abs(b)):
            raise RuntimeError(
                "integrated %s cross-validation failed: closed form %r vs rebuild %r"
                % (name, a, b)
            )

    return IntegratedOutcome(
        eta1v=params.eta_cap, eta2v=params.eta_cap,
        q1v=q1v, q2v=q2v,
        profit=profit, consumer=consumer, social=profit + consumer,
    )


def _decentralized_quantities(params: ModelParams, k: float) -> tuple[float, float, float]:
    w = welfare_baseline(replace(params, k=k))
    chain = w.dev1 + w.deployer
    return chain, w.consumer, w.social


def _integrated_quantities(params: ModelParams, k: float) -> tuple[float, float, float]:
    v = solve_integrated(replace(params, k=k))
    return v.profit, v.consumer, v.social


def integration_thresholds(params: ModelParams, k_grid_points: int = 512) -> IntegrationThresholds:
    """Locate the k thresholds where integration starts to pay.

    Three comparisons against the decentralized baseline at the same k:
    chain profit (incumbent revenue + deployer surplus vs merged profit),
    consumer surplus, and social welfare (all four components vs merged
    profit + consumer surplus; the entrant's foreclosed revenue counts
    against integration). Each difference is scanned over [0, k_max] and
    the root is bisected; the scan verifies rather than assumes a single
    sign change and reports how many were seen. params.k is ignored.
    """
    require_valid(params)
    if params.s != 0.0:
        raise InvalidParams(ValidationReport(("integration analysis requires s = 0",)))
    k_hi = k_max(params)
    grid = [k_hi * i / (k_grid_points - 1) for i in range(k_grid_points)]

    results = []
    for idx in range(3):
        def diff(k: float, _i=idx) -> float:
            return _integrated_quantities(params, k)[_i] - _decentralized_quantities(params, k)[_i]

        brackets = numerics.sign_change_brackets(diff, grid)
        if not brackets:
            status = "always" if diff(grid[0]) > 0 else "never"
            results.append(ThresholdCrossing(value=None, status=status, n_crossings=0))
            continue
        lo, hi = brackets[-1]
        root = lo if lo == hi else numerics.bisect_root(diff, lo, hi, xtol=1e-13)
        results.append(ThresholdCrossing(value=root, status="crossing",
                                         n_crossings=len(brackets)))
    return IntegrationThresholds(chain=results[0], consumer=results[1], social=results[2])


def _gains(crossing: ThresholdCrossing, k: float) -> bool:
    if crossing.status == "always":
        return True
    if crossing.status == "never":
        return False
    return k >= crossing.value


def integration_comparison(params: ModelParams) -> PolicyComparison:
    """Baseline vs integrated welfare at the params' own k.

    The subsidy is irrelevant under integration (there is no fee left to
    subsidize through), so the comparison is always against the s = 0
    baseline.
    """
    p0 = replace(params, s=0.0)
    base_eq = _baseline_at(params)
    base = welfare_for_equilibrium(p0, base_eq)
    v = solve_integrated(p0)
    counter = WelfareBreakdown.from_components(
        dev1=v.profit, dev2=0.0, deployer=0.0, consumer=v.consumer,
    )
    th = integration_thresholds(p0)
    gains_chain = _gains(th.chain, params.k)
    gains_user = _gains(th.consumer, params.k)
    if gains_chain and gains_user:
        region = "win_win"
    elif gains_chain or gains_user:
        region = "mixed"
    else:
        region = "lose_lose"
    return PolicyComparison(
        intervention="integration",
        region=region,
        baseline_equilibrium=base_eq,
        baseline=base,
        counterfactual=counter,
        delta=counter.delta(base),
        counterfactual_outcome=v,
    )


def _baseline_at(params: ModelParams) -> Equilibrium:
    return solve_baseline(replace(params, s=0.0))


def solve_subsidized(params: ModelParams) -> SubsidizedEquilibrium:
    """Equilibrium of the game with a per-unit adoption subsidy.

    Same backward induction as the baseline with every deployer margin
    shifted to theta - w + s (developers keep their full fee, the
    government covers s). Regime thresholds shift upward with s. Also
    reports the subsidy outlay s * (alpha1 + alpha2) and the shifted
    thresholds. Accepts s = 0, where it reduces exactly to the baseline.
    """
    require_valid(params)
    eq = _solve(params)
    th = regime_thresholds(params)
    spend = params.s * (eq.period1.engagement + eq.period2.engagement)
    return SubsidizedEquilibrium(
        regime=eq.regime,
        strategy=eq.strategy,
        period1=eq.period1,
        period2=eq.period2,
        winner2=eq.winner2,
        w2=eq.w2,
        eta2=eq.eta2,
        eta2_tilde=eq.eta2_tilde,
        incumbent_profit=eq.incumbent_profit,
        subsidy_spend=spend,
        k_bar_1g=th.k_bar_1,
        k_bar_2g=th.k_bar_2,
        eta_bar_hg=eta_bar_high(params),
        eta_bar_lg=eta_bar_low(params),
    )


def welfare_subsidized(params: ModelParams) -> WelfareBreakdown:
    """Welfare under the subsidy: four private components, outlay excluded."""
    eq = solve_subsidized(params)
    return welfare_for_equilibrium(params, eq)


def subsidy_comparison(params: ModelParams) -> PolicyComparison:
    """Baseline (s = 0) vs subsidized welfare at the params' own k.

    Classifies k into the four diagnostic intervals: below the baseline's
    first threshold (harvest either way, pure uplift), between the baseline
    and subsidized first thresholds (the subsidy flips defend back to
    harvest, every component gains), between the baseline and subsidized
    second thresholds (the subsidy flips dominate back to defend, efforts
    and welfare fall, the incumbent captures the transfer), or elsewhere.
    """
    require_valid(params)
    if params.s <= 0.0:
        raise InvalidParams(ValidationReport(("subsidy comparison requires s > 0",)))
    base_params = replace(params, s=0.0)
    base_eq = _baseline_at(params)
    base = welfare_for_equilibrium(base_params, base_eq)
    sub_eq = solve_subsidized(params)
    counter = welfare_for_equilibrium(params, sub_eq)

    th0 = regime_thresholds(base_params)
    if params.k <= th0.k_bar_1:
        region = "harvest_both"
    elif params.k < sub_eq.k_bar_1g:
        region = "subsidy_all_win"
    elif th0.k_bar_2 < params.k < sub_eq.k_bar_2g:
        region = "subsidy_capture"
    else:
        region = "other"

    return PolicyComparison(
        intervention="subsidy",
        region=region,
        baseline_equilibrium=base_eq,
        baseline=base,
        counterfactual=counter,
        delta=counter.delta(base),
        counterfactual_outcome=sub_eq,
        subsidy_spend=sub_eq.subsidy_spend,
        sw_net_of_spend=counter.social - sub_eq.subsidy_spend,
    )
