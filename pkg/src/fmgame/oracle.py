"""Brute-force oracle: solves the game numerically, knowing no closed forms.

This module is the independent referee for every formula in the package.
It imports only the primitives (parameters, outcome containers, generic
numerics) and replays the game mechanics directly:

- deployer efforts come from golden-section search on the per-period
  surplus, never from first-order conditions;
- the incumbent's period-1 strategy is found by scanning a uniform openness
  grid for each admissible fee;
- the period-2 subgame is played out move by move: the incumbent may quote
  either fee (including the premium deviation the closed forms rule out),
  the deployer compares surpluses and stays on ties.

Bisection is used only to refine the location of the retention boundary in
openness, so threshold candidates are represented exactly rather than to
grid resolution. If the premium-fee deviation ever strictly wins period 2,
the admissibility bound on k was transcribed wrong and the oracle raises.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .outcomes import Equilibrium, IntegratedOutcome, PeriodOutcome
from .params import ModelParams, Regime, Strategy, Winner, require_valid


@dataclass(frozen=True)
class OracleConfig:
    """Search resolution knobs for the brute-force solver."""

    eta_grid_points: int = 10001
    effort_search: float = 1e-10
    k_grid_points: int = 512


def oracle_best_effort(margin, cost_denominator, c: float = 1.0, tol: float = 1e-10):
    """Numeric maximizer of margin * Q - c Q^2 / denominator over Q >= 0.

    Golden-section search on [0, margin * denominator / c] (the objective is
    negative beyond that, and concave). Non-positive margins return 0.
    Accepts scalars or broadcastable arrays; scalar inputs give a float.
    """
    if np.ndim(margin) == 0 and np.ndim(cost_denominator) == 0:
        m = float(margin)
        d = float(cost_denominator)
        if d <= 0:
            raise ValueError("cost denominator must be positive")
        if m <= 0:
            return 0.0
        return numerics.golden_max_scalar(
            lambda q: m * q - c * q * q / d, 0.0, m * d / c, tol=tol,
        )

    m = np.asarray(margin, dtype=float)
    d = np.asarray(cost_denominator, dtype=float)
    if np.any(d <= 0):
        raise ValueError("cost denominator must be positive")
    m, d = np.broadcast_arrays(m, d)
    hi = np.where(m > 0, m, 0.0) * d / c

    def objective(q):
        return m * q - c * q * q / d

    return numerics.golden_max(objective, np.zeros_like(hi), hi, tol=tol)


def _surplus_at_best(margin, denom, c, tol):
    q = oracle_best_effort(margin, denom, c, tol)
    return q, margin * q - c * q * q / denom


def _stay_gap(params: ModelParams, w1: float, eta1: float, tol: float) -> float:
    # Deployer's period-2 surplus advantage of staying (incumbent at the
    # follower fee) over switching, at a scalar period-1 candidate.
    t = params.theta + params.s
    c = params.c
    m2 = t - params.w_low
    q1 = oracle_best_effort(t - w1, 1.0 + eta1, c, tol)
    one2 = 1.0 + params.eta_cap
    _, v_stay = _surplus_at_best(m2, (1.0 + params.k * q1) * one2, c, tol)
    _, v_switch = _surplus_at_best(m2, (1.0 + eta1) * one2, c, tol)
    return v_stay - v_switch


def oracle_solve_game(params: ModelParams, config: OracleConfig | None = None) -> Equilibrium:
    """Numeric subgame-perfect equilibrium by grid search over strategies.

    For each fee the openness grid is augmented with the bisected retention
    boundary, so defend/dominate optima are located to bisection precision,
    not grid precision. Candidate order (premium fee first, openness
    descending within a fee) implements the documented tie preferences.
    """
    require_valid(params)
    if config is None:
        config = OracleConfig()
    c = params.c
    t = params.theta + params.s
    tol = config.effort_search
    one2 = 1.0 + params.eta_cap
    m2 = t - params.w_low      # period-2 transaction fee is the follower fee

    fees = [params.w_high]
    if params.w_low != params.w_high:
        fees.append(params.w_low)

    best = None   # (profit, fee, eta1, won, w2, q1, q2, dev2_rev)
    premium_deviation_won = False

    for w1 in fees:
        etas = np.linspace(params.eta_cap, 0.0, config.eta_grid_points)
        # Refine the retention boundary and add it as an exact candidate.
        if _stay_gap(params, w1, params.eta_cap, tol) >= 0:
            boundary = params.eta_cap
        else:
            boundary = numerics.largest_true(
                lambda e: _stay_gap(params, w1, e, tol) >= 0,
                0.0, params.eta_cap, xtol=1e-12,
            )
        # The bisected point sits inside the flip's rounding fuzz, and the
        # vectorized re-check below may round the other way. Keep it, plus a
        # nudge strictly into the winning side.
        safe = max(boundary - 1e-9 * max(1.0, params.eta_cap), 0.0)
        etas = np.append(etas, (boundary, safe))

        m1 = t - w1
        q1 = oracle_best_effort(m1, 1.0 + etas, c, tol)

        d_stay = (1.0 + params.k * q1) * one2
        d_switch = (1.0 + etas) * one2
        q2_stay_low, v_stay_low = _surplus_at_best(m2, d_stay, c, tol)
        q2_stay_high, v_stay_high = _surplus_at_best(t - params.w_high, d_stay, c, tol)
        q2_switch, v_switch = _surplus_at_best(m2, d_switch, c, tol)

        wins_low = v_stay_low >= v_switch
        wins_high = v_stay_high >= v_switch
        if np.any(v_stay_high > v_switch + 1e-9 * np.maximum(1.0, np.abs(v_switch))):
            premium_deviation_won = True

        rev_low = np.where(wins_low, params.w_low * q2_stay_low, -np.inf)
        rev_high = np.where(wins_high, params.w_high * q2_stay_high, -np.inf)
        # Ties between the two winning fees go to the follower fee.
        pick_high = rev_high > rev_low
        won = wins_low | wins_high
        rev2 = np.where(won, np.where(pick_high, rev_high, rev_low), 0.0)
        w2 = np.where(pick_high, params.w_high, params.w_low)
        q2 = np.where(won, np.where(pick_high, q2_stay_high, q2_stay_low), q2_switch)

        profit = w1 * q1 + rev2
        i = int(np.argmax(profit))
        cand = (
            float(profit[i]), w1, float(etas[i]), bool(won[i]), float(w2[i]),
            float(q1[i]), float(q2[i]),
            0.0 if won[i] else float(params.w_low * q2_switch[i]),
        )
        if best is None or cand[0] > best[0]:
            best = cand

    if premium_deviation_won:
        raise RuntimeError(
            "oracle: period-2 premium-fee deviation won strictly; "
            "the k admissibility bound is wrong for these params"
        )

    profit, w1, eta1, won, w2, q1, q2, dev2_rev = best
    if won:
        regime = Regime.DEFEND if w1 == params.w_high else Regime.DOMINATE
        winner = Winner.INCUMBENT
    else:
        if w1 != params.w_high:
            raise RuntimeError("oracle: losing follower-fee strategy won the argmax")
        regime = Regime.HARVEST
        winner = Winner.ENTRANT
        w2 = params.w_low

    return Equilibrium(
        regime=regime,
        strategy=Strategy(w1=w1, eta1=eta1),
        period1=PeriodOutcome(effort=q1, engagement=q1,
                              fee_paid=w1 - params.s, openness=eta1),
        period2=PeriodOutcome(effort=q2, engagement=q2,
                              fee_paid=w2 - params.s, openness=params.eta_cap),
        winner2=winner,
        w2=w2,
        eta2=params.eta_cap,
        eta2_tilde=params.eta_cap,
        incumbent_profit=profit,
    )


def oracle_solve_integrated(params: ModelParams, config: OracleConfig | None = None) -> IntegratedOutcome:
    """Numeric outcome of the merged firm by per-period grid search.

    Stage 1 scans the openness grid for the period-1 profit maximum (effort
    by golden section at each grid point, margin theta since fees are
    internal); stage 2 repeats for period 2 given the realized engagement.
    Both scans must discover the full-openness corner on their own.
    """
    require_valid(params)
    if config is None:
        config = OracleConfig()
    c = params.c
    th = params.theta
    tol = config.effort_search
    etas = np.linspace(0.0, params.eta_cap, config.eta_grid_points)

    q1_all, v1_all = _surplus_at_best(th, 1.0 + etas, c, tol)
    i1 = int(np.argmax(v1_all))
    eta1v, q1v = float(etas[i1]), float(q1_all[i1])

    d2 = (1.0 + params.k * q1v) * (1.0 + etas)
    q2_all, v2_all = _surplus_at_best(th, d2, c, tol)
    i2 = int(np.argmax(v2_all))
    eta2v, q2v = float(etas[i2]), float(q2_all[i2])

    profit = float(v1_all[i1] + v2_all[i2])
    consumer = 0.5 * (q1v * q1v + q2v * q2v)
    return IntegratedOutcome(
        eta1v=eta1v, eta2v=eta2v, q1v=q1v, q2v=q2v,
        profit=profit, consumer=consumer, social=profit + consumer,
    )
