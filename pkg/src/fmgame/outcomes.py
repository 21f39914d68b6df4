"""Shared outcome value types.

These live apart from the closed-form solver so the brute-force oracle can
construct the same objects without importing any formula code.
"""

from __future__ import annotations

from dataclasses import dataclass

from .params import Regime, Strategy, Winner


@dataclass(frozen=True)
class PeriodOutcome:
    """Realized per-period quantities. Engagement equals effort by construction."""

    effort: float
    engagement: float
    fee_paid: float      # per-unit fee net of subsidy, what the deployer pays
    openness: float


@dataclass(frozen=True)
class Equilibrium:
    """Subgame-perfect outcome of the two-period game."""

    regime: Regime
    strategy: Strategy
    period1: PeriodOutcome
    period2: PeriodOutcome
    winner2: Winner
    w2: float
    eta2: float
    eta2_tilde: float
    incumbent_profit: float


@dataclass(frozen=True)
class IntegratedOutcome:
    """Two-period outcome of the merged developer-deployer firm."""

    eta1v: float
    eta2v: float
    q1v: float
    q2v: float
    profit: float
    consumer: float
    social: float
