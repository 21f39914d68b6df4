"""Model primitives and parameter admissibility.

The model is a two-period value chain for a fine-tunable foundation model.
An incumbent developer licenses its model to a downstream deployer at a
per-unit fee and chooses how much of the model to open up (weights, recipes,
checkpoints). Openness cuts the deployer's fine-tuning cost today but leaks
capability to a rival developer who shows up next period as a price follower.
Usage data collected in period 1 feeds back into the incumbent's period-2
model quality (the data flywheel), with strength ``k``.

``ModelParams`` carries everything the solvers need:

- ``theta``: deployer's per-engagement value of model quality,
- ``c``: fine-tuning cost scale,
- ``w_high`` / ``w_low``: the premium and follower per-unit fees,
- ``eta_cap``: the maximum feasible openness level,
- ``k``: data-flywheel strength,
- ``s``: per-unit government adoption subsidy paid to the deployer
  (zero in the baseline game).

Admissibility mirrors the model's maintained assumptions: fees ordered and
capped at half the quality value, subsidy no larger than the follower fee,
and ``k`` no larger than ``k_max``, the level at which a premium-fee
incumbent could win period 2 on flywheel strength alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class Regime(str, Enum):
    """Which period-1 strategy the incumbent commits to in equilibrium."""

    HARVEST = "harvest"      # premium fee, full openness, concede period 2
    DEFEND = "defend"        # premium fee, openness capped to keep the deployer
    DOMINATE = "dominate"    # follower fee, openness capped, keep the deployer


class Winner(str, Enum):
    """Period-2 developer chosen by the deployer."""

    INCUMBENT = "incumbent"
    ENTRANT = "entrant"


@dataclass(frozen=True)
class ModelParams:
    """Immutable parameter bundle for one game instance."""

    theta: float
    c: float
    w_high: float
    w_low: float
    eta_cap: float
    k: float
    s: float = 0.0


@dataclass(frozen=True)
class Strategy:
    """Incumbent period-1 choice: fee (one of the two admissible fees) and openness."""

    w1: float
    eta1: float


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of parameter validation; never raises, lists violations by name."""

    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


class InvalidParams(ValueError):
    """Raised by solvers when handed params that fail validation."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("invalid parameters: " + "; ".join(report.violations))


def k_max(params: ModelParams) -> float:
    """Upper admissibility bound on the flywheel strength ``k``.

    Two forces cap ``k``.  First, at full openness the capped follower-fee
    strategy must not overshoot the openness cap (else the incumbent would
    want negative openness adjustments).  Second, a premium-fee incumbent
    must not be able to retain the deployer purely on flywheel strength, or
    the entrant never matters.  The bound is the min of the two expressions.

    Raises ValueError when theta - w_high + s <= 0 (no positive premium
    margin, the bound is meaningless there).
    """
    t = params.theta + params.s
    m_high = t - params.w_high
    m_low = t - params.w_low
    if m_high <= 0:
        raise ValueError(
            "k_max undefined: theta - w_high + s must be positive, got %g" % m_high
        )
    c2 = 2.0 * params.c
    cap_arg = c2 * params.eta_cap / ((1.0 + params.eta_cap) * m_low)
    entry_arg = (
        c2 * (2.0 * t - params.w_high - params.w_low)
        * (params.w_high - params.w_low)
        / (m_high * m_high * m_low)
    )
    return min(cap_arg, entry_arg)


_FIELDS = ("theta", "c", "w_high", "w_low", "eta_cap", "k", "s")


def validate(params: ModelParams) -> ValidationReport:
    """Check every admissibility condition; collect violations, never raise."""
    v: list[str] = []
    for name in _FIELDS:
        if not math.isfinite(getattr(params, name)):
            v.append(f"{name} is not finite")
    if v:
        return ValidationReport(tuple(v))

    if params.theta <= 0:
        v.append("theta must be positive")
    if params.c <= 0:
        v.append("c must be positive")
    if params.eta_cap <= 0:
        v.append("eta_cap must be positive")
    if params.k < 0:
        v.append("k must be non-negative")
    if params.w_low < 0:
        v.append("w_low is negative")
    if params.w_low > params.w_high:
        v.append("w_low exceeds w_high")
    if params.w_high > params.theta / 2.0:
        v.append("w_high exceeds theta/2")
    if params.s < 0:
        v.append("s is negative")
    elif params.s > params.w_low:
        v.append("s exceeds w_low")

    # The k bound only makes sense once the structural conditions hold.
    if not v and params.k > k_max(params):
        v.append("k exceeds k_max")
    return ValidationReport(tuple(v))


def require_valid(params: ModelParams) -> None:
    """Raise InvalidParams when validation reports any violation."""
    report = validate(params)
    if not report.ok:
        raise InvalidParams(report)
