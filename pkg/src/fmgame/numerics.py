"""Small numeric utilities shared by the solvers and the brute-force oracle.

Only generic routines live here (golden-section maximization, bisection);
nothing in this module knows about the game.
"""

from __future__ import annotations

import numpy as np

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0
_INVPHI_F = float(_INVPHI)


def golden_max_scalar(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Golden-section maximizer on plain floats (fast path for scalar work).

    Pure comparison search bottoms out near sqrt(eps) argument accuracy, so
    the bracket midpoint gets a final parabolic polish at a spacing wide
    enough to resolve curvature above rounding noise.
    """
    a, b = float(lo), float(hi)
    width = b - a
    while (b - a) > tol:
        d = _INVPHI_F * (b - a)
        x1 = b - d
        x2 = a + d
        if f(x1) >= f(x2):
            b = x2
        else:
            a = x1
    mid = 0.5 * (a + b)
    h = 1e-4 * width
    if h > 0.0 and lo + h <= mid <= hi - h:
        y1, y2, y3 = f(mid - h), f(mid), f(mid + h)
        den = y1 - 2.0 * y2 + y3
        if den < 0.0:
            step = 0.5 * h * (y1 - y3) / den
            xv = mid + max(-h, min(h, step))
            # Near the top the objective is flat to rounding, so demand no
            # strict improvement, just no real regression.
            if f(xv) >= y2 - 64.0 * np.finfo(float).eps * max(1.0, abs(y2)):
                return xv
    return mid


def golden_max(f, lo, hi, tol: float = 1e-10):
    """Golden-section maximizer of a unimodal f on [lo, hi], vectorized.

    lo and hi may be scalars or equal-shape arrays; f must accept arrays of
    that shape. The final bracket midpoint is polished with a parabolic fit
    (same shape result).
    """
    a = np.asarray(lo, dtype=float).copy()
    b = np.asarray(hi, dtype=float).copy()
    width = np.max(b - a) if a.size else 0.0
    if width <= tol:
        return (a + b) / 2.0
    # Shrink every lane each iteration; recompute both probes (simple and
    # branch-free, the objective is cheap).
    a0, b0 = a.copy(), b.copy()
    n_iter = int(np.ceil(np.log(tol / width) / np.log(_INVPHI))) + 1
    for _ in range(n_iter):
        d = _INVPHI * (b - a)
        x1 = b - d
        x2 = a + d
        keep_left = f(x1) >= f(x2)
        b = np.where(keep_left, x2, b)
        a = np.where(keep_left, a, x1)
    mid = (a + b) / 2.0
    # Parabolic polish past the comparison-noise floor (see scalar variant).
    h = 1e-4 * (b0 - a0)
    y1, y2, y3 = f(mid - h), f(mid), f(mid + h)
    den = y1 - 2.0 * y2 + y3
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.where(den < 0.0, 0.5 * h * (y1 - y3) / den, 0.0)
    step = np.clip(np.nan_to_num(step, nan=0.0), -h, h)
    xv = np.clip(mid + step, a0, b0)
    yv = f(xv)
    slack = 64.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(y2))
    return np.where(yv >= y2 - slack, xv, mid)


def bisect_root(f, lo: float, hi: float, xtol: float = 1e-13, max_iter: int = 200) -> float:
    """Bisection root of a scalar f with a sign change on [lo, hi].

    Endpoints evaluating exactly to zero are accepted as roots. Raises
    ValueError when f(lo) and f(hi) share a strict sign.
    """
    flo = f(lo)
    if flo == 0.0:
        return lo
    fhi = f(hi)
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or (hi - lo) < xtol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sign_change_brackets(f, grid) -> list[tuple[float, float]]:
    """Scan a monotone grid and collect [x_i, x_{i+1}] brackets where f changes sign."""
    xs = np.asarray(grid, dtype=float)
    vals = np.array([f(x) for x in xs])
    out = []
    for i in range(len(xs) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            # Treat an exact zero as its own (degenerate) bracket.
            out.append((float(xs[i]), float(xs[i])))
        elif (a > 0) != (b > 0):
            out.append((float(xs[i]), float(xs[i + 1])))
    if vals[-1] == 0.0:
        out.append((float(xs[-1]), float(xs[-1])))
    return out


def largest_true(pred, lo: float, hi: float, xtol: float = 1e-12) -> float:
    """Largest x in [lo, hi] with pred(x) true, given pred(lo) is true.

    Assumes pred flips at most once from true to false as x grows. Returns a
    point on the true side of the boundary.
    """
    if pred(hi):
        return hi
    if not pred(lo):
        raise ValueError("pred(lo) must hold")
    while (hi - lo) > xtol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo
