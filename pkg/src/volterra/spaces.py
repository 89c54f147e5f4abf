"""Weighted sup-norms on the disk and the grids used to estimate suprema.

The weight is ``(1-|z|^2)^alpha``.  Maxima in this problem family concentrate at
the boundary, so the radial grid is geometrically graded toward ``|z| = 1`` and a
golden-section pass in the angle refines the best candidates on the outermost
rungs.  All sweeps are pure and deterministic; refinement can only increase the
reported supremum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import SymbolZeroDerivative
from .series import FunctionHandle, TaylorSeries, evaluate

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SpacePair:
    """Source/target weight exponents (alpha, beta), both >= 0."""

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("weight exponents must be nonnegative")


@dataclass(frozen=True)
class DiskGrid:
    """Polar sampling grid with geometric grading toward the boundary.

    Radial rungs are ``r_k = 1 - 2^(-k/4)`` for ``k = 0..radial_k``; angles are
    uniform.  ``refine_passes`` golden-section rounds are run around the top
    ``refine_top`` angular maxima of the outermost ``outer_rungs`` rungs.
    """

    radial_k: int = 96
    n_angles: int = 512
    refine_passes: int = 3
    refine_top: int = 3
    refine_iters: int = 40
    outer_rungs: int = 8

    def __post_init__(self):
        if self.n_angles < 64:
            raise ValueError("need at least 64 angular nodes")
        if 2.0 ** (-self.radial_k / 4.0) > 1e-6:
            raise ValueError("outermost radial node must reach 1 - 1e-6")

    def one_minus_r(self) -> np.ndarray:
        # stored as exact powers of 2^(1/4); 1 - r is never formed by subtraction
        return 2.0 ** (-np.arange(self.radial_k + 1) / 4.0)

    def radii(self) -> np.ndarray:
        return 1.0 - self.one_minus_r()

    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_angles) / self.n_angles


DEFAULT_GRID = DiskGrid()


@dataclass(frozen=True)
class SupremumReport:
    """Weighted supremum estimate with its arg-max and divergence diagnostics."""

    value: float
    argmax: complex
    divergent: bool = False
    clamped_samples: int = 0

    def __float__(self) -> float:
        return self.value


def _weight(one_minus_r, alpha: float):
    # 1 - r^2 = s (2 - s) with s = 1 - r carried exactly
    if alpha == 0.0:
        return np.ones_like(np.asarray(one_minus_r, dtype=float))
    s = np.asarray(one_minus_r, dtype=float)
    return (s * (2.0 - s)) ** alpha


def _abs_at(f, r: float, theta):
    vals = evaluate(f, r * np.exp(1j * np.asarray(theta, dtype=float)))
    with np.errstate(invalid="ignore", over="ignore"):
        return np.abs(vals)


def _golden_max(fn, lo: float, hi: float, iters: int):
    """Golden-section maximization of a scalar function on [lo, hi]."""
    a, b = lo, hi
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = fn(d)
    return (c, fc) if fc >= fd else (d, fd)


def weighted_sup_details(f: FunctionHandle | TaylorSeries, alpha: float,
                         grid: Optional[DiskGrid] = None) -> SupremumReport:
    """Estimate ``sup (1-|z|^2)^alpha |f(z)|`` over the disk.

    Sweeps the polar grid, then refines the angle around the best candidates on
    the outermost rungs.  For ``alpha = 0`` the weight is short-circuited, and a
    series handle is additionally sampled on the boundary circle (a polynomial
    attains its sup-norm there).
    """
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    grid = grid or DEFAULT_GRID
    if isinstance(f, TaylorSeries):
        f = FunctionHandle.from_series(f)

    s = grid.one_minus_r()
    radii = 1.0 - s
    if alpha == 0.0 and f.is_series:
        radii = np.concatenate([radii, [1.0]])
        s = np.concatenate([s, [0.0]])
    thetas = grid.angles()
    weights = _weight(s, alpha)

    zs = radii[:, None] * np.exp(1j * thetas[None, :])
    with np.errstate(invalid="ignore", over="ignore"):
        mags = np.abs(evaluate(f, zs))
    bad = ~np.isfinite(mags)
    clamped = int(np.count_nonzero(bad))
    vals = weights[:, None] * np.where(bad, np.inf, mags)
    rung_max = np.max(vals, axis=1)
    rung_arg = np.argmax(vals, axis=1)
    i_best = int(np.argmax(rung_max))
    best_val = float(rung_max[i_best])
    best_z = radii[i_best] * np.exp(1j * thetas[rung_arg[i_best]])
    top = []  # (rung index, angle index) seeds for refinement
    for i in range(max(0, len(radii) - grid.outer_rungs), len(radii)):
        order = np.argsort(-vals[i], kind="stable")[: grid.refine_top]
        top.extend((i, int(j2)) for j2 in order)
    if i_best < len(radii) - grid.outer_rungs:
        top.append((i_best, int(rung_arg[i_best])))  # interior maximum seed

    def weighted_abs(r, t):
        w = 1.0 if alpha == 0.0 else (1.0 - r * r) ** alpha
        m = float(_abs_at(f, r, t))
        return w * m if math.isfinite(m) else math.inf

    dtheta = 2.0 * np.pi / grid.n_angles
    for _ in range(grid.refine_passes):
        for i, j in top:
            r = radii[i]
            center = thetas[j]
            t_star, v_star = _golden_max(lambda t, _r=r: weighted_abs(_r, t),
                                         center - dtheta, center + dtheta,
                                         grid.refine_iters)
            if v_star > best_val:
                best_val = v_star
                best_z = r * np.exp(1j * t_star)
            # radial pass between the neighboring rungs at the refined angle,
            # for maxima attained strictly inside the disk
            r_lo = radii[i - 1] if i > 0 else 0.0
            r_hi = radii[i + 1] if i + 1 < len(radii) else radii[i]
            if r_hi > r_lo:
                r_star, v_star = _golden_max(lambda rr, _t=t_star: weighted_abs(rr, _t),
                                             r_lo, r_hi, grid.refine_iters)
                if v_star > best_val:
                    best_val = v_star
                    best_z = r_star * np.exp(1j * t_star)

    divergent = False
    if clamped > 0:
        tail = rung_max[-grid.outer_rungs:]
        growing = np.all(np.diff(tail[np.isfinite(tail)]) > 0) if np.any(np.isfinite(tail)) else True
        divergent = bool(growing or not np.all(np.isfinite(tail)))
    if not math.isfinite(best_val):
        divergent = True
    return SupremumReport(value=float(best_val), argmax=complex(best_z),
                          divergent=divergent, clamped_samples=clamped)


def weighted_sup_norm(f, alpha: float, grid: Optional[DiskGrid] = None) -> float:
    """Weighted sup-norm estimate (the value of :func:`weighted_sup_details`)."""
    return weighted_sup_details(f, alpha, grid).value


def bloch_norm(f: FunctionHandle | TaylorSeries, grid: Optional[DiskGrid] = None) -> float:
    """``|f(0)| + sup (1-|z|^2) |f'(z)|``; needs a derivative evaluator."""
    if isinstance(f, TaylorSeries):
        f = FunctionHandle.from_series(f)
    df = f.derivative_handle()
    return float(abs(evaluate(f, 0j))) + weighted_sup_norm(df, 1.0, grid)


def log_deriv_bloch_seminorm(g, grid: Optional[DiskGrid] = None) -> float:
    """Grid surrogate ``sup (1-|z|^2) |g''(z)/g'(z)|`` for log(g') lying in the Bloch space.

    ``g`` is any object with vectorized ``deriv``/``deriv2`` evaluators (e.g. a
    registry symbol).  Raises SymbolZeroDerivative as soon as ``|g'|`` drops
    below 1e-12 at a grid node: the quotient says nothing about Bloch
    membership across an interior zero of g', so the caller must record the
    flag as unknown rather than trusting a blown-up number.
    """
    grid = grid or DEFAULT_GRID
    s = grid.one_minus_r()
    radii = 1.0 - s
    thetas = grid.angles()
    w = _weight(s, 1.0)
    best = 0.0
    for i, r in enumerate(radii):
        zs = r * np.exp(1j * thetas)
        d1 = np.asarray(g.deriv(zs))
        if np.any(np.abs(d1) < 1e-12):
            raise SymbolZeroDerivative(f"|g'| < 1e-12 at radius {r:.6f}")
        q = np.abs(np.asarray(g.deriv2(zs)) / d1)
        best = max(best, float(w[i] * np.max(q)))
    return best
