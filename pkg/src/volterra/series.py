"""Truncated Taylor series and evaluation handles for analytic functions on the disk.

Coefficients are double-precision complex throughout.  A series is an immutable
tuple of coefficients ``c[0] + c[1] z + ... + c[N] z^N``; every operation that can
drop tail terms records the fact in the ``truncated`` flag of its result instead of
failing silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError

# Magnitudes above this are treated as divergent samples, not numbers.  Criterion
# sweeps must survive boundary poles, so overflow is tagged rather than raised.
OVERFLOW_CLAMP = 1e300

# Marker substituted for divergent samples.
DIVERGENT_SAMPLE = complex(math.inf, 0.0)


def is_divergent(value) -> np.ndarray | bool:
    """True where a sample overflowed the clamp or is non-finite."""
    v = np.asarray(value)
    with np.errstate(invalid="ignore", over="ignore"):
        mag = np.abs(v)
    out = ~np.isfinite(mag) | (mag > OVERFLOW_CLAMP)
    return bool(out) if out.ndim == 0 else out


def _clamp(values):
    """Replace divergent samples by the tagged infinite marker."""
    bad = is_divergent(values)
    if np.ndim(values) == 0:
        return DIVERGENT_SAMPLE if bad else complex(values)
    if np.any(bad):
        values = np.array(values, copy=True)
        values[bad] = DIVERGENT_SAMPLE
    return values


@dataclass(frozen=True)
class TaylorSeries:
    """Finite Taylor polynomial ``sum coeffs[n] z^n``.

    ``truncated`` is set when the series is the result of an operation that
    discarded tail coefficients.
    """

    coeffs: tuple
    truncated: bool = False

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coeffs) or (0j,)
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return evaluate_polynomial(self.coeffs, z)

    def derivative(self) -> "TaylorSeries":
        return derivative(self)

    def antiderivative(self) -> "TaylorSeries":
        return antiderivative(self)

    def coefficient(self, n: int) -> complex:
        return self.coeffs[n] if 0 <= n <= self.degree else 0j

    def scaled(self, factor: complex) -> "TaylorSeries":
        return TaylorSeries(tuple(factor * c for c in self.coeffs), self.truncated)

    def __add__(self, other: "TaylorSeries") -> "TaylorSeries":
        n = max(self.degree, other.degree)
        cs = [self.coefficient(k) + other.coefficient(k) for k in range(n + 1)]
        return TaylorSeries(tuple(cs), self.truncated or other.truncated)

    def truncate(self, degree: int) -> "TaylorSeries":
        if degree >= self.degree:
            return self
        dropped = any(c != 0 for c in self.coeffs[degree + 1 :])
        return TaylorSeries(self.coeffs[: degree + 1], self.truncated or dropped)


def evaluate_polynomial(coeffs: Sequence[complex], z):
    """Horner evaluation, vectorized over ``z``; overflow is clamp-tagged."""
    zs = np.asarray(z, dtype=complex)
    acc = np.full(zs.shape, coeffs[-1], dtype=complex)
    with np.errstate(invalid="ignore", over="ignore"):
        for c in reversed(coeffs[:-1]):
            acc = acc * zs + c
    out = _clamp(acc)
    if np.ndim(z) == 0 and np.ndim(out) != 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class FunctionHandle:
    """Either a truncated series or a closed-form evaluator.

    Closed forms carry optional first/second derivative evaluators (all must be
    vectorized over complex numpy arrays).  ``domain_radius`` bounds where
    evaluation is guaranteed finite; it is enforced for closed forms only, since
    a truncated series is an entire function.
    """

    series: Optional[TaylorSeries] = None
    func: Optional[Callable] = None
    dfunc: Optional[Callable] = None
    d2func: Optional[Callable] = None
    domain_radius: float = 1.0

    def __post_init__(self):
        if (self.series is None) == (self.func is None):
            raise ValueError("exactly one of series/func must be given")
        if not (0.0 < self.domain_radius <= 1.0):
            raise ValueError("domain_radius must lie in (0, 1]")

    @property
    def is_series(self) -> bool:
        return self.series is not None

    @classmethod
    def from_series(cls, series: TaylorSeries) -> "FunctionHandle":
        return cls(series=series)

    @classmethod
    def closed_form(cls, func, dfunc=None, d2func=None, domain_radius=1.0) -> "FunctionHandle":
        return cls(func=func, dfunc=dfunc, d2func=d2func, domain_radius=domain_radius)

    def derivative_handle(self) -> "FunctionHandle":
        if self.is_series:
            return FunctionHandle(series=derivative(self.series))
        if self.dfunc is None:
            raise DomainError("closed-form handle has no derivative evaluator")
        return FunctionHandle(func=self.dfunc, dfunc=self.d2func,
                              domain_radius=self.domain_radius)


def evaluate(f: FunctionHandle | TaylorSeries, z):
    """Value of ``f`` at ``z`` (scalar or array).

    Raises DomainError for closed forms sampled at or beyond their domain radius.
    Divergent samples come back as the tagged infinite marker, never as an
    exception.
    """
    if isinstance(f, TaylorSeries):
        return f(z)
    if f.is_series:
        return f.series(z)
    if np.any(np.abs(z) >= f.domain_radius):
        raise DomainError(f"|z| >= domain radius {f.domain_radius}")
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        vals = f.func(np.asarray(z, dtype=complex))
    out = _clamp(vals)
    if np.ndim(z) == 0 and np.ndim(out) != 0:
        return complex(out)
    return out


def derivative(f: TaylorSeries) -> TaylorSeries:
    """Term-by-term derivative; degree drops by one (minimum 0)."""
    if f.degree == 0:
        return TaylorSeries((0j,), f.truncated)
    cs = tuple((n + 1) * f.coeffs[n + 1] for n in range(f.degree))
    return TaylorSeries(cs, f.truncated)


def antiderivative(f: TaylorSeries) -> TaylorSeries:
    """Antiderivative vanishing at 0; degree rises by one."""
    cs = (0j,) + tuple(f.coeffs[n] / (n + 1) for n in range(f.degree + 1))
    return TaylorSeries(cs, f.truncated)


def cauchy_product(f: TaylorSeries, g: TaylorSeries, out_degree: Optional[int] = None) -> TaylorSeries:
    """Coefficient convolution of two series, truncated to ``out_degree``.

    ``out_degree`` defaults to the full product degree and may not exceed it.
    A result shorter than the full product is flagged ``truncated``.
    """
    full = f.degree + g.degree
    if out_degree is None:
        out_degree = full
    if out_degree > full:
        raise ValueError(f"out_degree {out_degree} exceeds product degree {full}")
    conv = np.convolve(np.asarray(f.coeffs), np.asarray(g.coeffs))
    cs = tuple(conv[: out_degree + 1])
    dropped = out_degree < full
    return TaylorSeries(cs, f.truncated or g.truncated or dropped)


def check_derivative_consistency(f: FunctionHandle, h: float = 1e-5,
                                 tol: float = 1e-6, radius: float = 0.5,
                                 n_points: int = 24) -> float:
    """Max central-difference residual of the declared derivative on a fixed probe grid.

    The grid is ``n_points`` points on two circles of radius ``radius`` and
    ``radius/2``.  Returns the worst residual; callers assert it against ``tol``.
    """
    if f.is_series:
        df = f.series.derivative()
        fn, dfn = f.series, df
    else:
        if f.dfunc is None:
            raise DomainError("handle declares no derivative evaluator")
        fn, dfn = f.func, f.dfunc
    worst = 0.0
    for r in (radius, radius / 2.0):
        thetas = 2.0 * np.pi * np.arange(n_points) / n_points
        zs = r * np.exp(1j * thetas)
        fd = (np.asarray(fn(zs + h)) - np.asarray(fn(zs - h))) / (2.0 * h)
        resid = np.max(np.abs(fd - np.asarray(dfn(zs))))
        worst = max(worst, float(resid))
    if worst > tol:
        raise DomainError(f"derivative evaluator inconsistent: residual {worst:.3e} > {tol:.1e}")
    return worst
