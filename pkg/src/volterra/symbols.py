"""Registry of canonical symbols g with closed forms, Taylor coefficients and metadata.

The analytic facts recorded here (univalence, Bloch membership of log g' or
log g) are hypotheses consumed by the classifier, not computed quantities:
they are declared with a one-line justification and sanity-checked numerically
where the grid surrogate applies.  ``None`` means unknown.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import UnknownSymbolError
from .operators import OperatorKind
from .series import FunctionHandle, TaylorSeries

DEFAULT_DEGREE = 256

# exponents of the lacunary partial sum z^(2^k), k = 0..LACUNARY_K
LACUNARY_K = 8


@dataclass(frozen=True)
class SymbolMetadata:
    is_zero: bool = False
    univalent: bool = False
    log_deriv_bloch: Optional[bool] = None   # log(g') in the Bloch space
    log_symbol_bloch: Optional[bool] = None  # log(g) in the Bloch space
    note: str = ""


@dataclass(frozen=True)
class SymbolSpec:
    """A named symbol with vectorized evaluators for g, g', g''."""

    name: str
    eval: Callable
    deriv: Callable
    deriv2: Callable
    taylor_coeff: Callable  # n -> complex coefficient of z^n
    metadata: SymbolMetadata = field(default_factory=SymbolMetadata)
    tail_bound: Optional[Callable] = None  # (N, r) -> bound on the dropped series tail
    oracles: dict = field(default_factory=dict)

    def taylor(self, degree: int = DEFAULT_DEGREE) -> TaylorSeries:
        return TaylorSeries(tuple(self.taylor_coeff(n) for n in range(degree + 1)))

    def handle(self) -> FunctionHandle:
        return FunctionHandle.closed_form(self.eval, self.deriv, self.deriv2)

    def deriv_handle(self) -> FunctionHandle:
        return FunctionHandle.closed_form(self.deriv, self.deriv2)

    def rotated(self, phi: float) -> "SymbolSpec":
        """The symbol ``z -> g(e^{i phi} z)``; all metadata flags survive rotation."""
        w = complex(math.cos(phi), math.sin(phi))
        return SymbolSpec(
            name=f"{self.name}~rot{phi:.6g}",
            eval=lambda z, _f=self.eval: _f(w * np.asarray(z, dtype=complex)),
            deriv=lambda z, _f=self.deriv: w * _f(w * np.asarray(z, dtype=complex)),
            deriv2=lambda z, _f=self.deriv2: w * w * _f(w * np.asarray(z, dtype=complex)),
            taylor_coeff=lambda n, _c=self.taylor_coeff: (w ** n) * _c(n),
            metadata=self.metadata,
            tail_bound=self.tail_bound,
        )


def _c(z):
    return np.asarray(z, dtype=complex)


def _zero(z):
    return np.zeros_like(_c(z))


def _poly_tail(top_degree: int):
    return lambda N, r: 0.0 if N >= top_degree else float("inf")


def _geom_tail(N, r):
    return r ** (N + 1) / (1.0 - r)


def _lacunary_eval(z):
    # sum of z^(2^k) by repeated squaring
    z = _c(z)
    out = np.zeros_like(z)
    p = z
    for _ in range(LACUNARY_K + 1):
        out = out + p
        p = p * p
    return out


def _lacunary_deriv(z):
    # z^(2^k - 1) satisfies p_{k+1} = p_k^2 * z
    z = _c(z)
    out = np.zeros_like(z)
    p = np.ones_like(z)
    coef = 1.0
    for _ in range(LACUNARY_K + 1):
        out = out + coef * p
        coef *= 2.0
        p = p * p * z
    return out


def _lacunary_deriv2(z):
    # z^(2^k - 2) = (z^(2^(k-1) - 1))^2 for k >= 1
    z = _c(z)
    out = np.zeros_like(z)
    m = np.ones_like(z)  # z^(2^(k-1) - 1), starting at k = 1
    for k in range(1, LACUNARY_K + 1):
        e = float(2 ** k)
        out = out + e * (e - 1.0) * m * m
        m = m * m * z
    return out


_LACUNARY_EXPONENTS = {2 ** k for k in range(LACUNARY_K + 1)}


def _build_registry():
    syms = []

    syms.append(SymbolSpec(
        name="zero",
        eval=_zero, deriv=_zero, deriv2=_zero,
        taylor_coeff=lambda n: 0j,
        metadata=SymbolMetadata(is_zero=True, note="both operators vanish"),
        tail_bound=lambda N, r: 0.0,
    ))

    syms.append(SymbolSpec(
        name="one",
        eval=lambda z: np.ones_like(_c(z)), deriv=_zero, deriv2=_zero,
        taylor_coeff=lambda n: 1 + 0j if n == 0 else 0j,
        metadata=SymbolMetadata(log_symbol_bloch=True,
                                note="T_g vanishes; S_g f = f - f(0)"),
        tail_bound=_poly_tail(0),
    ))

    syms.append(SymbolSpec(
        name="identity",
        eval=lambda z: _c(z), deriv=lambda z: np.ones_like(_c(z)), deriv2=_zero,
        taylor_coeff=lambda n: 1 + 0j if n == 1 else 0j,
        metadata=SymbolMetadata(univalent=True, log_deriv_bloch=True,
                                log_symbol_bloch=False,
                                note="log g' = 0; log g singular at the interior zero"),
        tail_bound=_poly_tail(1),
        oracles={"tg_radial_integral": lambda t, theta: t},
    ))

    syms.append(SymbolSpec(
        name="monomial",
        eval=lambda z: 0.5 * _c(z) ** 2, deriv=lambda z: _c(z),
        deriv2=lambda z: np.ones_like(_c(z)),
        taylor_coeff=lambda n: 0.5 + 0j if n == 2 else 0j,
        metadata=SymbolMetadata(univalent=False, log_deriv_bloch=False,
                                log_symbol_bloch=False,
                                note="g' = z vanishes at 0, so the log-derivative quotient blows up there"),
        tail_bound=_poly_tail(2),
        oracles={"tg_radial_integral": lambda t, theta: 0.5 * t * t if theta == 0.0 else None},
    ))

    def _log_eval(z):
        return -np.log1p(-_c(z))

    syms.append(SymbolSpec(
        name="log",
        eval=_log_eval,
        deriv=lambda z: 1.0 / (1.0 - _c(z)),
        deriv2=lambda z: (1.0 - _c(z)) ** -2.0,
        taylor_coeff=lambda n: 0j if n == 0 else complex(1.0 / n),
        metadata=SymbolMetadata(univalent=True, log_deriv_bloch=True,
                                log_symbol_bloch=False,
                                note="conformal onto a half-plane image; g(0) = 0 kills log g"),
        tail_bound=lambda N, r: _geom_tail(N, r) / (N + 1),
        oracles={"tg_radial_integral": lambda t, theta:
                 -math.log1p(-t) if theta == 0.0 else (math.log1p(t) if theta == math.pi else None)},
    ))

    # koebe1 shares its derivative family (1-z)^(-s), s = 1, with "log"
    syms.append(SymbolSpec(
        name="koebe1",
        eval=_log_eval,
        deriv=lambda z: 1.0 / (1.0 - _c(z)),
        deriv2=lambda z: (1.0 - _c(z)) ** -2.0,
        taylor_coeff=lambda n: 0j if n == 0 else complex(1.0 / n),
        metadata=SymbolMetadata(univalent=True, log_deriv_bloch=True, log_symbol_bloch=False),
        tail_bound=lambda N, r: _geom_tail(N, r) / (N + 1),
    ))

    syms.append(SymbolSpec(
        name="koebe2",
        eval=lambda z: _c(z) / (1.0 - _c(z)),
        deriv=lambda z: (1.0 - _c(z)) ** -2.0,
        deriv2=lambda z: 2.0 * (1.0 - _c(z)) ** -3.0,
        taylor_coeff=lambda n: 0j if n == 0 else 1 + 0j,
        metadata=SymbolMetadata(univalent=True, log_deriv_bloch=True, log_symbol_bloch=False,
                                note="Moebius; g(0) = 0 kills log g"),
        tail_bound=_geom_tail,
    ))

    syms.append(SymbolSpec(
        name="koebe3",
        eval=lambda z: 0.5 * ((1.0 - _c(z)) ** -2.0 - 1.0),
        deriv=lambda z: (1.0 - _c(z)) ** -3.0,
        deriv2=lambda z: 3.0 * (1.0 - _c(z)) ** -4.0,
        taylor_coeff=lambda n: 0j if n == 0 else complex(0.5 * (n + 1)),
        metadata=SymbolMetadata(univalent=True, log_deriv_bloch=True, log_symbol_bloch=False),
        tail_bound=lambda N, r: 0.5 * (N + 2) * r ** (N + 1) / (1.0 - r) ** 2,
    ))

    syms.append(SymbolSpec(
        name="affine",
        eval=lambda z: 1.0 - _c(z),
        deriv=lambda z: -np.ones_like(_c(z)),
        deriv2=_zero,
        taylor_coeff=lambda n: (1 + 0j, -1 + 0j)[n] if n <= 1 else 0j,
        metadata=SymbolMetadata(univalent=True, log_deriv_bloch=True, log_symbol_bloch=True,
                                note="log g = log(1-z) has derivative -1/(1-z), Bloch"),
        tail_bound=_poly_tail(1),
    ))

    syms.append(SymbolSpec(
        name="cayley",
        eval=lambda z: 1.0 / (1.0 - _c(z)),
        deriv=lambda z: (1.0 - _c(z)) ** -2.0,
        deriv2=lambda z: 2.0 * (1.0 - _c(z)) ** -3.0,
        taylor_coeff=lambda n: 1 + 0j,
        metadata=SymbolMetadata(univalent=True, log_deriv_bloch=True, log_symbol_bloch=True,
                                note="Moebius, zero-free; log g = -log(1-z), Bloch"),
        tail_bound=_geom_tail,
    ))

    syms.append(SymbolSpec(
        name="lacunary",
        eval=_lacunary_eval, deriv=_lacunary_deriv, deriv2=_lacunary_deriv2,
        taylor_coeff=lambda n: 1 + 0j if n in _LACUNARY_EXPONENTS else 0j,
        metadata=SymbolMetadata(univalent=False, log_deriv_bloch=None, log_symbol_bloch=None,
                                note="gap-series partial sum; Bloch flags left unknown on purpose"),
        tail_bound=_poly_tail(2 ** LACUNARY_K),
    ))

    return {s.name: s for s in syms}


_REGISTRY = _build_registry()


def registry() -> list:
    """All library symbols in a fixed order."""
    return list(_REGISTRY.values())


def get_symbol(name: str) -> SymbolSpec:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownSymbolError(name) from None


def symbol_names() -> list:
    return list(_REGISTRY.keys())


@dataclass(frozen=True)
class GroundTruthRow:
    """Expected classification of one (symbol, operator, alpha, beta) cell."""

    symbol: str
    operator: OperatorKind
    alpha: float
    beta: float
    boundedness: str            # "Bounded" or "Unbounded"
    compactness: str            # "Compact" or "NotCompact"
    value: Optional[float] = None
    value_tol: Optional[float] = None
    justification: str = ""


def ground_truth_table() -> list:
    """Closed-form expected verdicts used as the acceptance gate."""
    T, S = OperatorKind.Tg, OperatorKind.Sg
    return [
        GroundTruthRow("identity", T, 0, 0, "Bounded", "Compact", 1.0, 1e-4,
                       "sup_theta int_0^t dr = t -> 1; tail t1 - t2 -> 0"),
        GroundTruthRow("log", T, 0, 0, "Unbounded", "NotCompact", None, None,
                       "int_0^t dr/(1-r) = log(1/(1-t)) diverges at theta=0"),
        GroundTruthRow("log", T, 0, 1, "Bounded", "Compact", None, None,
                       "(1-t^2) log(1/(1-t)) -> 0"),
        GroundTruthRow("koebe3", T, 0, 1, "Unbounded", "NotCompact", None, None,
                       "(1-t^2) ((1-t)^-2 - 1)/2 grows like 2^k on the rung schedule"),
        GroundTruthRow("cayley", T, 0, 1, "Bounded", "NotCompact", 2.0, 1e-3,
                       "(1-t^2)(1/(1-t) - 1) = t(1+t) -> 2; weighted |g'| -> 4 not 0"),
        GroundTruthRow("monomial", T, 0, 0, "Bounded", "Compact", 0.5, 1e-4,
                       "sup_theta int_0^t r dr = t^2/2 -> 1/2"),
        GroundTruthRow("lacunary", T, 0, 0, "Bounded", "Compact", float(LACUNARY_K + 1), 1e-3,
                       "int_0^1 g'(r) dr = K+1 terms of size 1; polynomial tail vanishes"),
        GroundTruthRow("cayley", S, 0, 1, "Bounded", "NotCompact", 2.0, 1e-3,
                       "sup (1-|z|^2)/|1-z| = 2; radial limit 2 != 0"),
        GroundTruthRow("affine", S, 1, 0, "Unbounded", "NotCompact", None, None,
                       "int |1-re^{i pi}|/(1-r^2)^2 dr ~ (1/2)/(1-t) diverges"),
        GroundTruthRow("affine", S, 1, 1, "Bounded", "NotCompact", None, None,
                       "sup |1-z| = 2 finite; sup_{|z|=r} |1-z| = 1+r -> 2 != 0"),
        GroundTruthRow("zero", S, 1, 0, "Bounded", "Compact", 0.0, 1e-9,
                       "zero symbol: zero operator, compact"),
        GroundTruthRow("identity", S, 0, 0, "Bounded", "NotCompact", 1.0, 1e-4,
                       "unweighted target: S_g verdict forwarded from T_g; g != 0 blocks compactness"),
        GroundTruthRow("one", S, 0, 0, "Bounded", "NotCompact", 0.0, 1e-9,
                       "g' = 0 so the forwarded ladder vanishes; S_1 f = f - f(0) is not compact"),
        GroundTruthRow("log", S, 1, 1, "Unbounded", "NotCompact", None, None,
                       "sup (1-|z|^2)^0 |log(1/(1-z))| = infinity"),
    ]
