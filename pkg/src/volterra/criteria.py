"""Boundedness and compactness criteria for the two operators.

Everything here reduces to radial ladders and weighted boundary profiles.
For a weight pair (alpha, beta) the boundedness ladder is

    L(t_k) = (1 - t_k^2)^beta * sup_theta  int_0^{t_k} |g'(r e^{i theta})| / (1-r^2)^alpha dr

evaluated on the geometric schedule ``t_k = 1 - 2^{-k}``.  On that schedule a
logarithmic divergence of the integral turns into linear growth of L against k
and a power divergence into exponential growth, so the finite/infinite decision
is made by regressing ``log L`` against ``k`` over the last reliable rungs
(the slope rule).  Compactness replaces the integral by its tail between two
schedule points, and the pointwise criteria replace it by a weighted modulus of
g or g' on boundary rungs.  All sweeps share one quadrature mesh whose cells
are aligned with the rung schedule, so every prefix integral is a partial sum.

A decision is never forced: when the slope lands between the thresholds the
verdict is Inconclusive with the slope recorded, since no numerical scheme can
tell a finite limsup from sufficiently slow divergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import HypothesisError
from .quadrature import QuadratureConfig, QuadResult, gauss_legendre, integrate_radial
from .series import OVERFLOW_CLAMP
from .spaces import DiskGrid, SpacePair, weighted_sup_details
from .symbols import SymbolSpec
from .operators import OperatorKind

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class VerdictTag(Enum):
    BOUNDED = "Bounded"
    UNBOUNDED = "Unbounded"
    COMPACT = "Compact"
    NOT_COMPACT = "NotCompact"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    tag: VerdictTag
    value: Optional[float] = None
    evidence: tuple = ()
    reason: Optional[str] = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tag is VerdictTag.INCONCLUSIVE and not self.reason:
            raise ValueError("an Inconclusive verdict must carry a reason")

    @property
    def decided(self) -> bool:
        return self.tag is not VerdictTag.INCONCLUSIVE


@dataclass(frozen=True)
class RadialLadder:
    """Criterion values along the rung schedule, with per-rung reliability."""

    t_values: tuple
    values: tuple
    argmax_angles: tuple
    reliable: tuple
    beta: float

    def __post_init__(self):
        ts = self.t_values
        if any(t >= 1.0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("rungs must be strictly increasing and below 1")


@dataclass(frozen=True)
class LadderConfig:
    k_min: int = 3
    k_max: int = 40
    n_angles: int = 512
    refine_top: int = 3
    refine_iters: int = 72
    window: int = 8
    slope_up: float = 0.02
    flat_tol: float = 1e-3
    slope_down: float = -0.02
    divergence_threshold: float = 1e8
    tail_window: int = 5
    compact_tol: float = 1e-3
    not_compact_factor: float = 10.0
    trend_window: int = 5
    nodes_per_cell: int = 16
    cell_rel_tol: float = 1e-9
    max_panels: int = 64
    log_substitution_alpha: float = 0.5

    def __post_init__(self):
        if self.k_min < 1 or self.k_max <= self.k_min:
            raise ValueError("need 1 <= k_min < k_max")
        if self.n_angles < 64:
            raise ValueError("need at least 64 angles")

    def rung_ks(self) -> np.ndarray:
        return np.arange(self.k_min, self.k_max + 1)


DEFAULT_LADDER = LadderConfig()


@dataclass(frozen=True)
class CriterionReport:
    symbol: str
    operator: OperatorKind
    alpha: float
    beta: float
    boundedness: Verdict
    compactness: Verdict
    ladders: dict
    pointwise: dict
    cross_check_agreement: bool
    notes: tuple = ()


# ---------------------------------------------------------------------------
# integrand construction
# ---------------------------------------------------------------------------

def one_minus_z(r, s, theta):
    """``1 - r e^{i theta}`` with the real part assembled from s = 1 - r.

    Near the boundary the naive ``1 - z`` loses all significant digits; the
    identity ``Re(1-z) = s + 2 r sin^2(theta/2)`` does not.
    """
    half = np.sin(0.5 * np.asarray(theta))
    return (s + 2.0 * r * half * half) - 1j * r * np.sin(theta)


def _abs_matrix_fun(symbol: SymbolSpec, which: str) -> Callable:
    """Vectorized ``(r, s, thetas) -> |g'|`` (or ``|g|``) on an outer-product grid."""
    polar = _POLAR_FORMS.get((symbol.name.split("~")[0], which))
    phi = _rotation_angle(symbol)
    if polar is not None:
        def matrix(r, s, thetas, _p=polar, _phi=phi):
            return _p(r[:, None], s[:, None], thetas[None, :] + _phi)
        return matrix
    f = symbol.deriv if which == "deriv" else symbol.eval

    def matrix(r, s, thetas, _f=f):
        z = r[:, None] * np.exp(1j * thetas[None, :])
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            return np.abs(_f(z))
    return matrix


def _rotation_angle(symbol: SymbolSpec) -> float:
    if "~rot" in symbol.name:
        return float(symbol.name.split("~rot")[1])
    return 0.0


def _dist(r, s, theta):
    # |1 - r e^{i theta}| via |1-z|^2 = s^2 + 4 r sin^2(theta/2), stable for s -> 0
    half = np.sin(0.5 * theta)
    return np.sqrt(s * s + 4.0 * r * half * half)


# |g| and |g'| in boundary-stable polar form for the symbols built from 1 - z.
_POLAR_FORMS = {
    ("zero", "deriv"): lambda r, s, t: np.zeros(np.broadcast(r, t).shape),
    ("zero", "eval"): lambda r, s, t: np.zeros(np.broadcast(r, t).shape),
    ("one", "deriv"): lambda r, s, t: np.zeros(np.broadcast(r, t).shape),
    ("one", "eval"): lambda r, s, t: np.ones(np.broadcast(r, t).shape),
    ("identity", "deriv"): lambda r, s, t: np.ones(np.broadcast(r, t).shape),
    ("identity", "eval"): lambda r, s, t: np.broadcast_to(r, np.broadcast(r, t).shape).copy(),
    ("monomial", "deriv"): lambda r, s, t: np.broadcast_to(r, np.broadcast(r, t).shape).copy(),
    ("monomial", "eval"): lambda r, s, t: np.broadcast_to(0.5 * r * r, np.broadcast(r, t).shape).copy(),
    ("affine", "deriv"): lambda r, s, t: np.ones(np.broadcast(r, t).shape),
    ("affine", "eval"): lambda r, s, t: _dist(r, s, t),
    ("log", "deriv"): lambda r, s, t: 1.0 / _dist(r, s, t),
    ("log", "eval"): lambda r, s, t: np.abs(np.log(one_minus_z(r, s, t))),
    ("koebe1", "deriv"): lambda r, s, t: 1.0 / _dist(r, s, t),
    ("koebe1", "eval"): lambda r, s, t: np.abs(np.log(one_minus_z(r, s, t))),
    ("koebe2", "deriv"): lambda r, s, t: _dist(r, s, t) ** -2.0,
    ("koebe2", "eval"): lambda r, s, t: r / _dist(r, s, t),
    ("koebe3", "deriv"): lambda r, s, t: _dist(r, s, t) ** -3.0,
    ("koebe3", "eval"): lambda r, s, t: r * np.abs(2.0 - r * np.exp(1j * t)) / (2.0 * _dist(r, s, t) ** 2),
    ("cayley", "deriv"): lambda r, s, t: _dist(r, s, t) ** -2.0,
    ("cayley", "eval"): lambda r, s, t: 1.0 / _dist(r, s, t),
}


# ---------------------------------------------------------------------------
# the shared ladder engine
# ---------------------------------------------------------------------------

class _LadderEngine:
    """Rung-aligned quadrature mesh shared by every integral criterion.

    Cell j covers ``s in [2^{-j-1}, 2^{-j}]``, so the integral up to rung t_k is
    the prefix sum of the first k cells and the tail between two rungs is a
    prefix difference, per angle.  The angular sup per rung runs over the grid
    angles plus golden-section-refined candidates, all of which are pooled into
    one common angle set: this keeps beta = 0 ladders exactly monotone and the
    whole computation schedule-independent.
    """

    def __init__(self, absmat: Callable, weight_exponent: float, beta: float,
                 cfg: LadderConfig):
        self.cfg = cfg
        self.beta = beta
        self.weight_exponent = weight_exponent
        self.absmat = absmat
        self._use_log = weight_exponent >= cfg.log_substitution_alpha
        self._thetas = 2.0 * np.pi * np.arange(cfg.n_angles) / cfg.n_angles
        self._build_cells()
        self._grid_prefix = self._prefix_at(self._thetas)
        self._refined = self._refine()
        extra_prefix = self._prefix_at(self._refined) if len(self._refined) else \
            np.zeros((cfg.k_max + 1, 0))
        self.prefix_all = np.concatenate([self._grid_prefix, extra_prefix], axis=1)
        self.angles_all = np.concatenate([self._thetas, self._refined])
        sk = 2.0 ** -np.arange(cfg.k_max + 1, dtype=float)
        self.rung_weight = (sk * (2.0 - sk)) ** beta if beta != 0.0 else np.ones(cfg.k_max + 1)
        with np.errstate(over="ignore", invalid="ignore"):
            weighted = self.rung_weight[:, None] * self.prefix_all
        self.values = np.max(weighted, axis=1)
        self.argmax = self.angles_all[np.argmax(weighted, axis=1)]
        self.reliable = self._cell_ok.astype(bool)
        self.clamped = bool(np.any(self._cell_clamped))

    # -- mesh ---------------------------------------------------------------

    def _nodes_for_cell(self, j: int, panels: int):
        n = self.cfg.nodes_per_cell
        x, w = gauss_legendre(n)
        s_hi, s_lo = 2.0 ** -j, 2.0 ** -(j + 1)
        rs, ss, ws = [], [], []
        if self._use_log:
            u_lo, u_hi = -math.log(s_hi), -math.log(s_lo)
            edges = np.linspace(u_lo, u_hi, panels + 1)
            for a, b in zip(edges[:-1], edges[1:]):
                mid, half = 0.5 * (a + b), 0.5 * (b - a)
                u = mid + half * x
                s = np.exp(-u)
                ss.append(s)
                ws.append(half * w * s)
        else:
            edges = np.linspace(s_lo, s_hi, panels + 1)
            for a, b in zip(edges[:-1], edges[1:]):
                mid, half = 0.5 * (a + b), 0.5 * (b - a)
                s = mid + half * x
                ss.append(s)
                ws.append(half * w)
        s = np.concatenate(ss)
        return 1.0 - s, s, np.concatenate(ws)

    def _cell_row(self, j: int, panels: int):
        """Integral of the weighted integrand over cell j, per grid angle."""
        r, s, w = self._nodes_for_cell(j, panels)
        vals = self.absmat(r, s, self._thetas)
        if self.weight_exponent != 0.0:
            wgt = (s * (2.0 - s)) ** -self.weight_exponent
            w = w * wgt
        bad = ~np.isfinite(vals) | (vals > OVERFLOW_CLAMP)
        clamped = bool(np.any(bad))
        if clamped:
            vals = np.where(bad, OVERFLOW_CLAMP, vals)
        return w @ vals, clamped

    def _build_cells(self):
        cfg = self.cfg
        n_cells = cfg.k_max
        rows = np.empty((n_cells, cfg.n_angles))
        errs = np.empty(n_cells)
        panels = np.full(n_cells, 2, dtype=int)
        clamped = np.zeros(n_cells, dtype=bool)
        for j in range(n_cells):
            coarse, c1 = self._cell_row(j, 1)
            fine, c2 = self._cell_row(j, 2)
            rows[j] = fine
            errs[j] = float(np.max(np.abs(fine - coarse)))
            clamped[j] = c1 or c2
        for _ in range(6):
            scale = max(float(np.max(np.sum(rows, axis=0))), 1.0)
            bad = [j for j in range(n_cells)
                   if errs[j] > cfg.cell_rel_tol * scale and panels[j] < cfg.max_panels]
            if not bad:
                break
            for j in bad:
                panels[j] *= 2
                new, cl = self._cell_row(j, int(panels[j]))
                errs[j] = float(np.max(np.abs(new - rows[j])))
                rows[j] = new
                clamped[j] |= cl
        scale = max(float(np.max(np.sum(rows, axis=0))), 1.0)
        self._cell_rows = rows
        self._cell_clamped = clamped
        # reliability of the prefix through cell j: every earlier cell clean
        ok = ~clamped & (errs <= 100.0 * cfg.cell_rel_tol * scale)
        self._cell_ok = np.concatenate([[True], np.cumprod(ok).astype(bool)])
        # flattened node set reused for arbitrary-angle prefix evaluation
        rr, ss, ww, cell_of = [], [], [], []
        for j in range(n_cells):
            r, s, w = self._nodes_for_cell(j, int(panels[j]))
            if self.weight_exponent != 0.0:
                w = w * (s * (2.0 - s)) ** -self.weight_exponent
            rr.append(r)
            ss.append(s)
            ww.append(w)
            cell_of.append(np.full(len(r), j))
        self._node_r = np.concatenate(rr)
        self._node_s = np.concatenate(ss)
        self._node_w = np.concatenate(ww)
        starts = np.concatenate([[0], np.cumsum([len(x) for x in rr])[:-1]])
        self._cell_starts = starts.astype(int)

    def _prefix_at(self, thetas: np.ndarray) -> np.ndarray:
        """Prefix integrals I(t_k, theta) for k = 0..k_max at given angles."""
        if len(thetas) == 0:
            return np.zeros((self.cfg.k_max + 1, 0))
        vals = self.absmat(self._node_r, self._node_s, np.asarray(thetas))
        bad = ~np.isfinite(vals) | (vals > OVERFLOW_CLAMP)
        if np.any(bad):
            vals = np.where(bad, OVERFLOW_CLAMP, vals)
        weighted = self._node_w[:, None] * vals
        cells = np.add.reduceat(weighted, self._cell_starts, axis=0)
        prefix = np.concatenate([np.zeros((1, len(thetas))), np.cumsum(cells, axis=0)])
        return prefix

    # -- angular refinement ---------------------------------------------------

    def _refine(self) -> np.ndarray:
        cfg = self.cfg
        if cfg.refine_top <= 0 or cfg.refine_iters <= 0:
            return np.array([])
        # top angles per rung, deduped: each distinct bracket is optimized once,
        # against the deepest rung that selected it (the sharpest objective),
        # and the refined angles are pooled back into every rung's sup
        deepest = {}
        for k in range(cfg.k_min, cfg.k_max + 1):
            row = self._grid_prefix[k]
            order = np.argsort(-row, kind="stable")[: cfg.refine_top]
            for j in order:
                deepest[int(j)] = k
        items = sorted(deepest.items())
        center = np.asarray([self._thetas[j] for j, _ in items])
        rung = np.asarray([k for _, k in items])
        dtheta = 2.0 * np.pi / cfg.n_angles
        a = center - dtheta
        b = center + dtheta
        c = b - _INV_GOLDEN * (b - a)
        d = a + _INV_GOLDEN * (b - a)

        def batch(th):
            pref = self._prefix_at(th)
            return pref[rung, np.arange(len(th))]

        fc = batch(c)
        fd = batch(d)
        best_t = np.where(fc >= fd, c, d)
        best_v = np.maximum(fc, fd)
        for _ in range(cfg.refine_iters):
            left = fc >= fd
            old_c, old_d, old_fc, old_fd = c, d, fc, fd
            b = np.where(left, old_d, b)
            a = np.where(left, a, old_c)
            span = b - a
            new_c = b - _INV_GOLDEN * span
            new_d = a + _INV_GOLDEN * span
            probe = np.where(left, new_c, new_d)
            fp = batch(probe)
            c = np.where(left, new_c, old_d)
            d = np.where(left, old_c, new_d)
            fc = np.where(left, fp, old_fd)
            fd = np.where(left, old_fc, fp)
            upd = fp > best_v
            best_t = np.where(upd, probe, best_t)
            best_v = np.maximum(best_v, fp)
        return best_t

    # -- derived quantities -----------------------------------------------

    def ladder(self) -> RadialLadder:
        cfg = self.cfg
        ks = cfg.rung_ks()
        sk = 2.0 ** -ks.astype(float)
        return RadialLadder(
            t_values=tuple(1.0 - sk),
            values=tuple(float(v) for v in self.values[ks]),
            argmax_angles=tuple(float(a) for a in self.argmax[ks]),
            reliable=tuple(bool(b) for b in self.reliable[ks]),
            beta=self.beta,
        )

    def tail_sup(self, m: int, k: int) -> float:
        """sup_theta of the weighted tail integral between rungs m < k."""
        diff = self.prefix_all[k] - self.prefix_all[m]
        return float(self.rung_weight[k] * np.max(diff))

    def split_bound(self, k0: int) -> float:
        """Upper bound M + N from splitting the radius range at rung k0.

        Between consecutive rungs the weight decreases while the integral
        increases, so the sup over the whole cell ``R in (t_j, t_{j+1}]`` is at
        most ``weight(t_j) * integral(t_{j+1})``; maximizing these cell bounds
        covers the continuous sup, not just the rung values.  The tail piece
        beyond the cut rung is handled the same way with prefix differences.
        """
        pmax = np.max(self.prefix_all, axis=1)
        m_part = max(float(self.rung_weight[j] * pmax[j + 1]) for j in range(k0))
        if k0 >= self.cfg.k_max:
            return m_part
        n_part = max(
            float(self.rung_weight[k]
                  * np.max(self.prefix_all[k + 1] - self.prefix_all[k0]))
            for k in range(k0, self.cfg.k_max)
        )
        return m_part + n_part


def _ladder_engine(symbol: SymbolSpec, which: str, weight_exponent: float,
                   beta: float, cfg: LadderConfig) -> _LadderEngine:
    return _LadderEngine(_abs_matrix_fun(symbol, which), weight_exponent, beta, cfg)


# ---------------------------------------------------------------------------
# slope rule and tail rule
# ---------------------------------------------------------------------------

def _slope_classify(ks, values, reliable, cfg: LadderConfig, criterion: str):
    """Finite/infinite classification of a rung sequence.

    Returns a Verdict tagged Bounded/Unbounded/Inconclusive.  A plateau of the
    values (relative change below ``flat_tol``) or steady decay reads Bounded;
    log-slope above ``slope_up`` or any value over the divergence threshold
    reads Unbounded; anything else is left open.
    """
    ks = np.asarray(ks, dtype=float)
    values = np.asarray(values, dtype=float)
    rel = np.asarray(reliable, dtype=bool) & np.isfinite(values)
    diag = {"criterion": criterion, "reliable_rungs": int(np.count_nonzero(rel))}
    if np.count_nonzero(rel) < 3:
        return Verdict(VerdictTag.INCONCLUSIVE, reason="fewer than 3 reliable rungs",
                       evidence=(criterion,), diagnostics=diag)
    kk, vv = ks[rel], values[rel]
    vmax = float(np.max(vv))
    if vmax > cfg.divergence_threshold:
        diag["max_value"] = vmax
        return Verdict(VerdictTag.UNBOUNDED, evidence=(criterion, "divergence-threshold"),
                       diagnostics=diag)
    if vmax <= 1e-12:
        return Verdict(VerdictTag.BOUNDED, value=vmax, evidence=(criterion, "identically-small"),
                       diagnostics=diag)
    w = min(cfg.window, len(vv))
    kw, vw = kk[-w:], vv[-w:]
    logs = np.log(np.maximum(vw, 1e-300))
    slope = float(np.polyfit(kw, logs, 1)[0])
    prev = np.maximum(np.abs(vw[:-1]), 1e-300)
    rel_change = float(np.max(np.abs(np.diff(vw)) / prev))
    diag.update(slope=slope, rel_change=rel_change, max_value=vmax)
    if rel_change < cfg.flat_tol:
        return Verdict(VerdictTag.BOUNDED, value=vmax, evidence=(criterion, "slope-rule"),
                       diagnostics=diag)
    if w < cfg.window:
        # a slope measured on a short window cannot tell transient growth of a
        # converging ladder from real divergence; refuse rather than guess
        return Verdict(VerdictTag.INCONCLUSIVE,
                       reason=f"only {w} reliable rungs, the slope rule needs {cfg.window}",
                       evidence=(criterion,), diagnostics=diag)
    if slope > cfg.slope_up:
        return Verdict(VerdictTag.UNBOUNDED, evidence=(criterion, "slope-rule"), diagnostics=diag)
    if slope < cfg.slope_down:
        # steady decay: the limsup is zero, the criterion constant is the rung max
        return Verdict(VerdictTag.BOUNDED, value=vmax, evidence=(criterion, "decaying-ladder"),
                       diagnostics=diag)
    return Verdict(VerdictTag.INCONCLUSIVE,
                   reason=f"slope {slope:.4f} between thresholds "
                          f"({cfg.slope_down}, {cfg.slope_up}) with rung change {rel_change:.2e}",
                   evidence=(criterion,), diagnostics=diag)


def _tail_classify(engine: _LadderEngine, cfg: LadderConfig, criterion: str) -> Verdict:
    """Double-limit tail rule: inner limsup over t1 per fixed t2, outer limit over t2."""
    ks = np.arange(1, cfg.k_max + 1)
    rel_ks = [int(k) for k in ks if engine.reliable[k]]
    if len(rel_ks) < cfg.tail_window + 3:
        return Verdict(VerdictTag.INCONCLUSIVE, reason="too few reliable rungs for the tail rule",
                       evidence=(criterion,))
    inner_ks = rel_ks[-cfg.tail_window:]
    outer_ms = [m for m in rel_ks if m >= cfg.k_min and m < inner_ks[0]]
    if len(outer_ms) < 3:
        return Verdict(VerdictTag.INCONCLUSIVE, reason="tail window leaves no outer rungs",
                       evidence=(criterion,))
    outer = np.array([max(engine.tail_sup(m, k) for k in inner_ks if k > m)
                      for m in outer_ms])
    diag = {"criterion": criterion, "outer_first": float(outer[0]), "outer_last": float(outer[-1])}
    tw = min(cfg.trend_window, len(outer))
    trail = outer[-tw:]
    last = float(outer[-1])
    nonincreasing = bool(np.all(np.diff(trail) <= 1e-12 + 1e-9 * np.abs(trail[:-1])))
    if last < cfg.compact_tol and nonincreasing:
        diag["tail_limit"] = last
        return Verdict(VerdictTag.COMPACT, value=last, evidence=(criterion,), diagnostics=diag)
    plateau = bool(np.max(np.abs(np.diff(trail))) <= 0.25 * max(abs(last), 1e-300))
    if last > cfg.not_compact_factor * cfg.compact_tol and (plateau or trail[-1] >= trail[0]):
        diag["tail_limit"] = last
        return Verdict(VerdictTag.NOT_COMPACT, value=last, evidence=(criterion,), diagnostics=diag)
    return Verdict(VerdictTag.INCONCLUSIVE,
                   reason=f"tail limit estimate {last:.3e} between thresholds",
                   evidence=(criterion,), diagnostics=diag)


# ---------------------------------------------------------------------------
# radial integrals (single angle)
# ---------------------------------------------------------------------------

def _single_angle_integrand(symbol: SymbolSpec, which: str, alpha_int: float, theta: float):
    absmat = _abs_matrix_fun(symbol, which)

    def f(r, s):
        vals = absmat(np.asarray(r), np.asarray(s), np.array([theta]))[:, 0]
        if alpha_int != 0.0:
            vals = vals * (s * (2.0 - s)) ** -alpha_int
        return vals
    return f


def radial_integral(g: SymbolSpec, alpha: float, theta: float, t: float,
                    cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """``int_0^t |g'(r e^{i theta})| / (1-r^2)^alpha dr`` by graded-mesh quadrature."""
    if not (0.0 <= t < 1.0):
        raise ValueError("t must lie in [0, 1)")
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if t == 0.0:
        return QuadResult(0.0, 0.0, 0, False, True)
    return integrate_radial(_single_angle_integrand(g, "deriv", alpha, theta),
                            s_end=1.0 - t, alpha=alpha, cfg=cfg)


def sg_radial_integral(g: SymbolSpec, alpha: float, theta: float, t: float,
                       cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """``int_0^t |g(r e^{i theta})| / (1-r^2)^(alpha+1) dr``; needs alpha > 0."""
    if alpha <= 0:
        raise HypothesisError("the companion-operator integral criterion needs alpha > 0")
    if not (0.0 <= t < 1.0):
        raise ValueError("t must lie in [0, 1)")
    if t == 0.0:
        return QuadResult(0.0, 0.0, 0, False, True)
    return integrate_radial(_single_angle_integrand(g, "eval", alpha + 1.0, theta),
                            s_end=1.0 - t, alpha=alpha + 1.0, cfg=cfg)


# ---------------------------------------------------------------------------
# integral (ladder) criteria
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LadderOutcome:
    ladder: RadialLadder
    verdict: Verdict
    engine: _LadderEngine


def tg_boundedness(g: SymbolSpec, pair: SpacePair,
                   cfg: Optional[LadderConfig] = None,
                   engine: Optional[_LadderEngine] = None) -> LadderOutcome:
    """Boundedness ladder for the operator ``f -> int f g'``."""
    cfg = cfg or DEFAULT_LADDER
    engine = engine or _ladder_engine(g, "deriv", pair.alpha, pair.beta, cfg)
    ks = np.arange(cfg.k_min, cfg.k_max + 1)
    verdict = _slope_classify(ks, engine.values[ks], engine.reliable[ks], cfg,
                              "tg-radial-ladder")
    return LadderOutcome(engine.ladder(), verdict, engine)


def sg_boundedness(g: SymbolSpec, pair: SpacePair,
                   cfg: Optional[LadderConfig] = None,
                   engine: Optional[_LadderEngine] = None) -> LadderOutcome:
    """Boundedness ladder for ``f -> int f' g`` (source exponent must be positive)."""
    if pair.alpha <= 0:
        raise HypothesisError("the companion-operator ladder needs alpha > 0; "
                              "use the forwarded criterion at alpha = beta = 0")
    cfg = cfg or DEFAULT_LADDER
    engine = engine or _ladder_engine(g, "eval", pair.alpha + 1.0, pair.beta, cfg)
    ks = np.arange(cfg.k_min, cfg.k_max + 1)
    verdict = _slope_classify(ks, engine.values[ks], engine.reliable[ks], cfg,
                              "sg-radial-ladder")
    return LadderOutcome(engine.ladder(), verdict, engine)


def tg_tail_compactness(g: SymbolSpec, pair: SpacePair,
                        cfg: Optional[LadderConfig] = None,
                        engine: Optional[_LadderEngine] = None) -> Verdict:
    """Tail-ladder compactness rule for ``f -> int f g'``."""
    cfg = cfg or DEFAULT_LADDER
    engine = engine or _ladder_engine(g, "deriv", pair.alpha, pair.beta, cfg)
    return _tail_classify(engine, cfg, "tg-tail-ladder")


def full_integral_sup(g: SymbolSpec, cfg: Optional[LadderConfig] = None,
                      engine: Optional[_LadderEngine] = None):
    """``sup_theta int_0^1 |g'(r e^{i theta})| dr`` via the monotone ladder limit.

    Only meaningful in the unweighted case alpha = beta = 0, where the ladder is
    nondecreasing and its limit equals the sup of the full integral.  Returns
    ``(value, verdict)`` with the verdict matching the boundedness ladder.
    """
    cfg = cfg or DEFAULT_LADDER
    outcome = tg_boundedness(g, SpacePair(0.0, 0.0), cfg, engine)
    rel = [v for v, ok in zip(outcome.ladder.values, outcome.ladder.reliable) if ok]
    value = rel[-1] if rel else math.inf
    if outcome.verdict.tag is VerdictTag.UNBOUNDED:
        value = math.inf
    verdict = Verdict(outcome.verdict.tag, None if math.isinf(value) else value,
                      evidence=outcome.verdict.evidence + ("monotone-full-integral",),
                      reason=outcome.verdict.reason,
                      diagnostics=dict(outcome.verdict.diagnostics))
    return value, verdict


# ---------------------------------------------------------------------------
# pointwise criteria
# ---------------------------------------------------------------------------

def _pointwise_profile(g: SymbolSpec, which: str, exponent: float, cfg: LadderConfig):
    """Weighted boundary profile ``(s(2-s))^exponent sup_theta |h(t_k e^{i theta})|``."""
    absmat = _abs_matrix_fun(g, which)
    ks = cfg.rung_ks()
    s = 2.0 ** -ks.astype(float)
    r = 1.0 - s
    thetas = 2.0 * np.pi * np.arange(cfg.n_angles) / cfg.n_angles
    vals = absmat(r, s, thetas)
    bad = ~np.isfinite(vals) | (vals > OVERFLOW_CLAMP)
    clamped = bool(np.any(bad))
    if clamped:
        # clamped samples read as "as large as representable": they can only
        # push the profile over the divergence threshold, never hide growth
        vals = np.where(bad, OVERFLOW_CLAMP, vals)
    sup_raw = np.max(vals, axis=1)
    dtheta = 2.0 * np.pi / cfg.n_angles
    for i, k in enumerate(ks):
        order = np.argsort(-vals[i], kind="stable")[: cfg.refine_top]
        for j in order:
            lo, hi = thetas[j] - dtheta, thetas[j] + dtheta

            def obj(th, _i=i):
                v = absmat(r[_i:_i + 1], s[_i:_i + 1], np.array([th]))[0, 0]
                return float(v) if np.isfinite(v) else OVERFLOW_CLAMP
            t_best, v_best = _golden_scalar(obj, lo, hi, cfg.refine_iters)
            sup_raw[i] = max(sup_raw[i], v_best)
    with np.errstate(over="ignore"):
        weights = (s * (2.0 - s)) ** exponent
        profile = weights * sup_raw
    return ks, profile, clamped


def _golden_scalar(fn, lo, hi, iters):
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


def _pointwise_value(g: SymbolSpec, which: str, exponent: float,
                     profile_max: float, grid: Optional[DiskGrid]) -> float:
    """Sup over the whole disk: boundary rungs plus an interior sweep when the
    weight exponent is nonnegative (interior maxima exist only then)."""
    if exponent < 0:
        return profile_max
    handle = g.deriv_handle() if which == "deriv" else g.handle()
    interior = weighted_sup_details(handle, exponent, grid).value
    return max(profile_max, interior)


def tg_pointwise(g: SymbolSpec, pair: SpacePair,
                 cfg: Optional[LadderConfig] = None,
                 grid: Optional[DiskGrid] = None) -> Verdict:
    """Weighted-derivative sup criterion ``sup (1-|z|^2)^(beta+1-alpha) |g'|`` (beta > 0)."""
    if pair.beta <= 0:
        raise HypothesisError("the pointwise derivative criterion applies only for beta > 0")
    cfg = cfg or DEFAULT_LADDER
    exponent = pair.beta + 1.0 - pair.alpha
    ks, profile, _ = _pointwise_profile(g, "deriv", exponent, cfg)
    verdict = _slope_classify(ks, profile, np.ones(len(ks), dtype=bool), cfg,
                              "tg-pointwise-sup")
    if verdict.tag is VerdictTag.BOUNDED:
        value = _pointwise_value(g, "deriv", exponent, float(np.max(profile)), grid)
        verdict = Verdict(VerdictTag.BOUNDED, value=value, evidence=verdict.evidence,
                          diagnostics=verdict.diagnostics)
    return verdict


def sg_pointwise(g: SymbolSpec, pair: SpacePair,
                 cfg: Optional[LadderConfig] = None,
                 grid: Optional[DiskGrid] = None) -> Verdict:
    """Weighted-symbol sup criterion ``sup (1-|z|^2)^(beta-alpha) |g|`` (beta > 0)."""
    if pair.beta <= 0:
        raise HypothesisError("the pointwise symbol criterion applies only for beta > 0")
    cfg = cfg or DEFAULT_LADDER
    exponent = pair.beta - pair.alpha
    ks, profile, _ = _pointwise_profile(g, "eval", exponent, cfg)
    verdict = _slope_classify(ks, profile, np.ones(len(ks), dtype=bool), cfg,
                              "sg-pointwise-sup")
    if verdict.tag is VerdictTag.BOUNDED:
        value = _pointwise_value(g, "eval", exponent, float(np.max(profile)), grid)
        verdict = Verdict(VerdictTag.BOUNDED, value=value, evidence=verdict.evidence,
                          diagnostics=verdict.diagnostics)
    return verdict


def pointwise_compactness(g: SymbolSpec, pair: SpacePair, operator: OperatorKind,
                          cfg: Optional[LadderConfig] = None) -> Verdict:
    """Vanishing weighted modulus at the boundary (beta > 0): outer-rung maxima
    must fall below tolerance with a decreasing trend."""
    if pair.beta <= 0:
        if operator is OperatorKind.Sg:
            raise HypothesisError("for an unweighted target use the zero-symbol rule")
        raise HypothesisError("the pointwise compactness criterion applies only for beta > 0")
    cfg = cfg or DEFAULT_LADDER
    if operator is OperatorKind.Tg:
        which, exponent, criterion = "deriv", pair.beta + 1.0 - pair.alpha, "tg-pointwise-vanishing"
    else:
        which, exponent, criterion = "eval", pair.beta - pair.alpha, "sg-pointwise-vanishing"
    ks, profile, _ = _pointwise_profile(g, which, exponent, cfg)
    tw = min(cfg.trend_window, len(profile))
    trail = profile[-tw:]
    last = float(trail[-1])
    diag = {"criterion": criterion, "profile_last": last, "profile_max": float(np.max(profile))}
    nonincreasing = bool(np.all(np.diff(trail) <= 1e-12 + 1e-9 * np.abs(trail[:-1])))
    if last < cfg.compact_tol and nonincreasing:
        return Verdict(VerdictTag.COMPACT, value=last, evidence=(criterion,), diagnostics=diag)
    plateau = bool(np.max(np.abs(np.diff(trail))) <= 0.25 * max(abs(last), 1e-300))
    if last > cfg.not_compact_factor * cfg.compact_tol and (plateau or trail[-1] >= trail[0]):
        return Verdict(VerdictTag.NOT_COMPACT, value=last, evidence=(criterion,), diagnostics=diag)
    return Verdict(VerdictTag.INCONCLUSIVE,
                   reason=f"boundary profile {last:.3e} between thresholds",
                   evidence=(criterion,), diagnostics=diag)


def sg_zero_symbol_compactness(g: SymbolSpec) -> Verdict:
    """Into an unweighted target the companion operator is compact only for g = 0."""
    if g.metadata.is_zero:
        return Verdict(VerdictTag.COMPACT, value=0.0, evidence=("zero-symbol-rule",))
    rs = np.linspace(0.05, 0.95, 19)
    thetas = 2.0 * np.pi * np.arange(64) / 64.0
    z = rs[:, None] * np.exp(1j * thetas[None, :])
    if float(np.max(np.abs(g.eval(z)))) < 1e-14:
        return Verdict(VerdictTag.COMPACT, value=0.0, evidence=("zero-symbol-rule",))
    return Verdict(VerdictTag.NOT_COMPACT, evidence=("zero-symbol-rule",),
                   diagnostics={"criterion": "zero-symbol-rule"})


# ---------------------------------------------------------------------------
# verdict merging and the classifier
# ---------------------------------------------------------------------------

def _flag_true(flag) -> bool:
    return flag is True


def _tg_necessity_ok(g: SymbolSpec) -> bool:
    # univalent symbols automatically have log g' in the Bloch space
    return _flag_true(g.metadata.log_deriv_bloch) or g.metadata.univalent


def _merge(claims, missing_reason: str):
    decided = [c for c in claims if c.decided]
    if not decided:
        reasons = "; ".join(c.reason or "no applicable criterion" for c in claims) or missing_reason
        return Verdict(VerdictTag.INCONCLUSIVE, reason=reasons,
                       evidence=tuple(e for c in claims for e in c.evidence)), True
    tags = {c.tag for c in decided}
    if len(tags) > 1:
        detail = ", ".join(f"{c.evidence[0] if c.evidence else '?'}={c.tag.value}" for c in decided)
        return Verdict(VerdictTag.INCONCLUSIVE,
                       reason=f"applicable criteria disagree ({detail}); numerical fault",
                       evidence=tuple(e for c in decided for e in c.evidence)), False
    value = next((c.value for c in decided if c.value is not None), None)
    evidence = tuple(e for c in decided for e in c.evidence)
    diags = {}
    for c in decided:
        diags.update(c.diagnostics)
    return Verdict(decided[0].tag, value=value, evidence=evidence, diagnostics=diags), True


def _sufficiency_only(verdict: Verdict, necessity_ok: bool, hypothesis: str) -> Verdict:
    """Keep a divergent ladder from claiming unboundedness when the necessity
    hypothesis is not known to hold; label one-sided evidence."""
    if verdict.tag is VerdictTag.UNBOUNDED and not necessity_ok:
        return Verdict(VerdictTag.INCONCLUSIVE,
                       reason=f"ladder divergent, but unboundedness needs {hypothesis}",
                       evidence=verdict.evidence + ("sufficient-only",),
                       diagnostics=verdict.diagnostics)
    if verdict.tag is VerdictTag.BOUNDED and not necessity_ok:
        return Verdict(verdict.tag, verdict.value,
                       evidence=verdict.evidence + ("sufficient-only",),
                       diagnostics=verdict.diagnostics)
    if verdict.decided:
        return Verdict(verdict.tag, verdict.value,
                       evidence=verdict.evidence + ("iff",),
                       diagnostics=verdict.diagnostics)
    return verdict


def classify(g: SymbolSpec, operator: OperatorKind, pair: SpacePair,
             cfg: Optional[LadderConfig] = None,
             grid: Optional[DiskGrid] = None) -> CriterionReport:
    """Run every criterion whose hypotheses hold and merge the verdicts.

    Two applicable criteria that decide differently downgrade the verdict to
    Inconclusive: the theory proves they agree, so disagreement flags a
    numerical fault rather than a property of the symbol.
    """
    cfg = cfg or DEFAULT_LADDER
    ladders, pointwise, notes = {}, {}, []

    if operator is OperatorKind.Tg:
        outcome = tg_boundedness(g, pair, cfg)
        ladders["tg-radial-ladder"] = outcome.ladder
        bound_claims = [_sufficiency_only(outcome.verdict, _tg_necessity_ok(g),
                                          "log g' in the Bloch space")]
        if not _tg_necessity_ok(g):
            notes.append("ladder evidence is one-sided: log g' Bloch membership unknown")
        if pair.beta > 0:
            pw = tg_pointwise(g, pair, cfg, grid)
            pointwise["tg-pointwise-sup"] = pw.value if pw.value is not None else math.nan
            bound_claims.append(pw)
        boundedness, agree_b = _merge(bound_claims, "no boundedness criterion applied")

        compact_claims = []
        if boundedness.tag is VerdictTag.UNBOUNDED:
            compact_claims.append(Verdict(VerdictTag.NOT_COMPACT,
                                          evidence=("compactness-implies-boundedness",)))
        tail = tg_tail_compactness(g, pair, cfg, outcome.engine)
        if tail.tag is VerdictTag.NOT_COMPACT and not _tg_necessity_ok(g):
            tail = Verdict(VerdictTag.INCONCLUSIVE,
                           reason="tail does not vanish, but non-compactness needs "
                                  "log g' in the Bloch space",
                           evidence=tail.evidence + ("sufficient-only",),
                           diagnostics=tail.diagnostics)
        compact_claims.append(tail)
        if pair.beta > 0:
            compact_claims.append(pointwise_compactness(g, pair, operator, cfg))
        compactness, agree_c = _merge(compact_claims, "no compactness criterion applied")

    else:
        if pair.alpha == 0.0 and pair.beta == 0.0:
            fwd = tg_boundedness(g, pair, cfg)
            ladders["tg-radial-ladder"] = fwd.ladder
            v = _sufficiency_only(fwd.verdict, _tg_necessity_ok(g), "log g' in the Bloch space")
            boundedness = Verdict(v.tag, v.value,
                                  evidence=v.evidence + ("unweighted-forwarding",),
                                  reason=v.reason, diagnostics=v.diagnostics)
            notes.append("unweighted companion verdict forwarded from the T_g criterion")
            agree_b = True
        else:
            bound_claims = []
            if pair.alpha > 0.0:
                outcome = sg_boundedness(g, pair, cfg)
                ladders["sg-radial-ladder"] = outcome.ladder
                bound_claims.append(_sufficiency_only(
                    outcome.verdict, _flag_true(g.metadata.log_symbol_bloch),
                    "log g in the Bloch space"))
                if not _flag_true(g.metadata.log_symbol_bloch):
                    notes.append("companion ladder evidence is one-sided: "
                                 "log g Bloch membership unknown")
            if pair.beta > 0.0:
                pw = sg_pointwise(g, pair, cfg, grid)
                pointwise["sg-pointwise-sup"] = pw.value if pw.value is not None else math.nan
                bound_claims.append(pw)
            boundedness, agree_b = _merge(bound_claims, "no boundedness criterion applied")

        compact_claims = []
        if boundedness.tag is VerdictTag.UNBOUNDED:
            compact_claims.append(Verdict(VerdictTag.NOT_COMPACT,
                                          evidence=("compactness-implies-boundedness",)))
        if pair.beta == 0.0:
            compact_claims.append(sg_zero_symbol_compactness(g))
        else:
            compact_claims.append(pointwise_compactness(g, pair, operator, cfg))
        compactness, agree_c = _merge(compact_claims, "no compactness criterion applied")

    # compact operators are bounded; reconcile the two verdicts
    if compactness.tag is VerdictTag.COMPACT and boundedness.tag is VerdictTag.UNBOUNDED:
        reason = "compactness and boundedness criteria contradict; numerical fault"
        boundedness = Verdict(VerdictTag.INCONCLUSIVE, reason=reason,
                              evidence=boundedness.evidence)
        compactness = Verdict(VerdictTag.INCONCLUSIVE, reason=reason,
                              evidence=compactness.evidence)
        agree_b = agree_c = False
    elif compactness.tag is VerdictTag.COMPACT and not boundedness.decided:
        boundedness = Verdict(VerdictTag.BOUNDED, value=boundedness.value,
                              evidence=compactness.evidence + ("implied-by-compactness",))

    return CriterionReport(
        symbol=g.name, operator=operator, alpha=pair.alpha, beta=pair.beta,
        boundedness=boundedness, compactness=compactness,
        ladders=ladders, pointwise=pointwise,
        cross_check_agreement=bool(agree_b and agree_c),
        notes=tuple(notes),
    )
