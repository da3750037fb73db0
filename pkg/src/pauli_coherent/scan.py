"""Sweeps over the (p1, p2, p3) parameter space using the closed-form rates.

The gap at a channel point is ``best_rate - Q1`` where ``Q1`` is the one-shot
capacity ``max(1 - H(p), 0)``. Flooring matters only where ``1 - H(p) < 0``:
there any code with positive rate activates the channel, and a negative rate
is never counted as an improvement.

All grids are inclusive of both endpoints and ``p0`` is derived last.
Iteration order is ``p1`` outer, ``p2`` middle, ``p3`` inner.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ProbVec4
from .codes import VARIANTS, CodeId
from .coherent import CLOSED_FORM_SHOTS, SUPERADDITIVE_TOL, TIE_TOL, closed_form_grid
from .errors import ConfigError

__all__ = [
    "GridSpec",
    "ScanRecord",
    "SliceSpec",
    "SliceResult",
    "CompareRecord",
    "GapResult",
    "axis_values",
    "grid_points",
    "q1_raw_grid",
    "grid_scan",
    "scan_points",
    "slice_density",
    "family_compare",
    "compare_points",
    "gap_maximize",
    "default_families",
]

P0_TOL = 1e-12


def default_families(n: int) -> tuple[str, ...]:
    fams = tuple(f for f, shots in CLOSED_FORM_SHOTS.items() if shots == n)
    if not fams:
        raise ConfigError(f"no closed-form code family for {n} channel uses")
    return fams


def _check_families(families, n: int) -> tuple[str, ...]:
    if families is None:
        return default_families(n)
    fams = tuple(f.upper() for f in families)
    if not fams:
        raise ConfigError("at least one code family is required")
    for f in fams:
        if CLOSED_FORM_SHOTS.get(f) != n:
            raise ConfigError(f"family {f} has no closed form for {n} channel uses")
    return fams


@dataclass(frozen=True)
class GridSpec:
    lo: float = 0.0
    hi: float = 0.20
    step: float = 0.01

    def __post_init__(self):
        if not self.step > 0:
            raise ConfigError("grid step must be positive")
        if self.lo > self.hi:
            raise ConfigError("grid lo must not exceed hi")
        if self.lo < 0 or self.hi > 1:
            raise ConfigError("grid must lie inside [0, 1]")


def axis_values(lo: float, hi: float, step: float) -> np.ndarray:
    """``lo, lo + step, ...`` up to and including ``hi`` (within float slack)."""
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return np.round(lo + step * np.arange(count), 12)


def grid_points(g: GridSpec) -> np.ndarray:
    """Valid grid points as rows ``(p1, p2, p3)``, in scan order."""
    ax = axis_values(g.lo, g.hi, g.step)
    p1, p2, p3 = np.meshgrid(ax, ax, ax, indexing="ij")
    pts = np.column_stack([p1.ravel(), p2.ravel(), p3.ravel()])
    return pts[1.0 - pts.sum(axis=1) >= -P0_TOL]


def _xlogx(x):
    x = np.asarray(x, dtype=float)
    pos = x > 0
    return np.where(pos, x * np.log2(np.where(pos, x, 1.0)), 0.0)


def q1_raw_grid(p1, p2, p3) -> np.ndarray:
    """``1 - H(p)`` over arrays of error probabilities."""
    p1, p2, p3 = (np.asarray(a, dtype=float) for a in (p1, p2, p3))
    p0 = np.maximum(1.0 - p1 - p2 - p3, 0.0)
    return 1.0 + _xlogx(p0) + _xlogx(p1) + _xlogx(p2) + _xlogx(p3)


def _best_over(families, p1, p2, p3):
    """Best closed-form rate over families and variants, with its code and tie flag.

    Ties resolve to the first (family, variant) in the given order.
    """
    codes = [CodeId(f, v) for f in families for v in VARIANTS]
    rates = np.stack([closed_form_grid(c.family, c.variant, p1, p2, p3) for c in codes])
    best = rates.max(axis=0)
    close = best[None, ...] - rates <= TIE_TOL
    idx = close.argmax(axis=0)
    return best, idx, close.sum(axis=0) > 1, codes


@dataclass(frozen=True)
class ScanRecord:
    p1: float
    p2: float
    p3: float
    q1_raw: float
    best_rate: float
    best_code: CodeId | None
    gap: float
    superadditive: bool

    @property
    def q1(self) -> float:
        return max(self.q1_raw, 0.0)


def scan_points(points, n: int, families=None) -> list[ScanRecord]:
    """Closed-form records at arbitrary points given as rows ``(p1, p2, p3)``."""
    fams = _check_families(families, n)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        return []
    p1, p2, p3 = pts.T
    if np.any(pts < 0) or np.any(1.0 - pts.sum(axis=1) < -P0_TOL):
        raise ConfigError("every point needs p_i >= 0 and p1 + p2 + p3 <= 1")
    best, idx, _, codes = _best_over(fams, p1, p2, p3)
    q1r = q1_raw_grid(p1, p2, p3)
    gap = best - np.maximum(q1r, 0.0)
    return [
        ScanRecord(
            float(p1[i]), float(p2[i]), float(p3[i]), float(q1r[i]), float(best[i]),
            codes[idx[i]], float(gap[i]), bool(gap[i] > SUPERADDITIVE_TOL),
        )
        for i in range(len(pts))
    ]


def grid_scan(g: GridSpec, n: int, families=None) -> list[ScanRecord]:
    """One record per valid grid point, in deterministic grid order."""
    return scan_points(grid_points(g), n, families)


def ga_scan_points(points, n: int, ansatz: str, cfg, workers: int = 1) -> list[ScanRecord]:
    """Records whose rate comes from one GA run per point instead of the closed forms.

    Slow and stochastic; ``best_code`` is ``None`` because the optimized state
    is not a named code.
    """
    from concurrent.futures import ProcessPoolExecutor

    pts = np.atleast_2d(np.asarray(points, dtype=float))
    jobs = [(tuple(map(float, row)), n, ansatz, cfg) for row in pts]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rates = list(ex.map(_ga_point, jobs))
    else:
        rates = [_ga_point(j) for j in jobs]
    out = []
    for (p1, p2, p3), rate in zip(pts, rates):
        q1r = float(q1_raw_grid(p1, p2, p3))
        gap = rate - max(q1r, 0.0)
        out.append(ScanRecord(float(p1), float(p2), float(p3), q1r, rate, None, gap,
                              bool(gap > SUPERADDITIVE_TOL)))
    return out


def _ga_point(job) -> float:
    from .optim import FitnessSpec, ga_run

    (p1, p2, p3), n, ansatz, cfg = job
    fit = FitnessSpec(ProbVec4.from_errors(p1, p2, p3), n, ansatz)
    return fit.rate(ga_run(fit, cfg).best_fitness)


MODES = ("gap", "zero_q1_gap")


@dataclass(frozen=True)
class SliceSpec:
    fixed_p3: float
    lo: float = 0.0
    hi: float = 0.4
    step: float = 0.01
    mode: str = "gap"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"slice mode must be one of {MODES}")
        if not 0.0 <= self.fixed_p3 <= 1.0:
            raise ConfigError("fixed p3 must lie in [0, 1]")
        GridSpec(self.lo, self.hi, self.step)


@dataclass
class SliceResult:
    p1: np.ndarray  # axis values, rows of ``values``
    p2: np.ndarray  # axis values, columns of ``values``
    values: np.ndarray  # NaN where p1 + p2 + p3 > 1

    def cells(self):
        """``(p1, p2, value)`` for every valid cell, p1 outer."""
        for i, a in enumerate(self.p1):
            for j, b in enumerate(self.p2):
                v = self.values[i, j]
                if not np.isnan(v):
                    yield float(a), float(b), float(v)


def slice_density(s: SliceSpec, n: int, families=None) -> SliceResult:
    """Positive part of the gap on the plane ``p3 = fixed_p3``.

    In ``zero_q1_gap`` mode cells with ``1 - H(p) > 0`` are zeroed, leaving
    only channels that are useless on a single use.
    """
    fams = _check_families(families, n)
    ax = axis_values(s.lo, s.hi, s.step)
    p1, p2 = np.meshgrid(ax, ax, indexing="ij")
    p3 = np.full_like(p1, s.fixed_p3)
    valid = 1.0 - p1 - p2 - p3 >= -P0_TOL
    q1r = q1_raw_grid(np.where(valid, p1, 0), np.where(valid, p2, 0), np.where(valid, p3, 0))
    best, _, _, _ = _best_over(fams, np.where(valid, p1, 0), np.where(valid, p2, 0),
                               np.where(valid, p3, 0))
    vals = np.maximum(best - np.maximum(q1r, 0.0), 0.0)
    if s.mode == "zero_q1_gap":
        vals = np.where(q1r <= 0.0, vals, 0.0)
    return SliceResult(ax, ax.copy(), np.where(valid, vals, np.nan))


@dataclass(frozen=True)
class CompareRecord:
    p1: float
    p2: float
    p3: float
    winner: str
    phi_rate: float
    chi_rate: float
    tie: bool


def compare_points(points) -> list[CompareRecord]:
    """PHI vs CHI at each point (superadditive or not); ties go to PHI."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    p1, p2, p3 = pts.T
    phi, *_ = _best_over(("PHI",), p1, p2, p3)
    chi, *_ = _best_over(("CHI",), p1, p2, p3)
    tie = np.abs(chi - phi) <= TIE_TOL
    winner = np.where((chi > phi) & ~tie, "CHI", "PHI")
    return [
        CompareRecord(float(p1[i]), float(p2[i]), float(p3[i]), str(winner[i]),
                      float(phi[i]), float(chi[i]), bool(tie[i]))
        for i in range(len(pts))
    ]


def family_compare(g: GridSpec) -> list[CompareRecord]:
    """PHI vs CHI at every superadditive point of a three-use grid scan."""
    keep = [(r.p1, r.p2, r.p3) for r in grid_scan(g, 3, ("PHI", "CHI")) if r.superadditive]
    return compare_points(keep) if keep else []


@dataclass(frozen=True)
class GapResult:
    p: ProbVec4
    gap: float
    rate: float
    q1_raw: float


def gap_maximize(family: str, variant: str = "I", n: int | None = None, *,
                 box: float = 0.4, step0: float = 0.02, keep: int = 20,
                 min_step: float = 1e-6) -> GapResult:
    """Deterministic nested-grid search for the point of largest gap.

    Level 0 is a ``step0`` grid over ``[0, box]^3``. Each later level puts a
    local grid of spacing ``step / 4`` spanning ``+-step`` around each of the
    ``keep`` best points so far, until the spacing drops below ``min_step``.
    """
    family = family.upper()
    shots = CLOSED_FORM_SHOTS.get(family)
    if shots is None:
        raise ConfigError(f"no closed form for family {family}")
    if n is not None and n != shots:
        raise ConfigError(f"family {family} is defined for {shots} channel uses, not {n}")
    if variant not in VARIANTS:
        raise ConfigError(f"unknown variant {variant!r}")

    def gaps(pts):
        p1, p2, p3 = pts.T
        rate = closed_form_grid(family, variant, p1, p2, p3)
        return rate - np.maximum(q1_raw_grid(p1, p2, p3), 0.0)

    def clean(pts):
        pts = np.clip(pts, 0.0, box)
        pts = pts[1.0 - pts.sum(axis=1) >= 0.0]
        return np.unique(np.round(pts, 15), axis=0)

    ax = axis_values(0.0, box, step0)
    pts = clean(np.stack(np.meshgrid(ax, ax, ax, indexing="ij"), axis=-1).reshape(-1, 3))
    vals = gaps(pts)
    step = step0
    offs = np.arange(-4, 5) / 4.0
    local = np.stack(np.meshgrid(offs, offs, offs, indexing="ij"), axis=-1).reshape(-1, 3)
    while True:
        # lexsort keeps the order total, so results never depend on sort stability.
        order = np.lexsort((pts[:, 2], pts[:, 1], pts[:, 0], -vals))[:keep]
        pts, vals = pts[order], vals[order]
        if step < min_step:
            break
        cand = clean((pts[:, None, :] + step * local[None, :, :]).reshape(-1, 3))
        pts, vals = cand, gaps(cand)
        step /= 4.0
    p = ProbVec4.from_errors(*pts[0])
    q1r = float(q1_raw_grid(*pts[0]))
    return GapResult(p, float(vals[0]), float(vals[0]) + max(q1r, 0.0), q1r)
