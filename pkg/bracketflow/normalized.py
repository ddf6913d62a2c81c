"""
Ratio system on (m2, m3) = (a2/a1, a3/a1) with the dimensionless coupling
beta = alpha a1^2 / 4:

    dm2/dt = m2 (1 - m2)(1 + m2 - m3) [1 - beta (1 + m3 - m2)(1 - m2 - m3)]
    dm3/dt = m3 (1 - m3)(1 + m3 - m2) [1 - beta (1 + m2 - m3)(1 - m2 - m3)]

beta is only constant on steady solitons, so trajectories at a frozen beta are
phase-portrait illustrations, not solutions of any geometric flow.
"""
import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .algebra import classify
from .exceptions import InvalidParameterError
from .flow import rk4_step

# ============================================================================
# CONFIGURATION
# ============================================================================
MERGE_TOL = 1e-12
PORTRAIT_HEADER = ('m2', 'm3', 'dm2', 'dm3')
ILLUSTRATION_LABEL = 'frozen-beta illustration (not a geometric flow)'


@dataclass(frozen=True)
class NormalizedState:
    m2: float
    m3: float
    beta: float = 0.0

    def __post_init__(self):
        for name in ('m2', 'm3', 'beta'):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")


@dataclass(frozen=True)
class CatalogPoint:
    """One fixed point of the ratio system; coincident catalog entries share it."""
    m2: float
    m3: float
    labels: tuple
    exists: bool = True

    def to_dict(self):
        if not self.exists:
            return {'m2': None, 'm3': None, 'labels': list(self.labels),
                    'exists': False, 'group': None}
        return {'m2': self.m2, 'm3': self.m3, 'labels': list(self.labels),
                'exists': True, 'group': m_region(NormalizedState(self.m2, self.m3)).name}


@dataclass(frozen=True)
class VectorSample:
    m2: float
    m3: float
    dm2: float
    dm3: float


def _velocity(m2, m3, beta):
    dm2 = m2 * (1 - m2) * (1 + m2 - m3) * (1 - beta * (1 + m3 - m2) * (1 - m2 - m3))
    dm3 = m3 * (1 - m3) * (1 + m3 - m2) * (1 - beta * (1 + m2 - m3) * (1 - m2 - m3))
    return dm2, dm3


def m_rhs(state):
    """
    Velocity of the ratio system at one state.

    Args:
        state (NormalizedState): point (m2, m3) and beta.

    Returns:
        tuple: (dm2/dt, dm3/dt)
    """
    dm2, dm3 = _velocity(state.m2, state.m3, state.beta)
    return float(dm2), float(dm3)


def beta_from(sc, alpha):
    """beta = alpha a1^2 / 4."""
    return alpha * float(sc[0]) ** 2 / 4.0


def state_from(sc, alpha):
    """The ratio-plane point of bracket constants with a1 != 0."""
    a1 = float(sc[0])
    if a1 == 0.0:
        raise InvalidParameterError("ratios need a1 != 0")
    return NormalizedState(float(sc[1]) / a1, float(sc[2]) / a1, beta_from(sc, alpha))


def _catalog(beta):
    # (label, m2, m3, exists)
    entries = [
        ('origin', 0.0, 0.0, True),
        ('(0,1)', 0.0, 1.0, True),
        ('(0,-1)', 0.0, -1.0, True),
        ('(1,0)', 1.0, 0.0, True),
        ('(-1,0)', -1.0, 0.0, True),
        ('(1,1)', 1.0, 1.0, True),
    ]
    root = math.sqrt(1.0 / beta) if beta > 0 else math.nan
    entries += [
        ('(0,1+sqrt(1/beta))', 0.0, 1.0 + root, beta > 0),
        ('(0,1-sqrt(1/beta))', 0.0, 1.0 - root, beta > 0),
        ('(1+sqrt(1/beta),0)', 1.0 + root, 0.0, beta > 0),
        ('(1-sqrt(1/beta),0)', 1.0 - root, 0.0, beta > 0),
    ]
    shifted = 1.0 + 1.0 / beta
    root = math.sqrt(shifted) if shifted >= 0 else math.nan
    entries += [
        ('(1,1+sqrt(1+1/beta))', 1.0, 1.0 + root, shifted >= 0),
        ('(1,1-sqrt(1+1/beta))', 1.0, 1.0 - root, shifted >= 0),
        ('(1+sqrt(1+1/beta),1)', 1.0 + root, 1.0, shifted >= 0),
        ('(1-sqrt(1+1/beta),1)', 1.0 - root, 1.0, shifted >= 0),
    ]
    mid = (1.0 - 1.0 / beta) / 2.0
    entries.append(('midpoint', mid, mid, True))
    return entries


def m_fixed_points(beta, include_absent=False):
    """
    Closed-form fixed points of the ratio system.

    Coincident entries merge into one CatalogPoint carrying every label, in
    catalog order. Entries whose square root is undefined for this beta are
    skipped unless include_absent is set, in which case they are reported
    with exists=False and NaN coordinates.

    Raises:
        InvalidParameterError: for beta = 0.
    """
    if beta == 0 or not math.isfinite(beta):
        raise InvalidParameterError(f"beta must be finite and nonzero, got {beta}")
    merged = []
    absent = []
    for label, m2, m3, exists in _catalog(beta):
        if not exists:
            absent.append(CatalogPoint(math.nan, math.nan, (label,), exists=False))
            continue
        for index, point in enumerate(merged):
            if abs(point.m2 - m2) <= MERGE_TOL and abs(point.m3 - m3) <= MERGE_TOL:
                merged[index] = CatalogPoint(point.m2, point.m3, point.labels + (label,))
                break
        else:
            merged.append(CatalogPoint(m2 + 0.0, m3 + 0.0, (label,)))
    return merged + absent if include_absent else merged


def m_region(state):
    """Group class of the sign pattern (1, m2, m3)."""
    return classify((1.0, state.m2, state.m3))


def vector_field_grid(beta, bounds, n):
    """
    n x n samples of the ratio-system velocity, row-major (m3 rows, m2 columns).

    Args:
        beta (float): coupling.
        bounds (tuple): (m2_min, m2_max, m3_min, m3_max).
        n (int): samples per axis, at least 2.

    Returns:
        list of VectorSample
    """
    x0, x1, y0, y1 = bounds
    if n < 2:
        raise InvalidParameterError(f"need n >= 2 samples per axis, got {n}")
    if not (x1 > x0 and y1 > y0):
        raise InvalidParameterError(f"degenerate bounds {bounds}")
    xs = np.linspace(x0, x1, n)
    ys = np.linspace(y0, y1, n)
    mx, my = np.meshgrid(xs, ys)
    dm2, dm3 = _velocity(mx, my, beta)
    return [VectorSample(float(a), float(b), float(c), float(d))
            for a, b, c, d in zip(mx.ravel(), my.ravel(), dm2.ravel(), dm3.ravel())]


def portrait_csv(samples):
    """Header m2,m3,dm2,dm3 then one row per sample, 17 significant digits."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(PORTRAIT_HEADER)
    for s in samples:
        writer.writerow([f"{v:.17g}" for v in (s.m2, s.m3, s.dm2, s.dm3)])
    return buffer.getvalue()


def integrate_frozen_beta(state, t_end, dt=1e-3):
    """
    RK4 trajectory of the ratio system with beta held fixed.

    Illustration only: along the real RG-2 flow beta changes with a1.

    Returns:
        dict: {'label', 'beta', 'times', 'points'}
    """
    if dt <= 0:
        raise InvalidParameterError("dt must be positive")
    f = lambda t, y: np.array(_velocity(y[0], y[1], state.beta))
    n_steps = int(math.ceil(abs(t_end) / dt - 1e-12))
    h = math.copysign(dt, t_end) if t_end else 0.0
    t, y = 0.0, np.array([state.m2, state.m3], dtype=float)
    times, points = [t], [y.copy()]
    for step in range(n_steps):
        t_next = t_end if step == n_steps - 1 else (step + 1) * h
        y = rk4_step(f, t, y, t_next - t)
        if not np.all(np.isfinite(y)):
            break
        t = t_next
        times.append(t)
        points.append(y.copy())
    return {'label': ILLUSTRATION_LABEL, 'beta': state.beta,
            'times': times, 'points': [p.tolist() for p in points]}
