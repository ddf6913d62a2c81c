"""
Steady solitons of the RG-2 flow, i.e. fixed points of the bracket flow.

da_i/dt = 2 a_i K_i (1 + alpha K_i / 2) vanishes on an axis exactly when
a_i = 0, K_i = 0, or K_i = -2/alpha. Closed-form solutions come from the
(a, 0, c a) and (a, a, c a) ansatz families; a damped Newton sweep over a
grid of seeds checks that nothing else is hiding in the box.
"""
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import StructureConstants, as_vector, canonicalize, classify, equivalent
from .curvature import curvature_profile, parabolic, sectional_curvatures
from .exceptions import InvalidParameterError
from .flow import bracket_factors, braces_factors, rg2_jacobian, rg2_rhs

logger = logging.getLogger(__name__)

# ============================================================================
# CONFIGURATION
# ============================================================================
VERIFY_TOL = 1e-10
ANALYTIC_TOL = 1e-12

NEWTON_MAX_ITER = 100
NEWTON_MAX_HALVINGS = 20
STEP_TOL = 1e-12
ZERO_SNAP = 1e-9
DIVERGENCE_CAP = 1e6

FAMILY_SV_RATIO = 1e-8
CLUSTER_RADIUS = 1e-6

AXIS_ZERO = 'AxisZero'
SECTIONAL_ZERO = 'SectionalZero'
COUPLING_BALANCE = 'CouplingBalance'
NOT_SATISFIED = 'NotSatisfied'

ISOLATED = 'Isolated'
FAMILY = 'OneParameterFamily'

ANALYTIC = 'Analytic'
NEWTON = 'Newton'

PASS = 'PASS'
FAIL = 'FAIL'


@dataclass(frozen=True)
class FixedPointRecord:
    """A verified steady soliton candidate."""
    sc: StructureConstants
    canonical: StructureConstants
    residual: float
    group: object
    profile: object
    parabolic: bool
    family: str
    provenance: str
    label: str = ''

    def to_dict(self):
        return {
            'constants': list(self.sc),
            'canonical_constants': list(self.canonical),
            'residual': self.residual,
            'group': self.group.name,
            'sectional': list(self.profile.sectional),
            'ricci': list(self.profile.ricci),
            'scalar': self.profile.scalar,
            'einstein': list(self.profile.einstein),
            'parabolic': self.parabolic,
            'family': self.family,
            'provenance': self.provenance,
            'label': self.label,
        }


@dataclass
class SweepResult:
    """Deduplicated Newton fixed points plus the seed bookkeeping."""
    records: list
    seeds: int
    converged: int
    dropped: int
    alpha: float
    grid: tuple = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)


# ============================================================================
# VERIFICATION
# ============================================================================

def residual(sc, alpha):
    """max |rhs_i| / max(1, |a|^3) with |a| the largest entry magnitude; dimensionless."""
    a = as_vector(sc)
    scale = max(1.0, float(np.max(np.abs(a)))) ** 3
    return float(np.max(np.abs(rg2_rhs(a, alpha)))) / scale


def is_fixed(sc, alpha, tol=VERIFY_TOL):
    """True iff sc is a steady soliton of the RG-2 bracket flow at this alpha."""
    if tol <= 0:
        raise InvalidParameterError("tolerance must be positive")
    return residual(sc, alpha) < tol


def axis_condition(sc, alpha, axis, tol=VERIFY_TOL):
    """
    Which factor of da_i/dt = 2 a_i K_i (1 + alpha K_i / 2) vanishes on one axis.

    Args:
        sc: structure constants.
        alpha (float): coupling.
        axis (int): 1, 2 or 3.
        tol (float): tolerance, scaled by max(1, |a|) for a_i and max(1, |a|^2) for K_i.

    Returns:
        str: AxisZero, SectionalZero, CouplingBalance or NotSatisfied.
    """
    if axis not in (1, 2, 3):
        raise InvalidParameterError(f"axis must be 1, 2 or 3, got {axis!r}")
    a = as_vector(sc)
    scale = max(1.0, float(np.max(np.abs(a))))
    i = axis - 1
    k = sectional_curvatures(a)[i]
    if abs(a[i]) <= tol * scale:
        return AXIS_ZERO
    if abs(k) <= tol * scale ** 2:
        return SECTIONAL_ZERO
    if abs(1.0 + 0.5 * alpha * k) <= tol:
        return COUPLING_BALANCE
    return NOT_SATISFIED


def family_kind(sc, alpha):
    """
    OneParameterFamily when the Jacobian of the printed system has a null
    direction (singular value below FAMILY_SV_RATIO * largest); the zero
    triple is Isolated.
    """
    a = as_vector(sc)
    if not np.any(a):
        return ISOLATED
    singular = np.linalg.svd(rg2_jacobian(a, alpha), compute_uv=False)
    if singular[0] == 0.0:
        return ISOLATED
    return FAMILY if np.any(singular < FAMILY_SV_RATIO * singular[0]) else ISOLATED


def build_record(sc, alpha, provenance, label=''):
    sc = StructureConstants.of(sc)
    return FixedPointRecord(
        sc=sc,
        canonical=canonicalize(sc),
        residual=residual(sc, alpha),
        group=classify(sc),
        profile=curvature_profile(sc),
        parabolic=parabolic(sc, alpha),
        family=family_kind(sc, alpha),
        provenance=provenance,
        label=label,
    )


# ============================================================================
# CLOSED FORMS
# ============================================================================

def analytic_constants(alpha):
    """
    Exact fixed points over the ansatz families, filtered by the sign of alpha.

    Returns:
        list of (label, (a1, a2, a3))
    """
    points = [
        ('abelian', (0.0, 0.0, 0.0)),
        ('flat', (1.0, 1.0, 0.0)),
    ]
    if alpha > 0:
        a = math.sqrt(8.0 / (3.0 * alpha))
        points.append(('nil', (a, 0.0, 0.0)))
        a = math.sqrt(2.0 / alpha)
        points.append(('sol', (a, 0.0, -a)))
        a = 1.0 / (2.0 * math.sqrt(alpha))
        points.append(('e11-sectional-zero', (a, 0.0, -3.0 * a)))
    elif alpha < 0:
        a = math.sqrt(-8.0 / alpha)
        points.append(('round', (a, a, a)))
        c = math.sqrt(-8.0 / alpha)
        points.append(('su2-sectional-zero', (0.75 * c, 0.75 * c, c)))
    return points


def enumerate_analytic(alpha):
    """
    Closed-form steady solitons for this alpha.

    alpha > 0 adds the Nil point (a,0,0) with a^2 = 8/(3 alpha), the Sol point
    (a,0,-a) with a^2 = 2/alpha and (a,0,-3a) with a^2 = 1/(4 alpha);
    alpha < 0 adds the round point a^2 = -8/alpha and (3c/4, 3c/4, c) with
    c^2 = -8/alpha. The origin and the flat family (a,a,0) are always present.

    Returns:
        list of FixedPointRecord with provenance Analytic.
    """
    records = [build_record(sc, alpha, ANALYTIC, label=label)
               for label, sc in analytic_constants(alpha)]
    for record in records:
        if record.residual >= ANALYTIC_TOL:
            logger.warning("analytic point %s has residual %.3g", record.label, record.residual)
    logger.info("alpha=%g: %d analytic fixed points", alpha, len(records))
    return records


# ============================================================================
# NEWTON SWEEP
# ============================================================================

def newton_refine(seed, alpha, tol=VERIFY_TOL, max_iter=NEWTON_MAX_ITER):
    """
    Damped Newton on the printed system from one seed.

    Steps use the minimum-norm least-squares solution (the flat family makes
    the Jacobian singular) and are halved up to NEWTON_MAX_HALVINGS times
    until the residual drops.

    Returns:
        tuple: (point ndarray, converged bool, iterations int)
    """
    x = as_vector(seed).copy()
    r = residual(x, alpha)
    for iteration in range(1, max_iter + 1):
        if r == 0.0:
            return _snap(x), True, iteration - 1
        step, *_ = np.linalg.lstsq(rg2_jacobian(x, alpha), -rg2_rhs(x, alpha), rcond=None)
        lam = 1.0
        for _ in range(NEWTON_MAX_HALVINGS):
            candidate = x + lam * step
            r_candidate = residual(candidate, alpha)
            if r_candidate < r:
                break
            lam *= 0.5
        else:
            # no descent left: done if already below tolerance
            return _snap(x), r < tol, iteration
        x, r = candidate, r_candidate
        if np.max(np.abs(x)) > DIVERGENCE_CAP:
            return x, False, iteration
        if r < tol and lam * np.max(np.abs(step)) <= STEP_TOL * max(1.0, float(np.max(np.abs(x)))):
            return _snap(x), True, iteration
    return _snap(x), r < tol, max_iter


def _snap(x):
    scale = max(1.0, float(np.max(np.abs(x))))
    return np.where(np.abs(x) <= ZERO_SNAP * scale, 0.0, x)


def grid_size(lo, hi, step):
    """Number of grid values per axis from lo to hi inclusive."""
    if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(step)):
        raise InvalidParameterError("grid bounds must be finite")
    if step <= 0 or hi <= lo:
        raise InvalidParameterError(f"grid needs lo < hi and step > 0, got {lo}:{hi}:{step}")
    span = (hi - lo) / step
    if not math.isfinite(span):
        raise InvalidParameterError(f"grid step {step} is too small for {lo}:{hi}")
    return int(round(span)) + 1


def grid_axis(lo, hi, step):
    """Inclusive, evenly spaced grid values from lo to hi."""
    return np.linspace(lo, hi, grid_size(lo, hi, step))


def newton_sweep(alpha, grid=(-3.0, 3.0, 0.5), tol=VERIFY_TOL, workers=1):
    """
    Newton from every seed of a cubic grid, then deduplicate.

    Args:
        alpha (float): coupling.
        grid (tuple): (lo, hi, step), applied to all three axes.
        tol (float): residual required to keep a converged point.
        workers (int): threads for seed processing; output order does not
            depend on it.

    Returns:
        SweepResult
    """
    if tol <= 0:
        raise InvalidParameterError("tolerance must be positive")
    values = grid_axis(*grid)
    seeds = [np.array(seed) for seed in itertools.product(values, repeat=3)]

    def solve(seed):
        point, converged, _ = newton_refine(seed, alpha, tol=tol)
        if converged and residual(point, alpha) < tol:
            return point
        return None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(solve, seeds))
    else:
        points = [solve(seed) for seed in seeds]

    found = [p for p in points if p is not None]
    records = deduplicate([build_record(p, alpha, NEWTON) for p in found], alpha)
    dropped = len(seeds) - len(found)
    logger.info("alpha=%g: %d seeds, %d converged, %d dropped, %d distinct",
                alpha, len(seeds), len(found), dropped, len(records))
    return SweepResult(records=records, seeds=len(seeds), converged=len(found),
                       dropped=dropped, alpha=alpha, grid=tuple(grid))


def _sort_key(record):
    return tuple(record.canonical)


def _within(left, right, radius=CLUSTER_RADIUS):
    return max(abs(x - y) for x, y in zip(left, right)) < radius


def deduplicate(records, alpha):
    """
    Merge records equal up to permutation/negation and within CLUSTER_RADIUS.

    Family members collapse to one representative: the canonical direction
    scaled to unit max-abs entry. Output is sorted by canonical constants.
    """
    merged = []
    directions = []
    for record in sorted(records, key=_sort_key):
        if record.family == FAMILY:
            direction = canonicalize(record.canonical.scaled(1.0 / record.canonical.max_abs()))
            if any(_within(direction, seen) for seen in directions):
                continue
            directions.append(direction)
            merged.append(build_record(direction, alpha, record.provenance, label=record.label))
        else:
            if any(equivalent(record.sc, kept.sc, tol=CLUSTER_RADIUS) for kept in merged
                   if kept.family == ISOLATED):
                continue
            merged.append(record)
    return sorted(merged, key=_sort_key)


def same_solution_set(left, right, tol=CLUSTER_RADIUS):
    """True iff every record in left has an equivalent in right and vice versa."""
    def covered(records, others):
        return all(any(equivalent(r.sc, o.sc, tol=tol) for o in others) for r in records)
    return covered(left, right) and covered(right, left)


# ============================================================================
# SOLITON TABLE AUDIT
# ============================================================================

def _row(number, group, sign, constants, sectional, ricci):
    return {'row': number, 'group': group, 'alpha_sign': sign,
            'constants': constants, 'sectional': sectional, 'ricci': ricci}


# Printed rows as functions of alpha (and of a for the flat row); upper signs
PRINTED_ROWS = (
    _row(1, 'E2', 'any',
         lambda al, a: (a, a, 0.0),
         lambda al: (0.0, 0.0, 0.0),
         lambda al: (0.0, 0.0, 0.0)),
    _row(2, 'Heisenberg', '+',
         lambda al, a: (math.sqrt(3.0 / (8.0 * al)), 0.0, 0.0),
         lambda al: (3 / (32 * al), 3 / (32 * al), -9 / (32 * al)),
         lambda al: (3 / (16 * al), -3 / (16 * al), -3 / (16 * al))),
    _row(3, 'E11', '-',
         lambda al, a: (math.sqrt(2.0 / -al), 0.0, -math.sqrt(2.0 / -al)),
         lambda al: (2 / al, 2 / al, -2 / al),
         lambda al: (0.0, 0.0, 4 / al)),
    _row(4, 'SU2', '+',
         lambda al, a: (math.sqrt(8.0 / al),) * 3,
         lambda al: (2 / al,) * 3,
         lambda al: (4 / al,) * 3),
    _row(5, 'E11', '+',
         lambda al, a: (-3.0 / (2.0 * math.sqrt(al)), 0.0, 1.0 / (2.0 * math.sqrt(al))),
         lambda al: (1 / al, 0.0, -2 / al),
         lambda al: (1 / al, -2 / al, -1 / al)),
    _row(6, 'SU2', '-',
         lambda al, a: tuple(x / math.sqrt(-2.0 * al) for x in (3.0, 3.0, 4.0)),
         lambda al: (2 / al, 2 / al, -6 / al),
         lambda al: (-4 / al, -4 / al, 4 / al)),
    _row(7, 'SU2', '-',
         lambda al, a: tuple(x / math.sqrt(-2.0 * al) for x in (3.0, 3.0, 2.0)),
         lambda al: (-1 / (2 * al), -1 / (2 * al), 3 / (8 * al)),
         lambda al: (-4 / al, -4 / al, -2 / al)),
)


def _same_multiset(left, right):
    left, right = np.sort(np.asarray(left)), np.sort(np.asarray(right))
    scale = max(1.0, float(np.max(np.abs(left))), float(np.max(np.abs(right))))
    return bool(np.allclose(left, right, rtol=0.0, atol=1e-9 * scale))


def rescaled_alpha(sc, tol=VERIFY_TOL):
    """
    The single coupling alpha' at which sc is a fixed point through
    CouplingBalance on its curved axes, or None.

    Axes with a_i = 0 or K_i = 0 are fixed for every alpha; every other axis
    needs K_i = -2/alpha', and those requirements must agree.
    """
    a = as_vector(sc)
    scale = max(1.0, float(np.max(np.abs(a))))
    k = sectional_curvatures(a)
    candidates = [-2.0 / k[i] for i in range(3)
                  if abs(a[i]) > tol * scale and abs(k[i]) > tol * scale ** 2]
    if not candidates:
        return None
    alpha = candidates[0]
    if any(abs(c - alpha) > 1e-9 * abs(alpha) for c in candidates):
        return None
    return alpha if residual(a, alpha) < tol else None


def audit_row(row, alpha_pos=1.0, alpha_neg=-1.0, flat_scale=1.0, tol=VERIFY_TOL):
    """Substitute one printed row into the printed system and diagnose it."""
    alpha = alpha_neg if row['alpha_sign'] == '-' else alpha_pos
    sc = StructureConstants.of(row['constants'](alpha, flat_scale))
    profile = curvature_profile(sc)
    res = residual(sc, alpha)
    b = bracket_factors(sc)
    braces = braces_factors(sc, alpha)
    per_axis = [{
        'axis': i + 1,
        'a': sc[i],
        'bracket': float(b[i]),
        'braces': float(braces[i]),
        'sectional': profile.sectional[i],
        'condition': axis_condition(sc, alpha, i + 1, tol=tol),
    } for i in range(3)]
    printed_sectional = row['sectional'](alpha)
    printed_ricci = row['ricci'](alpha)
    alpha_fit = rescaled_alpha(sc, tol=tol)
    verdict = PASS if res < tol else FAIL
    return {
        'row': row['row'],
        'group_printed': row['group'],
        'group': classify(sc).name,
        'alpha_sign': row['alpha_sign'],
        'printed_constants': list(sc),
        'alpha_used': alpha,
        'residual': res,
        'per_axis': per_axis,
        'verdict': verdict,
        'printed_sectional': list(printed_sectional),
        'printed_ricci': list(printed_ricci),
        'sectional': list(profile.sectional),
        'ricci': list(profile.ricci),
        'scalar': profile.scalar,
        'einstein': list(profile.einstein),
        'sectional_matches': _same_multiset(profile.sectional, printed_sectional),
        'ricci_matches': _same_multiset(profile.ricci, printed_ricci),
        'parabolic': parabolic(sc, alpha),
        'rescaled_alpha': alpha_fit,
        'alpha_ratio': None if alpha_fit is None else alpha_fit / alpha,
    }


def paper_table_check(alpha_pos=1.0, alpha_neg=-1.0, flat_scale=1.0, tol=VERIFY_TOL):
    """
    Audit every printed soliton-table row against the printed bracket system.

    Args:
        alpha_pos (float): coupling used for rows printed with alpha > 0 and
            for the flat row.
        alpha_neg (float): coupling used for rows printed with alpha < 0.
        flat_scale (float): a in the flat row (a, a, 0).

    Returns:
        list of dict: one audit entry per row with verdict PASS or FAIL.
    """
    if not alpha_pos > 0:
        raise InvalidParameterError(f"alpha_pos must be positive, got {alpha_pos}")
    if not alpha_neg < 0:
        raise InvalidParameterError(f"alpha_neg must be negative, got {alpha_neg}")
    report = [audit_row(row, alpha_pos, alpha_neg, flat_scale, tol) for row in PRINTED_ROWS]
    for entry in report:
        logger.info("row %d: %s (residual %.3g)", entry['row'], entry['verdict'], entry['residual'])
    return report
