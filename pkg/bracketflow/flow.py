"""
RG-2 and Ricci bracket flows on Milnor-frame structure constants.

    da_i/dt = (a_i / 2) B_i (1 + (alpha / 8) B_i)
    B_i     = (a_j - a_k)^2 - 3 a_i^2 + 2 a_i a_j + 2 a_i a_k  (= 4 K_i)

alpha = 0 is the Ricci bracket flow. The metric-coefficient form
dg/dt = -2 Rc - (alpha/2) Rm^2 on a diagonal metric is kept alongside as an
independent check of the bracket system.
"""
import csv
import io
import logging
import math
import os
from dataclasses import dataclass

import numpy as np

from .algebra import StructureConstants, as_vector
from .curvature import curvature_profile, sectional_curvatures
from .exceptions import InvalidMetricError, InvalidParameterError

logger = logging.getLogger(__name__)

# ============================================================================
# CONFIGURATION
# ============================================================================
RICCI = 'ricci'
RG2 = 'rg2'
FLOW_KINDS = (RICCI, RG2)

RK4 = 'rk4'
RKF45 = 'rkf45'
METHODS = (RK4, RKF45)

BRACKET = 'bracket'
METRIC = 'metric'
SYSTEMS = (BRACKET, METRIC)

REACHED_END = 'ReachedEnd'
BLOWUP_CAP_HIT = 'BlowupCap'
MAX_STEPS_HIT = 'MaxSteps'
STEP_UNDERFLOW = 'StepUnderflow'

DEFAULT_TOL = 1e-10
DEFAULT_DT = 1e-3
DEFAULT_INITIAL_STEP = 1e-3
BLOWUP_CAP = 1e8
DEFAULT_MAX_STEPS = 200000
UNDERFLOW_FACTOR = 1e-14

# step-size controller
SAFETY = 0.9
MIN_SHRINK = 0.2
MAX_GROWTH = 5.0

CROSS_CHECK_RHS = os.environ.get('BRACKETFLOW_CROSS_CHECK', '') == '1'

CSV_HEADER = ('t', 'a1', 'a2', 'a3')

# Runge-Kutta-Fehlberg 4(5): stage nodes, stage rows, 4th-order weights and
# the (5th - 4th) error weights
RKF45_NODES = (0.0, 1/4, 3/8, 12/13, 1.0, 1/2)
RKF45_TABLE = (
    (),
    (1/4,),
    (3/32, 9/32),
    (1932/2197, -7200/2197, 7296/2197),
    (439/216, -8.0, 3680/513, -845/4104),
    (-8/27, 2.0, -3554/2565, 1859/4104, -11/40),
)
RKF45_WEIGHTS = (25/216, 0.0, 1408/2565, 2197/4104, -1/5, 0.0)
RKF45_ERROR = (1/360, 0.0, -128/4275, -2197/75240, 1/50, 2/55)


@dataclass(frozen=True)
class FlowParameters:
    """
    Settings for one integration.

    alpha carries units of length^2. kind=RICCI ignores alpha. t_end may be
    negative to run backward in time.
    """
    alpha: float = 0.0
    kind: str = RG2
    method: str = RKF45
    dt: float = DEFAULT_DT
    tol: float = DEFAULT_TOL
    t_end: float = 1.0
    blowup_cap: float = BLOWUP_CAP
    max_steps: int = DEFAULT_MAX_STEPS
    initial_step: float = DEFAULT_INITIAL_STEP

    def __post_init__(self):
        if self.kind not in FLOW_KINDS:
            raise InvalidParameterError(f"unknown flow kind {self.kind!r}, expected one of {FLOW_KINDS}")
        if self.method not in METHODS:
            raise InvalidParameterError(f"unknown method {self.method!r}, expected one of {METHODS}")
        for name in ('alpha', 't_end', 'dt', 'tol', 'blowup_cap', 'initial_step'):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")
        if self.method == RK4 and self.dt <= 0:
            raise InvalidParameterError("dt must be positive for fixed-step RK4")
        if self.method == RKF45 and self.tol <= 0:
            raise InvalidParameterError("tol must be positive for adaptive RKF45")
        if self.blowup_cap <= 0:
            raise InvalidParameterError("blowup_cap must be positive")
        if self.initial_step <= 0:
            raise InvalidParameterError("initial_step must be positive")
        if self.max_steps < 1:
            raise InvalidParameterError("max_steps must be at least 1")

    @property
    def effective_alpha(self):
        return 0.0 if self.kind == RICCI else float(self.alpha)


@dataclass
class Trajectory:
    """Accepted-step samples of an integration and why it stopped."""
    times: np.ndarray
    states: np.ndarray
    termination: str
    system: str = BRACKET
    rejected_steps: int = 0

    @property
    def samples(self):
        return [(float(t), StructureConstants.of(y)) for t, y in zip(self.times, self.states)]

    @property
    def final_time(self):
        return float(self.times[-1])

    @property
    def final_state(self):
        return self.states[-1].copy()

    def __len__(self):
        return len(self.times)

    def to_csv(self):
        return trajectory_to_csv(self)

    def to_dict(self):
        return {
            'system': self.system,
            'termination': self.termination,
            'final_time': self.final_time,
            'samples': [
                {'t': float(t), 'state': [float(x) for x in y]}
                for t, y in zip(self.times, self.states)
            ],
        }


# ============================================================================
# RIGHT-HAND SIDES
# ============================================================================

def bracket_factors(sc):
    """The printed bracket polynomials B_i; identically 4 K_i."""
    a = as_vector(sc)
    a_j, a_k = np.roll(a, -1), np.roll(a, -2)
    return (a_j - a_k) ** 2 - 3.0 * a ** 2 + 2.0 * a * a_j + 2.0 * a * a_k


def braces_factors(sc, alpha):
    """The coupling factors 1 + (alpha/8) B_i; a zero marks a coupling-balanced axis."""
    return 1.0 + (alpha / 8.0) * bracket_factors(sc)


def rg2_rhs_curvature_form(sc, alpha):
    """The same vector field written as 2 a_i K_i (1 + alpha K_i / 2)."""
    a = as_vector(sc)
    k = sectional_curvatures(a)
    return 2.0 * a * k * (1.0 + 0.5 * alpha * k)


def rg2_rhs(sc, alpha):
    """
    RG-2 bracket flow right-hand side in its printed polynomial form.

    Args:
        sc: StructureConstants or 3-sequence.
        alpha (float): RG-2 coupling (length^2).

    Returns:
        numpy.ndarray: da/dt, shape (3,)
    """
    a = as_vector(sc)
    b = bracket_factors(a)
    rhs = 0.5 * a * b * (1.0 + (alpha / 8.0) * b)
    if CROSS_CHECK_RHS:
        scale = max(1.0, float(np.max(np.abs(a)))) ** 3 * (1.0 + abs(alpha) * max(1.0, float(np.max(np.abs(a)))) ** 2)
        assert np.allclose(rhs, rg2_rhs_curvature_form(a, alpha), rtol=1e-9, atol=1e-12 * scale), \
            "printed RHS disagrees with 2aK(1 + alpha K/2)"
    return rhs


def ricci_rhs(sc):
    """Ricci bracket flow: rg2_rhs at alpha = 0."""
    return rg2_rhs(sc, 0.0)


def rg2_jacobian(sc, alpha):
    """
    Analytic Jacobian d(rhs_i)/d(a_m) of the printed system.

    rhs_i = (a_i/2)(B_i + alpha B_i^2 / 8), so
    J_im = delta_im (B_i + alpha B_i^2/8)/2 + (a_i/2)(1 + alpha B_i/4) dB_i/da_m.
    """
    a = as_vector(sc)
    b = bracket_factors(a)
    jac = np.empty((3, 3))
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        grad = np.empty(3)
        grad[i] = -6.0 * a[i] + 2.0 * a[j] + 2.0 * a[k]
        grad[j] = 2.0 * (a[j] - a[k]) + 2.0 * a[i]
        grad[k] = -2.0 * (a[j] - a[k]) + 2.0 * a[i]
        jac[i] = 0.5 * a[i] * (1.0 + alpha * b[i] / 4.0) * grad
        jac[i, i] += 0.5 * (b[i] + alpha * b[i] ** 2 / 8.0)
    return jac


def orthonormalize(g, background):
    """
    Structure constants on the orthonormal frame e_i = X_i / sqrt(g_i) of a
    diagonal metric g, given the brackets c of the fixed frame X_i:
    a_i = c_i sqrt(g_i / (g_j g_k)).
    """
    g = _check_metric(g)
    c = as_vector(background)
    g_j, g_k = np.roll(g, -1), np.roll(g, -2)
    return c * np.sqrt(g / (g_j * g_k))


def metric_rhs(g, background, alpha):
    """
    RG-2 flow of the diagonal metric coefficients g_i against a fixed frame.

    dg_i/dt = (-2 r_i - (alpha/2) (Rm^2)_ii) g_i, curvature taken on the
    orthonormalized constants.

    Raises:
        InvalidMetricError: if any g_i is not a finite positive number.
    """
    g = _check_metric(g)
    profile = curvature_profile(orthonormalize(g, background))
    ricci = np.array(profile.ricci)
    rm2 = np.array(profile.rm2diag)
    return (-2.0 * ricci - 0.5 * alpha * rm2) * g


def _check_metric(g):
    g = np.asarray(g, dtype=float)
    if g.shape != (3,):
        raise InvalidMetricError(f"expected 3 metric coefficients, got shape {g.shape}")
    if not np.all(np.isfinite(g)) or np.any(g <= 0.0):
        raise InvalidMetricError(f"metric coefficients must be finite and positive, got {g.tolist()}")
    return g


# ============================================================================
# INTEGRATION
# ============================================================================

def rk4_step(f, t, y, h):
    """One classical Runge-Kutta step of y' = f(t, y)."""
    k1 = f(t, y)
    k2 = f(t + h / 2, y + h / 2 * k1)
    k3 = f(t + h / 2, y + h / 2 * k2)
    k4 = f(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def rkf45_step(f, t, y, h):
    """
    One Runge-Kutta-Fehlberg step.

    Returns:
        tuple: (4th-order solution, local error estimate vector)
    """
    stages = []
    for node, row in zip(RKF45_NODES, RKF45_TABLE):
        increment = sum((coef * k for coef, k in zip(row, stages)), np.zeros_like(y))
        stages.append(f(t + node * h, y + h * increment))
    y_new = y + h * sum(w * k for w, k in zip(RKF45_WEIGHTS, stages))
    error = h * sum(e * k for e, k in zip(RKF45_ERROR, stages))
    return y_new, error


def _system_rhs(system, alpha, background):
    if system == BRACKET:
        return lambda t, y: rg2_rhs(y, alpha)
    if system == METRIC:
        if background is None:
            raise InvalidParameterError("the metric system needs background structure constants")
        c = as_vector(background)
        return lambda t, y: metric_rhs(y, c, alpha)
    raise InvalidParameterError(f"unknown system {system!r}, expected one of {SYSTEMS}")


def _admissible(system, y, previous):
    """Finite, positive for a metric, and for brackets the same sign pattern as previous."""
    if not np.all(np.isfinite(y)):
        return False
    if system == METRIC:
        return bool(np.all(y > 0.0))
    # da_i/dt is proportional to a_i: no entry may change sign or leave zero
    return bool(np.array_equal(np.sign(y), np.sign(previous)))


def integrate(start, params, system=BRACKET, background=None):
    """
    Integrate the bracket flow (or the metric flow) from t = 0 to params.t_end.

    Args:
        start: initial structure constants (BRACKET) or metric triple (METRIC).
        params (FlowParameters): coupling, kind, integrator settings.
        system (str): BRACKET or METRIC.
        background: fixed-frame brackets for the METRIC system.

    Returns:
        Trajectory: every accepted step, with a termination reason of
        ReachedEnd, BlowupCap, MaxSteps or StepUnderflow.
    """
    f = _system_rhs(system, params.effective_alpha, background)
    y0 = as_vector(start) if system == BRACKET else _check_metric(start)
    if params.method == RK4:
        trajectory = _integrate_rk4(f, y0, params, system)
    else:
        trajectory = _integrate_rkf45(f, y0, params, system)
    logger.debug("%s flow: %d samples, t=%.6g, %s", system, len(trajectory),
                 trajectory.final_time, trajectory.termination)
    return trajectory


def _integrate_rk4(f, y0, params, system):
    t_end = params.t_end
    direction = 1.0 if t_end >= 0 else -1.0
    n_steps = int(math.ceil(abs(t_end) / params.dt - 1e-12)) if t_end != 0 else 0
    times, states = [0.0], [y0.copy()]
    termination = REACHED_END
    t, y = 0.0, y0.copy()
    for step in range(n_steps):
        if step >= params.max_steps:
            termination = MAX_STEPS_HIT
            break
        # land exactly on t_end
        t_next = t_end if step == n_steps - 1 else direction * (step + 1) * params.dt
        y_next = rk4_step(f, t, y, t_next - t)
        if not _admissible(system, y_next, y):
            # dt too coarse for the local rate
            termination = BLOWUP_CAP_HIT
            logger.info("rk4 step left the admissible set at t=%.6g", t_next)
            break
        y = y_next
        if np.max(np.abs(y)) > params.blowup_cap:
            termination = BLOWUP_CAP_HIT
            times.append(t_next)
            states.append(y.copy())
            break
        t = t_next
        times.append(t)
        states.append(y.copy())
    return Trajectory(np.array(times), np.array(states), termination, system=system)


def _integrate_rkf45(f, y0, params, system):
    t_end = params.t_end
    direction = 1.0 if t_end >= 0 else -1.0
    tol = params.tol
    min_step = UNDERFLOW_FACTOR * abs(t_end)
    times, states = [0.0], [y0.copy()]
    termination = REACHED_END
    rejected = 0
    t, y = 0.0, y0.copy()
    h = min(params.initial_step, abs(t_end))
    attempts = 0
    while direction * (t_end - t) > 0:
        if attempts >= params.max_steps:
            termination = MAX_STEPS_HIT
            break
        attempts += 1
        remaining = abs(t_end - t)
        if h < min_step < remaining:
            termination = STEP_UNDERFLOW
            logger.info("step underflow at t=%.6g (finite-time blowup)", t)
            break
        h = min(h, remaining)
        y_new, error = rkf45_step(f, t, y, direction * h)
        if _admissible(system, y_new, y):
            scale = tol + tol * np.maximum(np.abs(y), np.abs(y_new))
            err = float(np.max(np.abs(error) / scale))
        else:
            err = math.inf
        if err <= 1.0:
            # the last step snaps onto t_end
            t = t_end if abs(t_end - t) <= h else t + direction * h
            y = y_new
            times.append(t)
            states.append(y.copy())
            if np.max(np.abs(y)) > params.blowup_cap:
                termination = BLOWUP_CAP_HIT
                break
            growth = MAX_GROWTH if err == 0.0 else min(MAX_GROWTH, SAFETY * err ** -0.2)
            h *= growth
        else:
            rejected += 1
            shrink = MIN_SHRINK if not math.isfinite(err) else max(MIN_SHRINK, SAFETY * err ** -0.25)
            h *= shrink
    return Trajectory(np.array(times), np.array(states), termination,
                      system=system, rejected_steps=rejected)


# ============================================================================
# CSV
# ============================================================================

def trajectory_to_csv(trajectory):
    """Header t,a1,a2,a3 then one row per sample, 17 significant digits."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for t, y in zip(trajectory.times, trajectory.states):
        writer.writerow([f"{float(t):.17g}"] + [f"{float(x):.17g}" for x in y])
    return buffer.getvalue()


def parse_trajectory_csv(text):
    """
    Inverse of trajectory_to_csv.

    Returns:
        tuple: (times ndarray, states ndarray of shape (n, 3))
    """
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise InvalidParameterError(f"unexpected trajectory header {header}")
    rows = [[float(x) for x in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(-1, 4)
    return data[:, 0], data[:, 1:]
