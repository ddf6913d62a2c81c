#!/usr/bin/env python
"""Randomized property checks across the algebra, curvature and flow modules"""

import itertools

import numpy as np

from bracketflow.algebra import classify
from bracketflow.curvature import curvature_profile, sectional_curvatures
from bracketflow.flow import (BLOWUP_CAP_HIT, MAX_STEPS_HIT, REACHED_END, RK4, STEP_UNDERFLOW,
                              FlowParameters, bracket_factors, integrate, rg2_rhs)

SAMPLES = 1000


def _rel_close(left, right, tol=1e-10):
    left, right = np.asarray(left, dtype=float), np.asarray(right, dtype=float)
    scale = max(1.0, float(np.max(np.abs(left))), float(np.max(np.abs(right))))
    return bool(np.max(np.abs(left - right)) <= tol * scale)


def test_bracket_factor_is_four_sectional():
    rng = np.random.default_rng(101)
    for _ in range(SAMPLES):
        a = rng.uniform(-3, 3, size=3)
        assert _rel_close(bracket_factors(a), 4.0 * sectional_curvatures(a), 1e-12)


def test_rhs_scaling_law():
    rng = np.random.default_rng(102)
    for _ in range(SAMPLES):
        a = rng.uniform(-3, 3, size=3)
        alpha = rng.uniform(-2, 2)
        lam = rng.choice([-1, 1]) * rng.uniform(0.1, 3.0)
        assert _rel_close(rg2_rhs(lam * a, alpha), lam ** 3 * rg2_rhs(a, lam ** 2 * alpha))


def test_rhs_negation_and_permutation_equivariance():
    rng = np.random.default_rng(103)
    for _ in range(SAMPLES):
        a = rng.uniform(-3, 3, size=3)
        alpha = rng.uniform(-2, 2)
        rhs = rg2_rhs(a, alpha)
        assert _rel_close(rg2_rhs(-a, alpha), -rhs)
        for perm in itertools.permutations(range(3)):
            perm = list(perm)
            assert _rel_close(rg2_rhs(a[perm], alpha), rhs[perm])


def test_ricci_and_einstein_identities():
    rng = np.random.default_rng(104)
    for _ in range(SAMPLES):
        a = rng.uniform(-3, 3, size=3)
        p = curvature_profile(a)
        k = np.array(p.sectional)
        assert _rel_close(p.ricci, np.roll(k, -1) + np.roll(k, -2))
        assert _rel_close(p.einstein, -k)


def test_group_class_constant_along_trajectories():
    rng = np.random.default_rng(105)
    for _ in range(20):
        a0 = rng.uniform(-1, 1, size=3)
        # some starts on lower-dimensional strata
        a0[rng.random(3) < 0.25] = 0.0
        alpha = rng.uniform(-0.5, 0.5)
        group = classify(a0).name
        trajectory = integrate(a0, FlowParameters(alpha=alpha, method=RK4, dt=1e-3, t_end=0.05))
        assert np.all(np.diff(trajectory.times) > 0)
        for state in trajectory.states:
            assert np.all(np.isfinite(state))
            assert np.array_equal(np.sign(state), np.sign(a0))
            assert classify(state).name == group



def test_adaptive_flow_keeps_signs_both_directions():
    rng = np.random.default_rng(106)
    for _ in range(14):
        a0 = rng.uniform(-3, 3, size=3)
        alpha = rng.uniform(-1, 1)
        group = classify(a0, tol=0.0).name
        for t_end in (3.0, -3.0):
            trajectory = integrate(a0, FlowParameters(alpha=alpha, t_end=t_end))
            assert trajectory.termination in (REACHED_END, BLOWUP_CAP_HIT, STEP_UNDERFLOW, MAX_STEPS_HIT)
            for state in trajectory.states:
                assert np.array_equal(np.sign(state), np.sign(a0)), (a0, alpha, t_end, state)
                assert classify(state, tol=0.0).name == group


def test_tiny_entry_keeps_sign_backward():
    # a1 far below the absolute error floor of the step controller
    for a0 in ((-1e-11, 2.2, -3.0), (1.2, -2.2, 7e-13)):
        trajectory = integrate(a0, FlowParameters(alpha=0.3, t_end=-3.0))
        signs = np.sign(trajectory.states)
        assert np.all(signs == np.sign(a0))


if __name__ == "__main__":
    print("=" * 60)
    print("PROPERTY TESTS")
    print("=" * 60)
    tests = [obj for name, obj in list(globals().items()) if name.startswith('test_') and callable(obj)]
    for n, test in enumerate(tests, 1):
        print(f"\n[TEST {n}] {test.__name__}")
        test()
        print("  ✓ PASS")
    print("\n" + "=" * 60)
    print(f"ALL {len(tests)} TESTS PASSED")
    print("=" * 60)
