#!/usr/bin/env python
"""Test closed-form curvature against the Koszul/Riemann-tensor oracle"""

import numpy as np

from bracketflow.curvature import (connection_coefficients, curvature_profile, levi_civita,
                                   oracle_profile, parabolic, riemann_tensor)


def _close(left, right, tol=1e-12):
    left, right = np.asarray(left, dtype=float), np.asarray(right, dtype=float)
    scale = max(1.0, float(np.max(np.abs(left))), float(np.max(np.abs(right))))
    return bool(np.allclose(left, right, rtol=0.0, atol=tol * scale))


def test_connection_coefficient_known_values():
    assert _close(connection_coefficients((0, 0, 0)), (0, 0, 0))
    assert _close(connection_coefficients((2, 0, 0)), (-1, 1, 1))
    assert _close(connection_coefficients((-1.5, 0, 0.5)), (1, -0.5, -1))


def test_profile_known_values():
    p = curvature_profile((-1.5, 0, 0.5))
    assert _close(sorted(p.sectional), sorted((1, 0, -2)))
    assert _close(sorted(p.ricci), sorted((1, -2, -1)))
    assert abs(p.scalar + 2.0) < 1e-12

    p = curvature_profile((2, 0, 0))
    assert _close(p.sectional, (-3, 1, 1))
    assert _close(p.ricci, (2, -2, -2))
    assert abs(p.scalar + 2.0) < 1e-12
    assert _close(p.rm2diag, (4, 20, 20))

    zero = curvature_profile((0, 0, 0))
    for field in (zero.mu, zero.sectional, zero.ricci, zero.einstein, zero.rm2diag):
        assert _close(field, (0, 0, 0))
    assert zero.scalar == 0.0

    for a in (0.5, 1.0, -2.0, 7.0):
        flat = curvature_profile((a, a, 0))
        assert _close(flat.sectional, (0, 0, 0))
        assert _close(flat.ricci, (0, 0, 0))
        assert _close(flat.rm2diag, (0, 0, 0))


def test_parabolic_known_values():
    assert parabolic((0, 0, 0), 3.0)
    assert parabolic((0, 0, 0), -3.0)
    assert not parabolic((-1.5, 0, 0.5), 1.0)
    assert parabolic((1, 1, 0), -5.0)


def test_profile_identities():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        a = rng.uniform(-3, 3, size=3)
        p = curvature_profile(a)
        k = np.array(p.sectional)
        k_j, k_k = np.roll(k, -1), np.roll(k, -2)
        assert _close(p.ricci, k_j + k_k, 1e-10)
        assert _close(p.einstein, -k, 1e-10)
        assert _close(p.scalar, 2.0 * k.sum(), 1e-10)
        assert _close(p.rm2diag, 2.0 * (k_j ** 2 + k_k ** 2), 1e-10)
        assert min(p.rm2diag) >= 0.0


def test_scaling_and_symmetry():
    rng = np.random.default_rng(12)
    for _ in range(200):
        a = rng.uniform(-3, 3, size=3)
        lam = rng.uniform(0.2, 3.0)
        p, q = curvature_profile(a), curvature_profile(lam * a)
        assert _close(q.sectional, lam ** 2 * np.array(p.sectional), 1e-10)
        assert _close(q.ricci, lam ** 2 * np.array(p.ricci), 1e-10)
        assert _close(q.rm2diag, lam ** 4 * np.array(p.rm2diag), 1e-10)
        n = curvature_profile(-a)
        assert _close(n.sectional, p.sectional, 1e-10)
        assert _close(n.ricci, p.ricci, 1e-10)
        # swapping axes 1 and 3 swaps the curvature triples the same way
        s = curvature_profile(a[[2, 1, 0]])
        assert _close(s.sectional, np.array(p.sectional)[[2, 1, 0]], 1e-10)
        assert _close(s.ricci, np.array(p.ricci)[[2, 1, 0]], 1e-10)


def test_oracle_hand_checked_heisenberg():
    gamma = levi_civita((2, 0, 0))
    assert abs(gamma[0, 1, 2] + 1.0) < 1e-15
    riemann = riemann_tensor((2, 0, 0))
    assert abs(riemann[1, 2, 2, 1] + 3.0) < 1e-12
    assert abs(riemann[2, 0, 0, 2] - 1.0) < 1e-12
    # Riemann antisymmetry in each pair
    assert np.allclose(riemann, -np.transpose(riemann, (1, 0, 2, 3)))
    assert np.allclose(riemann, -np.transpose(riemann, (0, 1, 3, 2)))


def test_oracle_matches_closed_forms():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        a = rng.uniform(-3, 3, size=3)
        closed = curvature_profile(a)
        oracle, ricci_matrix, rm2_matrix = oracle_profile(a)
        for name in ('mu', 'sectional', 'ricci', 'einstein', 'rm2diag'):
            assert _close(getattr(closed, name), getattr(oracle, name), 1e-10), (name, a)
        assert _close(closed.scalar, oracle.scalar, 1e-10)
        # the Milnor frame diagonalizes Rc and Rm^2
        assert _close(ricci_matrix - np.diag(np.diag(ricci_matrix)), np.zeros((3, 3)), 1e-10)
        assert _close(rm2_matrix - np.diag(np.diag(rm2_matrix)), np.zeros((3, 3)), 1e-10)


if __name__ == "__main__":
    print("=" * 60)
    print("CURVATURE TESTS")
    print("=" * 60)
    tests = [obj for name, obj in list(globals().items()) if name.startswith('test_') and callable(obj)]
    for n, test in enumerate(tests, 1):
        print(f"\n[TEST {n}] {test.__name__}")
        test()
        print("  ✓ PASS")
    print("\n" + "=" * 60)
    print(f"ALL {len(tests)} TESTS PASSED")
    print("=" * 60)
