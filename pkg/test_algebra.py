#!/usr/bin/env python
"""Test group classification and the canonical form of structure constants"""

import itertools
import math

import numpy as np

from bracketflow.algebra import (StructureConstants, canonicalize, classify, equivalent,
                                 sign_signature, E2, E11, HEISENBERG, R3, SL2R, SU2)
from bracketflow.exceptions import InvalidConstantsError, InvalidParameterError


def test_canonicalize_known_values():
    assert tuple(canonicalize((0, 2, -1))) == (2.0, 0.0, -1.0)
    assert tuple(canonicalize((-1, -1, -1))) == (1.0, 1.0, 1.0)
    assert tuple(canonicalize((-2, 0, 1))) == (2.0, 0.0, -1.0)


def test_classify_known_values():
    root8 = math.sqrt(8.0)
    assert classify((root8, root8, root8)).name == SU2
    assert classify((-1.5, 0, 0.5)).name == E11
    assert classify((1, 2, -3)).name == SL2R
    assert classify((0, 0, 0)).name == R3
    assert classify((0, 0, -4)).name == HEISENBERG
    for a in (0.5, -1.0, 3.0):
        assert classify((a, a, 0)).name == E2


def test_signature_ordering():
    # global negation is a symmetry, so n_pos >= n_neg always
    assert sign_signature((-1, -2, 3)) == (2, 1, 0)
    assert sign_signature((-1, -2, -3)) == (3, 0, 0)
    group = classify((1, -1, 0))
    assert group.signature == (1, 1, 1)
    assert str(group) == E11


def test_zero_tolerance_is_relative():
    # roundoff-sized entries next to O(1) entries count as zero
    assert classify((1.0, 1.0, 1e-14)).name == E2
    assert classify((1e-14, 0.0, 0.0)).name == HEISENBERG
    assert classify((1.0, 1.0, 1e-6)).name == SU2


def test_equivalent_known_values():
    assert equivalent((1, 2, 3), (3, 2, 1))
    assert equivalent((1, 2, 3), (-1, -2, -3))
    assert not equivalent((1, 2, 3), (1, -2, 3))
    try:
        equivalent((1, 2, 3), (1, 2, 3), tol=0.0)
        assert False, "tol = 0 must be rejected"
    except InvalidParameterError:
        pass


def test_canonical_form_symmetries():
    rng = np.random.default_rng(7)
    for _ in range(500):
        x = tuple(rng.uniform(-3, 3, size=3))
        c = canonicalize(x)
        assert canonicalize(c) == c
        assert canonicalize(tuple(-v for v in x)) == c
        for perm in itertools.permutations(x):
            assert canonicalize(perm) == c
            assert classify(perm).name == classify(x).name
        assert classify(tuple(-v for v in x)).name == classify(x).name


def test_structure_constants_validation():
    for bad in ((math.nan, 0, 0), (0, math.inf, 0), ('a', 0, 0)):
        try:
            StructureConstants(*bad)
            assert False, f"{bad} must be rejected"
        except InvalidConstantsError:
            pass
    try:
        StructureConstants.of((1, 2))
        assert False, "two entries must be rejected"
    except InvalidConstantsError:
        pass
    sc = StructureConstants(-0.0, 1, 2)
    assert math.copysign(1.0, sc.a1) == 1.0
    assert list(sc) == [0.0, 1.0, 2.0]
    assert sc.scaled(2).max_abs() == 4.0
    assert tuple(sc.negated()) == (0.0, -1.0, -2.0)


if __name__ == "__main__":
    print("=" * 60)
    print("ALGEBRA TESTS")
    print("=" * 60)
    tests = [obj for name, obj in list(globals().items()) if name.startswith('test_') and callable(obj)]
    for n, test in enumerate(tests, 1):
        print(f"\n[TEST {n}] {test.__name__}")
        test()
        print("  ✓ PASS")
    print("\n" + "=" * 60)
    print(f"ALL {len(tests)} TESTS PASSED")
    print("=" * 60)
