"""
Structure constants of 3D unimodular Lie algebras in a Milnor frame.

[e2,e3] = a1 e1, [e3,e1] = a2 e2, [e1,e2] = a3 e3 on an orthonormal frame.
Permuting the frame permutes the constants; flipping one frame vector negates
all three. Those two moves generate the symmetry group used here.
"""
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidConstantsError, InvalidParameterError

# ============================================================================
# CONFIGURATION
# ============================================================================
ZERO_TOL = 1e-12  # relative to the max-magnitude entry

R3 = 'R3'
HEISENBERG = 'Heisenberg'
E2 = 'E2'
E11 = 'E11'
SL2R = 'SL2R'
SU2 = 'SU2'

# (n_pos, n_neg, n_zero) -> group, Milnor's sign table with n_pos >= n_neg
SIGNATURE_TABLE = {
    (3, 0, 0): SU2,
    (2, 1, 0): SL2R,
    (2, 0, 1): E2,
    (1, 1, 1): E11,
    (1, 0, 2): HEISENBERG,
    (0, 0, 3): R3,
}


@dataclass(frozen=True)
class StructureConstants:
    """The triple (a1, a2, a3); any signs, zeros allowed."""
    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        for name in ('a1', 'a2', 'a3'):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise InvalidConstantsError(f"{name} is not a real number: {value!r}")
            if not math.isfinite(value):
                raise InvalidConstantsError(f"{name} must be finite, got {value}")
            # -0.0 prints badly and breaks lexicographic ties
            object.__setattr__(self, name, value + 0.0)

    @classmethod
    def of(cls, values):
        """Build from any length-3 iterable (tuple, list, ndarray, StructureConstants)."""
        values = tuple(values)
        if len(values) != 3:
            raise InvalidConstantsError(f"expected 3 structure constants, got {len(values)}")
        return cls(*values)

    def __iter__(self):
        yield self.a1
        yield self.a2
        yield self.a3

    def __len__(self):
        return 3

    def __getitem__(self, index):
        return (self.a1, self.a2, self.a3)[index]

    def scaled(self, factor):
        return StructureConstants(self.a1 * factor, self.a2 * factor, self.a3 * factor)

    def negated(self):
        return self.scaled(-1.0)

    def max_abs(self):
        return max(abs(self.a1), abs(self.a2), abs(self.a3))


@dataclass(frozen=True)
class GroupClass:
    """Simply connected unimodular group (by Lie algebra) and the sign signature it came from."""
    name: str
    signature: tuple

    def __str__(self):
        return self.name


def as_vector(sc):
    """Coerce structure constants (or any 3-sequence) to a float ndarray of shape (3,)."""
    vector = np.asarray(tuple(sc) if isinstance(sc, StructureConstants) else sc, dtype=float)
    if vector.shape != (3,):
        raise InvalidConstantsError(f"expected 3 structure constants, got shape {vector.shape}")
    return vector


def canonicalize(sc):
    """
    Normal form of sc under entry permutations and global negation.

    The entries are sorted in descending order; if the negated triple,
    re-sorted descending, is lexicographically greater, it wins.

    Args:
        sc: StructureConstants or any 3-sequence of finite reals.

    Returns:
        StructureConstants: the class representative.
    """
    sc = StructureConstants.of(sc)
    direct = tuple(sorted(sc, reverse=True))
    flipped = tuple(sorted((-x for x in sc), reverse=True))
    return StructureConstants.of(max(direct, flipped))


def sign_signature(sc, tol=ZERO_TOL):
    """
    Count (positive, negative, zero) entries.

    An entry is zero when exactly 0 or when its magnitude is at most
    tol times the largest magnitude. The result is ordered so that
    n_pos >= n_neg (global negation is a symmetry).
    """
    values = canonicalize(sc)
    scale = values.max_abs()
    n_pos = n_neg = n_zero = 0
    for value in values:
        if value == 0.0 or abs(value) <= tol * scale:
            n_zero += 1
        elif value > 0:
            n_pos += 1
        else:
            n_neg += 1
    if n_neg > n_pos:
        n_pos, n_neg = n_neg, n_pos
    return n_pos, n_neg, n_zero


def classify(sc, tol=ZERO_TOL):
    """
    Identify the unimodular Lie group from the signs of the structure constants.

    Args:
        sc: StructureConstants or 3-sequence.
        tol (float): relative zero tolerance for sign counting.

    Returns:
        GroupClass: one of R3, Heisenberg, E2, E11, SL2R, SU2.
    """
    signature = sign_signature(sc, tol=tol)
    return GroupClass(SIGNATURE_TABLE[signature], signature)


def equivalent(sc1, sc2, tol=1e-9):
    """True iff the canonical forms agree entrywise within tol."""
    if tol <= 0:
        raise InvalidParameterError("equivalence tolerance must be positive")
    left = canonicalize(sc1)
    right = canonicalize(sc2)
    return all(abs(x - y) <= tol for x, y in zip(left, right))
