"""
Curvature of the left-invariant metric defined by a Milnor frame.

Closed forms (cyclic i, j, k):
    mu_i = (a_j + a_k - a_i) / 2
    K_i  = a_i mu_i - mu_j mu_k      sectional curvature of the (e_j, e_k) plane
    r_i  = 2 mu_j mu_k               Ricci eigenvalue along e_i
    (Rm^2)_ii = 2 (K_j^2 + K_k^2)

The Koszul oracle below rebuilds everything from the structure tensor and is
what the closed forms are checked against.
"""
from dataclasses import dataclass, asdict

import numpy as np

from .algebra import as_vector

# ============================================================================
# CONFIGURATION
# ============================================================================
# np.roll shifts giving (j, k) for each cyclic i
_NEXT = -1
_AFTER_NEXT = -2


@dataclass(frozen=True)
class CurvatureProfile:
    """Principal curvature data of a Milnor frame; all triples indexed by frame axis."""
    mu: tuple
    sectional: tuple
    ricci: tuple
    scalar: float
    einstein: tuple
    rm2diag: tuple

    def to_dict(self):
        return asdict(self)


def _cyclic(values):
    return np.roll(values, _NEXT), np.roll(values, _AFTER_NEXT)


def _triple(values):
    return tuple(float(x) for x in values)


def connection_coefficients(sc):
    """
    Milnor's connection coefficients mu_i = (a_j + a_k - a_i) / 2.

    Returns:
        numpy.ndarray: shape (3,)
    """
    a = as_vector(sc)
    return (a.sum() - 2.0 * a) / 2.0


def sectional_curvatures(sc):
    """Principal sectional curvatures K_i = a_i mu_i - mu_j mu_k."""
    a = as_vector(sc)
    mu = connection_coefficients(a)
    mu_j, mu_k = _cyclic(mu)
    return a * mu - mu_j * mu_k


def ricci_eigenvalues(sc):
    mu = connection_coefficients(sc)
    mu_j, mu_k = _cyclic(mu)
    return 2.0 * mu_j * mu_k


def curvature_profile(sc):
    """
    Full closed-form curvature profile of the metric with structure constants sc.

    Args:
        sc: StructureConstants or 3-sequence.

    Returns:
        CurvatureProfile
    """
    mu = connection_coefficients(sc)
    sectional = sectional_curvatures(sc)
    ricci = ricci_eigenvalues(sc)
    scalar = float(ricci.sum())
    k_j, k_k = _cyclic(sectional)
    return CurvatureProfile(
        mu=_triple(mu),
        sectional=_triple(sectional),
        ricci=_triple(ricci),
        scalar=scalar,
        einstein=_triple(ricci - scalar / 2.0),
        rm2diag=_triple(2.0 * (k_j ** 2 + k_k ** 2)),
    )


def parabolic(sc, alpha):
    """True iff 1 + alpha * K > 0 for every principal sectional curvature K."""
    return bool(np.all(1.0 + alpha * sectional_curvatures(sc) > 0.0))


# ============================================================================
# KOSZUL ORACLE
# ============================================================================

def structure_tensor(sc):
    """C[i, j, k] = <[e_i, e_j], e_k> for the Milnor frame."""
    a1, a2, a3 = as_vector(sc)
    c = np.zeros((3, 3, 3))
    c[1, 2, 0], c[2, 1, 0] = a1, -a1
    c[2, 0, 1], c[0, 2, 1] = a2, -a2
    c[0, 1, 2], c[1, 0, 2] = a3, -a3
    return c


def levi_civita(sc):
    """
    Gamma[i, j, k] = <nabla_{e_i} e_j, e_k> from the Koszul formula
    2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y> on an orthonormal
    left-invariant frame.
    """
    c = structure_tensor(sc)
    return 0.5 * (c - np.transpose(c, (2, 0, 1)) + np.transpose(c, (1, 2, 0)))


def riemann_tensor(sc):
    """
    R[i, j, k, l] = <R(e_i, e_j) e_k, e_l> with
    R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y].
    """
    c = structure_tensor(sc)
    gamma = levi_civita(sc)
    return (np.einsum('jkm,iml->ijkl', gamma, gamma)
            - np.einsum('ikm,jml->ijkl', gamma, gamma)
            - np.einsum('ijm,mkl->ijkl', c, gamma))


def oracle_profile(sc):
    """
    Curvature profile computed by brute force from the Riemann tensor.

    Returns:
        tuple: (CurvatureProfile, ricci_matrix, rm2_matrix); the matrices let
        callers confirm that the frame diagonalizes both tensors.
    """
    gamma = levi_civita(sc)
    riemann = riemann_tensor(sc)
    ricci_matrix = np.einsum('iyzi->yz', riemann)
    rm2_matrix = np.einsum('ipqr,jpqr->ij', riemann, riemann)
    scalar = float(np.trace(ricci_matrix))
    mu = np.array([gamma[0, 1, 2], gamma[1, 2, 0], gamma[2, 0, 1]])
    # K_i lives on the plane spanned by the two other frame vectors
    sectional = np.array([riemann[1, 2, 2, 1], riemann[2, 0, 0, 2], riemann[0, 1, 1, 0]])
    ricci = np.diag(ricci_matrix)
    profile = CurvatureProfile(
        mu=_triple(mu),
        sectional=_triple(sectional),
        ricci=_triple(ricci),
        scalar=scalar,
        einstein=_triple(ricci - scalar / 2.0),
        rm2diag=_triple(np.diag(rm2_matrix)),
    )
    return profile, ricci_matrix, rm2_matrix
