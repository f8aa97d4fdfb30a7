"""Dense 2x2 complex linear algebra used by every other module.

Matrices are plain numpy arrays of shape (2, 2), vectors of shape (2,),
both complex128 and row-major.  Everything here is a pure function; no
global state is touched.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

# eigenvector Gram condition number above which a pair counts as defective
DEFECTIVE_COND = 1e8


def projector(v):
    """Rank-1 projector (I + sigma.v)/2 onto the spin direction v.

    v must be a real unit 3-vector (|v| = 1 within 1e-10).
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError("projector expects a real 3-vector")
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise ValueError(f"projector direction must be a unit vector, |v| = {np.linalg.norm(v)}")
    return 0.5 * (IDENTITY + v[0] * PAULI_X + v[1] * PAULI_Y + v[2] * PAULI_Z)


def projector_phase_exp(c, p):
    """exp(-i c P) for an idempotent P, via the identity exp(-icP) = I + (e^{-ic} - 1) P.

    P**2 = P collapses the exponential series exactly, so this is cheap and
    has no truncation error.  Non-idempotent input (|P^2 - P| > 1e-10) is
    rejected.
    """
    p = np.asarray(p, dtype=complex)
    if frob_dist(p @ p, p) > 1e-10:
        raise ValueError("projector_phase_exp requires an idempotent matrix")
    return IDENTITY + (np.exp(-1j * c) - 1.0) * p


@dataclass(frozen=True)
class Eig2Result:
    """Eigendecomposition of a 2x2 matrix.

    values: the two eigenvalues; vectors: the matching normalized right
    eigenvectors as columns; defective: True when the eigenvector pair is
    numerically rank deficient (Gram condition > DEFECTIVE_COND), which is
    what happens at an exceptional point.
    """

    values: np.ndarray
    vectors: np.ndarray
    defective: bool


def eig2(m):
    """Closed-form eigendecomposition of a 2x2 complex matrix.

    Solves the characteristic quadratic with the discriminant sign chosen
    to avoid cancellation.  Defectiveness is a flagged outcome, not an
    error: coincident eigenvalues with a rank-deficient eigenvector set
    return defective=True.
    """
    m = np.asarray(m, dtype=complex)
    a, b = m[0, 0], m[0, 1]
    c, d = m[1, 0], m[1, 1]
    tr = a + d
    det = a * d - b * c
    sq = np.sqrt((a - d) ** 2 + 4.0 * b * c)
    # pick the root maximizing |tr + sq| so z1 is computed without cancellation
    if (tr.conjugate() * sq).real < 0.0:
        sq = -sq
    z1 = 0.5 * (tr + sq)
    z2 = det / z1 if z1 != 0.0 else 0.5 * (tr - sq)

    v1 = _eigvec(m, z1)
    v2 = _eigvec(m, z2)
    vectors = np.column_stack([v1, v2])
    return Eig2Result(np.array([z1, z2]), vectors, _gram_cond(v1, v2) > DEFECTIVE_COND)


def _eigvec(m, z):
    """Normalized right null vector of (m - z I), from the larger of its rows."""
    r1 = np.array([m[0, 1], z - m[0, 0]])
    r2 = np.array([z - m[1, 1], m[1, 0]])
    v = r1 if np.linalg.norm(r1) >= np.linalg.norm(r2) else r2
    nv = np.linalg.norm(v)
    if nv == 0.0:  # m is z * identity
        return np.array([1.0, 0.0], dtype=complex)
    return v / nv


def _gram_cond(v1, v2):
    """Condition number of [v1 v2] via its 2x2 Gram matrix (unit columns)."""
    g01 = np.vdot(v1, v2)
    # singular values of the column matrix: s^2 = 1 +- |<v1,v2>|
    smax2 = 1.0 + abs(g01)
    smin2 = 1.0 - abs(g01)
    if smin2 <= 0.0:
        return np.inf
    return np.sqrt(smax2 / smin2)


def adjoint(m):
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def mat_mul(a, b):
    """Matrix product (kept as a named operation for the module surface)."""
    return np.asarray(a) @ np.asarray(b)


def frob_dist(a, b):
    """Frobenius distance ||a - b||_F."""
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def require_finite(m, what="matrix"):
    """Raise NumericalError if any entry is NaN or infinite."""
    if not np.all(np.isfinite(np.asarray(m))):
        raise NumericalError(f"non-finite entries in {what}")
    return m
