"""Dense complex linear algebra used throughout the package.

Conventions
-----------
A point of C^n is a complex numpy vector of length n.  A *real frame* is a
real array of shape ``(k, 2n)`` whose rows are tangent vectors written in
the interleaved coordinates ``(x_1, y_1, ..., x_n, y_n)``; row ``j`` read as
a complex vector has entries ``x_i + i*y_i``.  Every module uses this single
reading order, so phases and Maslov indices never pick up stray signs.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, OutOfRange, SingularMatrix

TOL_UNITARY = 1e-9


def as_square(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DimensionMismatch(f"expected a nonempty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    return M


def singular_tolerance(M) -> float:
    """``1e-10 * (max column norm)**n``, the scale-aware singularity threshold."""
    M = as_square(M)
    n = M.shape[0]
    return 1e-10 * float(np.max(np.linalg.norm(M, axis=0))) ** n


def is_invertible(M) -> bool:
    M = as_square(M)
    return abs(np.linalg.det(M)) > singular_tolerance(M)


def is_unitary(M, tol: float = TOL_UNITARY) -> bool:
    M = as_square(M)
    return float(np.max(np.abs(M @ M.conj().T - np.eye(M.shape[0])))) <= tol


def is_special_unitary(M, tol: float = TOL_UNITARY) -> bool:
    M = as_square(M)
    return is_unitary(M, tol) and abs(np.linalg.det(M) - 1) <= tol


def polar_factors(M) -> tuple[np.ndarray, np.ndarray]:
    """Left polar decomposition ``M = P @ U``.

    ``P = sqrt(M M*)`` comes from the Hermitian eigendecomposition of
    ``M M*``; ``U = P^{-1} M`` is then unitary.
    """
    M = as_square(M)
    if not is_invertible(M):
        raise SingularMatrix("polar decomposition needs an invertible matrix")
    evals, V = np.linalg.eigh(M @ M.conj().T)
    roots = np.sqrt(np.clip(evals, 0.0, None))
    P = (V * roots) @ V.conj().T
    U = (V * (1.0 / roots)) @ V.conj().T @ M
    return P, U


def polar_retract(M, t: float) -> np.ndarray:
    """Deformation retraction of GL(n, C) onto U(n).

    Returns ``(t I + (1 - t) P) U`` where ``M = P U``.  At ``t = 0`` this is
    ``M`` and at ``t = 1`` it is the unitary factor; the path stays
    invertible and commutes with unitary multiplication on either side.
    """
    if not 0.0 <= t <= 1.0:
        raise OutOfRange(f"t must lie in [0, 1], got {t}")
    P, U = polar_factors(M)
    n = P.shape[0]
    return (t * np.eye(n) + (1.0 - t) * P) @ U


def unitary_part(M) -> np.ndarray:
    return polar_factors(M)[1]


def to_complex(v) -> np.ndarray:
    """Interleaved real coordinates -> complex vector (works row-wise)."""
    v = np.asarray(v, dtype=float)
    if v.shape[-1] % 2:
        raise DimensionMismatch("real coordinate vectors must have even length")
    return v[..., 0::2] + 1j * v[..., 1::2]


def to_real(z) -> np.ndarray:
    """Complex vector -> interleaved real coordinates (works row-wise)."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],))
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out


def orthonormalize(frame, tol: float = 1e-10) -> np.ndarray:
    """Gram-Schmidt (modified, two passes) with respect to the real inner product.

    Raises ``DimensionMismatch`` if the rows are linearly dependent.  Because
    the change of basis is upper triangular with positive diagonal, the
    orientation of the frame is preserved.
    """
    F = np.array(frame, dtype=float, ndmin=2)
    out = np.zeros_like(F)
    for i, v in enumerate(F):
        w = v.copy()
        for _ in range(2):
            for j in range(i):
                w -= (out[j] @ w) * out[j]
        norm = np.linalg.norm(w)
        if norm <= tol * max(1.0, np.linalg.norm(v)):
            raise DimensionMismatch(f"frame vector {i} is dependent on the previous ones")
        out[i] = w / norm
    return out


def complex_determinant(frame) -> complex:
    """det of the n x n complex matrix whose columns are the frame vectors.

    For an orthonormal frame spanning a Lagrangian plane this is the phase
    of the plane and has modulus one.
    """
    F = np.array(frame, dtype=float, ndmin=2)
    k, dim = F.shape
    if dim != 2 * k:
        raise DimensionMismatch(f"need exactly n vectors in R^(2n), got {k} vectors in R^{dim}")
    return complex(np.linalg.det(to_complex(F).T))
