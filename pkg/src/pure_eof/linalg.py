"""Dense complex matrix helpers.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``; these
functions add the shape and finiteness checks the rest of the package relies
on.
"""

import numpy as np

from .errors import DimensionError, InvalidInputError


def as_matrix(m, name="matrix"):
    """Coerce ``m`` to a finite 2-D complex128 array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains NaN or infinite entries")
    return arr


def svd(m, full_matrices=False):
    """Singular value decomposition ``M = U @ diag(s) @ V^dagger``.

    Parameters
    ----------
    m : array_like
        Finite complex matrix of shape (rows, cols).
    full_matrices : bool
        If True, ``U`` and ``V`` are square unitaries; otherwise they have
        ``min(rows, cols)`` orthonormal columns.

    Returns
    -------
    u : ndarray
        Left singular vectors as columns.
    s : ndarray
        Nonnegative singular values, nonincreasing.
    v : ndarray
        Right singular vectors as columns (note: ``V``, not ``V^dagger``).
    """
    arr = as_matrix(m)
    u, s, vh = np.linalg.svd(arr, full_matrices=full_matrices)
    return u, s, vh.conj().T


def hs_norm(m):
    """Hilbert-Schmidt (Frobenius) norm ``sqrt(Tr(M M^dagger))``."""
    arr = as_matrix(m)
    return float(np.sqrt(np.sum(arr.real**2 + arr.imag**2)))


def adjoint(m):
    return as_matrix(m).conj().T


def mat_mul(a, b):
    a = as_matrix(a, "left operand")
    b = as_matrix(b, "right operand")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def trace(m):
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"trace requires a square matrix, got {arr.shape}")
    return complex(np.trace(arr))
