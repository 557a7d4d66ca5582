"""Dense complex linear algebra kernels shared by the rate and selection code.

All routines operate on 2-D numpy arrays, real or complex. Positive definite
matrices are handled through Cholesky factorizations, and log-determinants
are base 2 throughout because every downstream metric is in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

# Relative singular-value cutoff for rank decisions. Channel entries are
# unit variance, so anything this far below the top singular value is noise.
RANK_RTOL = 1e-10

__all__ = [
    "RANK_RTOL",
    "NotPositiveDefiniteError",
    "SvdResult",
    "herm_product",
    "chol_logdet",
    "pd_inverse",
    "woodbury_update",
    "svd",
    "null_space_basis",
    "row_space_basis",
]


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    """Raised when a matrix that must be positive definite fails Cholesky."""


def _as_matrix(a, name):
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array, got shape {a.shape}")
    return a


def herm_product(a, b):
    """Return ``a @ b.conj().T`` after checking the shared inner dimension."""
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape[1] != b.shape[1]:
        raise ValueError(
            f"inner dimensions differ: a is {a.shape}, b is {b.shape}"
        )
    return a @ b.conj().T


def chol_logdet(a):
    """Base-2 log determinant of a Hermitian positive definite matrix.

    Uses the Cholesky factor, so the determinant never overflows and the
    input is implicitly checked for positive definiteness.
    """
    a = _as_matrix(a, "a")
    try:
        lower = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(
            "matrix is not positive definite"
        ) from exc
    return float(2.0 * np.sum(np.log2(np.diagonal(lower).real)))


def pd_inverse(a):
    """Inverse of a Hermitian positive definite matrix via Cholesky.

    The result is re-symmetrized so that round-off cannot accumulate into a
    non-Hermitian inverse when the output is fed back into further updates.
    """
    a = _as_matrix(a, "a")
    try:
        factor = cho_factor(a, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(
            "matrix is not positive definite"
        ) from exc
    eye = np.eye(a.shape[0], dtype=np.result_type(a.dtype, np.complex128))
    inv = cho_solve(factor, eye)
    return 0.5 * (inv + inv.conj().T)


def woodbury_update(a_inv, b):
    """Return ``(A + B^H B)^{-1}`` given ``A^{-1}``, by the matrix inversion lemma.

    Parameters
    ----------
    a_inv : array, shape (m, m)
        Inverse of the current Hermitian positive definite matrix ``A``.
    b : array, shape (n, m)
        Rows being folded into the Gram matrix.

    Only an ``n x n`` system is inverted, which is what makes incremental
    user updates cheap when ``n`` is much smaller than ``m``. The result is
    re-symmetrized before being returned.
    """
    a_inv = _as_matrix(a_inv, "a_inv")
    b = _as_matrix(b, "b")
    m = a_inv.shape[0]
    if a_inv.shape[1] != m:
        raise ValueError(f"a_inv must be square, got shape {a_inv.shape}")
    if b.shape[1] != m:
        raise ValueError(
            f"b has {b.shape[1]} columns but a_inv is {m} x {m}"
        )
    ab = a_inv @ b.conj().T
    small = np.eye(b.shape[0], dtype=np.result_type(ab.dtype, np.complex128))
    small = small + b @ ab
    updated = a_inv - ab @ pd_inverse(small) @ ab.conj().T
    return 0.5 * (updated + updated.conj().T)


@dataclass(frozen=True)
class SvdResult:
    """Full SVD ``a = U diag(s) V^H`` with unitary ``U`` and ``V``."""

    left_vectors: np.ndarray
    singular_values: np.ndarray
    right_vectors: np.ndarray


def svd(a):
    """Full singular value decomposition wrapped in an :class:`SvdResult`.

    ``right_vectors`` holds ``V`` (not ``V^H``), so null and row space bases
    can be sliced out of its columns directly.
    """
    a = _as_matrix(a, "a")
    left, values, vh = np.linalg.svd(a, full_matrices=True)
    return SvdResult(left, values, vh.conj().T)


def _rank(values):
    if values.size == 0 or values[0] <= 0.0:
        return 0
    return int(np.count_nonzero(values > RANK_RTOL * values[0]))


def null_space_basis(a, total_cols):
    """Orthonormal basis for the right null space of ``a``.

    Parameters
    ----------
    a : array, shape (r, total_cols)
        Stacked rows whose span must be avoided. ``r`` may be zero, in
        which case the identity is returned.
    total_cols : int
        Ambient dimension; fixes the basis size when ``a`` is empty.

    Returns
    -------
    array, shape (total_cols, total_cols - rank(a))
        Columns are orthonormal and satisfy ``a @ basis ~ 0``. The basis
        has zero columns when ``a`` has full column rank; callers decide
        whether that is an error.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[1] != total_cols:
        raise ValueError(
            f"expected shape (r, {total_cols}), got {a.shape}"
        )
    if a.shape[0] == 0:
        return np.eye(total_cols, dtype=np.complex128)
    _, values, vh = np.linalg.svd(a, full_matrices=True)
    return vh[_rank(values):].conj().T


def row_space_basis(a):
    """Orthonormal basis (columns) for the row space of ``a``."""
    a = _as_matrix(a, "a")
    _, values, vh = np.linalg.svd(a, full_matrices=False)
    return vh[: _rank(values)].conj().T
