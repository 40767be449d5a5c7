"""Dense complex linear algebra primitives.

All other modules sit on top of these operations. Matrices are plain
``numpy.ndarray`` objects with ``complex128`` entries. The tensor-product
index convention is fixed here once: the FIRST factor occupies the most
significant index positions, i.e. ``tensor(a, b)[ia*rows_b + ib,
ja*cols_b + jb] == a[ia, ja] * b[ib, jb]``. Register/qubit 0 throughout
the package is therefore the most significant position.
"""

from __future__ import annotations

from typing import Literal, NamedTuple

import numpy as np

from .errors import (
    ConvergenceError,
    HermiticityError,
    NotPositiveError,
    SizeError,
)

# Hard cap on matrix dimension; everything here is meant for desk-scale
# instances, not bulk numerics.
MAX_DIM = 256

# Default absolute tolerance for input validation.
DEFAULT_TOL = 1e-10
# Default tolerance when certifying a factorization post-condition.
CERT_TOL = 1e-8


class EigDecomposition(NamedTuple):
    """Hermitian eigendecomposition with eigenvalues sorted ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting non-finite entries."""
    mat = np.asarray(a, dtype=np.complex128)
    if mat.ndim != 2:
        raise SizeError(f"expected a 2-d matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise ValueError("matrix contains non-finite entries")
    return mat


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a.T)


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def tensor(a, b) -> np.ndarray:
    """Kronecker product with the first factor most significant."""
    a = as_matrix(a)
    b = as_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > MAX_DIM:
        raise SizeError(
            f"tensor product would be {rows}x{cols}, above the cap {MAX_DIM}"
        )
    return np.kron(a, b)


def is_hermitian(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    scale = max(frobenius(a), 1.0)
    return frobenius(a - dagger(a)) <= tol * scale


def hermitian_eig(a, tol: float = DEFAULT_TOL) -> EigDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises HermiticityError if the input is not Hermitian within ``tol``
    (relative, Frobenius), and ConvergenceError if the solver fails or the
    reconstruction residual is above the certification tolerance.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise SizeError(f"expected a square matrix, got shape {a.shape}")
    if not is_hermitian(a, tol):
        raise HermiticityError("matrix is not Hermitian within tolerance")
    h = (a + dagger(a)) / 2.0
    try:
        vals, vecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver did not converge: {exc}") from exc
    scale = max(frobenius(a), 1.0)
    residual = frobenius(a @ vecs - vecs * vals)
    if residual > CERT_TOL * scale:
        raise ConvergenceError(
            f"eigendecomposition residual {residual:.3e} above tolerance"
        )
    ortho = frobenius(dagger(vecs) @ vecs - np.eye(a.shape[0]))
    if ortho > CERT_TOL:
        raise ConvergenceError(f"eigenvectors not orthonormal: {ortho:.3e}")
    return EigDecomposition(vals, vecs)


def svd(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition ``a = U diag(s) V^dag``.

    Returns (U, s, V) with orthonormal columns in U and V and ``s``
    non-negative descending.
    """
    a = as_matrix(a)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc
    v = dagger(vh)
    scale = max(frobenius(a), 1.0)
    residual = frobenius(a - (u * s) @ vh)
    if residual > CERT_TOL * scale:
        raise ConvergenceError(f"SVD residual {residual:.3e} above tolerance")
    return u, s, v


def singular_values(a) -> np.ndarray:
    """Singular values only, descending."""
    a = as_matrix(a)
    return np.linalg.svd(a, compute_uv=False)


def psd_sqrt(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Hermitian square root of a positive semi-definite matrix.

    Eigenvalues in ``[-tol, 0)`` are clamped to zero before the root;
    anything below ``-tol`` raises NotPositiveError.
    """
    vals, vecs = hermitian_eig(a, tol)
    if vals[0] < -tol:
        raise NotPositiveError(
            f"matrix has eigenvalue {vals[0]:.3e} below -tol; not PSD"
        )
    clamped = np.clip(vals, 0.0, None)
    root = (vecs * np.sqrt(clamped)) @ dagger(vecs)
    return (root + dagger(root)) / 2.0


def partial_trace(
    a, dim_h: int, dim_k: int, keep: Literal["H", "K"] = "H"
) -> np.ndarray:
    """Partial trace of an operator on a bipartite space H (x) K.

    ``a`` must be square of dimension ``dim_h * dim_k`` under the tensor
    convention of :func:`tensor` (H most significant).
    """
    a = as_matrix(a)
    dim = dim_h * dim_k
    if a.shape != (dim, dim):
        raise SizeError(
            f"expected shape ({dim}, {dim}) for dims ({dim_h}, {dim_k}), "
            f"got {a.shape}"
        )
    four = a.reshape(dim_h, dim_k, dim_h, dim_k)
    if keep == "H":
        return np.einsum("ikjk->ij", four)
    if keep == "K":
        return np.einsum("kikj->ij", four)
    raise ValueError(f"keep must be 'H' or 'K', got {keep!r}")


def matrix_to_json(a) -> dict:
    """Serialize a matrix as {"rows", "cols", "entries": [[re, im], ...]}."""
    a = as_matrix(a)
    entries = [[float(z.real), float(z.imag)] for z in a.reshape(-1)]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "entries": entries}


def matrix_from_json(obj: dict) -> np.ndarray:
    rows = int(obj["rows"])
    cols = int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise SizeError(
            f"entry count {len(entries)} does not match {rows}x{cols}"
        )
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return as_matrix(flat.reshape(rows, cols))
