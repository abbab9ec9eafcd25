"""Hermitian matrix helpers and density matrices with cached spectral data.

Conventions used throughout the package:

* eigenvalues are sorted in descending order,
* eigenvectors are the columns of the unitary ``U``, so that
  ``rho = (U * eigenvalues) @ U.conj().T``,
* the eigenframe form of an observable is ``a = U.conj().T @ A0 @ U`` with
  ``A0`` the centered observable ``A - Tr(rho A) I``.
"""

from __future__ import annotations

import numpy as np

HERMITIAN_ATOL = 1e-12
TRACE_ATOL = 1e-12
EIGENVALUE_FLOOR = 1e-12
UNITARITY_ATOL = 1e-10
RECONSTRUCTION_ATOL = 1e-10

DET_SMALL_MAX_DIM = 8


class DecompositionError(RuntimeError):
    """Eigendecomposition failed to converge or violated its guarantees."""


def as_hermitian(matrix, *, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate near-self-adjointness and return the exactly symmetrized matrix.

    The input must be square and satisfy ``max|M - M^dagger| <= atol``.  The
    returned array is ``(M + M^dagger) / 2``, so downstream code can rely on
    exact self-adjointness.  Real input stays real.
    """
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    adj = m.conj().T
    deviation = float(np.max(np.abs(m - adj))) if m.size else 0.0
    if deviation > atol:
        raise ValueError(
            f"matrix is not self-adjoint: max deviation {deviation:.3e} > {atol:.1e}"
        )
    return (m + adj) / 2


def spectral_decompose(matrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a self-adjoint matrix, eigenvalues descending.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors as columns.
    The output is deterministic for identical input bits: the symmetric
    LAPACK solver is deterministic on a fixed build, and the descending
    reorder is a fixed slice reversal, so repeated calls agree bit for bit,
    including the basis chosen inside degenerate eigenspaces.
    """
    m = as_hermitian(matrix)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(f"eigendecomposition failed: {exc}") from exc
    w = np.ascontiguousarray(w[::-1])
    v = np.ascontiguousarray(v[:, ::-1])
    dim = m.shape[0]
    unit_err = float(np.max(np.abs(v.conj().T @ v - np.eye(dim))))
    scale = max(1.0, float(np.max(np.abs(w))) if dim else 1.0)
    recon_err = float(np.max(np.abs((v * w) @ v.conj().T - m)))
    if unit_err > UNITARITY_ATOL or recon_err > RECONSTRUCTION_ATOL * scale:
        raise DecompositionError(
            f"decomposition checks failed: unitarity {unit_err:.3e}, "
            f"reconstruction {recon_err:.3e}"
        )
    return w, v


class DensityMatrix:
    """Unit-trace positive semidefinite matrix with cached spectral data.

    Eigenvalues below ``EIGENVALUE_FLOOR`` are clamped to exact zeros and the
    state is then flagged non-faithful.  All stored arrays are read-only.
    """

    __slots__ = ("matrix", "eigenvalues", "eigenvectors", "dim", "faithful")

    def __init__(self, matrix):
        m = as_hermitian(matrix)
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace must be 1 within {TRACE_ATOL:.1e}, got {trace}")
        w, v = spectral_decompose(m)
        if w.size and float(w[-1]) < -EIGENVALUE_FLOOR:
            raise ValueError(f"negative eigenvalue {w[-1]:.3e} beyond tolerance")
        w[w < EIGENVALUE_FLOOR] = 0.0
        self.matrix = m
        self.eigenvalues = w
        self.eigenvectors = v
        self.dim = m.shape[0]
        self.faithful = bool(w[-1] > 0.0)
        for arr in (self.matrix, self.eigenvalues, self.eigenvectors):
            arr.setflags(write=False)

    def expectation(self, observable) -> float:
        """Tr(rho A) for a self-adjoint A (real by construction)."""
        a = np.asarray(observable)
        return float(np.einsum("ij,ji->", self.matrix, a).real)

    def __repr__(self):  # pragma: no cover
        return (
            f"DensityMatrix(dim={self.dim}, faithful={self.faithful}, "
            f"eigenvalues={np.array2string(self.eigenvalues, precision=6)})"
        )


def center(state: DensityMatrix, observable) -> np.ndarray:
    """Subtract the state expectation: A -> A - Tr(rho A) I."""
    a = as_hermitian(observable)
    if a.shape[0] != state.dim:
        raise ValueError(f"dimension mismatch: {a.shape[0]} != {state.dim}")
    mean = state.expectation(a)
    return a - mean * np.eye(state.dim, dtype=a.dtype)


def to_eigenframe(state: DensityMatrix, observable) -> np.ndarray:
    """Centered observable in the state's eigenbasis: U^dagger (A - <A>I) U.

    The result is self-adjoint and satisfies the weighted centering identity
    sum_h eigenvalues[h] * a[h, h] = 0 (within roundoff).
    """
    a = as_hermitian(observable)
    if a.shape[0] != state.dim:
        raise ValueError(f"dimension mismatch: {a.shape[0]} != {state.dim}")
    mean = state.expectation(a)
    u = state.eigenvectors
    frame = u.conj().T @ a @ u
    frame -= mean * np.eye(state.dim, dtype=frame.dtype)
    return frame


def icommutator(state: DensityMatrix, observable) -> np.ndarray:
    """i[rho, A] = i(rho A - A rho); self-adjoint for self-adjoint A."""
    a = as_hermitian(observable)
    if a.shape[0] != state.dim:
        raise ValueError(f"dimension mismatch: {a.shape[0]} != {state.dim}")
    c = 1j * (state.matrix @ a - a @ state.matrix)
    return (c + c.conj().T) / 2


def det_small(matrix) -> float:
    """Determinant of a small real matrix (n <= 8).

    Uses cofactor expansion for n <= 3 and partial-pivot elimination with
    explicit sign tracking for 4 <= n <= 8.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n == 0 or n > DET_SMALL_MAX_DIM:
        raise ValueError(f"supported sizes are 1..{DET_SMALL_MAX_DIM}, got {n}")
    if n == 1:
        return float(m[0, 0])
    if n == 2:
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    if n == 3:
        return float(
            m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
        )
    work = m.copy()
    sign = 1.0
    for col in range(n - 1):
        pivot = col + int(np.argmax(np.abs(work[col:, col])))
        if work[pivot, col] == 0.0:
            return 0.0
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            sign = -sign
        factors = work[col + 1 :, col] / work[col, col]
        work[col + 1 :, col:] -= np.outer(factors, work[col, col:])
    return float(sign * np.prod(np.diagonal(work)))
