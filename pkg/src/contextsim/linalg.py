"""Dense complex linear algebra for small fixed dimensions (3, 4, 9, 16).

All values are plain numpy arrays of dtype complex128 and every function is
pure. The eigensolver is a cyclic Jacobi iteration specialized to Hermitian
input: at these dimensions robustness and auditability beat asymptotics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NoConvergenceError, NotHermitianError, ZeroVectorError

CONVERGENCE_TOL = 1e-12
MERGE_TOL = 1e-8
MAX_SWEEPS = 100
PHASE_CUTOFF = 1e-8
HERMITICITY_TOL = 1e-10


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex matrix with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(v) -> np.ndarray:
    """Coerce to a 1-D complex vector with finite entries."""
    w = np.asarray(v, dtype=complex)
    if w.ndim != 1:
        raise ValueError(f"expected a vector, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("vector entries must be finite")
    return w


def is_hermitian(a, tol: float = HERMITICITY_TOL) -> bool:
    m = as_matrix(a)
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def is_unitary(a, tol: float = HERMITICITY_TOL) -> bool:
    m = as_matrix(a)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))) <= tol


def kron(a, b) -> np.ndarray:
    """Kronecker product: block (i, j) of the result equals a[i, j] * b."""
    return np.kron(as_matrix(a), as_matrix(b))


def trace(a) -> complex:
    """Sum of the diagonal entries."""
    return complex(np.trace(as_matrix(a)))


def projector_from_ray(v) -> np.ndarray:
    """Orthogonal projector onto the ray spanned by v (normalized first)."""
    w = as_vector(v)
    norm = float(np.linalg.norm(w))
    if norm == 0.0:
        raise ZeroVectorError("cannot project onto the zero vector")
    unit = w / norm
    return np.outer(unit, unit.conj())


def fix_phase(v: np.ndarray, cutoff: float = PHASE_CUTOFF) -> np.ndarray:
    """Rescale by a unit phase so the first entry with modulus above
    ``cutoff`` becomes real and positive. Returns the input unchanged when
    no entry clears the cutoff."""
    for entry in v:
        if abs(entry) > cutoff:
            return v * (abs(entry) / entry)
    return v


def _offdiag_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _rotate(mat: np.ndarray, vec: np.ndarray, p: int, q: int) -> None:
    """One two-sided plane rotation annihilating mat[p, q] (in place).

    The rotation is the unitary U that diagonalizes the 2x2 Hermitian block
    at (p, q): a real Jacobi rotation composed with the phase that makes the
    off-diagonal entry real. ``vec`` accumulates the product of rotations,
    so its columns converge to the eigenvectors.
    """
    apq = mat[p, q]
    phase = apq / abs(apq)
    angle = 0.5 * math.atan2(2.0 * abs(apq), mat[p, p].real - mat[q, q].real)
    c = math.cos(angle)
    s = math.sin(angle)

    col_p = mat[:, p].copy()
    col_q = mat[:, q].copy()
    mat[:, p] = c * col_p + s * np.conj(phase) * col_q
    mat[:, q] = -s * col_p + c * np.conj(phase) * col_q
    row_p = mat[p, :].copy()
    row_q = mat[q, :].copy()
    mat[p, :] = c * row_p + s * phase * row_q
    mat[q, :] = -s * row_p + c * phase * row_q
    # zero by construction; keep it exact
    mat[p, q] = 0.0
    mat[q, p] = 0.0

    vec_p = vec[:, p].copy()
    vec_q = vec[:, q].copy()
    vec[:, p] = c * vec_p + s * np.conj(phase) * vec_q
    vec[:, q] = -s * vec_p + c * np.conj(phase) * vec_q


def hermitian_eigensystem(
    a,
    tol: float = CONVERGENCE_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors of a Hermitian matrix by cyclic Jacobi.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues real and
    ascending and eigenvectors as the columns of a unitary matrix, each
    phase-fixed via :func:`fix_phase`.

    Raises:
        NotHermitianError: input deviates from Hermiticity beyond 1e-10.
        NoConvergenceError: off-diagonal norm not reduced below ``tol``
            within ``max_sweeps`` sweeps.
    """
    m = as_matrix(a)
    if not is_hermitian(m):
        raise NotHermitianError("matrix is not Hermitian within 1e-10")
    n = m.shape[0]
    mat = (m + m.conj().T) / 2.0
    vec = np.eye(n, dtype=complex)
    # entries below this cannot push the off-diagonal norm above tol
    skip = tol / max(n * n, 1)
    for _ in range(max_sweeps):
        if _offdiag_norm(mat) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(mat[p, q]) > skip:
                    _rotate(mat, vec, p, q)
    if _offdiag_norm(mat) > tol:
        raise NoConvergenceError(
            f"off-diagonal norm {_offdiag_norm(mat):.3e} > {tol:.3e} "
            f"after {max_sweeps} sweeps"
        )
    eigenvalues = np.real(np.diag(mat)).copy()
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vec = vec[:, order]
    for k in range(n):
        vec[:, k] = fix_phase(vec[:, k])
    return eigenvalues, vec


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Distinct eigenvalues (ascending) with their eigenspace projectors."""

    eigenvalues: tuple[float, ...]
    projectors: tuple[np.ndarray, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.eigenvalues) == len(self.projectors) == len(self.multiplicities)):
            raise ValueError("eigenvalues, projectors and multiplicities must align")
        if len(self.projectors) == 0:
            raise ValueError("empty decomposition")
        dim = self.projectors[0].shape[0]
        if sum(self.multiplicities) != dim:
            raise ValueError("multiplicities must sum to the dimension")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        if any(b <= a for a, b in zip(self.eigenvalues, self.eigenvalues[1:])):
            raise ValueError("eigenvalues must be strictly ascending")
        total = np.zeros((dim, dim), dtype=complex)
        for proj, mult in zip(self.projectors, self.multiplicities):
            if proj.shape != (dim, dim):
                raise ValueError("projectors must share one dimension")
            if not is_hermitian(proj, 1e-9):
                raise ValueError("projector is not Hermitian")
            if float(np.max(np.abs(proj @ proj - proj))) > 1e-9:
                raise ValueError("projector is not idempotent")
            if abs(np.trace(proj).real - mult) > 1e-9:
                raise ValueError("projector rank does not match multiplicity")
            total += proj
        if float(np.max(np.abs(total - np.eye(dim)))) > 1e-9:
            raise ValueError("projectors do not sum to the identity")
        for i in range(len(self.projectors)):
            for j in range(i + 1, len(self.projectors)):
                if float(np.max(np.abs(self.projectors[i] @ self.projectors[j]))) > 1e-9:
                    raise ValueError("projectors are not mutually orthogonal")

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]


def spectral_projectors(
    a,
    tol: float = CONVERGENCE_TOL,
    merge_tol: float = MERGE_TOL,
) -> SpectralDecomposition:
    """Group the eigensystem of a Hermitian matrix into eigenspace projectors.

    Adjacent eigenvalues whose gap is at most ``merge_tol`` are treated as
    one (degenerate) eigenvalue; each projector is the sum of the rank-1
    projectors of its group.
    """
    eigenvalues, vectors = hermitian_eigensystem(a, tol=tol)
    boundaries = [0]
    for k in range(1, len(eigenvalues)):
        if eigenvalues[k] - eigenvalues[k - 1] > merge_tol:
            boundaries.append(k)
    boundaries.append(len(eigenvalues))

    values: list[float] = []
    projectors: list[np.ndarray] = []
    multiplicities: list[int] = []
    for lo, hi in zip(boundaries, boundaries[1:]):
        block = vectors[:, lo:hi]
        projectors.append(block @ block.conj().T)
        values.append(float(np.mean(eigenvalues[lo:hi])))
        multiplicities.append(hi - lo)
    return SpectralDecomposition(tuple(values), tuple(projectors), tuple(multiplicities))


def matrix_function_from_spectrum(
    decomposition: SpectralDecomposition,
    f: Callable[[float], complex],
) -> np.ndarray:
    """Apply a scalar function through the spectrum: sum of f(lambda) * P."""
    dim = decomposition.dim
    out = np.zeros((dim, dim), dtype=complex)
    for lam, proj in zip(decomposition.eigenvalues, decomposition.projectors):
        out += complex(f(lam)) * proj
    return out
