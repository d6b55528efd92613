"""Entangled singlet states, density matrices, rotation-invariance checks.

Bipartite vectors are flattened first-particle-major: the amplitude of
|i>|j> on a d (x) d space sits at index i*d + j.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, UnsupportedDimensionError
from .linalg import (
    as_matrix,
    as_vector,
    hermitian_eigensystem,
    is_hermitian,
    matrix_function_from_spectrum,
    spectral_projectors,
)
from .observables import Direction, spin1_operator

NORM_TOL = 1e-12
DENSITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Unit-norm pure state on a local_dim (x) local_dim tensor product."""

    local_dim: int
    amplitudes: np.ndarray
    label: str = ""

    def __post_init__(self):
        amplitudes = as_vector(self.amplitudes)
        if self.local_dim < 2:
            raise ValueError("local dimension must be at least 2")
        if amplitudes.shape[0] != self.local_dim**2:
            raise ValueError(
                f"expected {self.local_dim**2} amplitudes, got {amplitudes.shape[0]}"
            )
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")
        object.__setattr__(self, "amplitudes", amplitudes)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = as_matrix(self.matrix)
        if not is_hermitian(matrix, DENSITY_TOL):
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(matrix).real - 1.0) > DENSITY_TOL:
            raise ValueError("density matrix must have unit trace")
        eigenvalues, _ = hermitian_eigensystem(matrix)
        if float(eigenvalues[0]) < -DENSITY_TOL:
            raise ValueError(f"density matrix has negative eigenvalue {eigenvalues[0]}")
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def spin1_singlet() -> BipartiteState:
    """Total-spin-zero state of two spin-1 particles (9 amplitudes)."""
    amplitudes = np.zeros(9, dtype=complex)
    s = 1.0 / math.sqrt(3.0)
    amplitudes[2] = s
    amplitudes[4] = -s
    amplitudes[6] = s
    return BipartiteState(local_dim=3, amplitudes=amplitudes, label="spin1-singlet")


def spin32_singlet() -> BipartiteState:
    """Total-spin-zero state of two spin-3/2 particles (16 amplitudes).

    Local basis order is descending spin projection (3/2, 1/2, -1/2, -3/2),
    so the four nonzero amplitudes pair opposite projections with
    alternating signs.
    """
    amplitudes = np.zeros(16, dtype=complex)
    amplitudes[3] = 0.5
    amplitudes[12] = -0.5
    amplitudes[6] = -0.5
    amplitudes[9] = 0.5
    return BipartiteState(local_dim=4, amplitudes=amplitudes, label="spin32-singlet")


def density(state: BipartiteState) -> DensityMatrix:
    """Rank-1 density matrix |state><state|."""
    amp = state.amplitudes
    return DensityMatrix(matrix=np.outer(amp, amp.conj()))


def rotation_operator_spin1(d: Direction, angle: float) -> np.ndarray:
    """Rotation of the spin-1 representation about axis ``d`` by ``angle``,
    exp(-i * angle * J), built by spectral synthesis."""
    if not math.isfinite(angle):
        raise ValueError("angle must be finite")
    decomposition = spectral_projectors(spin1_operator(d))
    return matrix_function_from_spectrum(
        decomposition, lambda lam: cmath.exp(-1j * angle * lam)
    )


def unitary_invariance_defect(state: BipartiteState, u: np.ndarray) -> float:
    """Infidelity 1 - |<state| (U x U) |state>| for a local unitary U."""
    matrix = as_matrix(u)
    if matrix.shape[0] != state.local_dim:
        raise DimensionMismatchError(
            f"unitary acts on dimension {matrix.shape[0]}, state is local dimension {state.local_dim}"
        )
    transformed = np.kron(matrix, matrix) @ state.amplitudes
    overlap = np.vdot(state.amplitudes, transformed)
    return 1.0 - abs(overlap)


def check_rotation_invariance(state: BipartiteState, d: Direction, angle: float) -> float:
    """Infidelity of ``state`` under the same spatial rotation on both
    particles; zero (to numerical precision) characterizes the spin-1
    singlet. Only defined for local dimension 3."""
    if state.local_dim != 3:
        raise UnsupportedDimensionError("rotation invariance check requires local dimension 3")
    return unitary_invariance_defect(state, rotation_operator_spin1(d, angle))
