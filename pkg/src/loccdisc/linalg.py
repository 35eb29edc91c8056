"""Dense complex linear algebra for bipartite qudit systems.

All bipartite vectors use the index convention |j>_A |k>_B -> j * dB + k,
which is exactly the block order produced by ``numpy.kron``. Every other
module in the package relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple

import numpy as np
from scipy import linalg as sla
from scipy import stats

ComplexMatrix = np.ndarray

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10


class Side(str, Enum):
    """Which party a local operator acts on (or which subsystem is kept)."""
    A = "A"
    B = "B"

    @property
    def other(self) -> "Side":
        return Side.B if self is Side.A else Side.A


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=complex)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class StateVector:
    """Unit vector in C^dim."""

    dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(np.asarray(self.amplitudes).reshape(-1))
        if amps.shape[0] != self.dim:
            raise ValueError(f"dimension mismatch: dim={self.dim}, got {amps.shape[0]} amplitudes")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector is not normalized (norm={norm:.3e})")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, amplitudes: Sequence[complex] | np.ndarray) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(dim=amps.shape[0], amplitudes=amps / norm)

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self) -> ComplexMatrix:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def bipartite_dims(self) -> Tuple[int, int]:
        """Split dim = d*d into (d, d); raises for non-square dimensions."""
        d = int(round(np.sqrt(self.dim)))
        if d * d != self.dim:
            raise ValueError(f"dimension {self.dim} is not a square d*d")
        return d, d


@dataclass(frozen=True)
class DensityOperator:
    """Trace-one positive semidefinite operator on C^dim."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.shape != (self.dim, self.dim):
            raise ValueError(f"dimension mismatch: dim={self.dim}, matrix shape {m.shape}")
        if not np.allclose(m, m.conj().T, atol=HERMITIAN_TOL, rtol=0):
            raise ValueError("density operator is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"density operator trace is {tr:.15f}, expected 1")
        if sla.eigvalsh(m).min() < -PSD_TOL:
            raise ValueError("density operator has a negative eigenvalue")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_pure(cls, psi: StateVector) -> "DensityOperator":
        return cls(dim=psi.dim, matrix=psi.projector())

    @classmethod
    def from_matrix(cls, matrix: ComplexMatrix) -> "DensityOperator":
        """Symmetrize and trace-normalize a numerically Hermitian PSD matrix."""
        m = np.asarray(matrix, dtype=complex)
        m = 0.5 * (m + m.conj().T)
        return cls(dim=m.shape[0], matrix=m / np.trace(m).real)

    def spectrum(self) -> np.ndarray:
        """Eigenvalues in ascending order, tiny negatives clipped to zero."""
        vals = sla.eigvalsh(self.matrix)
        vals[(vals < 0) & (vals > -PSD_TOL)] = 0.0
        return vals


def tensor(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product a ⊗ b (vectors or matrices)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace_matrix(m: ComplexMatrix, dims: Tuple[int, int], keep: Side) -> ComplexMatrix:
    """Partial trace of an arbitrary (dA*dB)x(dA*dB) matrix, keeping one factor."""
    d_a, d_b = dims
    m = np.asarray(m, dtype=complex)
    if m.shape != (d_a * d_b, d_a * d_b):
        raise ValueError(f"dimension mismatch: matrix {m.shape} vs dims {dims}")
    blocks = m.reshape(d_a, d_b, d_a, d_b)
    if Side(keep) is Side.A:
        return np.einsum("ijkj->ik", blocks)
    return np.einsum("ijil->jl", blocks)


def partial_trace(rho: DensityOperator, dims: Tuple[int, int], keep: Side) -> DensityOperator:
    d_a, d_b = dims
    if rho.dim != d_a * d_b:
        raise ValueError(f"dimension mismatch: rho.dim={rho.dim}, dims={dims}")
    reduced = partial_trace_matrix(rho.matrix, dims, keep)
    return DensityOperator(dim=reduced.shape[0], matrix=0.5 * (reduced + reduced.conj().T))


def reduced_states(psi: StateVector, dims: Tuple[int, int] | None = None) -> Tuple[DensityOperator, DensityOperator]:
    """Both reduced states of a pure bipartite vector, without forming |psi><psi|."""
    d_a, d_b = dims or psi.bipartite_dims()
    if psi.dim != d_a * d_b:
        raise ValueError(f"dimension mismatch: psi.dim={psi.dim}, dims={(d_a, d_b)}")
    coeffs = psi.amplitudes.reshape(d_a, d_b)
    rho_a = coeffs @ coeffs.conj().T
    rho_b = (coeffs.conj().T @ coeffs).T
    return DensityOperator.from_matrix(rho_a), DensityOperator.from_matrix(rho_b)


def hermitian_eigensystem(h: ComplexMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvector columns of a Hermitian matrix.

    Raises:
        ValueError: if ``h`` deviates from its adjoint by more than 1e-10.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if not np.allclose(h, h.conj().T, atol=1e-10, rtol=0):
        raise ValueError("matrix is not Hermitian")
    eigenvalues, eigenvectors = sla.eigh(0.5 * (h + h.conj().T))
    return eigenvalues, eigenvectors


def shannon_entropy(p: Sequence[float] | np.ndarray) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    if p.size == 0:
        raise ValueError("empty probability list")
    if p.min() < -1e-12:
        raise ValueError(f"negative probability {p.min():.3e}")
    total = p.sum()
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {total:.12f}, expected 1")
    p = np.clip(p, 0.0, None)
    return float(stats.entropy(p, base=2))


def von_neumann_entropy(rho: DensityOperator) -> float:
    """S(rho) = -Tr rho log2 rho, in bits."""
    vals = rho.spectrum()
    return float(stats.entropy(np.clip(vals, 0.0, None), base=2))


def random_unitary(d: int, rng: np.random.Generator | int | None = None) -> ComplexMatrix:
    """Haar-random d x d unitary."""
    if d == 1:
        phase = np.random.default_rng(rng).uniform(0, 2 * np.pi)
        return np.array([[np.exp(1j * phase)]])
    return stats.unitary_group.rvs(d, random_state=rng)


def random_state(dim: int, rng: np.random.Generator | int | None = None) -> StateVector:
    """Haar-random pure state in C^dim."""
    return StateVector.normalized(random_unitary(dim, rng)[:, 0])


def random_mes(d: int, rng: np.random.Generator | int | None = None) -> StateVector:
    """Random maximally entangled state (I ⊗ W)|Phi> with Haar W."""
    w = random_unitary(d, rng)
    return StateVector.normalized(w.T.reshape(-1))
