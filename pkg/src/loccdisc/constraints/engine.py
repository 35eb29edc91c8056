"""Real linear systems over Hermitian operators.

The unknown is X = K^dag K for one measurement branch, expressed in the
coordinates of ``hermitian_basis(d)``. Every constraint is a real linear
functional of those coordinates, so each condition becomes a row of a
real matrix and the admissible X form its nullspace.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg as sla

from ..bell import schmidt_unitary
from ..linalg import ComplexMatrix, Side, StateVector
from .basis import HermitianBasis, hermitian_basis

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOL = 1e-10
DEFAULT_RANK_TOL = 1e-9


@dataclass(frozen=True)
class RowLabel:
    """Provenance of one constraint row."""

    kind: str  # "op" or "mixedness"
    entry: Tuple[int, int]  # state pair (i, j) for op, matrix entry (r, c) for mixedness
    part: str  # "re" or "im"
    side: Side

    def __str__(self) -> str:
        i, j = self.entry
        return f"{self.kind}[{i},{j}].{self.part}@{self.side.value}"


@dataclass
class ConstraintSystem:
    d: int
    rows: np.ndarray
    labels: List[RowLabel] = field(default_factory=list)

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float).reshape(-1, self.d * self.d)
        if self.rows.shape[0] != len(self.labels):
            raise ValueError(f"{self.rows.shape[0]} rows but {len(self.labels)} labels")
        if not np.all(np.isfinite(self.rows)):
            raise ValueError("constraint rows contain non-finite entries")

    @classmethod
    def empty(cls, d: int) -> "ConstraintSystem":
        return cls(d=d, rows=np.zeros((0, d * d)), labels=[])

    def __len__(self) -> int:
        return self.rows.shape[0]

    def __add__(self, other: "ConstraintSystem") -> "ConstraintSystem":
        if other.d != self.d:
            raise ValueError(f"cannot stack systems with d={self.d} and d={other.d}")
        return ConstraintSystem(
            d=self.d,
            rows=np.vstack([self.rows, other.rows]),
            labels=self.labels + other.labels,
        )

    def evaluate(self, x: ComplexMatrix) -> np.ndarray:
        """Row values at a Hermitian matrix X."""
        return self.rows @ hermitian_basis(self.d).coordinates(x)


@dataclass
class SolutionSpace:
    """Orthonormal basis (trace inner product) of a constraint nullspace."""

    d: int
    coordinates: np.ndarray  # shape (dimension, d*d)
    singular_values: np.ndarray

    @property
    def dimension(self) -> int:
        return self.coordinates.shape[0]

    @property
    def basis(self) -> List[ComplexMatrix]:
        hb = hermitian_basis(self.d)
        return [hb.reconstruct(c) for c in self.coordinates]

    def is_trivial(self) -> bool:
        """True when the space is span{I}."""
        return self.dimension == 1

    def contains(self, x: ComplexMatrix, tol: float = 1e-9) -> bool:
        coords = hermitian_basis(self.d).coordinates(x)
        residual = coords - self.coordinates.T @ (self.coordinates @ coords)
        return float(np.linalg.norm(residual)) <= tol * max(1.0, float(np.linalg.norm(coords)))

    def traceless_element(self) -> Optional[ComplexMatrix]:
        """A unit-norm element orthogonal to I, or None if the space is span{I}."""
        ident = hermitian_basis(self.d).identity_coordinates()
        projected = self.coordinates - np.outer(self.coordinates @ ident, ident)
        if projected.shape[0] == 0:
            return None
        norms = np.linalg.norm(projected, axis=1)
        best = int(np.argmax(norms))
        if norms[best] < 1e-9:
            return None
        return hermitian_basis(self.d).reconstruct(projected[best] / norms[best])


def _coefficient_matrices(states: Sequence[StateVector]) -> Tuple[int, List[np.ndarray]]:
    if not states:
        raise ValueError("at least one state is required")
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise ValueError(f"states have unequal dimensions {sorted(dims)}")
    d, _ = states[0].bipartite_dims()
    return d, [s.amplitudes.reshape(d, d) for s in states]


def check_pairwise_orthogonal(states: Sequence[StateVector], tol: float = ORTHOGONALITY_TOL) -> None:
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            overlap = abs(states[i].inner(states[j]))
            if overlap > tol:
                raise ValueError(f"states are not pairwise orthogonal: |<{i}|{j}>| = {overlap:.3e}")


def op_constraints(states: Sequence[StateVector], measuring_side: Side) -> ConstraintSystem:
    """Orthogonality preservation: <psi_i| X ⊗ I |psi_j> = 0 (or I ⊗ X for Bob) for i < j."""
    side = Side(measuring_side)
    d, coeffs = _coefficient_matrices(states)
    check_pairwise_orthogonal(states)
    stacked = hermitian_basis(d).stacked

    rows, labels = [], []
    for i in range(len(coeffs)):
        for j in range(i + 1, len(coeffs)):
            # f(X) = sum_ab X[a, b] C[a, b]
            if side is Side.A:
                c = coeffs[i].conj() @ coeffs[j].T
            else:
                c = coeffs[i].conj().T @ coeffs[j]
            values = np.einsum("lab,ab->l", stacked, c)
            rows.extend([values.real, values.imag])
            labels.extend([RowLabel("op", (i, j), "re", side), RowLabel("op", (i, j), "im", side)])
    if not rows:
        return ConstraintSystem.empty(d)
    return ConstraintSystem(d=d, rows=np.array(rows), labels=labels)


def mixedness_constraints(states: Sequence[StateVector], measuring_side: Side) -> ConstraintSystem:
    """Average post-measurement state on the other side stays maximally mixed.

    Encodes sum_i W_i conj(X) W_i^dag - Tr(X) I = 0 entrywise, W_i being the
    Schmidt unitary of each state. Requires exactly d states.
    """
    side = Side(measuring_side)
    d, _ = _coefficient_matrices(states)
    if len(states) != d:
        raise NotImplementedError(
            f"mixedness recipe defined only for m = d (got m={len(states)}, d={d})"
        )
    unitaries = [schmidt_unitary(s, side) for s in states]
    basis: HermitianBasis = hermitian_basis(d)
    conj_elements = basis.stacked.conj()

    images = np.zeros((basis.size, d, d), dtype=complex)
    for w in unitaries:
        images += np.einsum("ab,lbc,dc->lad", w, conj_elements, w.conj())
    traces = np.einsum("laa->l", basis.stacked).real
    images -= traces[:, None, None] * np.eye(d)[None, :, :]

    rows, labels = [], []
    for r in range(d):
        rows.append(images[:, r, r].real)
        labels.append(RowLabel("mixedness", (r, r), "re", side))
    for r in range(d):
        for c in range(r + 1, d):
            rows.extend([images[:, r, c].real, images[:, r, c].imag])
            labels.extend([
                RowLabel("mixedness", (r, c), "re", side),
                RowLabel("mixedness", (r, c), "im", side),
            ])
    return ConstraintSystem(d=d, rows=np.array(rows), labels=labels)


def solution_space(cs: ConstraintSystem, tol_rel: float = DEFAULT_RANK_TOL) -> SolutionSpace:
    """Nullspace of the stacked rows via SVD, cutting at tol_rel * largest singular value."""
    n = cs.d * cs.d
    if len(cs) == 0:
        return SolutionSpace(d=cs.d, coordinates=np.eye(n), singular_values=np.zeros(0))
    _, s, vh = sla.svd(cs.rows, full_matrices=True)
    largest = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol_rel * largest)) if largest > 0 else 0
    null = vh[rank:]
    logger.debug(f"solution_space: {len(cs)} rows, rank {rank}, nullity {null.shape[0]}")
    return SolutionSpace(d=cs.d, coordinates=null, singular_values=s)
