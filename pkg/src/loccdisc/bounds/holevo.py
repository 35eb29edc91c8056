"""Post-measurement states and the Holevo-like bound on locally accessible information."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..linalg import (
    ComplexMatrix,
    DensityOperator,
    Side,
    StateVector,
    reduced_states,
    tensor,
    von_neumann_entropy,
)

logger = logging.getLogger(__name__)

UNREACHABLE_PROBABILITY = 1e-14


@dataclass(eq=False)
class Ensemble:
    """Pure bipartite states with prior probabilities (uniform by default)."""

    states: Sequence[StateVector]
    probs: Optional[np.ndarray] = None

    def __post_init__(self):
        self.states = tuple(self.states)
        if not self.states:
            raise ValueError("ensemble needs at least one state")
        dims = {s.dim for s in self.states}
        if len(dims) != 1:
            raise ValueError(f"dimension mismatch: states have dims {sorted(dims)}")
        if self.probs is None:
            self.probs = np.full(len(self.states), 1.0 / len(self.states))
        self.probs = np.asarray(self.probs, dtype=float)
        if self.probs.shape != (len(self.states),):
            raise ValueError(f"{len(self.states)} states but {self.probs.size} probabilities")
        if self.probs.min() < 0 or abs(self.probs.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities must be non-negative and sum to 1, got {self.probs}")

    def __len__(self) -> int:
        return len(self.states)

    @property
    def dims(self) -> Tuple[int, int]:
        return self.states[0].bipartite_dims()


@dataclass
class PMRS:
    """Per-state and average reduced states after one measurement branch."""

    outcome_probabilities: np.ndarray
    alice: List[DensityOperator] = field(default_factory=list)
    bob: List[DensityOperator] = field(default_factory=list)
    alice_average: Optional[DensityOperator] = None
    bob_average: Optional[DensityOperator] = None

    def per_state(self, side: Side) -> List[DensityOperator]:
        return self.alice if Side(side) is Side.A else self.bob

    def average(self, side: Side) -> DensityOperator:
        return self.alice_average if Side(side) is Side.A else self.bob_average


def _local_operator(k: ComplexMatrix, d: int, side: Side) -> ComplexMatrix:
    k = np.asarray(k, dtype=complex)
    if k.shape != (d, d):
        raise ValueError(f"dimension mismatch: Kraus operator {k.shape} on a {d}x{d} system")
    ident = np.eye(d)
    return tensor(k, ident) if Side(side) is Side.A else tensor(ident, k)


def post_measurement_state(
    psi: StateVector, k: ComplexMatrix, side: Side
) -> Tuple[float, StateVector]:
    """Apply K to one party and renormalize.

    Returns the outcome probability <psi|K^dag K (x) I|psi> and the normalized state.

    Raises:
        ValueError: "outcome unreachable" when the probability is below 1e-14.
    """
    d, _ = psi.bipartite_dims()
    out = _local_operator(k, d, side) @ psi.amplitudes
    p = float(np.vdot(out, out).real)
    if p < UNREACHABLE_PROBABILITY:
        raise ValueError(f"outcome unreachable (probability {p:.3e})")
    return p, StateVector(dim=psi.dim, amplitudes=out / np.sqrt(p))


def pmrs(ensemble: Ensemble, k: ComplexMatrix, side: Side) -> PMRS:
    """Reduced states of every post-measurement state and their prior-weighted averages."""
    probs, alice, bob = [], [], []
    for psi in ensemble.states:
        p, post = post_measurement_state(psi, k, side)
        rho_a, rho_b = reduced_states(post)
        probs.append(p)
        alice.append(rho_a)
        bob.append(rho_b)
    w = ensemble.probs
    avg_a = sum(wi * r.matrix for wi, r in zip(w, alice))
    avg_b = sum(wi * r.matrix for wi, r in zip(w, bob))
    return PMRS(
        outcome_probabilities=np.array(probs),
        alice=alice,
        bob=bob,
        alice_average=DensityOperator.from_matrix(avg_a),
        bob_average=DensityOperator.from_matrix(avg_b),
    )


def holevo_like_bound(ensemble: Ensemble) -> float:
    """S(avg rho_A) + S(avg rho_B) - max over sides of the average per-state entropy, in bits."""
    reduced = [reduced_states(psi) for psi in ensemble.states]
    w = ensemble.probs
    avg_a = DensityOperator.from_matrix(sum(wi * ra.matrix for wi, (ra, _) in zip(w, reduced)))
    avg_b = DensityOperator.from_matrix(sum(wi * rb.matrix for wi, (_, rb) in zip(w, reduced)))
    mean_a = float(sum(wi * von_neumann_entropy(ra) for wi, (ra, _) in zip(w, reduced)))
    mean_b = float(sum(wi * von_neumann_entropy(rb) for wi, (_, rb) in zip(w, reduced)))
    bound = von_neumann_entropy(avg_a) + von_neumann_entropy(avg_b) - max(mean_a, mean_b)
    logger.debug(f"holevo_like_bound: m={len(ensemble)}, bound={bound:.12f}")
    return bound
