from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..bell import BellSet
from ..linalg import ComplexMatrix, Side, StateVector, hermitian_eigensystem
from .engine import (
    DEFAULT_RANK_TOL,
    SolutionSpace,
    check_pairwise_orthogonal,
    mixedness_constraints,
    op_constraints,
    solution_space,
)

logger = logging.getLogger(__name__)


class VerdictKind(str, Enum):
    FAILS_R = "FailsR"
    PASSES_R = "PassesR"
    TRIVIALLY_INDISTINGUISHABLE = "TriviallyIndistinguishable"


@dataclass(frozen=True)
class SideDims:
    """Nullspace dimensions for one measuring side."""

    op_only: int
    op_plus_r: int

    def to_dict(self) -> Dict[str, int]:
        return {"op_only": self.op_only, "op_plus_r": self.op_plus_r}


@dataclass
class SideAnalysis:
    side: Side
    op_space: SolutionSpace
    joint_space: SolutionSpace

    @property
    def dims(self) -> SideDims:
        return SideDims(op_only=self.op_space.dimension, op_plus_r=self.joint_space.dimension)


@dataclass
class Verdict:
    """Outcome of condition R for one ensemble.

    ``alice_dims``/``bob_dims`` are None for TriviallyIndistinguishable, where
    no system is solved. ``witness`` is a traceless Hermitian element of a
    joint nullspace, present only for PassesR.
    """

    kind: VerdictKind
    alice_dims: Optional[SideDims] = None
    bob_dims: Optional[SideDims] = None
    witness: Optional[ComplexMatrix] = None
    witness_side: Optional[Side] = None

    @property
    def sides_agree(self) -> bool:
        """Whether Alice-start and Bob-start give the same trivial/nontrivial outcome."""
        if self.alice_dims is None or self.bob_dims is None:
            return True
        return (self.alice_dims.op_plus_r == 1) == (self.bob_dims.op_plus_r == 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.kind.value,
            "alice": self.alice_dims.to_dict() if self.alice_dims else None,
            "bob": self.bob_dims.to_dict() if self.bob_dims else None,
            "witness_side": self.witness_side.value if self.witness_side else None,
        }


def _resolve_states(target: Union[BellSet, Sequence[StateVector]]) -> Tuple[int, List[StateVector]]:
    if isinstance(target, BellSet):
        return target.d, target.states()
    states = list(target)
    if not states:
        raise ValueError("at least one state is required")
    d, _ = states[0].bipartite_dims()
    return d, states


def analyze_side(
    states: Sequence[StateVector], side: Side, tol_rel: float = DEFAULT_RANK_TOL
) -> SideAnalysis:
    """OP-only and OP+mixedness solution spaces for one measuring side."""
    side = Side(side)
    op = op_constraints(states, side)
    joint = op + mixedness_constraints(states, side)
    return SideAnalysis(
        side=side,
        op_space=solution_space(op, tol_rel),
        joint_space=solution_space(joint, tol_rel),
    )


def condition_r_verdict(
    target: Union[BellSet, Sequence[StateVector]], tol_rel: float = DEFAULT_RANK_TOL
) -> Verdict:
    """Decide condition R for a set of pairwise orthogonal maximally entangled states.

    Raises:
        ValueError: states are not pairwise orthogonal or not maximally entangled.
        NotImplementedError: fewer states than the local dimension.
    """
    d, states = _resolve_states(target)
    m = len(states)
    check_pairwise_orthogonal(states)

    if m > d:
        logger.debug(f"m={m} > d={d}: trivially indistinguishable")
        return Verdict(kind=VerdictKind.TRIVIALLY_INDISTINGUISHABLE)
    if m < d:
        raise NotImplementedError(f"condition R for m < d is out of scope (m={m}, d={d})")

    alice = analyze_side(states, Side.A, tol_rel)
    bob = analyze_side(states, Side.B, tol_rel)

    if alice.joint_space.is_trivial() and bob.joint_space.is_trivial():
        verdict = Verdict(kind=VerdictKind.FAILS_R, alice_dims=alice.dims, bob_dims=bob.dims)
    else:
        chosen = alice if not alice.joint_space.is_trivial() else bob
        verdict = Verdict(
            kind=VerdictKind.PASSES_R,
            alice_dims=alice.dims,
            bob_dims=bob.dims,
            witness=chosen.joint_space.traceless_element(),
            witness_side=chosen.side,
        )

    if not verdict.sides_agree:
        logger.warning(
            f"Alice-start and Bob-start disagree: alice={alice.dims}, bob={bob.dims}"
        )
    return verdict


def psd_epsilon_range(x: ComplexMatrix) -> Tuple[float, float]:
    """Closed interval of eps for which I + eps * X_hat is PSD.

    X_hat is the traceless part of X. A zero traceless part gives (-inf, inf).
    """
    x = np.asarray(x, dtype=complex)
    d = x.shape[0]
    x_hat = x - (np.trace(x).real / d) * np.eye(d)
    eigenvalues, _ = hermitian_eigensystem(x_hat)
    lo, hi = -np.inf, np.inf
    if eigenvalues[-1] > 1e-12:
        lo = -1.0 / eigenvalues[-1]
    if eigenvalues[0] < -1e-12:
        hi = -1.0 / eigenvalues[0]
    return float(lo), float(hi)


def op_subsumption(
    states: Sequence[StateVector], side: Side, tol_rel: float = DEFAULT_RANK_TOL
) -> bool:
    """Whether every mixedness-only solution already satisfies OP."""
    side = Side(side)
    op_space = solution_space(op_constraints(states, side), tol_rel)
    mix_space = solution_space(mixedness_constraints(states, side), tol_rel)
    return all(op_space.contains(x) for x in mix_space.basis)
