from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..bell import BellSet
from ..linalg import StateVector
from .catalog import OneWayProtocol, catalog_bases, check_orthonormal

logger = logging.getLogger(__name__)

ZERO_PROBABILITY = 1e-12
VERIFY_TOL = 1e-9


@dataclass(eq=False)
class BobResidual:
    """Bob's conditional state for one state and one Alice outcome."""

    probability: float
    state: Optional[StateVector]

    @property
    def reachable(self) -> bool:
        return self.state is not None


def bob_residuals(
    states: Sequence[StateVector],
    alice_basis: Sequence[StateVector],
    zero_probability: float = ZERO_PROBABILITY,
) -> List[List[BobResidual]]:
    """Residuals indexed as ``[outcome][state]``.

    The residual of |psi> = sum_jk M[j, k] |j>|k> after outcome u is the
    Bob vector u^dag M, with probability its squared norm.

    Raises:
        ValueError: non-orthonormal basis or mismatched dimensions.
    """
    check_orthonormal(alice_basis)
    d = alice_basis[0].dim
    outcomes: List[List[BobResidual]] = []
    for u in alice_basis:
        row = []
        for psi in states:
            if psi.dim != d * d:
                raise ValueError(f"dimension mismatch: state dim {psi.dim}, basis dim {d}")
            phi = u.amplitudes.conj() @ psi.amplitudes.reshape(d, d)
            p = float(np.vdot(phi, phi).real)
            if p > zero_probability:
                row.append(BobResidual(probability=p, state=StateVector.normalized(phi)))
            else:
                row.append(BobResidual(probability=p, state=None))
        outcomes.append(row)
    return outcomes


def verify_protocol(
    states: Sequence[StateVector],
    protocol: OneWayProtocol,
    tol: float = VERIFY_TOL,
    zero_probability: float = ZERO_PROBABILITY,
) -> bool:
    """True iff, for every Alice outcome, Bob's reachable residuals are pairwise orthogonal.

    A state with zero probability for an outcome drops out of that outcome's check.
    """
    for alpha, row in enumerate(bob_residuals(states, protocol.alice_basis, zero_probability)):
        reachable = [r.state for r in row if r.reachable]
        for i in range(len(reachable)):
            for j in range(i + 1, len(reachable)):
                overlap = abs(reachable[i].inner(reachable[j]))
                if overlap > tol:
                    logger.debug(
                        f"{protocol.provenance.value}: outcome {alpha} overlap {overlap:.3e}"
                    )
                    return False
    return True


def find_protocol(
    s: BellSet,
    tol: float = VERIFY_TOL,
    zero_probability: float = ZERO_PROBABILITY,
) -> Optional[OneWayProtocol]:
    """First catalogued basis, over all translations, that verifies ``s``.

    Search order is catalog order, then translations (dn, dm) lexicographically.
    """
    states = s.states()
    for base in catalog_bases(s.d):
        for dn in range(s.d):
            for dm in range(s.d):
                candidate = base if (dn, dm) == (0, 0) else base.transported(dn, dm)
                if verify_protocol(states, candidate, tol, zero_probability):
                    logger.debug(f"{s.pairs}: verified by {candidate.provenance.value} @ {(dn, dm)}")
                    return candidate
    return None
