"""Alice's rank-one projective measurements for the d = 4 one-way protocols.

Each basis is stored amplitude-for-amplitude on |0>..|3>. The sets each
basis is known to distinguish are shipped next to it as (n, m) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..bell import BellIndex, BellSet, Pair, translation_unitary
from ..linalg import StateVector

BASIS_TOL = 1e-10
CATALOG_TOL = 1e-12


class Provenance(str, Enum):
    SET0_STANDARD = "Set0Standard"
    SET0_FOURIER = "Set0Fourier"
    SET1 = "Set1"
    SET2 = "Set2"
    SET3 = "Set3"
    SET4 = "Set4"
    SET5 = "Set5"
    SET6 = "Set6"
    CUSTOM = "Custom"


def basis_gram(basis: Sequence[StateVector]) -> np.ndarray:
    vectors = np.array([u.amplitudes for u in basis])
    return vectors.conj() @ vectors.T


def check_orthonormal(basis: Sequence[StateVector], tol: float = BASIS_TOL) -> None:
    if not basis:
        raise ValueError("basis is not orthonormal: empty basis")
    dims = {u.dim for u in basis}
    if len(dims) != 1 or len(basis) != dims.pop():
        raise ValueError("basis is not orthonormal: wrong number of vectors")
    deviation = np.abs(basis_gram(basis) - np.eye(len(basis))).max()
    if deviation > tol:
        raise ValueError(f"basis is not orthonormal (Gram deviation {deviation:.3e})")


@dataclass(frozen=True, eq=False)
class OneWayProtocol:
    """Alice measures in ``alice_basis``; Bob then separates his residuals.

    ``translation`` is the index offset the basis has been transported by,
    (0, 0) for a basis as catalogued.
    """

    d: int
    alice_basis: Tuple[StateVector, ...]
    provenance: Provenance
    translation: Optional[BellIndex] = None

    def __post_init__(self):
        object.__setattr__(self, "alice_basis", tuple(self.alice_basis))
        if self.translation is None:
            object.__setattr__(self, "translation", BellIndex(0, 0, self.d))
        check_orthonormal(self.alice_basis)
        if self.alice_basis[0].dim != self.d:
            raise ValueError(f"dimension mismatch: basis dim {self.alice_basis[0].dim}, d={self.d}")

    def transported(self, dn: int, dm: int) -> "OneWayProtocol":
        """The protocol for the set translated by (dn, dm)."""
        u = translation_unitary(self.d, dn, dm)
        moved = tuple(StateVector(dim=self.d, amplitudes=u @ v.amplitudes) for v in self.alice_basis)
        return OneWayProtocol(
            d=self.d,
            alice_basis=moved,
            provenance=self.provenance,
            translation=self.translation.shifted(dn, dm),
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "provenance": self.provenance.value,
            "translation": list(self.translation.pair),
        }


_C1 = np.exp(1j * np.pi / 4)
_C3 = np.exp(3j * np.pi / 4)
_H = 0.5
_R = 1.0 / np.sqrt(2.0)

# Rows are basis vectors on |0>..|3>.
_RAW_BASES: Dict[Provenance, List[List[complex]]] = {
    Provenance.SET0_STANDARD: np.eye(4).tolist(),
    Provenance.SET0_FOURIER: [[_H * 1j ** (l * j) for j in range(4)] for l in range(4)],
    Provenance.SET1: [
        [-_H * _C1, _H, _H * _C1, _H],
        [_H * _C1, _H, -_H * _C1, _H],
        [_H * _C3, -_H, _H * _C3, _H],
        # orthogonal completion of the three vectors above
        [-_H * _C3, -_H, -_H * _C3, _H],
    ],
    Provenance.SET2: [
        [-1j * _R, 0, _R, 0],
        [1j * _R, 0, _R, 0],
        [0, -1j * _R, 0, _R],
        [0, 1j * _R, 0, _R],
    ],
    Provenance.SET3: [
        [-_H * _C3, _H, _H * _C3, _H],
        [_H * _C3, _H, -_H * _C3, _H],
        [_H * _C1, -_H, _H * _C1, _H],
        [-_H * _C1, -_H, -_H * _C1, _H],
    ],
    Provenance.SET4: [
        [_H, -_H, -_H, _H],
        [-_H, -_H, _H, _H],
        # orthonormal completion of the two vectors above
        [0.5j, _H, 0.5j, _H],
        [-0.5j, _H, -0.5j, _H],
    ],
    Provenance.SET5: [
        [-_R, 0, _R, 0],
        [0, _R, 0, _R],
        [0, -_R, 0, _R],
        [_R, 0, _R, 0],
    ],
    Provenance.SET6: [
        [-0.5j, -0.5j, _H, _H],
        [0.5j, 0.5j, _H, _H],
        [0.5j, -0.5j, -_H, _H],
        [-0.5j, 0.5j, -_H, _H],
    ],
}


def _with(base: Sequence[Pair], rest: Sequence[Sequence[Pair]]) -> List[Tuple[Pair, ...]]:
    return [tuple(base) + tuple(extra) for extra in rest]


_LISTED: Dict[Provenance, List[Tuple[Pair, ...]]] = {
    Provenance.SET1: _with(
        [(0, 0), (0, 1)],
        [
            [(0, 2), (1, 0)], [(0, 2), (2, 1)], [(0, 2), (3, 2)], [(1, 0), (1, 3)],
            [(1, 0), (2, 0)], [(1, 0), (3, 1)], [(1, 3), (2, 1)], [(2, 0), (2, 1)],
            [(2, 0), (3, 2)], [(2, 1), (3, 1)],
        ],
    )
    + _with(
        [(0, 0), (0, 2)],
        [[(1, 0), (1, 2)], [(1, 0), (2, 3)], [(1, 0), (3, 0)], [(2, 1), (3, 0)]],
    ),
    Provenance.SET2: _with(
        [(0, 0)],
        [
            [(0, 1), (0, 2), (1, 1)], [(0, 1), (0, 2), (3, 1)], [(0, 1), (1, 0), (2, 3)],
            [(0, 1), (1, 1), (2, 2)], [(0, 1), (2, 2), (3, 1)], [(0, 1), (2, 3), (3, 0)],
            [(0, 2), (1, 1), (2, 1)], [(0, 2), (2, 1), (3, 1)],
        ],
    ),
    Provenance.SET3: _with(
        [(0, 0)],
        [
            [(0, 1), (0, 2), (1, 2)], [(0, 1), (0, 2), (3, 0)], [(0, 1), (1, 1), (2, 1)],
            [(0, 1), (1, 2), (2, 0)], [(0, 1), (2, 0), (3, 0)], [(0, 1), (2, 1), (3, 3)],
            [(0, 2), (1, 0), (2, 1)], [(0, 2), (2, 1), (3, 2)],
        ],
    ),
    Provenance.SET4: _with(
        [(0, 0), (0, 1)],
        [
            [(1, 0), (1, 1)], [(1, 0), (3, 0)], [(1, 0), (3, 2)], [(1, 1), (1, 2)],
            [(1, 1), (3, 1)], [(1, 1), (3, 3)], [(1, 2), (3, 0)], [(1, 2), (3, 2)],
            [(1, 3), (3, 1)], [(1, 3), (3, 3)],
        ],
    ),
    Provenance.SET5: _with(
        [(0, 0), (0, 1)],
        [
            [(1, 0), (3, 3)], [(1, 1), (3, 2)], [(1, 2), (3, 1)], [(1, 3), (3, 0)],
            [(1, 1), (3, 0)],
        ],
    ),
    Provenance.SET6: [((0, 0), (0, 2), (2, 0), (2, 2))],
}


@lru_cache(maxsize=None)
def _catalog() -> Tuple[OneWayProtocol, ...]:
    protocols = []
    for provenance, rows in _RAW_BASES.items():
        basis = [StateVector(dim=4, amplitudes=np.asarray(r, dtype=complex)) for r in rows]
        check_orthonormal(basis, CATALOG_TOL)
        protocols.append(OneWayProtocol(d=4, alice_basis=tuple(basis), provenance=provenance))
    return tuple(protocols)


def catalog_bases(d: int = 4) -> List[OneWayProtocol]:
    """The eight catalogued measurement bases, in search order."""
    if d != 4:
        raise ValueError(f"the protocol catalog is defined only for d=4, got d={d}")
    return list(_catalog())


def catalog_protocol(provenance: Provenance) -> OneWayProtocol:
    for protocol in _catalog():
        if protocol.provenance is Provenance(provenance):
            return protocol
    raise ValueError(f"no catalogued basis for {provenance}")


def listed_sets(provenance: Provenance) -> List[BellSet]:
    """Sets explicitly shipped with a basis; empty for the Set0 families and Custom."""
    return [BellSet.of(4, pairs) for pairs in _LISTED.get(Provenance(provenance), [])]


def matches_set0_standard(s: BellSet) -> bool:
    """{(a,0), (b,1), ..., (z,d-1)}: every m appears once."""
    return len(s) == s.d and len({idx.m for idx in s}) == s.d


def matches_set0_fourier(s: BellSet) -> bool:
    """{(0,a), (1,b), ..., (d-1,z)}: every n appears once."""
    return len(s) == s.d and len({idx.n for idx in s}) == s.d
