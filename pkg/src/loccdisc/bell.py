"""Generalized Bell states, Weyl unitaries and translation classes of Bell-index sets.

|psi_nm> = d^{-1/2} sum_j exp(2 pi i j n / d) |j>|j + m mod d>
U_nm     = sum_j exp(2 pi i j n / d) |j + m mod d><j|

Applying U_ab on Alice's side maps |psi_lk> to |psi_{l+a, k-b}> up to a
phase, so two index sets are related by a local unitary exactly when one
is a common translate of the other in Z_d x Z_d.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from .linalg import ComplexMatrix, Side, StateVector, reduced_states

logger = logging.getLogger(__name__)

MES_TOL = 1e-8

Pair = Tuple[int, int]


@dataclass(frozen=True, order=True)
class BellIndex:
    """Label (n, m) in Z_d x Z_d of a generalized Bell state."""

    n: int
    m: int
    d: int = field(compare=False)

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")
        if not (0 <= self.n < self.d and 0 <= self.m < self.d):
            raise ValueError(f"index ({self.n}, {self.m}) out of range for d={self.d}")

    @property
    def pair(self) -> Pair:
        return (self.n, self.m)

    def shifted(self, dn: int, dm: int) -> "BellIndex":
        return BellIndex((self.n + dn) % self.d, (self.m + dm) % self.d, self.d)


@dataclass(frozen=True, order=True)
class BellSet:
    """Unordered set of distinct Bell indices, stored in sorted (n, m) order."""

    d: int
    indices: Tuple[BellIndex, ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.indices))
        if len(set(i.pair for i in ordered)) != len(ordered):
            raise ValueError(f"duplicate Bell index in {[i.pair for i in ordered]}")
        for idx in ordered:
            if idx.d != self.d:
                raise ValueError(f"index {idx.pair} has d={idx.d}, set has d={self.d}")
        object.__setattr__(self, "indices", ordered)

    @classmethod
    def of(cls, d: int, pairs: Iterable[Sequence[int]]) -> "BellSet":
        return cls(d=d, indices=tuple(BellIndex(int(n), int(m), d) for n, m in pairs))

    @property
    def pairs(self) -> Tuple[Pair, ...]:
        return tuple(i.pair for i in self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[BellIndex]:
        return iter(self.indices)

    def translate(self, dn: int, dm: int) -> "BellSet":
        return BellSet(self.d, tuple(i.shifted(dn, dm) for i in self.indices))

    def states(self) -> List[StateVector]:
        return [bell_state(self.d, idx) for idx in self.indices]


@dataclass
class EquivalenceClass:
    """Orbit of a Bell-index set under common translation."""

    representative: BellSet
    members: List[BellSet] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.members)


def _omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def bell_state(d: int, idx: BellIndex | Pair) -> StateVector:
    n, m = idx.pair if isinstance(idx, BellIndex) else idx
    amps = np.zeros(d * d, dtype=complex)
    w = _omega(d)
    for j in range(d):
        amps[j * d + (j + m) % d] = w ** (j * n) / np.sqrt(d)
    return StateVector(dim=d * d, amplitudes=amps)


def weyl_unitary(d: int, idx: BellIndex | Pair) -> ComplexMatrix:
    n, m = idx.pair if isinstance(idx, BellIndex) else idx
    u = np.zeros((d, d), dtype=complex)
    w = _omega(d)
    for j in range(d):
        u[(j + m) % d, j] = w ** (j * n)
    return u


def weyl_connector(d: int, src: BellIndex | Pair, dst: BellIndex | Pair) -> ComplexMatrix:
    """Alice-side unitary U with (U ⊗ I)|psi_src> = phase * |psi_dst>."""
    l, k = src.pair if isinstance(src, BellIndex) else src
    n, m = dst.pair if isinstance(dst, BellIndex) else dst
    return weyl_unitary(d, ((n - l) % d, (k - m) % d))


def translation_unitary(d: int, dn: int, dm: int) -> ComplexMatrix:
    """Alice-side unitary realizing the index translation (n, m) -> (n + dn, m + dm)."""
    return weyl_unitary(d, (dn % d, (-dm) % d))


def schmidt_unitary(psi: StateVector, measuring_side: Side) -> ComplexMatrix:
    """Unitary W writing a maximally entangled state in standard Schmidt form.

    For ``Side.A``: |psi> = d^{-1/2} sum_j |j> (W|j>), so W acts on Bob's factor.
    For ``Side.B``: |psi> = d^{-1/2} sum_j (W|j>) |j>, so W acts on Alice's factor.

    Raises:
        ValueError: "not MES" when either reduced state differs from I/d by more than 1e-8.
    """
    d, _ = psi.bipartite_dims()
    rho_a, rho_b = reduced_states(psi, (d, d))
    target = np.eye(d) / d
    if not (np.allclose(rho_a.matrix, target, atol=MES_TOL, rtol=0)
            and np.allclose(rho_b.matrix, target, atol=MES_TOL, rtol=0)):
        raise ValueError("not MES: reduced states are not maximally mixed")
    coeffs = np.sqrt(d) * psi.amplitudes.reshape(d, d)
    return coeffs.T.copy() if Side(measuring_side) is Side.A else coeffs.copy()


def all_indices(d: int) -> List[BellIndex]:
    return [BellIndex(n, m, d) for n in range(d) for m in range(d)]


def enumerate_sets(d: int, k: int) -> Iterator[BellSet]:
    """All k-subsets of Z_d x Z_d in lexicographic order."""
    if not 1 <= k <= d * d:
        raise ValueError(f"set size k={k} outside 1..{d * d}")
    for combo in itertools.combinations(all_indices(d), k):
        yield BellSet(d, combo)


def _canonical_pairs(pairs: Sequence[Pair], d: int) -> Tuple[Pair, ...]:
    best = None
    for a in range(d):
        for b in range(d):
            cand = tuple(sorted(((n + a) % d, (m + b) % d) for n, m in pairs))
            if best is None or cand < best:
                best = cand
    return best


def canonical_form(s: BellSet) -> BellSet:
    """Lexicographically smallest common translate of ``s``."""
    return BellSet.of(s.d, _canonical_pairs(s.pairs, s.d))


def equivalence_classes(d: int, k: int) -> List[EquivalenceClass]:
    """Partition all k-subsets into translation classes, ordered by representative."""
    grouped: Dict[Tuple[Pair, ...], List[BellSet]] = {}
    for s in enumerate_sets(d, k):
        grouped.setdefault(_canonical_pairs(s.pairs, d), []).append(s)
    classes = [
        EquivalenceClass(representative=BellSet.of(d, key), members=members)
        for key, members in sorted(grouped.items())
    ]
    logger.info(f"d={d}, k={k}: {len(classes)} classes over {sum(c.size for c in classes)} sets")
    return classes


def burnside_class_count(d: int, k: int) -> int:
    """Number of translation classes of k-subsets, by Burnside's lemma.

    A translation of order o acts freely on the d*d indices, so it has
    d*d/o cycles of length o and fixes C(d*d/o, k/o) subsets when o divides k.
    """
    total = 0
    for a in range(d):
        for b in range(d):
            order = d // math.gcd(math.gcd(a, b), d)
            if k % order == 0:
                total += math.comb(d * d // order, k // order)
    return total // (d * d)


def orbit(s: BellSet) -> List[BellSet]:
    """Distinct common translates of ``s``, sorted."""
    seen = {s.translate(a, b) for a in range(s.d) for b in range(s.d)}
    return sorted(seen)
