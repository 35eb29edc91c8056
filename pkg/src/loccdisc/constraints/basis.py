from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from ..linalg import ComplexMatrix


@dataclass(frozen=True, eq=False)
class HermitianBasis:
    """Orthonormal real basis of the d x d Hermitian matrices.

    Order: the d diagonal units E_jj, then for each j < k the pair
    (E_jk + E_kj)/sqrt(2) and i(E_jk - E_kj)/sqrt(2). Under the trace inner
    product the basis is orthonormal, so coordinates are x_l = Tr(B_l X).
    """

    d: int
    elements: Tuple[np.ndarray, ...] = field(repr=False)
    conjugation_signs: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.d * self.d

    @property
    def stacked(self) -> np.ndarray:
        """Elements as an array of shape (d*d, d, d)."""
        return np.stack(self.elements)

    def coordinates(self, x: ComplexMatrix) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.d, self.d):
            raise ValueError(f"expected a {self.d}x{self.d} matrix, got {x.shape}")
        # Tr(B X) = sum_ab B[b, a] X[a, b]
        return np.einsum("lba,ab->l", self.stacked, x).real

    def reconstruct(self, coords: np.ndarray) -> ComplexMatrix:
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.size,):
            raise ValueError(f"expected {self.size} coordinates, got {coords.shape}")
        return np.einsum("l,lab->ab", coords, self.stacked)

    def conjugate_coordinates(self, coords: np.ndarray) -> np.ndarray:
        """Coordinates of the entrywise complex conjugate of the reconstructed matrix."""
        return self.conjugation_signs * np.asarray(coords, dtype=float)

    def identity_coordinates(self) -> np.ndarray:
        """Unit vector along I / sqrt(d)."""
        coords = np.zeros(self.size)
        coords[: self.d] = 1.0 / np.sqrt(self.d)
        return coords

    def labels(self) -> List[str]:
        out = [f"E{j}{j}" for j in range(self.d)]
        for j, k in _off_diagonal_pairs(self.d):
            out.extend([f"S{j}{k}", f"A{j}{k}"])
        return out


def _off_diagonal_pairs(d: int) -> List[Tuple[int, int]]:
    return [(j, k) for j in range(d) for k in range(j + 1, d)]


@lru_cache(maxsize=None)
def hermitian_basis(d: int) -> HermitianBasis:
    elements = []
    signs = []
    for j in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[j, j] = 1.0
        elements.append(e)
        signs.append(1.0)
    r = 1.0 / np.sqrt(2.0)
    for j, k in _off_diagonal_pairs(d):
        sym = np.zeros((d, d), dtype=complex)
        sym[j, k] = sym[k, j] = r
        anti = np.zeros((d, d), dtype=complex)
        anti[j, k] = 1j * r
        anti[k, j] = -1j * r
        elements.extend([sym, anti])
        signs.extend([1.0, -1.0])
    for e in elements:
        e.flags.writeable = False
    sign_arr = np.array(signs)
    sign_arr.flags.writeable = False
    return HermitianBasis(d=d, elements=tuple(elements), conjugation_signs=sign_arr)
