"""The four-state ensemble {00, 11, 31, 32} at d = 4 and its measurement family.

Orthogonality preservation alone leaves a five-parameter family of effects

    K^dag K = a0 I + mu0 (cos z (|0><0| - |2><2|) + sin z (|0><2| + |2><0|))
                   + mu1 (cos e (|1><1| - |3><3|) + sin e (|1><3| + |3><1|)),

and K is fixed to its positive square root. Closed forms for the resulting
spectra are kept here so numeric results can be checked against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..bell import BellSet
from ..linalg import ComplexMatrix, Side, shannon_entropy
from .holevo import Ensemble, post_measurement_state

ENS2_SET = BellSet.of(4, [(0, 0), (1, 1), (3, 1), (3, 2)])


@dataclass(frozen=True)
class Ens2Params:
    a0: float
    mu0: float
    mu1: float
    zeta: float = 0.0
    eta: float = 0.0

    def __post_init__(self):
        if not self.a0 > 0:
            raise ValueError(f"a0 must be positive, got {self.a0}")
        if abs(self.mu0) > self.a0 or abs(self.mu1) > self.a0:
            raise ValueError(
                f"effect is not PSD: need a0 >= |mu0|, |mu1| (a0={self.a0}, "
                f"mu0={self.mu0}, mu1={self.mu1})"
            )

    @classmethod
    def from_template(cls, a0: float, a1: float, a2: float, b0: float, b2: float) -> "Ens2Params":
        """Parameters of the effect written entrywise as ``ens2_effect_template``."""
        return cls(
            a0=a0,
            mu0=math.hypot(a1 + a2, b0 + b2),
            mu1=math.hypot(a1 - a2, b0 - b2),
            zeta=math.atan2(b0 + b2, a1 + a2),
            eta=math.atan2(b0 - b2, a1 - a2),
        )

    def effect(self) -> ComplexMatrix:
        """K^dag K."""
        z, e = self.zeta, self.eta
        m = self.a0 * np.eye(4, dtype=complex)
        m[0, 0] += self.mu0 * math.cos(z)
        m[2, 2] -= self.mu0 * math.cos(z)
        m[0, 2] = m[2, 0] = self.mu0 * math.sin(z)
        m[1, 1] += self.mu1 * math.cos(e)
        m[3, 3] -= self.mu1 * math.cos(e)
        m[1, 3] = m[3, 1] = self.mu1 * math.sin(e)
        return m


@dataclass(frozen=True)
class Ens2Spectra:
    """Ascending spectra: each post-measurement state's reduced state, and Bob's average."""

    per_state: np.ndarray
    bob_average: np.ndarray


def ens2_effect_template(a0: float, a1: float, a2: float, b0: float, b2: float) -> ComplexMatrix:
    """The general OP-compatible effect for ENS2_SET, in the |i><j| basis."""
    return np.array(
        [
            [a0 + a1 + a2, 0, b0 + b2, 0],
            [0, a0 + a1 - a2, 0, b0 - b2],
            [b0 + b2, 0, a0 - a1 - a2, 0],
            [0, b0 - b2, 0, a0 - a1 + a2],
        ],
        dtype=complex,
    )


def _eigvec(angle: float, first: int, second: int, flip: bool) -> np.ndarray:
    v = np.zeros(4)
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    if flip:
        v[first], v[second] = -s, c
    else:
        v[first], v[second] = c, s
    return v


def ens2_kraus(p: Ens2Params, left_unitary: Optional[ComplexMatrix] = None) -> ComplexMatrix:
    """K = U sqrt(K^dag K) with U = I unless ``left_unitary`` is given."""
    terms = [
        (p.a0 + p.mu0, _eigvec(p.zeta, 0, 2, flip=False)),
        (p.a0 - p.mu0, _eigvec(p.zeta, 0, 2, flip=True)),
        (p.a0 + p.mu1, _eigvec(p.eta, 1, 3, flip=False)),
        (p.a0 - p.mu1, _eigvec(p.eta, 1, 3, flip=True)),
    ]
    k = sum(math.sqrt(max(lam, 0.0)) * np.outer(v, v) for lam, v in terms).astype(complex)
    if left_unitary is not None:
        k = np.asarray(left_unitary, dtype=complex) @ k
    return k


def ens2_post_ensemble(p: Ens2Params, left_unitary: Optional[ComplexMatrix] = None) -> Ensemble:
    """The four states of ENS2_SET after Alice's branch K, uniform priors."""
    k = ens2_kraus(p, left_unitary)
    states = [post_measurement_state(psi, k, Side.A)[1] for psi in ENS2_SET.states()]
    return Ensemble(states=states)


def ens2_closed_form_spectra(p: Ens2Params) -> Ens2Spectra:
    r0, r1 = p.mu0 / p.a0, p.mu1 / p.a0
    per_state = np.array([1 + r0, 1 - r0, 1 + r1, 1 - r1]) / 4
    bob_average = np.array([1 + r0 / 2, 1 - r0 / 2, 1 + r1 / 2, 1 - r1 / 2]) / 4
    return Ens2Spectra(per_state=np.sort(per_state), bob_average=np.sort(bob_average))


def ens2_closed_form_bound(p: Ens2Params) -> float:
    """Shannon entropy of Bob's average spectrum; the bound once Alice's terms cancel."""
    return shannon_entropy(ens2_closed_form_spectra(p).bob_average)
