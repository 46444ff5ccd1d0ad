"""BB84 signal states and weak-coherent-pulse photon statistics.

The sender encodes each bit in one of two mutually unbiased polarization
bases.  A dim laser pulse with no external phase reference is an incoherent
mixture of Fock states with Poissonian photon-number statistics of mean mu.
Two-photon pulses carry both photons in the same polarization, so they live
in the three-dimensional symmetric subspace of two qubits, spanned by
|00>, (|01>+|10>)/sqrt(2) and |11>.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .linalg import Ket, Operator

SINGLET_TOL = 1e-9


class Basis(enum.Enum):
    RECTILINEAR = "rectilinear"
    DIAGONAL = "diagonal"


@dataclass(frozen=True)
class Bb84Signal:
    """One of the four BB84 polarization signals: a basis tag plus a bit."""

    basis: Basis
    bit: int

    def __post_init__(self):
        if self.bit not in (0, 1):
            raise ValueError(f"bit must be 0 or 1, got {self.bit}")


SIGNALS = (
    Bb84Signal(Basis.RECTILINEAR, 0),
    Bb84Signal(Basis.RECTILINEAR, 1),
    Bb84Signal(Basis.DIAGONAL, 0),
    Bb84Signal(Basis.DIAGONAL, 1),
)

KET_0 = Ket(np.array([1.0, 0.0]))
KET_1 = Ket(np.array([0.0, 1.0]))
KET_PLUS = Ket(np.array([1.0, 1.0]) / math.sqrt(2))
KET_MINUS = Ket(np.array([1.0, -1.0]) / math.sqrt(2))

#: Antisymmetric two-qubit singlet (|01> - |10>)/sqrt(2); basis independent
#: up to phase, used to test membership in the symmetric subspace.
SINGLET = Ket(np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2))

_BASIS_KETS = {
    Basis.RECTILINEAR: (KET_0, KET_1),
    Basis.DIAGONAL: (KET_PLUS, KET_MINUS),
}


def basis_kets(basis: Basis) -> tuple[Ket, Ket]:
    """The (bit 0, bit 1) single-qubit kets of a polarization basis."""
    return _BASIS_KETS[basis]


def signal_ket(signal: Bb84Signal) -> Ket:
    """Single-photon polarization ket of a BB84 signal.

    Rectilinear states are |0>, |1>; diagonal states are
    |+-> = (|0> +- |1>)/sqrt(2).
    """
    return basis_kets(signal.basis)[signal.bit]


@dataclass(frozen=True)
class PhotonDistribution:
    """Truncated photon-number distribution with the truncated tail mass."""

    mu: float
    cutoff: int
    probs: np.ndarray
    tail: float

    def __post_init__(self):
        arr = np.asarray(self.probs, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)


def poisson_photon_dist(mu: float, cutoff: int = 20) -> PhotonDistribution:
    """Poissonian photon-number distribution of mean mu, truncated at cutoff.

    probs[n] = exp(-mu) mu^n / n!.  The truncated mass is recorded as tail;
    for mu <= 1 it is bounded by mu^(cutoff+1)/(cutoff+1)!.
    """
    if mu < 0:
        raise ValueError(f"mean photon number must be nonnegative, got {mu}")
    if cutoff < 0:
        raise ValueError(f"cutoff must be nonnegative, got {cutoff}")
    if mu == 0:
        probs = np.zeros(cutoff + 1)
        probs[0] = 1.0
    else:
        n = np.arange(cutoff + 1)
        lgamma = np.array([math.lgamma(k + 1) for k in n])
        probs = np.exp(-mu + n * np.log(mu) - lgamma)
    # tail mass summed directly; avoids the cancellation in 1 - sum(probs)
    tail = 0.0
    term = float(probs[-1])
    for k in range(cutoff + 1, cutoff + 200):
        term *= mu / k
        tail += term
        if term < tail * 1e-18 + 1e-300:
            break
    return PhotonDistribution(mu=mu, cutoff=cutoff, probs=probs, tail=tail)


# SymmetricTwoQubit states are plain dim-4 Kets constrained to the symmetric
# subspace; singlet_weight quantifies any violation.
SymmetricTwoQubit = Ket


def singlet_weight(state) -> float:
    """Probability weight on the antisymmetric singlet component."""
    if isinstance(state, Ket):
        return abs(state.overlap(SINGLET)) ** 2
    if isinstance(state, Operator):
        return abs(state.expectation(SINGLET))
    raise TypeError(f"expected Ket or Operator, got {type(state).__name__}")


def symmetric_encode(signal: Bb84Signal) -> SymmetricTwoQubit:
    """Two-photon encoding of a signal: both photons in the same polarization."""
    k = signal_ket(signal).amplitudes
    return Ket(np.kron(k, k))


def _symmetric_occupation_kets(b0: Ket, b1: Ket) -> dict[tuple[int, int], np.ndarray]:
    """Symmetrized two-qubit kets for occupations (2,0), (1,1), (0,2).

    The first occupation index counts photons in the bit-0 mode b0.
    """
    a0, a1 = b0.amplitudes, b1.amplitudes
    return {
        (2, 0): np.kron(a0, a0),
        (1, 1): (np.kron(a0, a1) + np.kron(a1, a0)) / math.sqrt(2),
        (0, 2): np.kron(a1, a1),
    }


def fock_from_symmetric(state, basis) -> dict[tuple[int, int], float]:
    """Occupation distribution of a two-photon state in a polarization basis.

    Projects onto the symmetrized basis states |b0 b0>, (|b0 b1>+|b1 b0>)/sqrt(2)
    and |b1 b1>, returning probabilities for the occupations (2,0), (1,1), (0,2)
    where the first index counts photons in the bit-0 mode.

    Args:
        state: dim-4 Ket or density Operator in the symmetric subspace.
        basis: a Basis value, or an explicit (Ket, Ket) mode pair.
    """
    if isinstance(basis, Basis):
        b0, b1 = basis_kets(basis)
    else:
        b0, b1 = basis
    if singlet_weight(state) > SINGLET_TOL:
        raise ValueError("state has antisymmetric (singlet) component above tolerance")
    kets = _symmetric_occupation_kets(b0, b1)
    out: dict[tuple[int, int], float] = {}
    if isinstance(state, Ket):
        if state.dim != 4:
            raise ValueError(f"expected a two-qubit state, got dim {state.dim}")
        for occ, v in kets.items():
            out[occ] = float(abs(np.vdot(v, state.amplitudes)) ** 2)
    elif isinstance(state, Operator):
        if state.dim != 4:
            raise ValueError(f"expected a two-qubit operator, got dim {state.dim}")
        for occ, v in kets.items():
            out[occ] = float(np.real(np.vdot(v, state.entries @ v)))
    else:
        raise TypeError(f"expected Ket or Operator, got {type(state).__name__}")
    return out
