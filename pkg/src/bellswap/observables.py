"""Pauli observables on named qubits and Born-rule statistics.

Only Z and X axes appear: together with products over disjoint qubits
they generate every measurement this package performs. Joint outcome
probabilities are computed by chaining rank-deficient eigenprojectors,
which is exact for commuting products and lets order independence be
checked directly instead of assumed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .statevec import PROB_TOL, ZERO_TOL, StateVector

AXES = ("Z", "X")


@dataclass(frozen=True)
class Pauli:
    """A single-qubit Pauli observable: ``axis`` in {Z, X} on ``qubit`` 1-4."""

    axis: str
    qubit: int

    def __post_init__(self) -> None:
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not 1 <= self.qubit <= 4:
            raise ValueError(f"qubit index must be 1..4, got {self.qubit}")

    @property
    def label(self) -> str:
        return f"{self.axis}{self.qubit}"

    def as_product(self) -> "PauliProduct":
        return PauliProduct((self,))


@dataclass(frozen=True)
class PauliProduct:
    """Tensor product of single-qubit Paulis on pairwise distinct qubits.

    Eigenvalues are exactly {-1, +1} and the operator is its own inverse.
    """

    factors: tuple[Pauli, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("observable product needs at least one factor")
        qubits = [f.qubit for f in self.factors]
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"factors share a qubit: {[f.label for f in self.factors]}")
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=lambda f: f.qubit)))

    @classmethod
    def of(cls, *terms: tuple[str, int]) -> "PauliProduct":
        return cls(tuple(Pauli(axis, qubit) for axis, qubit in terms))

    @property
    def label(self) -> str:
        return "".join(f.label for f in self.factors)

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(f.qubit for f in self.factors)

    def axis_on(self, qubit: int) -> str | None:
        for f in self.factors:
            if f.qubit == qubit:
                return f.axis
        return None


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probability table over joint sign tuples of a commuting observable list."""

    observables: tuple[PauliProduct, ...]
    entries: dict[tuple[int, ...], float]

    def __post_init__(self) -> None:
        k = len(self.observables)
        if len(self.entries) != 2 ** k:
            raise ValueError(
                f"expected {2 ** k} outcome entries, got {len(self.entries)}"
            )
        total = sum(self.entries.values())
        if any(p < -ZERO_TOL for p in self.entries.values()):
            raise ValueError("negative probability in outcome distribution")
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {total}, expected 1")

    def probability(self, signs: Sequence[int]) -> float:
        return self.entries[tuple(signs)]

    def items(self):
        return self.entries.items()


def sign_tuples(count: int) -> list[tuple[int, ...]]:
    """All sign tuples of the given length, +1 entries enumerated first."""
    return list(itertools.product((1, -1), repeat=count))


def apply_observable(obs: PauliProduct, state: StateVector) -> StateVector:
    """Image of the state under the product: an exact involution."""
    n = state.num_qubits
    if any(f.qubit > n for f in obs.factors):
        raise ValueError(
            f"observable {obs.label} acts outside the {n}-qubit register"
        )
    amps = state.amplitudes.reshape([2] * n).copy()
    for f in obs.factors:
        axis = f.qubit - 1
        if f.axis == "X":
            amps = np.flip(amps, axis=axis)
        else:
            index = [slice(None)] * n
            index[axis] = 1
            amps[tuple(index)] *= -1
    return StateVector(amps.reshape(-1))


def commute(a: PauliProduct, b: PauliProduct) -> bool:
    """True iff the two products commute.

    Each shared qubit carrying different axes anticommutes, so the
    products commute exactly when the number of such qubits is even.
    """
    clashes = 0
    for f in a.factors:
        other = b.axis_on(f.qubit)
        if other is not None and other != f.axis:
            clashes += 1
    return clashes % 2 == 0


def apply_eigenprojector(obs: PauliProduct, sign: int, state: StateVector) -> StateVector:
    """Unnormalized projection onto the ``sign`` eigenspace of ``obs``."""
    if sign not in (-1, 1):
        raise ValueError(f"eigenvalue sign must be -1 or +1, got {sign}")
    image = apply_observable(obs, state)
    return StateVector((state.amplitudes + sign * image.amplitudes) / 2.0)


def joint_outcome_distribution(
    observables: Iterable[PauliProduct], state: StateVector
) -> OutcomeDistribution:
    """Born probabilities for every joint sign tuple of a commuting set.

    Each probability is the squared norm of the chained eigenprojection.
    Values below 1e-12 are reported as exactly 0 so that genuinely
    forbidden outcomes never carry a rounding-noise floor.
    """
    observables = tuple(observables)
    for a, b in itertools.combinations(observables, 2):
        if not commute(a, b):
            raise ValueError(
                f"observables {a.label} and {b.label} do not commute and "
                "cannot be jointly measured"
            )
    entries: dict[tuple[int, ...], float] = {}
    for signs in sign_tuples(len(observables)):
        projected = state
        for obs, sign in zip(observables, signs):
            projected = apply_eigenprojector(obs, sign, projected)
        p = projected.squared_norm()
        entries[signs] = 0.0 if p < ZERO_TOL else p
    return OutcomeDistribution(observables, entries)


def expectation(obs: PauliProduct, state: StateVector) -> float:
    """Mean outcome P(+1) - P(-1); always within [-1, 1]."""
    dist = joint_outcome_distribution((obs,), state)
    return dist.probability((1,)) - dist.probability((-1,))
