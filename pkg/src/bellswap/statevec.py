"""Exact statevector algebra for registers of one to four qubits.

Amplitudes are indexed by computational basis bitstrings with qubit 1 as
the most significant bit, so ``|0110>`` on four qubits sits at index 6.
All values are double-precision complex; every quantity the rest of the
package derives from these vectors (0, 1/8, 1/4, 1/2, 1, 1/(2*sqrt(2)))
is representable to within one ulp, so no exact-rational arithmetic is
used anywhere.
"""
from __future__ import annotations

import numpy as np

MAX_QUBITS = 4

# Global comparison tolerances: norms are checked at 1e-12, probabilities
# at 1e-10, and quantities that must vanish exactly at 1e-12.
NORM_TOL = 1e-12
PROB_TOL = 1e-10
ZERO_TOL = 1e-12

_DIM_TO_QUBITS = {2: 1, 4: 2, 8: 3, 16: 4}


class StateVector:
    """Complex amplitude vector over ``num_qubits`` qubits.

    The raw constructor accepts any vector of valid dimension, including
    unnormalized intermediates such as projector images and the zero
    vector. Use :meth:`from_amplitudes` (or the module-level state
    builders) when a normalized state is required. Amplitude arrays are
    frozen after construction, so instances are safe to share across
    threads.
    """

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes) -> None:
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.size not in _DIM_TO_QUBITS:
            raise ValueError(
                f"amplitude vector has length {amps.size}; expected a power of "
                f"two between 2 and {2 ** MAX_QUBITS}"
            )
        amps.setflags(write=False)
        self.num_qubits = _DIM_TO_QUBITS[amps.size]
        self.amplitudes = amps

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "StateVector":
        """Build a normalized state, rejecting the zero vector."""
        state = cls(amplitudes)
        return state.normalized()

    def squared_norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n < NORM_TOL:
            raise ValueError("cannot normalize a zero state vector")
        return StateVector(self.amplitudes / n)

    def amplitude(self, bits: str) -> complex:
        """Amplitude of the basis ket labelled by ``bits``."""
        if len(bits) != self.num_qubits:
            raise ValueError(
                f"bitstring {bits!r} does not address a {self.num_qubits}-qubit state"
            )
        return complex(self.amplitudes[int(bits, 2)])

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits}, amplitudes={self.amplitudes!r})"


class QubitPermutation:
    """Bijection on qubit positions 1..n.

    ``targets[i - 1]`` is the position that the qubit at source position
    ``i`` moves to. ``QubitPermutation((1, 3, 2, 4))`` exchanges the
    middle two qubits of a four-qubit register.
    """

    __slots__ = ("targets",)

    def __init__(self, targets) -> None:
        targets = tuple(int(t) for t in targets)
        if sorted(targets) != list(range(1, len(targets) + 1)):
            raise ValueError(
                f"{targets} is not a bijection on positions 1..{len(targets)}"
            )
        self.targets = targets

    @property
    def size(self) -> int:
        return len(self.targets)

    def __call__(self, position: int) -> int:
        return self.targets[position - 1]

    def inverse(self) -> "QubitPermutation":
        inv = [0] * self.size
        for src, dst in enumerate(self.targets, start=1):
            inv[dst - 1] = src
        return QubitPermutation(inv)

    def __repr__(self) -> str:
        return f"QubitPermutation({self.targets})"


def basis_state(bits: str) -> StateVector:
    """Computational basis ket for the given bitstring, qubit 1 first."""
    if not bits or len(bits) > MAX_QUBITS:
        raise ValueError(
            f"bitstring length must be between 1 and {MAX_QUBITS}, got {len(bits)}"
        )
    if any(c not in "01" for c in bits):
        raise ValueError(f"bitstring {bits!r} contains characters other than 0/1")
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[int(bits, 2)] = 1.0
    return StateVector(amps)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product with ``a``'s qubits preceding ``b``'s."""
    if a.num_qubits + b.num_qubits > MAX_QUBITS:
        raise ValueError(
            f"tensor product of {a.num_qubits} and {b.num_qubits} qubits exceeds "
            f"the {MAX_QUBITS}-qubit limit"
        )
    return StateVector(np.kron(a.amplitudes, b.amplitudes))


def permute_qubits(state: StateVector, perm: QubitPermutation) -> StateVector:
    """Relabel qubit positions: the bit at source position i moves to perm(i)."""
    n = state.num_qubits
    if perm.size != n:
        raise ValueError(
            f"permutation acts on {perm.size} positions but state has {n} qubits"
        )
    inv = perm.inverse()
    # Output axis j holds the source axis that lands at position j+1.
    axes = [inv(j) - 1 for j in range(1, n + 1)]
    reshaped = state.amplitudes.reshape([2] * n)
    return StateVector(np.transpose(reshaped, axes).reshape(-1))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """Hermitian inner product, conjugate-linear in ``a``."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(
            f"inner product between {a.num_qubits}- and {b.num_qubits}-qubit states"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))
