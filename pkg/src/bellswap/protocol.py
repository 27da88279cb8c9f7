"""Two-singlet preparation, Bell bases, and the quantum predictions.

The source emits two spin singlets; one observer holds particles 1 and 3,
the other particles 2 and 4. Each observer jointly measures two commuting
two-qubit Pauli products, which is the same measurement as projecting the
pair onto a Bell basis. This module builds those states and bases, then
computes every probability the package certifies: the pairwise
anti-correlations, the conditional certainties across the two sides, the
16-cell joint outcome table, the Bell-basis expansion of the full state,
and the entanglement-swapping collapse of the unmeasured pair.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .observables import (
    Pauli,
    PauliProduct,
    apply_eigenprojector,
    apply_observable,
    joint_outcome_distribution,
    OutcomeDistribution,
    sign_tuples,
)
from .statevec import (
    PROB_TOL,
    ZERO_TOL,
    QubitPermutation,
    StateVector,
    inner_product,
    permute_qubits,
    tensor,
)

FAMILIES = ("phi", "psi", "chi", "omega")

# phi/psi are the joint eigenvectors of Z(x)Z and X(x)X on a pair;
# chi/omega of Z(x)X and X(x)Z. The first product's eigenvalue is fixed
# by the family, the second equals the kind's sign.
FIRST_EIGENVALUE = {"phi": 1, "psi": -1, "chi": 1, "omega": -1}

# The two commuting products each observer measures jointly, in table
# column order: (Z1Z3, X1X3) for the 1,3 side and (Z2X4, X2Z4) for 2,4.
ALICE_PRODUCTS = (
    PauliProduct.of(("Z", 1), ("Z", 3)),
    PauliProduct.of(("X", 1), ("X", 3)),
)
BOB_PRODUCTS = (
    PauliProduct.of(("Z", 2), ("X", 4)),
    PauliProduct.of(("X", 2), ("Z", 4)),
)
MEASURED_PRODUCTS = ALICE_PRODUCTS + BOB_PRODUCTS


@dataclass(frozen=True)
class BellKind:
    """One of the eight maximally entangled two-qubit basis states."""

    family: str
    sign: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.sign not in (-1, 1):
            raise ValueError(f"sign must be -1 or +1, got {self.sign}")

    @property
    def label(self) -> str:
        return f"{self.family}{'+' if self.sign == 1 else '-'}"

    @classmethod
    def from_label(cls, label: str) -> "BellKind":
        if not label or label[-1] not in "+-":
            raise ValueError(f"malformed Bell-state label {label!r}")
        return cls(label[:-1], 1 if label[-1] == "+" else -1)


PHI_PLUS = BellKind("phi", 1)
PHI_MINUS = BellKind("phi", -1)
PSI_PLUS = BellKind("psi", 1)
PSI_MINUS = BellKind("psi", -1)
CHI_PLUS = BellKind("chi", 1)
CHI_MINUS = BellKind("chi", -1)
OMEGA_PLUS = BellKind("omega", 1)
OMEGA_MINUS = BellKind("omega", -1)

ZZ_XX_KINDS = (PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS)
ZX_XZ_KINDS = (CHI_PLUS, CHI_MINUS, OMEGA_PLUS, OMEGA_MINUS)

_SQRT_HALF = 1.0 / math.sqrt(2.0)


def bell_state(kind: BellKind, pair: tuple[int, int] = (1, 2)) -> StateVector:
    """Two-qubit Bell state in computational-basis amplitudes.

    ``pair`` names the particles occupying the two tensor slots, first
    particle most significant; the amplitudes themselves do not depend
    on the labels, only on the kind.
    """
    p, q = pair
    if p == q:
        raise ValueError(f"Bell pair must name two distinct qubits, got ({p}, {q})")
    s = kind.sign
    if kind.family == "phi":
        amps = [_SQRT_HALF, 0.0, 0.0, s * _SQRT_HALF]
    elif kind.family == "psi":
        amps = [0.0, _SQRT_HALF, s * _SQRT_HALF, 0.0]
    elif kind.family == "chi":
        # (|0,x+> + s |1,x->)/sqrt(2) with x+- the X-basis kets
        amps = [0.5, 0.5, s * 0.5, -s * 0.5]
    else:
        # (|1,x+> + s |0,x->)/sqrt(2)
        amps = [s * 0.5, -s * 0.5, 0.5, 0.5]
    return StateVector(amps)


def singlet_state() -> StateVector:
    """The two-qubit singlet, anti-correlated in both the Z and X bases."""
    return bell_state(PSI_MINUS)


def two_singlet_state() -> StateVector:
    """Product of singlets on particle pairs (1,2) and (3,4)."""
    return tensor(singlet_state(), singlet_state())


def pair_products(pair: tuple[int, int], kinds: tuple[BellKind, ...]) -> tuple[PauliProduct, PauliProduct]:
    """The two commuting products whose joint eigenvectors are ``kinds``."""
    p, q = pair
    families = frozenset(k.family for k in kinds)
    if families == {"phi", "psi"}:
        return PauliProduct.of(("Z", p), ("Z", q)), PauliProduct.of(("X", p), ("X", q))
    if families == {"chi", "omega"}:
        return PauliProduct.of(("Z", p), ("X", q)), PauliProduct.of(("X", p), ("Z", q))
    raise ValueError(
        f"families {sorted(families)} do not form an orthonormal Bell basis"
    )


def kind_signs(kind: BellKind) -> tuple[int, int]:
    """Eigenvalues of the kind under its basis-defining product pair."""
    return FIRST_EIGENVALUE[kind.family], kind.sign


@dataclass(frozen=True)
class BellOutcome:
    """One outcome of a Bell-basis measurement on a pair of particles."""

    kind: BellKind
    probability: float
    post_state: StateVector | None


def bell_measurement(
    state: StateVector, pair: tuple[int, int], kinds: tuple[BellKind, ...]
) -> list[BellOutcome]:
    """Project onto each Bell outcome of ``pair``, collapsing the register.

    Outcomes with probability below 1e-12 report exactly 0 and carry no
    post-measurement state.
    """
    first, second = pair_products(pair, kinds)
    outcomes = []
    for kind in kinds:
        s1, s2 = kind_signs(kind)
        projected = apply_eigenprojector(second, s2, apply_eigenprojector(first, s1, state))
        p = projected.squared_norm()
        if p < ZERO_TOL:
            outcomes.append(BellOutcome(kind, 0.0, None))
        else:
            outcomes.append(BellOutcome(kind, p, projected.normalized()))
    return outcomes


def conditional_pair_state(
    state: StateVector, pair: tuple[int, int], kind: BellKind
) -> tuple[float, StateVector | None]:
    """Probability of finding ``kind`` on ``pair`` and the leftover state.

    Returns the Born probability together with the renormalized state of
    the two remaining particles, or None when the outcome cannot occur.
    """
    if state.num_qubits != 4:
        raise ValueError("conditional pair state requires a four-qubit register")
    p, q = pair
    rest = tuple(i for i in range(1, 5) if i not in (p, q))
    order = (p, q) + rest
    targets = [0] * 4
    for slot, particle in enumerate(order, start=1):
        targets[particle - 1] = slot
    reordered = permute_qubits(state, QubitPermutation(targets))
    matrix = reordered.amplitudes.reshape(4, 4)
    leftover = bell_state(kind).amplitudes.conj() @ matrix
    prob = float(np.vdot(leftover, leftover).real)
    if prob < ZERO_TOL:
        return 0.0, None
    return prob, StateVector(leftover).normalized()


def _clamp_probability(value: float) -> float:
    # Rounding can push a probability a few ulp outside [0, 1].
    return min(max(value, 0.0), 1.0)


def prob_equal(a: Pauli, b: Pauli, state: StateVector) -> float:
    """Probability that the two single-qubit observables give equal signs."""
    if a.qubit == b.qubit:
        raise ValueError(f"{a.label} and {b.label} act on the same qubit")
    dist = joint_outcome_distribution((a.as_product(), b.as_product()), state)
    return _clamp_probability(dist.probability((1, 1)) + dist.probability((-1, -1)))


def condition_probability(condition: PauliProduct, sign: int, state: StateVector) -> float:
    """Born probability of the conditioning event ``condition = sign``."""
    return apply_eigenprojector(condition, sign, state).squared_norm()


def conditional_prob_equal(
    pair: tuple[Pauli, Pauli],
    condition: PauliProduct,
    condition_sign: int,
    relation_sign: int,
    state: StateVector,
) -> float:
    """P(product of the pair = relation_sign | condition = condition_sign).

    The conditional is evaluated operationally: project onto the
    condition eigenspace, renormalize, then read the pair's joint
    distribution off the post-measurement state.
    """
    a, b = pair
    if a.qubit == b.qubit:
        raise ValueError(f"{a.label} and {b.label} act on the same qubit")
    if relation_sign not in (-1, 1):
        raise ValueError(f"relation sign must be -1 or +1, got {relation_sign}")
    projected = apply_eigenprojector(condition, condition_sign, state)
    weight = projected.squared_norm()
    if weight < ZERO_TOL:
        raise ValueError(
            f"conditioning event {condition.label}={condition_sign:+d} has zero "
            "probability; the conditional is undefined"
        )
    post = projected.normalized()
    dist = joint_outcome_distribution((a.as_product(), b.as_product()), post)
    return _clamp_probability(
        sum(p for signs, p in dist.items() if signs[0] * signs[1] == relation_sign)
    )


def joint_prob_all_four(state: StateVector) -> float:
    """Probability of (Z1Z3, X1X3, Z2X4, X2Z4) = (+1, +1, +1, -1)."""
    projected = state
    for obs, sign in zip(MEASURED_PRODUCTS, (1, 1, 1, -1)):
        projected = apply_eigenprojector(obs, sign, projected)
    return projected.squared_norm()


def outcome_table(state: StateVector) -> OutcomeDistribution:
    """Joint distribution of the four measured products, 16 sign tuples."""
    if state.num_qubits != 4:
        raise ValueError("the outcome table is defined on four-qubit states")
    return joint_outcome_distribution(MEASURED_PRODUCTS, state)


def reference_probability(signs: tuple[int, int, int, int]) -> float:
    """Ideal cell probability on the two-singlet state.

    Outcomes whose four signs multiply to -1 each occur with probability
    1/8; the remaining eight outcomes never occur.
    """
    product = signs[0] * signs[1] * signs[2] * signs[3]
    return 0.125 if product == -1 else 0.0


DEFAULT_PAIRING = ((1, 3), (2, 4))
DEFAULT_FAMILIES = (("phi", "psi"), ("chi", "omega"))


def _basis_kinds(families: tuple[str, str]) -> tuple[BellKind, ...]:
    if tuple(families) == ("phi", "psi"):
        return ZZ_XX_KINDS
    if tuple(families) == ("chi", "omega"):
        return ZX_XZ_KINDS
    raise ValueError(
        f"families {families} do not name an orthonormal Bell basis; "
        "use ('phi', 'psi') or ('chi', 'omega')"
    )


def _pairing_permutation(pairing: tuple[tuple[int, int], tuple[int, int]]) -> QubitPermutation:
    (a, b), (c, d) = pairing
    flat = (a, b, c, d)
    if sorted(flat) != [1, 2, 3, 4]:
        raise ValueError(f"pairing {pairing} must cover qubits 1..4 without overlap")
    targets = [0] * 4
    for slot, particle in enumerate(flat, start=1):
        targets[particle - 1] = slot
    return QubitPermutation(targets)


def decompose_bell_basis(
    state: StateVector,
    pairing: tuple[tuple[int, int], tuple[int, int]] = DEFAULT_PAIRING,
    families: tuple[tuple[str, str], tuple[str, str]] = DEFAULT_FAMILIES,
) -> dict[tuple[str, str], complex]:
    """Coefficients of the state in a product of two Bell bases.

    The register is reordered so the first pair occupies the leading
    tensor slots, then each of the 16 products of basis states is paired
    with the state by inner product. Squared magnitudes sum to 1 for any
    normalized input, and reconstructing from the coefficients returns
    the original amplitudes.
    """
    if state.num_qubits != 4:
        raise ValueError("Bell-basis decomposition requires a four-qubit state")
    reordered = permute_qubits(state, _pairing_permutation(pairing))
    first_kinds = _basis_kinds(families[0])
    second_kinds = _basis_kinds(families[1])
    coefficients: dict[tuple[str, str], complex] = {}
    for ka, kb in itertools.product(first_kinds, second_kinds):
        basis_vector = tensor(bell_state(ka), bell_state(kb))
        coefficients[(ka.label, kb.label)] = inner_product(basis_vector, reordered)
    return coefficients


def reconstruct_from_bell_basis(
    coefficients: dict[tuple[str, str], complex],
    pairing: tuple[tuple[int, int], tuple[int, int]] = DEFAULT_PAIRING,
) -> StateVector:
    """Inverse of :func:`decompose_bell_basis` for round-trip checks."""
    amps = np.zeros(16, dtype=complex)
    for (la, lb), c in coefficients.items():
        ka, kb = BellKind.from_label(la), BellKind.from_label(lb)
        amps += c * tensor(bell_state(ka), bell_state(kb)).amplitudes
    reordered = StateVector(amps)
    return permute_qubits(reordered, _pairing_permutation(pairing).inverse())


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of checking one verified property of the two-singlet state."""

    name: str
    computed: tuple[float, ...]
    expected: tuple[float, ...]
    tolerance: float
    passed: bool

    @classmethod
    def evaluate(cls, name, computed, expected, tolerance) -> "PropertyReport":
        computed = tuple(float(c) for c in computed)
        expected = tuple(float(e) for e in expected)
        deviation = max(abs(c - e) for c, e in zip(computed, expected))
        return cls(name, computed, expected, tolerance, deviation < tolerance)

    def to_dict(self) -> dict:
        return {
            "property": self.name,
            "computed": list(self.computed),
            "expected": list(self.expected),
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def _eigenrelation_deviation(kinds: tuple[BellKind, ...]) -> float:
    """Largest amplitude error across the basis-defining eigenrelations."""
    first, second = pair_products((1, 2), kinds)
    worst = 0.0
    for kind in kinds:
        vec = bell_state(kind)
        for product, eigenvalue in zip((first, second), kind_signs(kind)):
            image = apply_observable(product, vec)
            deviation = np.max(np.abs(image.amplitudes - eigenvalue * vec.amplitudes))
            worst = max(worst, float(deviation))
    return worst


def swap_collapse_report(state: StateVector) -> PropertyReport:
    """Check the entanglement-swapping collapse on particles 2 and 4.

    Each of the four phi/psi outcomes on particles 1,3 should occur with
    probability 1/4 and leave particles 2,4 exactly in the same-named
    Bell state.
    """
    probabilities = []
    fidelities = []
    for kind in ZZ_XX_KINDS:
        prob, leftover = conditional_pair_state(state, (1, 3), kind)
        probabilities.append(prob)
        if leftover is None:
            fidelities.append(0.0)
        else:
            fidelities.append(abs(inner_product(bell_state(kind), leftover)) ** 2)
    return PropertyReport.evaluate(
        "swap_collapse",
        tuple(probabilities) + tuple(fidelities),
        (0.25,) * 4 + (1.0,) * 4,
        PROB_TOL,
    )


# The four pairwise anti-correlations and the four cross-side conditional
# certainties, keyed by what they assert about the two-singlet state.
ANTICORRELATION_CHECKS = (
    ("never_equal_z1_z2", Pauli("Z", 1), Pauli("Z", 2)),
    ("never_equal_x1_x2", Pauli("X", 1), Pauli("X", 2)),
    ("never_equal_z3_z4", Pauli("Z", 3), Pauli("Z", 4)),
    ("never_equal_x3_x4", Pauli("X", 3), Pauli("X", 4)),
)

CONDITIONAL_CHECKS = (
    (
        "equal_z2_z4_given_z1z3_plus",
        (Pauli("Z", 2), Pauli("Z", 4)),
        MEASURED_PRODUCTS[0],
        1,
        1,
    ),
    (
        "equal_x2_x4_given_x1x3_plus",
        (Pauli("X", 2), Pauli("X", 4)),
        MEASURED_PRODUCTS[1],
        1,
        1,
    ),
    (
        "equal_z1_x3_given_z2x4_plus",
        (Pauli("Z", 1), Pauli("X", 3)),
        MEASURED_PRODUCTS[2],
        1,
        1,
    ),
    (
        "opposite_x1_z3_given_x2z4_minus",
        (Pauli("X", 1), Pauli("Z", 3)),
        MEASURED_PRODUCTS[3],
        -1,
        -1,
    ),
)


def verify_all_properties() -> list[PropertyReport]:
    """Evaluate all thirteen verified properties on the two-singlet state."""
    state = two_singlet_state()
    reports = []

    for name, a, b in ANTICORRELATION_CHECKS:
        reports.append(
            PropertyReport.evaluate(name, (prob_equal(a, b, state),), (0.0,), ZERO_TOL)
        )

    for name, pair, condition, cond_sign, rel_sign in CONDITIONAL_CHECKS:
        conditional = conditional_prob_equal(pair, condition, cond_sign, rel_sign, state)
        weight = condition_probability(condition, cond_sign, state)
        reports.append(
            PropertyReport.evaluate(name, (conditional, weight), (1.0, 0.5), PROB_TOL)
        )

    # Two routes to the same joint probability: chained projectors, and
    # the squared overlap with the phi+ (x) chi- basis vector.
    chained = joint_prob_all_four(state)
    overlap = abs(decompose_bell_basis(state)[("phi+", "chi-")]) ** 2
    reports.append(
        PropertyReport.evaluate(
            "joint_plus_plus_plus_minus", (chained, overlap), (0.125, 0.125), PROB_TOL
        )
    )

    reports.append(
        PropertyReport.evaluate(
            "bell_eigenrelations_zz_xx",
            (_eigenrelation_deviation(ZZ_XX_KINDS),),
            (0.0,),
            ZERO_TOL,
        )
    )
    reports.append(
        PropertyReport.evaluate(
            "bell_eigenrelations_zx_xz",
            (_eigenrelation_deviation(ZX_XZ_KINDS),),
            (0.0,),
            ZERO_TOL,
        )
    )

    table = outcome_table(state)
    table_deviation = max(
        abs(p - reference_probability(signs)) for signs, p in table.items()
    )
    reports.append(
        PropertyReport.evaluate(
            "product_outcome_table", (table_deviation,), (0.0,), PROB_TOL
        )
    )

    reports.append(swap_collapse_report(state))
    return reports


def table_rows(dist: OutcomeDistribution) -> list[tuple[tuple[int, ...], float, float]]:
    """Distribution cells with their ideal values, in enumeration order."""
    return [
        (signs, dist.probability(signs), reference_probability(signs))
        for signs in sign_tuples(4)
    ]
