"""Deterministic local-value assignments and their infeasibility certificates.

Each of the eight single-qubit observables Z1, X1, ..., Z4, X4 is treated
as carrying a pre-existing value of +1 or -1. An observed joint outcome of
the four measured products, together with the fixed singlet
anti-correlations, induces a system of sign constraints on products of
those values. Feasibility is decided two independent ways: exhaustive
enumeration of all 256 assignments, and a telescoping parity argument
(multiply all constraints; when every label appears an even number of
times the left side collapses to +1, so a right side of -1 proves the
system has no solution).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Literal

# Canonical label order for enumeration and serialization.
LABELS = ("X1", "X2", "X3", "X4", "Z1", "Z2", "Z3", "Z4")

Classification = Literal["contradiction", "explainable"]


@dataclass(frozen=True)
class ParityConstraint:
    """Require the product of the named values to equal ``required_sign``."""

    labels: tuple[str, ...]
    required_sign: int

    def __post_init__(self) -> None:
        if not self.labels:
            raise ValueError("parity constraint needs at least one label")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate labels in constraint: {self.labels}")
        unknown = [l for l in self.labels if l not in LABELS]
        if unknown:
            raise ValueError(f"unknown value labels: {unknown}")
        if self.required_sign not in (-1, 1):
            raise ValueError(f"required sign must be -1 or +1, got {self.required_sign}")

    def satisfied_by(self, assignment: dict[str, int]) -> bool:
        product = 1
        for label in self.labels:
            product *= assignment[label]
        return product == self.required_sign

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "required_sign": self.required_sign}


@dataclass(frozen=True)
class Certificate:
    """Feasibility verdict for a parity-constraint system.

    ``parity_product`` multiplies the required signs of all constraints;
    it only proves anything when every label occurs an even number of
    times (``parity_applicable``), in which case -1 certifies that no
    assignment exists. ``satisfying_count`` always comes from exhaustive
    enumeration, so the two mechanisms check each other.
    """

    satisfying_count: int
    parity_product: int | None
    parity_applicable: bool
    feasible: bool

    def to_dict(self) -> dict:
        return {
            "satisfying_count": self.satisfying_count,
            "parity_product": self.parity_product,
            "parity_applicable": self.parity_applicable,
            "feasible": self.feasible,
        }


def all_assignments() -> Iterable[dict[str, int]]:
    """All 256 sign assignments, lexicographic in canonical label order."""
    for values in itertools.product((-1, 1), repeat=len(LABELS)):
        yield dict(zip(LABELS, values))


def satisfying_assignments(constraints: Iterable[ParityConstraint]) -> list[dict[str, int]]:
    """Every assignment satisfying all constraints, by brute force."""
    constraints = list(constraints)
    return [
        assignment
        for assignment in all_assignments()
        if all(c.satisfied_by(assignment) for c in constraints)
    ]


def parity_certificate(constraints: Iterable[ParityConstraint]) -> Certificate:
    """Certify feasibility via the parity product, cross-checked by enumeration."""
    constraints = list(constraints)
    occurrences: dict[str, int] = {}
    for c in constraints:
        for label in c.labels:
            occurrences[label] = occurrences.get(label, 0) + 1
    applicable = bool(constraints) and all(n % 2 == 0 for n in occurrences.values())

    count = len(satisfying_assignments(constraints))
    product = None
    if applicable:
        product = 1
        for c in constraints:
            product *= c.required_sign
        if product == -1 and count != 0:
            raise AssertionError(
                "parity product -1 with a satisfying assignment; enumeration "
                "and the telescoping argument disagree"
            )
    return Certificate(
        satisfying_count=count,
        parity_product=product,
        parity_applicable=applicable,
        feasible=count > 0,
    )


def classify_outcome(signs: tuple[int, int, int, int]) -> Classification:
    """Label a joint outcome of the four measured products.

    Outcomes whose signs multiply to -1 admit no local value assignment;
    those multiplying to +1 do.
    """
    product = 1
    for s in signs:
        if s not in (-1, 1):
            raise ValueError(f"outcome signs must be -1 or +1, got {signs}")
        product *= s
    return "contradiction" if product == -1 else "explainable"


# Fixed inferences from the perfect singlet anti-correlations: the Z and
# X values of the two qubits of each singlet are always opposite.
ANTICORRELATION_CONSTRAINTS = (
    ParityConstraint(("Z1", "Z2"), -1),
    ParityConstraint(("X1", "X2"), -1),
    ParityConstraint(("Z3", "Z4"), -1),
    ParityConstraint(("X3", "X4"), -1),
)


def build_constraints(signs: tuple[int, int, int, int]) -> list[ParityConstraint]:
    """Constraint system implied by one joint outcome of the four products.

    Each observed product sign fixes, with certainty, the sign relation
    of a value pair on the opposite side: Z1Z3 = s forces Z2 and Z4 to
    agree iff s = +1, X1X3 = s does the same for X2 and X4, Z2X4 = s for
    Z1 and X3, and X2Z4 = s for X1 and Z3. The four singlet
    anti-correlations are appended unconditionally, giving exactly eight
    constraints.
    """
    classify_outcome(signs)  # validates the signs
    s1, s2, s3, s4 = signs
    return [
        ParityConstraint(("Z2", "Z4"), s1),
        ParityConstraint(("X2", "X4"), s2),
        ParityConstraint(("Z1", "X3"), s3),
        ParityConstraint(("X1", "Z3"), s4),
        *ANTICORRELATION_CONSTRAINTS,
    ]
