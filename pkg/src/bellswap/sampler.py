"""Monte Carlo runs of the two-observer joint-product experiment.

Every run prepares the two-singlet state, lets the first party project
its pair onto a Bell basis (the 1,3 side uses the phi/psi basis, the 2,4
side chi/omega), collapses, and lets the second party measure the
post-measurement state. Which party goes first is configurable; the
joint statistics cannot depend on it because the two measurements
commute.

Randomness comes from NumPy's default PCG64 generator seeded with the
configured seed. Run i consumes exactly the i-th row of a (num_runs, 2)
uniform block drawn up front, so results are reproducible bit for bit
and independent of how the runs might be partitioned across workers.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from . import lhv
from .observables import OutcomeDistribution, sign_tuples
from .statevec import PROB_TOL
from .protocol import (
    MEASURED_PRODUCTS,
    ZX_XZ_KINDS,
    ZZ_XX_KINDS,
    bell_measurement,
    kind_signs,
    reference_probability,
    two_singlet_state,
)

ORDERS = ("alice-first", "bob-first")

# 99.9% point of the chi-squared distribution with 7 degrees of freedom,
# the goodness-of-fit threshold over the eight attainable outcome cells.
CHI2_THRESHOLD_999_DOF7 = float(chi2.ppf(0.999, 7))


@dataclass(frozen=True)
class SamplerConfig:
    num_runs: int
    seed: int
    order: str = "alice-first"

    def __post_init__(self) -> None:
        if self.num_runs < 1:
            raise ValueError(f"num_runs must be at least 1, got {self.num_runs}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}, got {self.order!r}")


@dataclass(frozen=True)
class RunRecord:
    """Signs observed in one run: (Z1Z3, X1X3) and (Z2X4, X2Z4)."""

    alice_outcome: tuple[int, int]
    bob_outcome: tuple[int, int]
    classification: str

    @property
    def signs(self) -> tuple[int, int, int, int]:
        return self.alice_outcome + self.bob_outcome


def _measurement_tables(order: str):
    """Outcome probabilities for the first party and, per first-party
    outcome, for the second party on the collapsed state."""
    state = two_singlet_state()
    if order == "alice-first":
        first_pair, first_kinds = (1, 3), ZZ_XX_KINDS
        second_pair, second_kinds = (2, 4), ZX_XZ_KINDS
    else:
        first_pair, first_kinds = (2, 4), ZX_XZ_KINDS
        second_pair, second_kinds = (1, 3), ZZ_XX_KINDS

    first = bell_measurement(state, first_pair, first_kinds)
    first_probs = np.array([o.probability for o in first])
    second_probs = np.zeros((len(first), len(second_kinds)))
    for i, outcome in enumerate(first):
        if outcome.post_state is None:
            continue
        conditional = bell_measurement(outcome.post_state, second_pair, second_kinds)
        second_probs[i] = [o.probability for o in conditional]
    return first_kinds, second_kinds, first_probs, second_probs


def run(config: SamplerConfig) -> list[RunRecord]:
    """Simulate the configured number of runs, deterministically in the seed."""
    first_kinds, second_kinds, first_probs, second_probs = _measurement_tables(
        config.order
    )
    rng = np.random.default_rng(config.seed)
    u = rng.random((config.num_runs, 2))

    first_cum = np.cumsum(first_probs)
    second_cum = np.cumsum(second_probs, axis=1)
    # The cumulative sums end within rounding of 1; pin the endpoints so a
    # uniform draw arbitrarily close to 1 cannot index past the last outcome.
    if abs(first_cum[-1] - 1.0) > PROB_TOL or np.max(np.abs(second_cum[:, -1] - 1.0)) > PROB_TOL:
        raise AssertionError("measurement outcome probabilities do not sum to 1")
    first_cum[-1] = 1.0
    second_cum[:, -1] = 1.0
    first_idx = np.searchsorted(first_cum, u[:, 0], side="right")
    second_idx = (u[:, 1:2] >= second_cum[first_idx]).sum(axis=1)

    # Records are immutable, so the 16 possible outcomes are built once
    # and shared across runs.
    first_signs = [kind_signs(k) for k in first_kinds]
    second_signs = [kind_signs(k) for k in second_kinds]
    templates = []
    for fs in first_signs:
        row = []
        for ss in second_signs:
            alice, bob = (fs, ss) if config.order == "alice-first" else (ss, fs)
            row.append(RunRecord(alice, bob, lhv.classify_outcome(alice + bob)))
        templates.append(row)
    return [templates[i][j] for i, j in zip(first_idx, second_idx)]


def empirical_distribution(records: list[RunRecord]) -> OutcomeDistribution:
    """Relative frequency of each of the 16 joint sign tuples."""
    if not records:
        raise ValueError("cannot build a distribution from an empty sample")
    counts: dict[tuple[int, ...], int] = {signs: 0 for signs in sign_tuples(4)}
    for record in records:
        counts[record.signs] += 1
    total = len(records)
    return OutcomeDistribution(
        MEASURED_PRODUCTS, {signs: c / total for signs, c in counts.items()}
    )


def chi_squared_vs_reference(records: list[RunRecord]) -> float:
    """Goodness-of-fit statistic against the ideal cell probabilities.

    Only the eight attainable cells enter (7 degrees of freedom); a count
    in a forbidden cell makes the statistic infinite.
    """
    n = len(records)
    counts: dict[tuple[int, ...], int] = {signs: 0 for signs in sign_tuples(4)}
    for record in records:
        counts[record.signs] += 1
    statistic = 0.0
    for signs, observed in counts.items():
        expected = reference_probability(signs) * n
        if expected == 0.0:
            if observed:
                return float("inf")
            continue
        statistic += (observed - expected) ** 2 / expected
    return statistic


def chi_squared_two_sample(a: list[RunRecord], b: list[RunRecord]) -> float:
    """Two-sample homogeneity statistic over the eight attainable cells."""
    counts_a = {signs: 0 for signs in sign_tuples(4)}
    counts_b = {signs: 0 for signs in sign_tuples(4)}
    for record in a:
        counts_a[record.signs] += 1
    for record in b:
        counts_b[record.signs] += 1
    na, nb = len(a), len(b)
    statistic = 0.0
    for signs in sign_tuples(4):
        ca, cb = counts_a[signs], counts_b[signs]
        if ca + cb == 0:
            continue
        # Standard K-sample chi-squared with sample-size weights.
        expected_a = na * (ca + cb) / (na + nb)
        expected_b = nb * (ca + cb) / (na + nb)
        statistic += (ca - expected_a) ** 2 / expected_a
        statistic += (cb - expected_b) ** 2 / expected_b
    return statistic


def records_to_jsonl(records: list[RunRecord]) -> str:
    """One JSON object per run, stable key order."""
    lines = []
    for i, record in enumerate(records):
        lines.append(
            json.dumps(
                {
                    "run": i,
                    "alice_outcome": list(record.alice_outcome),
                    "bob_outcome": list(record.bob_outcome),
                    "classification": record.classification,
                }
            )
        )
    return "\n".join(lines) + "\n"


def records_to_csv(records: list[RunRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["run", "zz13", "xx13", "zx24", "xz24", "classification"])
    for i, record in enumerate(records):
        writer.writerow([i, *record.signs, record.classification])
    return buffer.getvalue()
