import json

import pytest

from bellswap.lhv import classify_outcome
from bellswap.observables import sign_tuples
from bellswap.protocol import reference_probability
from bellswap.sampler import (
    CHI2_THRESHOLD_999_DOF7,
    RunRecord,
    SamplerConfig,
    chi_squared_two_sample,
    chi_squared_vs_reference,
    empirical_distribution,
    records_to_csv,
    records_to_jsonl,
    run,
)

BIG = 100_000
FREQ_TOL = 0.0031  # three binomial sigmas at 1e5 runs and p = 1/8


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(num_runs=0, seed=1)
    with pytest.raises(ValueError):
        SamplerConfig(num_runs=10, seed=-1)
    with pytest.raises(ValueError):
        SamplerConfig(num_runs=10, seed=1, order="simultaneous")


def test_single_run_is_a_contradiction():
    records = run(SamplerConfig(num_runs=1, seed=0))
    assert len(records) == 1
    assert records[0].classification == "contradiction"


def test_identical_seeds_reproduce_records():
    config = SamplerConfig(num_runs=500, seed=314)
    assert run(config) == run(config)


def test_different_seeds_differ():
    a = run(SamplerConfig(num_runs=500, seed=1))
    b = run(SamplerConfig(num_runs=500, seed=2))
    assert a != b


def test_classification_matches_lhv_for_every_record():
    for record in run(SamplerConfig(num_runs=2000, seed=99)):
        assert record.classification == classify_outcome(record.signs)
        assert record.classification == "contradiction"


def test_no_forbidden_outcome_is_ever_sampled():
    records = run(SamplerConfig(num_runs=50_000, seed=8))
    dist = empirical_distribution(records)
    for signs, frequency in dist.items():
        if reference_probability(signs) == 0.0:
            assert frequency == 0.0


def test_empirical_distribution_of_single_record():
    records = run(SamplerConfig(num_runs=1, seed=5))
    dist = empirical_distribution(records)
    assert dist.probability(records[0].signs) == 1.0
    assert sum(p for _, p in dist.items()) == pytest.approx(1.0, abs=1e-12)


def test_empirical_distribution_rejects_empty_sample():
    with pytest.raises(ValueError):
        empirical_distribution([])


def test_large_sample_frequencies_near_reference():
    records = run(SamplerConfig(num_runs=BIG, seed=12345))
    dist = empirical_distribution(records)
    for signs in sign_tuples(4):
        expected = reference_probability(signs)
        if expected:
            assert abs(dist.probability(signs) - expected) < FREQ_TOL
        else:
            assert dist.probability(signs) == 0.0


def test_chi_squared_goodness_of_fit_below_threshold():
    records = run(SamplerConfig(num_runs=BIG, seed=12345))
    assert chi_squared_vs_reference(records) < CHI2_THRESHOLD_999_DOF7


def test_chi_squared_across_100_seeds():
    below = sum(
        1
        for seed in range(100)
        if chi_squared_vs_reference(run(SamplerConfig(num_runs=BIG, seed=seed)))
        < CHI2_THRESHOLD_999_DOF7
    )
    assert below >= 99


def test_measurement_order_does_not_change_statistics():
    # Same seed: both orders must individually match the reference, and
    # cell-by-cell they can only differ by their own sampling noise.
    alice_first = run(SamplerConfig(num_runs=BIG, seed=777, order="alice-first"))
    bob_first = run(SamplerConfig(num_runs=BIG, seed=777, order="bob-first"))
    assert chi_squared_vs_reference(alice_first) < CHI2_THRESHOLD_999_DOF7
    assert chi_squared_vs_reference(bob_first) < CHI2_THRESHOLD_999_DOF7
    dist_a = empirical_distribution(alice_first)
    dist_b = empirical_distribution(bob_first)
    for signs in sign_tuples(4):
        assert abs(dist_a.probability(signs) - dist_b.probability(signs)) < 2 * FREQ_TOL


def test_measurement_orders_indistinguishable_across_seeds():
    # Independent seeds give genuinely independent samples, which is what
    # the two-sample homogeneity statistic assumes.
    alice_first = run(SamplerConfig(num_runs=BIG, seed=777, order="alice-first"))
    bob_first = run(SamplerConfig(num_runs=BIG, seed=778, order="bob-first"))
    assert chi_squared_two_sample(alice_first, bob_first) < CHI2_THRESHOLD_999_DOF7


def test_bob_first_runs_are_still_contradictions():
    records = run(SamplerConfig(num_runs=1000, seed=4, order="bob-first"))
    assert all(r.classification == "contradiction" for r in records)


def test_chi_squared_flags_forbidden_outcomes_as_infinite():
    impossible = [RunRecord((1, 1), (1, 1), "explainable")]
    assert chi_squared_vs_reference(impossible) == float("inf")


def test_records_jsonl_roundtrip():
    records = run(SamplerConfig(num_runs=5, seed=21))
    lines = records_to_jsonl(records).splitlines()
    assert len(lines) == 5
    first = json.loads(lines[0])
    assert first["run"] == 0
    assert tuple(first["alice_outcome"]) == records[0].alice_outcome
    assert first["classification"] == "contradiction"


def test_records_csv_shape():
    records = run(SamplerConfig(num_runs=5, seed=21))
    lines = records_to_csv(records).splitlines()
    assert lines[0] == "run,zz13,xx13,zx24,xz24,classification"
    assert len(lines) == 6
    assert lines[1].endswith("contradiction")


def test_run_record_signs_property():
    record = RunRecord((1, -1), (-1, 1), "contradiction")
    assert record.signs == (1, -1, -1, 1)
