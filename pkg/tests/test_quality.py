import math
import random

import pytest
from scipy.stats import norm

from asdkb.quality import (
    Choice,
    LabelRecord,
    QualityError,
    aggregate_labels,
    coverage_eval,
    normal_quantile,
    sample_entities,
    wilson,
)
from asdkb.store import Iri, Literal, Triple


def triple(n):
    return Triple(
        Iri(f"http://w3id.org/asdkb/instance/e{n}"),
        Iri("http://w3id.org/asdkb/ontology/property/p"),
        Literal(str(n)),
    )


# --- normal quantile ------------------------------------------------------------


def test_quantile_against_scipy():
    for p in [1e-8, 1e-4, 0.01, 0.025, 0.2, 0.5, 0.8, 0.975, 0.99, 1 - 1e-6]:
        assert normal_quantile(p) == pytest.approx(norm.ppf(p), abs=1e-8)


def test_quantile_of_0975_is_196():
    assert normal_quantile(0.975) == pytest.approx(1.959964, abs=1e-6)


def test_quantile_rejects_bounds():
    for bad in (0.0, 1.0, -0.5, 2.0):
        with pytest.raises(ValueError):
            normal_quantile(bad)


# --- wilson -----------------------------------------------------------------------


def test_wilson_reference_value():
    interval = wilson(712, 732, 0.05)
    assert interval.center == pytest.approx(0.9702, abs=1e-4)
    # independent hand evaluation of the formula gives 0.012034
    assert interval.half_width == pytest.approx(0.012034, abs=1e-4)
    assert 0.0119 <= interval.half_width <= 0.0122


def test_wilson_center_shrinks_toward_half():
    for successes, trials in [(1, 10), (9, 10), (700, 732), (3, 4)]:
        p_hat = successes / trials
        center = wilson(successes, trials, 0.05).center
        assert min(p_hat, 0.5) < center < max(p_hat, 0.5)


def test_wilson_half_width_decreases_with_trials():
    widths = [wilson(0.9 * n, n, 0.05).half_width for n in (10, 100, 1000, 10000)]
    assert widths == sorted(widths, reverse=True)


def test_wilson_boundary_never_degenerate():
    assert wilson(0, 50, 0.05).center > 0
    full = wilson(50, 50, 0.05)
    assert full.center < 1
    assert full.center + full.half_width <= 1 + 1e-12
    assert full.upper <= 1


def test_wilson_fractional_successes_allowed():
    interval = wilson(711.8, 732, 0.05)
    assert 0.96 < interval.center < 0.98


def test_wilson_rejects_bad_domain():
    with pytest.raises(ValueError):
        wilson(-1, 10)
    with pytest.raises(ValueError):
        wilson(11, 10)
    with pytest.raises(ValueError):
        wilson(5, 0)
    with pytest.raises(ValueError):
        wilson(5, 10, 0)


def test_wilson_against_reference_formula():
    rng = random.Random(8)
    for _ in range(50):
        trials = rng.randrange(1, 2000)
        successes = rng.uniform(0, trials)
        alpha = rng.choice([0.01, 0.05, 0.1])
        z = norm.ppf(1 - alpha / 2)
        p_hat = successes / trials
        denom = 1 + z * z / trials
        center = (p_hat + z * z / (2 * trials)) / denom
        half = (z / denom) * math.sqrt(
            p_hat * (1 - p_hat) / trials + z * z / (4 * trials * trials)
        )
        interval = wilson(successes, trials, alpha)
        assert interval.center == pytest.approx(center, abs=1e-9)
        assert interval.half_width == pytest.approx(half, abs=1e-9)


# --- sampling ---------------------------------------------------------------------


def test_sample_deterministic_from_seed(kb):
    a = sample_entities(kb.store, 50, seed=7)
    b = sample_entities(kb.store, 50, seed=7)
    assert [iri for iri, _ in a] == [iri for iri, _ in b]


def test_sample_different_seeds_differ(kb):
    a = [iri for iri, _ in sample_entities(kb.store, 50, seed=1)]
    b = [iri for iri, _ in sample_entities(kb.store, 50, seed=2)]
    assert a != b


def test_sample_full_population(kb):
    population = len(kb.store.subjects())
    sample = sample_entities(kb.store, population, seed=3)
    assert len(sample) == population


def test_sample_exceeding_population(kb):
    with pytest.raises(QualityError):
        sample_entities(kb.store, len(kb.store.subjects()) + 1, seed=1)


def test_sample_triples_match_scan(kb):
    for iri, triples in sample_entities(kb.store, 100, seed=42):
        assert len(triples) == len(kb.store.dereference(Iri(iri)))
        assert len({t for t in triples}) == len(triples)
        assert all(t.s.value == iri for t in triples)
    sampled = [iri for iri, _ in sample_entities(kb.store, 100, seed=42)]
    assert len(set(sampled)) == 100


# --- label aggregation ------------------------------------------------------------


def make_records(counts, trials):
    records = []
    for annotator, correct in counts.items():
        for i in range(trials):
            records.append(
                LabelRecord(
                    annotator=annotator,
                    entity=f"e{i}",
                    triple=triple(i),
                    choice=Choice.CORRECT if i < correct else Choice.INCORRECT,
                )
            )
    return records


def test_aggregate_averages_annotators():
    counts = {"a1": 710, "a2": 711, "a3": 712, "a4": 713, "a5": 714}
    successes, trials = aggregate_labels(make_records(counts, 732))
    assert trials == 732
    assert successes == pytest.approx(712.0)


def test_aggregate_single_annotator():
    successes, trials = aggregate_labels(make_records({"a": 10}, 10))
    assert (successes, trials) == (10.0, 10)


def test_aggregate_two_disagreeing():
    successes, trials = aggregate_labels(make_records({"a": 700, "b": 724}, 732))
    assert successes == pytest.approx(712.0)


def test_aggregate_rejects_duplicate_labels():
    rec = LabelRecord("a", "e0", triple(0), Choice.CORRECT)
    with pytest.raises(QualityError):
        aggregate_labels([rec, rec])


def test_aggregate_rejects_inconsistent_trial_sets():
    records = [
        LabelRecord("a", "e0", triple(0), Choice.CORRECT),
        LabelRecord("b", "e1", triple(1), Choice.CORRECT),
    ]
    with pytest.raises(QualityError):
        aggregate_labels(records)


# --- coverage ----------------------------------------------------------------------


class FakeQa:
    def __init__(self, answerable):
        self.answerable = answerable

    def answer_question(self, question):
        class R:
            def __init__(self, answered):
                self.answered = answered

        return R(question in self.answerable)


def test_coverage_fraction():
    qa = FakeQa({"q1", "q2"})
    assert coverage_eval(["q1", "q2", "q3", "q4"], qa) == 0.5


def test_coverage_gibberish_zero():
    assert coverage_eval(["x", "y"], FakeQa(set())) == 0.0


def test_coverage_duplicates_count_independently():
    qa = FakeQa({"q1"})
    assert coverage_eval(["q1", "q1", "q2"], qa) == pytest.approx(2 / 3)


def test_coverage_rejects_empty():
    with pytest.raises(QualityError):
        coverage_eval([], FakeQa(set()))


def test_coverage_on_fixture_eval_set(engine):
    import json

    from asdkb.resources import read_data_text

    questions = [
        json.loads(line)["question"]
        for line in read_data_text("eval_questions.jsonl").splitlines()
        if line.strip()
    ]
    assert coverage_eval(questions, engine) >= 0.80
