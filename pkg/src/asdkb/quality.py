"""Quality-evaluation harness: entity sampling, label aggregation, Wilson
interval accuracy estimation, and QA coverage measurement."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Sequence, Set, Tuple

from .store import Iri, Triple, TripleStore


class QualityError(Exception):
    pass


class Choice(str, Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LabelRecord:
    annotator: str
    entity: str
    triple: Triple
    choice: Choice


@dataclass(frozen=True)
class WilsonInterval:
    center: float
    half_width: float
    alpha: float

    @property
    def lower(self) -> float:
        return max(0.0, self.center - self.half_width)

    @property
    def upper(self) -> float:
        return min(1.0, self.center + self.half_width)


# Acklam's rational approximation of the standard normal quantile,
# refined with one Halley step via erfc (relative error ~1e-15).
_A = (
    -3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
    1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00,
)
_B = (
    -5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
    6.680131188771972e01, -1.328068155288572e01,
)
_C = (
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
    -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00,
)
_D = (
    7.784695709041462e-03, 3.224671290700398e-01,
    2.445134137142996e00, 3.754408661907416e00,
)


def normal_quantile(p: float) -> float:
    """Inverse standard-normal CDF for p in (0, 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile argument must lie in (0,1): {p}")
    p_low, p_high = 0.02425, 1 - 0.02425
    if p < p_low:
        q = math.sqrt(-2 * math.log(p))
        x = (
            ((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]
        ) / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1)
    elif p <= p_high:
        q = p - 0.5
        r = q * q
        x = (
            (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5])
            * q
            / (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1)
        )
    else:
        q = math.sqrt(-2 * math.log(1 - p))
        x = -(
            ((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]
        ) / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1)
    # Halley refinement
    e = 0.5 * math.erfc(-x / math.sqrt(2)) - p
    u = e * math.sqrt(2 * math.pi) * math.exp(x * x / 2)
    return x - u / (1 + x * u / 2)


def wilson(successes: float, trials: int, alpha: float = 0.05) -> WilsonInterval:
    """Wilson score interval for a binomial proportion.

    ``successes`` may be fractional (averaged annotator votes).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    n = float(trials)
    p_hat = successes / n
    z = normal_quantile(1 - alpha / 2)
    z2 = z * z
    denom = 1 + z2 / n
    center = (p_hat + z2 / (2 * n)) / denom
    half_width = (z / denom) * math.sqrt(p_hat * (1 - p_hat) / n + z2 / (4 * n * n))
    return WilsonInterval(center, half_width, alpha)


def sample_entities(
    store: TripleStore, n: int, seed: int
) -> List[Tuple[str, List[Triple]]]:
    """Uniform sample of n distinct subject entities, reproducible from seed.

    Each sampled entity comes with all triples it is the subject of.
    """
    population = sorted(iri.value for iri in store.subjects())
    if n > len(population):
        raise QualityError(
            f"sample size {n} exceeds entity population {len(population)}"
        )
    rng = random.Random(seed)
    chosen = rng.sample(population, n)
    return [(iri, store.dereference(Iri(iri))) for iri in chosen]


def aggregate_labels(records: Sequence[LabelRecord]) -> Tuple[float, int]:
    """Average correct votes over annotators.

    Returns ``(successes, trials)`` where trials is the number of distinct
    triples and successes the mean per-annotator correct count.
    """
    per_annotator: Dict[str, Set[Triple]] = {}
    correct: Dict[str, int] = {}
    for rec in records:
        seen = per_annotator.setdefault(rec.annotator, set())
        if rec.triple in seen:
            raise QualityError(
                f"annotator {rec.annotator} labeled a triple twice: {rec.triple}"
            )
        seen.add(rec.triple)
        if rec.choice is Choice.CORRECT:
            correct[rec.annotator] = correct.get(rec.annotator, 0) + 1
    if not per_annotator:
        raise QualityError("no label records")
    trial_sets = list(per_annotator.values())
    first = trial_sets[0]
    for other in trial_sets[1:]:
        if other != first:
            raise QualityError("annotators labeled inconsistent triple sets")
    trials = len(first)
    successes = sum(correct.get(a, 0) for a in per_annotator) / len(per_annotator)
    return successes, trials


def coverage_eval(questions: Sequence[str], qa_module) -> float:
    """Fraction of questions the QA module answers."""
    if not questions:
        raise QualityError("question list is empty")
    answered = sum(1 for q in questions if qa_module.answer_question(q).answered)
    return answered / len(questions)
