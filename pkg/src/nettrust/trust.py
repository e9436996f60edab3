"""Question-answer trust and the correctness-split diagnostics.

Each answer gets a trust value in [0, 1]: ``C ** alpha`` when the model
answered correctly (confidence is rewarded) and ``(1 - C) ** beta`` when
it answered incorrectly (confidence is penalised).  ``alpha`` and ``beta``
are the reward and penalty relaxation exponents; 1 weighs both equally.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

from .records import PredictionRecord, RecordSet

__all__ = [
    "GROUPINGS",
    "WEIGHTINGS",
    "ScoredRecord",
    "TrustParams",
    "accuracy_fractions",
    "expected_confidence_correct",
    "expected_confidence_incorrect",
    "mean",
    "partition",
    "question_answer_trust",
    "score_all",
]

GROUPINGS = ("predicted", "oracle")
WEIGHTINGS = ("empirical", "uniform")


@dataclass(frozen=True)
class TrustParams:
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 0.5
    grouping: str = "predicted"
    weighting: str = "empirical"

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise TypeError(f"{name} must be a real number, got {value!r}")
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a finite positive number, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.grouping not in GROUPINGS:
            raise ValueError(f"grouping must be one of {GROUPINGS}, got {self.grouping!r}")
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"weighting must be one of {WEIGHTINGS}, got {self.weighting!r}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "TrustParams":
        return cls(**{k: data[k] for k in ("alpha", "beta", "gamma", "grouping", "weighting")})


@dataclass(frozen=True)
class ScoredRecord:
    record: PredictionRecord
    correct: bool
    qa_trust: float


def mean(values: Sequence[float]) -> float:
    """Arithmetic mean, independent of summation order.

    The exact sum is rounded once; the division can still land one ulp
    outside [min, max], so the result is clamped back.
    """
    if not values:
        raise ValueError("mean of an empty sequence")
    m = math.fsum(values) / len(values)
    return min(max(m, min(values)), max(values))


def _require_nonempty(rs: RecordSet | Sequence) -> None:
    if len(rs) == 0:
        raise ValueError("record set is empty")


def partition(rs: RecordSet) -> tuple[list[PredictionRecord], list[PredictionRecord]]:
    """Split records into (correct, incorrect), keeping input order."""
    _require_nonempty(rs)
    correct, incorrect = [], []
    for r in rs:
        (correct if r.predicted_label == r.oracle_label else incorrect).append(r)
    return correct, incorrect


def question_answer_trust(r: PredictionRecord, p: TrustParams) -> float:
    if r.predicted_label == r.oracle_label:
        return r.confidence ** p.alpha
    return (1.0 - r.confidence) ** p.beta


def score_all(rs: RecordSet, p: TrustParams) -> list[ScoredRecord]:
    _require_nonempty(rs)
    return [ScoredRecord(r, r.predicted_label == r.oracle_label, question_answer_trust(r, p))
            for r in rs]


def expected_confidence_correct(rs: RecordSet) -> float | None:
    """Mean confidence over correctly answered questions.

    Returns None when the model got nothing right: the diagnostic is
    undefined, and reporting 0 would misrepresent it.
    """
    correct, _ = partition(rs)
    return mean([r.confidence for r in correct]) if correct else None


def expected_confidence_incorrect(rs: RecordSet) -> float | None:
    """Mean confidence over incorrectly answered questions, or None if there are none."""
    _, incorrect = partition(rs)
    return mean([r.confidence for r in incorrect]) if incorrect else None


def accuracy_fractions(rs: RecordSet) -> tuple[float, float]:
    correct, incorrect = partition(rs)
    n = len(rs)
    return len(correct) / n, len(incorrect) / n
