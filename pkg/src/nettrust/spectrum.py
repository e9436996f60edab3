"""Trust spectrum and NetTrustScore.

Scored records are grouped into answer scenarios (by the label the model
answered, or optionally by the oracle label).  A scenario's spectrum
coefficient is the mean trust of its members; NetTrustScore is the
expectation of the coefficients over scenarios, weighted either by how
often each scenario occurs or uniformly.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from .trust import GROUPINGS, WEIGHTINGS, ScoredRecord, mean

__all__ = [
    "ScenarioGroup",
    "TrustSpectrum",
    "group_by_scenario",
    "net_trust_score",
    "spectrum_coefficient",
    "trust_spectrum",
]


@dataclass(frozen=True)
class ScenarioGroup:
    scenario_label: str
    members: tuple[ScoredRecord, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError(f"scenario {self.scenario_label!r} has no members")


@dataclass(frozen=True)
class TrustSpectrum:
    model_name: str
    # scenario label -> (coefficient, member count), in lexicographic label order
    coefficients: dict[str, tuple[float, int]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(n for _, n in self.coefficients.values())

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("scenario", "coefficient", "count"))
        for label, (coef, n) in self.coefficients.items():
            writer.writerow((label, repr(coef), n))
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "model_name": self.model_name,
            "scenarios": [{"scenario": label, "coefficient": coef, "count": n}
                          for label, (coef, n) in self.coefficients.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "TrustSpectrum":
        return cls(data["model_name"],
                   {s["scenario"]: (float(s["coefficient"]), int(s["count"]))
                    for s in data["scenarios"]})


def _scenario_key(s: ScoredRecord, grouping: str) -> str:
    if grouping == "predicted":
        return s.record.predicted_label
    if grouping == "oracle":
        return s.record.oracle_label
    raise ValueError(f"grouping must be one of {GROUPINGS}, got {grouping!r}")


def group_by_scenario(scored: Sequence[ScoredRecord], grouping: str = "predicted") -> list[ScenarioGroup]:
    if not scored:
        raise ValueError("no scored records to group")
    buckets: dict[str, list[ScoredRecord]] = {}
    for s in scored:
        buckets.setdefault(_scenario_key(s, grouping), []).append(s)
    return [ScenarioGroup(label, tuple(buckets[label])) for label in sorted(buckets)]


def spectrum_coefficient(g: ScenarioGroup) -> float:
    """Mean question-answer trust over the members of one scenario."""
    return mean([m.qa_trust for m in g.members])


def trust_spectrum(scored: Sequence[ScoredRecord], grouping: str = "predicted",
                   model_name: str = "") -> TrustSpectrum:
    groups = group_by_scenario(scored, grouping)
    return TrustSpectrum(model_name, {g.scenario_label: (spectrum_coefficient(g), len(g.members))
                                      for g in groups})


def net_trust_score(s: TrustSpectrum, weighting: str = "empirical") -> float:
    if not s.coefficients:
        raise ValueError("trust spectrum is empty")
    coefs = list(s.coefficients.values())
    if weighting == "empirical":
        total = sum(n for _, n in coefs)
        score = math.fsum((n / total) * c for c, n in coefs)
    elif weighting == "uniform":
        score = math.fsum(c for c, _ in coefs) / len(coefs)
    else:
        raise ValueError(f"weighting must be one of {WEIGHTINGS}, got {weighting!r}")
    # rounding can push a convex combination a hair outside its range
    lo, hi = min(c for c, _ in coefs), max(c for c, _ in coefs)
    return min(max(score, lo), hi)
