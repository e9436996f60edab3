"""Per-model trust summaries and multi-model comparison tables."""
from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .records import RecordSet
from .spectrum import net_trust_score, trust_spectrum
from .trust import (
    TrustParams,
    accuracy_fractions,
    expected_confidence_correct,
    expected_confidence_incorrect,
    score_all,
)

__all__ = [
    "COMPARISON_COLUMNS",
    "ComparisonTable",
    "ModelTrustSummary",
    "SummaryInconsistency",
    "compare_models",
    "model_summary",
    "params_hash",
]

COMPARISON_COLUMNS = ("model", "net_trust_score", "n_correct", "ec_correct", "n_incorrect",
                      "ec_incorrect", "params_hash")
IDENTITY_TOL = 1e-9


class SummaryInconsistency(AssertionError):
    """A summary failed its internal consistency checks."""


def params_hash(p: TrustParams) -> str:
    canonical = json.dumps(p.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("ascii")).hexdigest()[:12]


@dataclass(frozen=True)
class ModelTrustSummary:
    model_name: str
    net_trust_score: float
    n_correct_frac: float
    expected_confidence_correct: float | None
    n_incorrect_frac: float
    expected_confidence_incorrect: float | None
    record_count: int
    params: TrustParams

    def check(self) -> None:
        """Raise SummaryInconsistency unless the summary's identities hold."""
        if abs(self.n_correct_frac + self.n_incorrect_frac - 1.0) > 1e-12:
            raise SummaryInconsistency(
                f"{self.model_name}: correct/incorrect fractions sum to "
                f"{self.n_correct_frac + self.n_incorrect_frac!r}")
        p = self.params
        if p.alpha == 1.0 and p.beta == 1.0 and p.weighting == "empirical":
            ec = self.expected_confidence_correct
            ei = self.expected_confidence_incorrect
            rebuilt = ((self.n_correct_frac * ec if ec is not None else 0.0)
                       + (self.n_incorrect_frac * (1.0 - ei) if ei is not None else 0.0))
            if abs(rebuilt - self.net_trust_score) > IDENTITY_TOL:
                raise SummaryInconsistency(
                    f"{self.model_name}: NetTrustScore {self.net_trust_score!r} disagrees with "
                    f"the correctness decomposition {rebuilt!r}")

    def to_dict(self) -> dict:
        return {
            "model_name": self.model_name,
            "net_trust_score": self.net_trust_score,
            "n_correct_frac": self.n_correct_frac,
            "expected_confidence_correct": self.expected_confidence_correct,
            "n_incorrect_frac": self.n_incorrect_frac,
            "expected_confidence_incorrect": self.expected_confidence_incorrect,
            "record_count": self.record_count,
            "params": self.params.to_dict(),
        }

    def to_json(self) -> str:
        self.check()
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "ModelTrustSummary":
        def opt(v):
            return None if v is None else float(v)

        return cls(
            model_name=data["model_name"],
            net_trust_score=float(data["net_trust_score"]),
            n_correct_frac=float(data["n_correct_frac"]),
            expected_confidence_correct=opt(data["expected_confidence_correct"]),
            n_incorrect_frac=float(data["n_incorrect_frac"]),
            expected_confidence_incorrect=opt(data["expected_confidence_incorrect"]),
            record_count=int(data["record_count"]),
            params=TrustParams.from_dict(data["params"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "ModelTrustSummary":
        return cls.from_dict(json.loads(text))


def model_summary(rs: RecordSet, p: TrustParams | None = None) -> ModelTrustSummary:
    p = p or TrustParams()
    scored = score_all(rs, p)
    spectrum = trust_spectrum(scored, p.grouping, rs.model_name)
    n_correct, n_incorrect = accuracy_fractions(rs)
    summary = ModelTrustSummary(
        model_name=rs.model_name,
        net_trust_score=net_trust_score(spectrum, p.weighting),
        n_correct_frac=n_correct,
        expected_confidence_correct=expected_confidence_correct(rs),
        n_incorrect_frac=n_incorrect,
        expected_confidence_incorrect=expected_confidence_incorrect(rs),
        record_count=len(rs),
        params=p,
    )
    summary.check()
    return summary


def _fmt(value: float | None, digits: int = 3) -> str:
    return "n/a" if value is None else f"{value:.{digits}f}"


def _pct(frac: float) -> str:
    return f"{100.0 * frac:.1f}%"


@dataclass(frozen=True)
class ComparisonTable:
    """Summaries ordered by NetTrustScore, highest first."""

    rows: tuple[ModelTrustSummary, ...]

    @property
    def params(self) -> TrustParams:
        return self.rows[0].params

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COMPARISON_COLUMNS)
        h = params_hash(self.params)
        for s in self.rows:
            writer.writerow((
                s.model_name, repr(s.net_trust_score), repr(s.n_correct_frac),
                "" if s.expected_confidence_correct is None else repr(s.expected_confidence_correct),
                repr(s.n_incorrect_frac),
                "" if s.expected_confidence_incorrect is None else repr(s.expected_confidence_incorrect),
                h,
            ))
        return buf.getvalue()

    def to_json(self) -> str:
        for s in self.rows:
            s.check()
        doc = {
            "params": self.params.to_dict(),
            "params_hash": params_hash(self.params),
            "models": [s.to_dict() for s in self.rows],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        header = ("Model", "NetTrustScore", "n_correct", "C_correct", "n_incorrect", "C_incorrect")
        body = [(s.model_name, _fmt(s.net_trust_score), _pct(s.n_correct_frac),
                 _fmt(s.expected_confidence_correct), _pct(s.n_incorrect_frac),
                 _fmt(s.expected_confidence_incorrect)) for s in self.rows]
        widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]

        def line(cells):
            first = cells[0].ljust(widths[0])
            rest = [c.rjust(w) for c, w in zip(cells[1:], widths[1:])]
            return "  ".join([first, *rest]).rstrip()

        p = self.params
        lines = [line(header), "  ".join("-" * w for w in widths)]
        lines += [line(r) for r in body]
        lines.append("")
        lines.append(f"alpha={p.alpha:g} beta={p.beta:g} gamma={p.gamma:g} "
                     f"grouping={p.grouping} weighting={p.weighting}")
        return "\n".join(lines) + "\n"


def compare_models(summaries: Sequence[ModelTrustSummary]) -> ComparisonTable:
    if not summaries:
        raise ValueError("nothing to compare: no model summaries given")
    ref = summaries[0].params
    for s in summaries[1:]:
        if s.params != ref:
            diffs = [k for k, v in ref.to_dict().items() if s.params.to_dict()[k] != v]
            raise ValueError(
                f"summaries use different trust parameters ({', '.join(diffs)}): "
                f"{summaries[0].model_name!r} vs {s.model_name!r}")
    for s in summaries:
        s.check()
    # stable sort keeps input order for tied scores
    ordered = sorted(summaries, key=lambda s: -s.net_trust_score)
    return ComparisonTable(tuple(ordered))

