"""Prediction-record ingestion.

A prediction dump holds one row per question: the question id, the label
the model answered, the label the oracle (ground truth) gives, and the
model's confidence in its own answer.  Two encodings are accepted:

JSONL
    One object per line with string keys ``question_id``,
    ``predicted_label``, ``oracle_label`` and exactly one of
    ``confidence`` (number) or ``probabilities`` (array of numbers).

CSV
    Header ``question_id,predicted_label,oracle_label,confidence``,
    RFC-4180 quoting.

Run manifests for multi-model comparison are JSON arrays of
``{"model_name": ..., "path": ...}`` objects.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Iterable, Sequence

__all__ = [
    "CSV_COLUMNS",
    "PredictionRecord",
    "RecordError",
    "RecordSet",
    "derive_confidence",
    "load_records",
    "load_run_manifest",
    "parse_records",
    "serialize_records",
]

CSV_COLUMNS = ("question_id", "predicted_label", "oracle_label", "confidence")
PROBABILITY_SUM_TOL = 1e-6


class RecordError(ValueError):
    """Invalid prediction data.

    ``line`` is the 1-based physical line of the offending row (the CSV
    header is line 1) and ``field`` the offending key, when known.
    """

    def __init__(self, message: str, *, line: int | None = None, field: str | None = None,
                 source: str | None = None):
        self.message = message
        self.line = line
        self.field = field
        self.source = source
        parts = []
        if source:
            parts.append(str(source))
        if line is not None:
            parts.append(f"line {line}")
        if field is not None:
            parts.append(f"field '{field}'")
        prefix = ", ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)


@dataclass(frozen=True)
class PredictionRecord:
    question_id: str
    predicted_label: str
    oracle_label: str
    confidence: float

    def __post_init__(self):
        if not self.predicted_label:
            raise RecordError("predicted_label must be non-empty", field="predicted_label")
        if not self.oracle_label:
            raise RecordError("oracle_label must be non-empty", field="oracle_label")
        c = self.confidence
        if not (math.isfinite(c) and 0.0 <= c <= 1.0):
            raise RecordError(f"confidence {c!r} outside [0, 1]", field="confidence")

    @property
    def correct(self) -> bool:
        return self.predicted_label == self.oracle_label


@dataclass(frozen=True)
class RecordSet:
    """Ordered, immutable collection of records for one model run."""

    model_name: str
    records: tuple[PredictionRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        seen = set()
        for i, r in enumerate(self.records):
            if r.question_id in seen:
                raise RecordError(f"duplicate question_id {r.question_id!r} (record {i + 1})",
                                  field="question_id")
            seen.add(r.question_id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def derive_confidence(probabilities: Sequence[float]) -> tuple[int, float]:
    """Return ``(argmax, max)`` of a probability vector.

    Ties go to the lowest index.  The vector must be non-empty, have entries
    in [0, 1] and sum to one within 1e-6.
    """
    probs = list(probabilities)
    if not probs:
        raise ValueError("probability vector is empty")
    for i, p in enumerate(probs):
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            raise ValueError(f"probability entry {i} is not a number: {p!r}")
        if not math.isfinite(p):
            raise ValueError(f"probability entry {i} is not finite")
    for i, p in enumerate(probs):
        if p < 0.0:
            raise ValueError(f"probability entry {i} is negative ({p!r})")
    for i, p in enumerate(probs):
        if p > 1.0:
            raise ValueError(f"probability entry {i} exceeds 1 ({p!r})")
    total = math.fsum(probs)
    if abs(total - 1.0) > PROBABILITY_SUM_TOL:
        raise ValueError(f"probabilities sum to {total!r}, expected 1 within {PROBABILITY_SUM_TOL}")
    best = 0
    for i in range(1, len(probs)):
        if probs[i] > probs[best]:
            best = i
    return best, float(probs[best])


def _require_label(obj: dict, key: str, line: int) -> str:
    if key not in obj:
        raise RecordError("missing required field", line=line, field=key)
    value = obj[key]
    if not isinstance(value, str):
        raise RecordError(f"expected a string, got {type(value).__name__}", line=line, field=key)
    if key != "question_id" and not value:
        raise RecordError("must be non-empty", line=line, field=key)
    return value


def _check_confidence(value: float, line: int) -> float:
    if not math.isfinite(value):
        raise RecordError(f"confidence {value!r} is not finite", line=line, field="confidence")
    if not 0.0 <= value <= 1.0:
        raise RecordError(f"confidence {value!r} outside [0, 1]", line=line, field="confidence")
    return value


def _jsonl_rows(text: str) -> Iterable[tuple[int, PredictionRecord]]:
    # split on "\n" only: JSON strings may legally hold U+2028 and friends
    for line_no, raw in enumerate(text.split("\n"), start=1):
        raw = raw.rstrip("\r")
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise RecordError(f"malformed JSON ({exc.msg})", line=line_no) from None
        if not isinstance(obj, dict):
            raise RecordError("expected a JSON object", line=line_no)
        qid = _require_label(obj, "question_id", line_no)
        predicted = _require_label(obj, "predicted_label", line_no)
        oracle = _require_label(obj, "oracle_label", line_no)
        has_conf, has_probs = "confidence" in obj, "probabilities" in obj
        if has_conf and has_probs:
            raise RecordError("give exactly one of 'confidence' or 'probabilities', not both",
                              line=line_no, field="confidence")
        if has_conf:
            conf = obj["confidence"]
            if isinstance(conf, bool) or not isinstance(conf, (int, float)):
                raise RecordError(f"expected a number, got {conf!r}", line=line_no,
                                  field="confidence")
            conf = _check_confidence(float(conf), line_no)
        elif has_probs:
            probs = obj["probabilities"]
            if not isinstance(probs, list):
                raise RecordError("expected an array of numbers", line=line_no,
                                  field="probabilities")
            try:
                _, conf = derive_confidence(probs)
            except ValueError as exc:
                raise RecordError(str(exc), line=line_no, field="probabilities") from None
        else:
            raise RecordError("missing required field (or 'probabilities')", line=line_no,
                              field="confidence")
        yield line_no, PredictionRecord(qid, predicted, oracle, conf)


def _csv_rows(text: str):
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        header = next(reader)
    except StopIteration:
        raise RecordError("empty CSV input, header row expected", line=1) from None
    except csv.Error as exc:
        raise RecordError(f"malformed CSV ({exc})", line=1) from None
    for col in CSV_COLUMNS:
        if col not in header:
            raise RecordError("missing required column in header", line=1, field=col)
    if len(set(header)) != len(header):
        raise RecordError("duplicate column in header", line=1)
    index = {col: header.index(col) for col in CSV_COLUMNS}
    while True:
        try:
            row = next(reader)
        except StopIteration:
            return
        except csv.Error as exc:
            raise RecordError(f"malformed CSV ({exc})", line=reader.line_num) from None
        line_no = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(header):
            raise RecordError(f"expected {len(header)} columns, found {len(row)}", line=line_no)
        for col in ("predicted_label", "oracle_label"):
            if not row[index[col]]:
                raise RecordError("must be non-empty", line=line_no, field=col)
        raw_conf = row[index["confidence"]].strip()
        try:
            conf = float(raw_conf)
        except ValueError:
            raise RecordError(f"not a number: {raw_conf!r}", line=line_no,
                              field="confidence") from None
        conf = _check_confidence(conf, line_no)
        yield line_no, PredictionRecord(row[index["question_id"]], row[index["predicted_label"]],
                                        row[index["oracle_label"]], conf)


def parse_records(source: BinaryIO | bytes | str, format: str, model_name: str = "model",
                  source_name: str | None = None) -> RecordSet:
    """Parse a CSV or JSONL prediction dump into a :class:`RecordSet`.

    ``source`` may be a binary stream, raw bytes, or already-decoded text.
    The first offending row raises :class:`RecordError` carrying its line
    number and field.
    """
    if format not in ("csv", "jsonl"):
        raise ValueError(f"unknown record format {format!r} (expected 'csv' or 'jsonl')")
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            text = source.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise RecordError(f"input is not valid UTF-8 (byte offset {exc.start})",
                              line=source.count(b"\n", 0, exc.start) + 1,
                              source=source_name) from None
    else:
        text = source

    rows = _jsonl_rows(text) if format == "jsonl" else _csv_rows(text)
    records = []
    first_seen: dict[str, int] = {}
    try:
        for line_no, rec in rows:
            if rec.question_id in first_seen:
                raise RecordError(
                    f"duplicate question_id {rec.question_id!r} (first seen on line "
                    f"{first_seen[rec.question_id]})", line=line_no, field="question_id")
            first_seen[rec.question_id] = line_no
            records.append(rec)
    except RecordError as exc:
        if source_name and exc.source is None:
            raise RecordError(exc.message, line=exc.line, field=exc.field,
                              source=source_name) from None
        raise
    if not records:
        raise RecordError("no prediction records found", source=source_name)
    return RecordSet(model_name, tuple(records))


def serialize_records(rs: RecordSet, format: str) -> bytes:
    """Encode a record set so that :func:`parse_records` gives it back unchanged."""
    if format == "jsonl":
        lines = [
            json.dumps({"question_id": r.question_id, "predicted_label": r.predicted_label,
                        "oracle_label": r.oracle_label, "confidence": r.confidence},
                       ensure_ascii=False)
            for r in rs.records
        ]
        return ("\n".join(lines) + "\n").encode("utf-8")
    if format == "csv":
        buf = io.StringIO(newline="")
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(CSV_COLUMNS)
        for r in rs.records:
            writer.writerow([r.question_id, r.predicted_label, r.oracle_label, repr(r.confidence)])
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown record format {format!r}")


def infer_format(path: str | os.PathLike) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".jsonl", ".ndjson"):
        return "jsonl"
    if suffix == ".csv":
        return "csv"
    raise ValueError(f"cannot infer record format from {str(path)!r}; pass --format")


def load_records(path: str | os.PathLike, format: str | None = None,
                 model_name: str | None = None) -> RecordSet:
    path = Path(path)
    fmt = format or infer_format(path)
    with open(path, "rb") as fh:
        return parse_records(fh, fmt, model_name=model_name or path.stem, source_name=str(path))


def load_run_manifest(path: str | os.PathLike) -> list[tuple[str, Path]]:
    """Read a run manifest into ``[(model_name, records_path), ...]``.

    Relative record paths resolve against the manifest's directory.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"manifest not found: {path}")
    try:
        entries = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise RecordError(f"malformed manifest JSON ({exc.msg})", line=exc.lineno,
                          source=str(path)) from None
    if not isinstance(entries, list):
        raise RecordError("manifest must be a JSON array of runs", source=str(path))
    if not entries:
        raise RecordError("no runs declared", source=str(path))
    runs = []
    names = set()
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise RecordError(f"run {i} is not an object", source=str(path))
        for key in ("model_name", "path"):
            if not isinstance(entry.get(key), str) or not entry[key]:
                raise RecordError(f"run {i} needs a non-empty string", field=key, source=str(path))
        name = entry["model_name"]
        if name in names:
            raise RecordError(f"duplicate model_name {name!r}", field="model_name",
                              source=str(path))
        names.add(name)
        run_path = Path(entry["path"])
        if not run_path.is_absolute():
            run_path = path.parent / run_path
        runs.append((name, run_path))
    return runs
