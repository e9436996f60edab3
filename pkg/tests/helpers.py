"""Record builders shared by the test modules."""
import random

from nettrust import PredictionRecord, RecordSet


def make_records(rows, model_name="model"):
    return RecordSet(model_name, tuple(PredictionRecord(*r) for r in rows))


def random_rows(rng: random.Random, n, vocab, p_correct=None):
    labels = [f"class{k}" for k in range(vocab)]
    p = rng.random() if p_correct is None else p_correct
    rows = []
    for i in range(n):
        oracle = rng.choice(labels)
        predicted = oracle if rng.random() < p else rng.choice(labels)
        c = rng.choice([0.0, 1.0, rng.random()]) if rng.random() < 0.1 else rng.random()
        rows.append((f"q{i}", predicted, oracle, c))
    return rows
