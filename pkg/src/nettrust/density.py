"""Trust density: a boundary-corrected Gaussian KDE of trust values on [0, 1].

Each sample ``q`` contributes three Gaussian kernels of bandwidth
``h = gamma / sqrt(N)``: one at ``q`` and its mirror images ``-q`` and
``2 - q``, so kernel mass spilling past either edge of [0, 1] is folded
back in.  Only one image per edge is used; the mass that still escapes
(second-order images) is negligible once ``h`` is a few times smaller than
the unit interval, but not for a single sample at the default ``gamma``
where ``h = 0.5``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend

__all__ = [
    "DEFAULT_GRID_POINTS",
    "TrustDensity",
    "bandwidth",
    "estimate_density",
    "evaluate_density",
    "integrate_density",
]

DEFAULT_GRID_POINTS = 512


@dataclass(frozen=True)
class TrustDensity:
    scenario_label: str
    grid: np.ndarray
    values: np.ndarray
    bandwidth: float
    sample_count: int
    model_name: str = ""

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("t", "f"))
        for t, f in zip(self.grid.tolist(), self.values.tolist()):
            writer.writerow((repr(t), repr(f)))
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "model_name": self.model_name,
            "scenario_label": self.scenario_label,
            "bandwidth": self.bandwidth,
            "sample_count": self.sample_count,
            "grid": self.grid.tolist(),
            "values": self.values.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "TrustDensity":
        return cls(data["scenario_label"], np.asarray(data["grid"], dtype=float),
                   np.asarray(data["values"], dtype=float), float(data["bandwidth"]),
                   int(data["sample_count"]), data.get("model_name", ""))


def bandwidth(n: int, gamma: float) -> float:
    """Kernel bandwidth ``gamma / sqrt(n)``."""
    if n < 1:
        raise ValueError(f"bandwidth needs at least one sample, got n={n}")
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    return gamma / math.sqrt(n)


def _check_samples(samples: Sequence[float]) -> np.ndarray:
    arr = np.asarray(samples, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("cannot estimate a density from zero samples")
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        raise ValueError("trust samples must lie in [0, 1]")
    return arr


def evaluate_density(samples: Sequence[float], t, gamma: float, num_threads: int = 1) -> np.ndarray:
    """Evaluate the reflected KDE at arbitrary points ``t``."""
    arr = _check_samples(samples)
    h = bandwidth(arr.size, gamma)
    return _backend.reflected_kde(np.atleast_1d(np.asarray(t, dtype=np.float64)), arr, h,
                                  num_threads)


def estimate_density(samples: Sequence[float], gamma: float = 0.5,
                     grid_points: int = DEFAULT_GRID_POINTS, scenario_label: str = "",
                     model_name: str = "", num_threads: int = 1) -> TrustDensity:
    if grid_points < 2:
        raise ValueError(f"grid_points must be at least 2, got {grid_points}")
    arr = _check_samples(samples)
    h = bandwidth(arr.size, gamma)
    grid = np.linspace(0.0, 1.0, grid_points)
    values = _backend.reflected_kde(grid, arr, h, num_threads)
    return TrustDensity(scenario_label, grid, values, h, int(arr.size), model_name)


def integrate_density(d: TrustDensity) -> float:
    """Trapezoidal integral of the density over its grid."""
    g = np.asarray(d.grid, dtype=np.float64)
    v = np.asarray(d.values, dtype=np.float64)
    return float(np.sum((v[1:] + v[:-1]) * np.diff(g)) / 2.0)
