"""Static SVG charts for trust spectra and trust densities.

Documents are built as plain strings with fixed-precision coordinates, so
the same inputs always give byte-identical files.  No plotting library or
display server is involved.
"""
from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .density import TrustDensity
from .spectrum import TrustSpectrum

__all__ = ["render_density_plot", "render_spectrum_plot", "scenario_order"]

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
           "#7f7f7f", "#bcbd22", "#17becf")
WIDTH, HEIGHT = 760, 440
LEFT, RIGHT, TOP, BOTTOM = 64, 170, 36, 96
MAX_TICK_LABELS = 60


def _num(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Canvas:
    def __init__(self, title: str):
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" '
            'font-size="11">',
            f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
            f'<text x="{WIDTH / 2:.0f}" y="20" text-anchor="middle" font-size="14">'
            f'{escape(title)}</text>',
        ]
        self.x0, self.x1 = LEFT, WIDTH - RIGHT
        self.y0, self.y1 = HEIGHT - BOTTOM, TOP

    def sx(self, frac: float) -> float:
        return self.x0 + frac * (self.x1 - self.x0)

    def sy(self, frac: float) -> float:
        return self.y0 - frac * (self.y0 - self.y1)

    def add(self, element: str) -> None:
        self.parts.append(element)

    def axes(self, y_max: float, y_label: str, x_label: str) -> None:
        self.add(f'<g stroke="#000000" stroke-width="1" fill="none">'
                 f'<line x1="{self.x0}" y1="{self.y0}" x2="{self.x1}" y2="{self.y0}"/>'
                 f'<line x1="{self.x0}" y1="{self.y0}" x2="{self.x0}" y2="{self.y1}"/></g>')
        for k in range(6):
            frac = k / 5
            y = self.sy(frac)
            self.add(f'<line x1="{self.x0 - 4}" y1="{_num(y)}" x2="{self.x0}" y2="{_num(y)}" '
                     'stroke="#000000"/>')
            self.add(f'<line x1="{self.x0}" y1="{_num(y)}" x2="{self.x1}" y2="{_num(y)}" '
                     'stroke="#dddddd"/>')
            self.add(f'<text x="{self.x0 - 7}" y="{_num(y + 4)}" text-anchor="end">'
                     f'{y_max * frac:.3g}</text>')
        mid_y = (self.y0 + self.y1) / 2
        self.add(f'<text x="16" y="{_num(mid_y)}" text-anchor="middle" '
                 f'transform="rotate(-90 16 {_num(mid_y)})">{escape(y_label)}</text>')
        self.add(f'<text x="{_num((self.x0 + self.x1) / 2)}" y="{HEIGHT - 8}" '
                 f'text-anchor="middle">{escape(x_label)}</text>')

    def legend(self, entries: Sequence[tuple[str, str]]) -> None:
        x = self.x1 + 16
        for i, (label, color) in enumerate(entries):
            y = self.y1 + 10 + 18 * i
            self.add(f'<line x1="{x}" y1="{y}" x2="{x + 20}" y2="{y}" stroke="{color}" '
                     'stroke-width="2"/>')
            self.add(f'<text x="{x + 26}" y="{y + 4}">{escape(label)}</text>')

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _color(i: int) -> str:
    return PALETTE[i % len(PALETTE)]


def scenario_order(spectra: Sequence[TrustSpectrum], ordering: str = "by_first_model") -> list[str]:
    """Scenario labels along the x axis.

    ``by_first_model`` sorts the first model's scenarios by ascending
    coefficient and appends scenarios only other models have, in
    lexicographic order.
    """
    union = sorted({label for s in spectra for label in s.coefficients})
    if ordering == "lexicographic":
        return union
    if ordering != "by_first_model":
        raise ValueError(f"unknown scenario ordering {ordering!r}")
    first = spectra[0].coefficients
    head = sorted(first, key=lambda label: (first[label][0], label))
    return head + [label for label in union if label not in first]


def render_spectrum_plot(spectra: Sequence[TrustSpectrum], ordering: str = "by_first_model",
                         title: str = "Trust spectrum") -> str:
    if not spectra:
        raise ValueError("no trust spectra to plot")
    labels = scenario_order(spectra, ordering)
    slot = {label: i for i, label in enumerate(labels)}
    n = len(labels)

    def xfrac(label):
        return 0.5 if n == 1 else slot[label] / (n - 1)

    c = _Canvas(title)
    c.axes(1.0, "trust spectrum coefficient", "answer scenario")
    if n <= MAX_TICK_LABELS:
        for label in labels:
            x = _num(c.sx(xfrac(label)))
            y = _num(c.y0 + 10)
            c.add(f'<text x="{x}" y="{y}" text-anchor="end" '
                  f'transform="rotate(-45 {x} {y})">{escape(label)}</text>')
    legend = []
    for i, s in enumerate(spectra):
        color = _color(i)
        pts = [(c.sx(xfrac(label)), c.sy(s.coefficients[label][0]))
               for label in labels if label in s.coefficients]
        name = s.model_name or f"model {i + 1}"
        if len(pts) == 1:
            x, y = pts[0]
            c.add(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="3.5" fill="{color}">'
                  f'<title>{escape(name)}</title></circle>')
        elif pts:
            coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
            c.add(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                  f'points="{coords}"><title>{escape(name)}</title></polyline>')
        legend.append((name, color))
    c.legend(legend)
    return c.render()


def render_density_plot(densities: Sequence[TrustDensity], strict: bool = False,
                        title: str | None = None) -> str:
    """Overlay trust densities on one set of axes.

    With ``strict`` the densities must all describe the same scenario.
    """
    if not densities:
        raise ValueError("no trust densities to plot")
    scenarios = sorted({d.scenario_label for d in densities})
    if strict and len(scenarios) > 1:
        raise ValueError(f"densities describe different scenarios: {', '.join(scenarios)}")
    for d in densities:
        g = np.asarray(d.grid)
        if g.size < 2 or g[0] != 0.0 or g[-1] != 1.0:
            raise ValueError("density grids must span [0, 1]")
    y_max = max(float(np.max(d.values)) for d in densities)
    if y_max <= 0.0:
        y_max = 1.0
    if title is None:
        title = f"Trust density: {scenarios[0]}" if len(scenarios) == 1 else "Trust density"

    c = _Canvas(title)
    c.axes(y_max, "density", "question-answer trust")
    for k in range(6):
        x = c.sx(k / 5)
        c.add(f'<text x="{_num(x)}" y="{c.y0 + 16}" text-anchor="middle">{k / 5:.1f}</text>')
    legend = []
    for i, d in enumerate(densities):
        color = _color(i)
        grid, values = np.asarray(d.grid), np.asarray(d.values)
        coords = " ".join(f"{_num(c.sx(t))},{_num(c.sy(v / y_max))}"
                          for t, v in zip(grid.tolist(), values.tolist()))
        if len(scenarios) == 1:
            name = d.model_name or d.scenario_label or f"density {i + 1}"
        else:
            name = f"{d.model_name}: {d.scenario_label}" if d.model_name else d.scenario_label
        c.add(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}">'
              f'<title>{escape(name)}</title></polyline>')
        legend.append((name, color))
    c.legend(legend)
    return c.render()
