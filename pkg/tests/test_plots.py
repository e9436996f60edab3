import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from nettrust import TrustSpectrum, estimate_density
from nettrust.plots import render_density_plot, render_spectrum_plot, scenario_order

NS = "{http://www.w3.org/2000/svg}"


def polylines(svg):
    root = ET.fromstring(svg.encode())
    out = []
    for el in root.iter(f"{NS}polyline"):
        pts = [tuple(map(float, p.split(","))) for p in el.get("points").split()]
        out.append(pts)
    return out


def local_maxima(ys):
    # plateaus count once
    dedup = [y for i, y in enumerate(ys) if i == 0 or y != ys[i - 1]]
    return sum(1 for i in range(1, len(dedup) - 1) if dedup[i] > dedup[i - 1] and dedup[i] > dedup[i + 1])


def spectra():
    a = TrustSpectrum("A", {"hammer": (0.9, 3), "screen": (0.2, 2), "teapot": (0.6, 4)})
    b = TrustSpectrum("B", {"hammer": (0.5, 3), "screen": (0.3, 2), "teapot": (0.8, 4)})
    return [a, b]


def test_spectrum_plot_structure():
    svg = render_spectrum_plot(spectra())
    lines = polylines(svg)
    assert len(lines) == 2
    assert all(len(p) <= 3 for p in lines)
    # y axis inverted in SVG: first model ascending means y descending
    ys = [y for _, y in lines[0]]
    assert ys == sorted(ys, reverse=True)


def test_scenario_ordering():
    assert scenario_order(spectra(), "by_first_model") == ["screen", "teapot", "hammer"]
    assert scenario_order(spectra(), "lexicographic") == ["hammer", "screen", "teapot"]
    extra = [TrustSpectrum("A", {"b": (0.5, 1)}), TrustSpectrum("B", {"a": (0.1, 1), "c": (0.2, 1)})]
    assert scenario_order(extra) == ["b", "a", "c"]
    with pytest.raises(ValueError):
        scenario_order(spectra(), "random")


def test_missing_scenarios_skipped():
    s = [TrustSpectrum("A", {"x": (0.5, 1), "y": (0.6, 1), "z": (0.7, 1)}),
         TrustSpectrum("B", {"x": (0.1, 1), "z": (0.2, 1)})]
    lines = polylines(render_spectrum_plot(s))
    assert [len(p) for p in lines] == [3, 2]


def test_single_point_marker():
    svg = render_spectrum_plot([TrustSpectrum("A", {"only": (0.4, 1)})])
    assert polylines(svg) == []
    assert svg.count("<circle") == 1


def test_spectrum_plot_empty():
    with pytest.raises(ValueError):
        render_spectrum_plot([])


def test_labels_escaped():
    svg = render_spectrum_plot([TrustSpectrum("<m&m>", {"a<b": (0.4, 1), "c": (0.5, 1)})])
    ET.fromstring(svg.encode())
    assert "&lt;m&amp;m&gt;" in svg


def test_density_overlay_four_models():
    rng = np.random.default_rng(3)
    ds = [estimate_density(rng.random(40), 0.5, 128, "teapot", f"net{i}") for i in range(4)]
    svg = render_density_plot(ds, strict=True)
    assert len(polylines(svg)) == 4
    for i in range(4):
        assert f">net{i}</text>" in svg


def test_density_single_curve_autoscaled():
    d = estimate_density([0.5], 0.5, 64, "water bottle")
    svg = render_density_plot([d])
    (line,) = polylines(svg)
    assert len(line) == 64
    # peak sits on the top of the plot area
    assert min(y for _, y in line) == pytest.approx(36.0)


def test_bimodal_density_has_two_peaks():
    samples = np.concatenate([np.full(60, 0.1), np.full(60, 0.85)])
    d = estimate_density(samples, 0.5, 512, "screen", "resnet")
    (line,) = polylines(render_density_plot([d]))
    # SVG y grows downward, so density peaks are minima of y
    assert local_maxima([-y for _, y in line]) == 2


def test_density_strict_mismatch():
    a = estimate_density([0.2], 0.5, 16, "screen")
    b = estimate_density([0.8], 0.5, 16, "monitor")
    with pytest.raises(ValueError, match="different scenarios"):
        render_density_plot([a, b], strict=True)
    assert len(polylines(render_density_plot([a, b]))) == 2
    with pytest.raises(ValueError):
        render_density_plot([])


def test_rendering_is_deterministic():
    ds = [estimate_density([0.1, 0.4, 0.4], 0.5, 256, "x", "m")]
    assert render_density_plot(ds) == render_density_plot(list(ds))
    assert render_spectrum_plot(spectra()) == render_spectrum_plot(spectra())
    assert not re.search(r"\d\.\d{3,}", render_spectrum_plot(spectra()))
