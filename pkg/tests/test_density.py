import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from oracles import phi, reflected_kde_at, three_image_mass
from nettrust import TrustDensity, bandwidth, estimate_density, evaluate_density, integrate_density

unit = st.floats(0.0, 1.0, allow_nan=False)


@pytest.mark.parametrize("n, gamma, expected", [(1, 0.5, 0.5), (4, 0.5, 0.25), (100, 1.0, 0.1)])
def test_bandwidth(n, gamma, expected):
    assert bandwidth(n, gamma) == pytest.approx(expected, rel=1e-15)


def test_bandwidth_rejects_zero_samples():
    with pytest.raises(ValueError):
        bandwidth(0, 0.5)


@given(st.integers(1, 10_000), st.integers(1, 10_000), st.floats(0.01, 5.0))
def test_bandwidth_shrinks(n1, n2, gamma):
    if n1 < n2:
        assert bandwidth(n1, gamma) > bandwidth(n2, gamma)


def test_single_sample_peak_value():
    # h = 0.5: kernel at distance 0 plus two images at distance 1 (u = 2)
    expected = 2.0 * (phi(0.0) + 2.0 * phi(2.0))
    assert expected == pytest.approx(1.0138484, abs=1e-7)
    assert evaluate_density([0.5], 0.5, 0.5)[0] == pytest.approx(expected, abs=1e-14)


def test_single_sample_mass_matches_quadrature():
    value, _ = integrate.quad(lambda t: evaluate_density([0.5], t, 0.5)[0], 0.0, 1.0,
                              epsabs=1e-13)
    assert value == pytest.approx(three_image_mass([0.5], 0.5), abs=1e-12)


def test_symmetric_about_centre():
    t = np.linspace(0.0, 0.5, 101)
    left = evaluate_density([0.5], 0.5 - t, 0.5)
    right = evaluate_density([0.5], 0.5 + t, 0.5)
    np.testing.assert_allclose(left, right, rtol=0, atol=1e-14)


def _argmax_t(samples, gamma):
    d = estimate_density(samples, gamma, 512)
    brute = [reflected_kde_at(samples, t, gamma) for t in d.grid]
    assert int(np.argmax(d.values)) == int(np.argmax(brute))
    return d.grid[int(np.argmax(d.values))], d.grid[1] - d.grid[0]


def test_peak_location_narrow_kernel():
    samples = [0.2, 0.2, 0.2]
    t, step = _argmax_t(samples, 0.2)  # h = 0.115
    assert abs(t - 0.2) <= step


def test_peak_moves_to_edge_for_wide_kernel():
    # h = 0.289: the image at -0.2 lifts f(0) above f(0.2)
    t, _ = _argmax_t([0.2, 0.2, 0.2], 0.5)
    assert t == 0.0


def test_grid_layout():
    d = estimate_density([0.1, 0.9], grid_points=512)
    assert d.grid[0] == 0.0 and d.grid[-1] == 1.0
    assert np.all(np.diff(d.grid) > 0)
    assert d.sample_count == 2
    assert d.bandwidth == pytest.approx(0.5 / math.sqrt(2))


def test_integrate_simple_shapes():
    grid = np.linspace(0, 1, 11)
    assert integrate_density(TrustDensity("c", grid, np.ones(11), 1.0, 1)) == pytest.approx(1.0)
    assert integrate_density(TrustDensity("z", grid, np.zeros(11), 1.0, 1)) == 0.0


@settings(max_examples=60, deadline=None)
@given(st.lists(unit, min_size=2, max_size=300))
def test_mass_conserved_from_two_samples(samples):
    assert abs(integrate_density(estimate_density(samples, 0.5, 512)) - 1.0) <= 5e-3


@settings(max_examples=40, deadline=None)
@given(st.lists(unit, min_size=1, max_size=5))
def test_mass_equals_closed_form_image_mass(samples):
    # only grid quadrature error separates the two
    mass = integrate_density(estimate_density(samples, 0.5, 4097))
    assert mass == pytest.approx(three_image_mass(samples, 0.5), abs=1e-6)


def test_single_sample_mass_shortfall_is_truncation():
    # one image per edge leaves mass beyond [-1, 2] unreflected when h = 0.5
    for q in (0.0, 0.2, 0.5):
        assert three_image_mass([q], 0.5) < 1.0
    assert three_image_mass([0.0], 0.5) == pytest.approx(0.9772, abs=1e-4)


@settings(max_examples=60, deadline=None)
@given(st.lists(unit, min_size=1, max_size=5), st.floats(0.05, 2.0))
def test_pointwise_oracle(samples, gamma):
    d = estimate_density(samples, gamma, 64)
    expected = np.array([reflected_kde_at(samples, t, gamma) for t in d.grid])
    np.testing.assert_allclose(d.values, expected, rtol=0, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.lists(unit, min_size=1, max_size=50), st.randoms())
def test_nonnegative_and_permutation_invariant(samples, rnd):
    shuffled = samples[:]
    rnd.shuffle(shuffled)
    a = estimate_density(samples, 0.5, 128).values
    b = estimate_density(shuffled, 0.5, 128).values
    assert np.all(a >= 0)
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-13)


@pytest.mark.parametrize("samples, grid_points", [([], 512), ([0.5], 1), ([1.5], 512), ([-0.1], 512)])
def test_estimate_density_errors(samples, grid_points):
    with pytest.raises(ValueError):
        estimate_density(samples, 0.5, grid_points)


def test_serialization():
    d = estimate_density([0.3, 0.7], 0.5, 16, "teapot", "resnet")
    rows = d.to_csv().splitlines()
    assert rows[0] == "t,f"
    assert len(rows) == 17
    back = TrustDensity.from_dict(json.loads(d.to_json()))
    np.testing.assert_array_equal(back.values, d.values)
    assert (back.scenario_label, back.model_name, back.sample_count) == ("teapot", "resnet", 2)
