import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wiener.domain_maps import (
    Chart,
    DomainPoint,
    map_point,
    sqrt_star,
    sqrt_star_theta,
    sqrt_star_x,
    weight,
    weight_theta,
    weight_x,
)


@pytest.mark.parametrize(
    "src, value, target, expected",
    [
        (Chart.X, 1.0, Chart.Theta, math.pi / 2),
        (Chart.Theta, 0.0, Chart.R, 1.0),
        (Chart.R, 0.0, Chart.X, 1.0),
        (Chart.Theta, math.pi, Chart.X, math.inf),
        (Chart.Theta, -math.pi, Chart.X, -math.inf),
    ],
)
def test_map_point_examples(src, value, target, expected):
    assert map_point(DomainPoint(src, value), target).value == pytest.approx(expected)


def test_domain_point_rejects_out_of_range():
    with pytest.raises(ValueError):
        DomainPoint(Chart.Theta, 4.0)
    with pytest.raises(ValueError):
        DomainPoint(Chart.R, 1.5)


@settings(max_examples=60, deadline=None)
@given(st.floats(-50, 50), st.sampled_from([Chart.Theta, Chart.Z]))
def test_round_trip_x(x, other):
    back = map_point(map_point(DomainPoint(Chart.X, x), other), Chart.X).value
    assert back == pytest.approx(x, rel=1e-13, abs=1e-13)


@settings(max_examples=60, deadline=None)
@given(st.floats(-3.1, 3.1))
def test_round_trip_theta_through_z(theta):
    back = map_point(map_point(DomainPoint(Chart.Theta, theta), Chart.Z), Chart.Theta).value
    assert abs(back - theta) < 1e-14


@pytest.mark.parametrize(
    "chart, params, p, expected",
    [
        (Chart.X, (1, 0), 0.0, 2.0),
        (Chart.Theta, (2, 0), math.pi, 0.0),
        (Chart.R, (-0.5, -0.5), 0.0, 1.0),
    ],
)
def test_weight_examples(chart, params, p, expected):
    assert weight(chart, params, p) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "chart, params, p, expected",
    [
        (Chart.X, (1, 0), 0.0, 1j * math.sqrt(2)),
        (Chart.Theta, (0, 0), 0.4, 1.0),
        (Chart.X, (2, 0), 1.0, 1j),
    ],
)
def test_sqrt_star_examples(chart, params, p, expected):
    assert sqrt_star(chart, params, p) == pytest.approx(expected)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.55, 6), st.floats(0, 3), st.floats(-20, 20))
def test_sqrt_star_modulus_is_root_of_weight(s, t, x):
    t = min(t, s)
    assert abs(sqrt_star_x((s, t), x)) ** 2 == pytest.approx(weight_x((s, t), x), rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 5), st.floats(-3.1, 3.1))
def test_theta_and_x_forms_agree(s, theta):
    # convenient form: sqrt*(w_x^(s,0)) = [i (1 + e^{-i theta}) / sqrt 2]^s
    x = math.tan(theta / 2)
    conv = (1j * (1 + np.exp(-1j * theta)) / math.sqrt(2)) ** s
    assert sqrt_star_x(s, x) == pytest.approx(conv, rel=1e-11, abs=1e-13)
    assert abs(sqrt_star_theta(s, theta)) ** 2 == pytest.approx(weight_theta(s, theta), rel=1e-11, abs=1e-14)


def test_weighted_limits_at_infinity():
    assert sqrt_star_x(2.0, np.inf) == 0
    assert weight_x(1.5, -np.inf) == 0
