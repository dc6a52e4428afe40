import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wiener.fourier_basis import eval_Psi, eval_psi, eval_psi_batch
from wiener.fourier_quad import (
    analyze,
    analyze_function,
    default_rule,
    fourier_theta_rule,
    map_rule_to_x,
    synthesize,
    weighted_fourier_rule,
)
from wiener.modal import BasisKind, ModalCoefficients, canonical_indices, canonical_to_natural, natural_to_canonical
from wiener.wiener_basis import eval_phi


def moment(g, k):
    """Closed form of the integral of e^{ik theta} (1 + cos theta)^g over [-pi, pi], integer g."""
    return 2 * math.pi * math.comb(2 * g, g + k) / 2 ** g if abs(k) <= g else 0.0


def rule_moment(rule, k):
    return np.sum(rule.Omega * np.exp(1j * k * rule.theta))


def test_equispaced_case():
    r = fourier_theta_rule(0, 4)
    assert r.theta == pytest.approx([-3 * math.pi / 4, -math.pi / 4, math.pi / 4, 3 * math.pi / 4])
    assert r.Omega == pytest.approx([math.pi / 2] * 4)
    assert np.tan(r.theta / 2) == pytest.approx(map_rule_to_x(r).nodes)


def test_odd_rule_has_middle_node_zero():
    r = fourier_theta_rule(1.5, 9)
    assert r.theta[4] == 0.0
    assert np.allclose(r.theta, -r.theta[::-1])


def test_gamma2_seven_points_moments():
    r = fourier_theta_rule(2, 7)
    assert [moment(2, k) / (2 * math.pi) for k in range(3)] == pytest.approx([1.5, 1.0, 0.25])
    for k in range(-6, 7):
        assert abs(rule_moment(r, k) - moment(2, k)) < 1e-12


@pytest.mark.parametrize("g", [0, 1, 2, 3])
@pytest.mark.parametrize("N", [6, 7, 10, 11])
def test_exact_up_to_N_minus_1_and_sharp(g, N):
    r = fourier_theta_rule(g, N)
    for k in range(0, N):
        assert abs(rule_moment(r, k) - moment(g, k)) < 1e-11
    assert abs(rule_moment(r, N) - moment(g, N)) > 1e-6


def test_weight_sum():
    assert np.sum(fourier_theta_rule(1, 6).Omega) == pytest.approx(2 * math.pi, abs=1e-12)


def test_gamma0_weights_coincide():
    r = weighted_fourier_rule(0, 9)
    assert np.allclose(r.omega, r.Omega)


@pytest.mark.parametrize("g", [0.0, 1.0, 2.5])
def test_weighted_rule_gram(g):
    N = 17
    r = weighted_fourier_rule(g, N)
    B = eval_psi_batch(g, 4, r.theta)  # |k| + |l| <= 8 <= N - 1
    G = (B * r.omega) @ B.conj().T
    assert np.abs(G - np.eye(9)).max() < 1e-12


def test_storage_order():
    assert list(canonical_indices(7)) == [0, 1, -1, 2, -2, 3, -3]
    v = np.arange(-3, 4)
    assert np.array_equal(canonical_to_natural(natural_to_canonical(v)), v)


def test_analyze_unit_vectors():
    c = analyze_function(lambda th: eval_psi(1.5, 2, th), BasisKind.psi, 1.5, 5)
    assert abs(c.get(2) - 1) < 1e-12
    assert np.abs(np.delete(c.entries, 3)).max() < 1e-12
    c = analyze_function(lambda th: np.exp(1j * th) / math.sqrt(2 * math.pi), BasisKind.psi, 0.0, 4)
    assert abs(c.get(1) - 1) < 1e-13


def test_synthesize_examples():
    c = ModalCoefficients.zeros(BasisKind.Psi, 0.0, 3)
    assert np.all(synthesize(c, np.linspace(-1, 1, 5)) == 0)
    c = ModalCoefficients(BasisKind.Psi, 0.0, [1, 0, 0])
    assert synthesize(c, np.array([0.3])) == pytest.approx(1 / math.sqrt(2 * math.pi))


@pytest.mark.parametrize("kind, param", [(BasisKind.Psi, 1.0), (BasisKind.psi, 2.0), (BasisKind.Phi, 2.0), (BasisKind.phi, 2.0)])
def test_analyze_synthesize_round_trip(kind, param, rng):
    K = 16
    c = ModalCoefficients(kind, param, rng.standard_normal(2 * K + 1) + 1j * rng.standard_normal(2 * K + 1))
    nodes, weights = default_rule(kind, param, K)
    back = analyze(synthesize(c, nodes), kind, param, K, nodes, weights)
    assert np.abs(back.entries - c.entries).max() < 1e-10


def test_sech_round_trip_phi2():
    K, s = 16, 2.0
    c = analyze_function(lambda x: 1 / np.cosh(x), BasisKind.phi, s, K)
    nodes, weights = default_rule(BasisKind.phi, s, K)
    again = analyze(synthesize(c, nodes), BasisKind.phi, s, K, nodes, weights)
    assert np.abs(again.entries - c.entries).max() < 1e-10


@pytest.mark.parametrize("kind, param", [(BasisKind.rho, 2.0), (BasisKind.pl, 1.5), (BasisKind.pb, (2.0, 1.5)), (BasisKind.JacobiP, (0.5, -0.5))])
def test_polynomial_kind_round_trip(kind, param, rng):
    N = 10
    c = ModalCoefficients(kind, param, rng.standard_normal(N))
    nodes, weights = default_rule(kind, param, N)
    back = analyze(synthesize(c, nodes), kind, param, N, nodes, weights)
    assert np.abs(back.entries - c.entries).max() < 1e-10


def test_undersized_rule_rejected():
    nodes, weights = default_rule(BasisKind.Psi, 0.0, 3)
    with pytest.raises(ValueError):
        analyze(np.ones_like(nodes), BasisKind.Psi, 0.0, 5, nodes, weights)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.6, 4.0), st.integers(-5, 5))
def test_phi_projection_is_unit(s, k):
    c = analyze_function(lambda x: eval_phi(s, k, x), BasisKind.phi, s, 6)
    assert abs(c.get(k) - 1) < 1e-10
