import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wiener.jacobi import (
    TransferKind,
    eval_jacobi,
    eval_jacobi_batch,
    eval_jacobi_function,
    gram_projection,
    mass,
    recurrence_coeffs,
    sl_residual,
    transfer_coeff,
    transfer_coeff_gram,
)
from wiener.jacobi_quad import gauss_rule

classes = st.tuples(st.floats(-0.9, 4), st.floats(-0.9, 4))


@pytest.mark.parametrize(
    "params, n, expected",
    [((0, 0), 0, (0.0, 2.0)), ((-0.5, -0.5), 0, (0.0, math.pi))],
)
def test_recurrence_coeffs_examples(params, n, expected):
    assert recurrence_coeffs(params, n) == pytest.approx(expected, rel=1e-14)


def test_recurrence_a1_example():
    assert recurrence_coeffs((1, 2), 1)[0] == pytest.approx(3 / 35, rel=1e-14)


def test_legendre_constant():
    assert eval_jacobi((0, 0), 0, 0.3) == pytest.approx(1 / math.sqrt(2))


def test_chebyshev_identity_for_positive_degree():
    assert eval_jacobi((-0.5, -0.5), 2, 0.5) == pytest.approx(-0.5 * math.sqrt(2 / math.pi))
    th = np.linspace(0.1, 3, 7)
    for n in range(1, 6):
        assert np.allclose(math.sqrt(math.pi / 2) * eval_jacobi((-0.5, -0.5), n, np.cos(th)), np.cos(n * th))


def test_chebyshev_identity_fails_at_degree_zero():
    # the constant needs sqrt(pi) rather than sqrt(pi/2)
    assert math.sqrt(math.pi) * eval_jacobi((-0.5, -0.5), 0, 0.2) == pytest.approx(1.0)


@settings(max_examples=25, deadline=None)
@given(classes)
def test_orthonormality(params):
    q = gauss_rule(params, 14)
    P = eval_jacobi_batch(params, 10, q.nodes)
    G = (P * q.weights) @ P.T
    assert np.abs(G - np.eye(11)).max() < 1e-11


def test_gram_schmidt_oracle():
    # orthonormalize monomials under the weight with a fine rule, compare degree 5 at r = -0.7
    params = (1.3, 0.2)
    q = gauss_rule(params, 60)
    V = np.vander(q.nodes, 6, increasing=True)
    Q, R = np.linalg.qr(V * np.sqrt(q.weights)[:, None])
    coeffs = np.linalg.solve(R, np.eye(6))[:, 5] * np.sign(R[5, 5])
    # leading coefficient of the normalized family is positive
    val = np.polyval(coeffs[::-1], -0.7)
    assert eval_jacobi(params, 5, -0.7) == pytest.approx(val, rel=1e-10)


def test_jacobi_function_vanishes_at_ends_and_example():
    assert eval_jacobi_function((1, 2), 3, 1.0) == 0
    assert eval_jacobi_function((0.5, 0.5), 0, 0.0) == pytest.approx(math.sqrt(2 / math.pi))
    r = 0.2
    assert eval_jacobi_function((0.5, 1.5), 3, r) == pytest.approx(math.sqrt(1 - r * r) * eval_jacobi((0.5, 1.5), 3, r))


@pytest.mark.parametrize("params, a, b, n, r", [((0, 0), 0, 0, 2, 0.3), ((-0.5, 0.5), 0.5, 0.5, 1, -0.4), ((1.2, 0.4), 0.6, 0.2, 4, 0.1)])
def test_sturm_liouville_residual(params, a, b, n, r):
    assert abs(sl_residual(params, a, b, n, r)) < 1e-10


def test_transfer_examples():
    assert transfer_coeff((0.3, 0.7), TransferKind.GammaDiff, 0) == 0
    assert transfer_coeff((1, 0), TransferKind.Mu0, 1) == pytest.approx(math.sqrt(2 / 3))
    assert transfer_coeff((1.5, 1.5), TransferKind.Eps1, 3) == 0


def test_mu_identity_pointwise():
    r = np.linspace(-0.95, 0.95, 50)
    for n in range(5):
        lhs = (1 - r) * eval_jacobi((1, 0), n, r)
        rhs = transfer_coeff((1, 0), TransferKind.Mu0, n) * eval_jacobi((0, 0), n, r) - transfer_coeff(
            (1, 0), TransferKind.Mu1, n
        ) * eval_jacobi((0, 0), n + 1, r)
        assert np.allclose(lhs, rhs, atol=1e-13)


@pytest.mark.parametrize("params", [(0.5, 1.5), (1.0, 2.5), (0.2, 0.9)])
@pytest.mark.parametrize("n", [1, 2, 5])
def test_demotion_expansion(params, n):
    # (1 - r^2) P~_n = eps0 P~_n + eps1 P~_{n+1} - eps2 P~_{n+2} in class (a-1, b-1)
    a, b = params
    low = (a - 1, b - 1)
    r = np.linspace(-0.9, 0.9, 9)
    lhs = (1 - r * r) * eval_jacobi(params, n, r)
    e = [transfer_coeff(params, k, n) for k in (TransferKind.Eps0, TransferKind.Eps1, TransferKind.Eps2)]
    rhs = e[0] * eval_jacobi(low, n, r) + e[1] * eval_jacobi(low, n + 1, r) - e[2] * eval_jacobi(low, n + 2, r)
    assert np.allclose(lhs, rhs, atol=1e-12)


@pytest.mark.parametrize("kind", [TransferKind.Eta0, TransferKind.EtaM1, TransferKind.EtaM2, TransferKind.Eps0, TransferKind.Eps2])
def test_gram_fallback_matches_closed_form(kind):
    assert transfer_coeff_gram((0.5, 1.5), kind, 3) == pytest.approx(transfer_coeff((0.5, 1.5), kind, 3), rel=1e-12)


def test_nu0_finite_on_chebyshev_class():
    # a + b = -1: the n = 0 ratio is sqrt(mass(a, b+1) / mass(a, b))
    val = transfer_coeff((-0.5, -0.5), TransferKind.Nu0, 0)
    assert val == pytest.approx(math.sqrt(mass((-0.5, 0.5)) / mass((-0.5, -0.5))))
    assert val == pytest.approx(gram_projection((-0.5, -0.5), 0, (-0.5, 0.5), 0, (-0.5, 0.5)))


def test_not_real_branch_raises():
    with pytest.raises(ValueError, match="not real"):
        transfer_coeff((-0.5, -0.5), TransferKind.Eps0, 1)
