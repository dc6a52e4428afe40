import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_complex, weighted_test_function
from wiener.connections import (
    Direction,
    NonIntegerShiftError,
    Psi_to_psi,
    jacobi_connect,
    lambda_P,
    lambda_Psi,
    modify_s,
    pad_fourier,
    psi_psi_connect,
)
from wiener.fourier_basis import eval_Psi_batch
from wiener.fourier_quad import analyze_function, synthesize, weighted_fourier_rule
from wiener.jacobi import TransferKind, gram_projection, transfer_coeff
from wiener.modal import BasisKind, ModalCoefficients


def gram_matrix(p, q, N):
    return np.array([[gram_projection(p, m, q, n, q) for m in range(N)] for n in range(N)])


@pytest.mark.parametrize("params, A, B", [((-0.5, -0.5), 0, 1), ((0.5, 1.5), 1, 0), ((-0.5, 2.5), 2, 3), ((1.2, 0.3), 1, 1)])
def test_lambda_P_matches_gram(params, A, B):
    L = lambda_P(params, A, B, 16)
    G = gram_matrix(params, (params[0] + A, params[1] + B), 16)
    assert np.abs(L - G).max() < 1e-11
    assert np.allclose(np.tril(L, -1), 0) and np.allclose(np.triu(L, A + B + 1), 0)


def test_single_step_example():
    c = ModalCoefficients(BasisKind.JacobiP, (-0.5, -0.5), [1, 0, 0, 0])
    out = jacobi_connect(c, 0, 1)
    assert out.entries[0] == pytest.approx(transfer_coeff((-0.5, -0.5), TransferKind.Nu0, 0))
    assert np.allclose(out.entries[1:], 0)


def test_jacobi_identity_and_round_trip(rng):
    c = ModalCoefficients(BasisKind.JacobiP, (0.2, 0.7), rng.standard_normal(12))
    assert np.allclose(jacobi_connect(c, 0, 0).entries, c.entries)
    back = jacobi_connect(jacobi_connect(c, 1, 2), 1, 2, Direction.Backward)
    assert back.param == pytest.approx((0.2, 0.7))
    assert np.abs(back.entries - c.entries).max() < 1e-12


def psi_gram(g, G, k, l, N=120):
    r = weighted_fourier_rule(g + G, N)
    a = eval_Psi_batch(g, abs(l), r.theta)[abs(l) + l]
    b = eval_Psi_batch(g + G, abs(k), r.theta)[abs(k) + k]
    return np.sum(a * np.conj(b) * r.Omega)


@pytest.mark.parametrize("g", [0.0, 0.5, 1.7])
@pytest.mark.parametrize("G", [1, 2, 3])
def test_lambda_Psi_matches_gram(g, G):
    for k in range(-4, 5):
        for l in range(-8, 9):
            assert abs(lambda_Psi(g, G, k, l) - psi_gram(g, G, k, l)) < 1e-12


def test_lambda_Psi_band_and_k0_example():
    assert lambda_Psi(1.0, 2, 3, 2) == 0 and lambda_Psi(1.0, 2, 1, 4) == 0
    assert lambda_Psi(0.0, 1, 0, 1) == pytest.approx(lambda_P((-0.5, -0.5), 0, 1, 3)[0, 1] / np.sqrt(2))


def test_printed_odd_ladder_index_disagrees():
    # using lambda^o_{|k|, |k|+m} instead of lambda^o_{|k|-1, |k|-1+m} misses the Gram value
    g, G, k, m = 0.5, 1, 2, 1
    le = lambda_P((-0.5, g - 0.5), 0, G, 8)
    lo = lambda_P((0.5, g + 0.5), 0, G, 8)
    printed = 0.5 * (le[k, k + m] + lo[k, k + m])
    assert abs(printed - psi_gram(g, G, k, k + m)) > 1e-3


@pytest.mark.parametrize("g", [0.0, 0.5, 2.3])
@pytest.mark.parametrize("G", [0, 1, 3])
def test_psi_psi_connect_quadrature(g, G, rng):
    K = 24
    c = ModalCoefficients.from_natural(BasisKind.Psi, g, random_complex(rng, 2 * K + 1))
    ref = analyze_function(lambda th: synthesize(c, th), BasisKind.Psi, g + G, K, N=4 * K + 10)
    out = psi_psi_connect(c, G)
    assert np.abs(out.entries - ref.entries).max() < 1e-9
    back = psi_psi_connect(out, G, "backward")
    assert np.abs(back.entries - c.entries).max() < 1e-11


def test_psi_psi_rejects_non_integer():
    c = ModalCoefficients.zeros(BasisKind.Psi, 0.0, 2)
    with pytest.raises(NonIntegerShiftError):
        psi_psi_connect(c, 0.5)
    with pytest.raises(ValueError):
        psi_psi_connect(c, 1, "backward")  # gamma - 1 < -1/2


def test_Psi_to_psi_identity_at_zero(rng):
    c = ModalCoefficients(BasisKind.Psi, 0, random_complex(rng, 9))
    assert np.allclose(Psi_to_psi(c).entries, c.entries)


@pytest.mark.parametrize("G", [1, 2, 3])
def test_Psi_to_psi_quadrature(G, rng):
    K = 24
    f, p = weighted_test_function(rng, G, K - G)
    fin = analyze_function(f, BasisKind.Psi, G, K, N=6 * K)
    out = Psi_to_psi(fin)
    ref = analyze_function(f, BasisKind.psi, G, K, N=6 * K)
    assert np.abs(out.entries - ref.entries).max() < 1e-9
    assert np.abs(Psi_to_psi(out, "backward").entries[: 2 * K + 1] - fin.entries).max() < 1e-11


@pytest.mark.parametrize("G", [1, 2, 3])
def test_Psi_to_psi_round_trip(G, rng):
    d = ModalCoefficients(BasisKind.psi, G, random_complex(rng, 33))
    up = Psi_to_psi(d, "backward")
    assert up.K == 16 + G
    rt = Psi_to_psi(up)
    assert np.abs(rt.entries - pad_fourier(d, rt.K).entries).max() < 1e-11


def test_recurrence_method_loses_accuracy(rng):
    d = ModalCoefficients(BasisKind.psi, 3, random_complex(rng, 33))
    up = Psi_to_psi(d, "backward")
    banded = np.abs(Psi_to_psi(up).entries - pad_fourier(d, up.K).entries).max()
    literal = np.abs(Psi_to_psi(up, method="recurrence").entries - pad_fourier(d, up.K).entries).max()
    assert banded < literal


# levels above 3 are solved less accurately (the banded system's condition
# number grows with the level), so those cases get their own tolerance
@pytest.mark.parametrize("F, G, tol", [(0, 1, 1e-9), (1, 0, 1e-9), (1, 2, 1e-9), (1, 3, 1e-9), (3, 1, 1e-9), (0, 3, 1e-9), (3, 5, 2e-8)])
def test_modify_s_quadrature(F, G, tol, rng):
    K = 24
    top = max(F, G)
    f, _ = weighted_test_function(rng, top, K - abs(F - G) - 1)
    src = analyze_function(f, BasisKind.psi, F, K, N=6 * K)
    out = modify_s(src, G)
    ref = analyze_function(f, BasisKind.psi, G, out.K, N=6 * out.K)
    assert np.abs(out.entries - ref.entries).max() < tol


@pytest.mark.parametrize("F, G, tol", [(2, 1, 1e-11), (3, 0, 1e-11), (3, 2, 1e-11), (4, 1, 1e-10)])
def test_modify_s_round_trip(F, G, tol, rng):
    d = ModalCoefficients(BasisKind.psi, F, random_complex(rng, 33))
    rt = modify_s(modify_s(d, G), F)
    assert np.abs(rt.entries - pad_fourier(d, rt.K).entries).max() < tol


def test_modify_s_identity(rng):
    d = ModalCoefficients(BasisKind.psi, 2, random_complex(rng, 9))
    assert np.abs(modify_s(d, 2).entries - d.entries).max() < 1e-12


@pytest.mark.parametrize("F, G", [(1, 2), (3, 1)])
def test_modify_s_phi(F, G, rng):
    from wiener.domain_maps import theta_from_x

    K = 20
    f_theta, _ = weighted_test_function(rng, max(F, G), K - 3)
    f = lambda x: f_theta(theta_from_x(x))
    src = analyze_function(f, BasisKind.phi, F, K, N=6 * K)
    out = modify_s(src, G)
    ref = analyze_function(f, BasisKind.phi, G, out.K, N=6 * out.K)
    assert np.abs(out.entries - ref.entries).max() < 1e-9


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 3), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_psi_psi_linearity(G, K, seed):
    rng = np.random.default_rng(seed)
    a = ModalCoefficients(BasisKind.Psi, 0.5, random_complex(rng, 2 * K + 1))
    b = ModalCoefficients(BasisKind.Psi, 0.5, random_complex(rng, 2 * K + 1))
    lhs = psi_psi_connect(a.with_entries(a.entries + 2 * b.entries), G).entries
    rhs = psi_psi_connect(a, G).entries + 2 * psi_psi_connect(b, G).entries
    assert np.allclose(lhs, rhs, atol=1e-12)
