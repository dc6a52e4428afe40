"""Szego-Fourier functions Psi_k^(gamma) and their weighted versions psi_k^(gamma).

Psi_k is built from two Jacobi ladders in r = cos(theta):

    Psi_0 = P~_0^(a,b) / sqrt(2)
    Psi_k = (P~_|k|^(a,b) + i sgn(k) sin(theta) P~_{|k|-1}^(a+1,b+1)) / 2

with a = -1/2, b = gamma - 1/2. psi_k multiplies by the phase-shifted root
of (1 + cos theta)^gamma.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain_maps import sqrt_star_theta
from .jacobi import eval_jacobi_batch, recurrence_table, transfer_coeff, TransferKind


def jacobi_classes(gamma: float):
    """(alpha, beta) of the even ladder and of the odd ladder."""
    check_gamma(gamma)
    return (-0.5, gamma - 0.5), (0.5, gamma + 0.5)


def check_gamma(gamma: float) -> None:
    if not gamma > -0.5:
        raise ValueError(f"gamma must exceed -1/2, got {gamma}")


def _theta(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(theta) > math.pi):
        raise ValueError("theta must lie in [-pi, pi]")
    return theta


def eval_Psi_batch(gamma: float, K: int, theta) -> np.ndarray:
    """Psi_{-K}..Psi_K at ``theta``; row j holds k = j - K."""
    theta = _theta(theta)
    even, odd = jacobi_classes(gamma)
    r = np.cos(theta)
    P = eval_jacobi_batch(even, K, r)
    Q = eval_jacobi_batch(odd, max(K - 1, 0), r)
    out = np.empty((2 * K + 1,) + theta.shape, dtype=complex)
    out[K] = P[0] / math.sqrt(2)
    sin = np.sin(theta)
    for k in range(1, K + 1):
        odd_part = 1j * sin * Q[k - 1]
        out[K + k] = 0.5 * (P[k] + odd_part)
        out[K - k] = 0.5 * (P[k] - odd_part)
    return out


def eval_Psi(gamma: float, k: int, theta):
    """Single Szego-Fourier function Psi_k^(gamma)(theta)."""
    K = abs(k)
    return eval_Psi_batch(gamma, K, theta)[K + k]


def eval_psi_batch(gamma: float, K: int, theta) -> np.ndarray:
    """psi_{-K}..psi_K; at theta = +-pi the analytic limit is used."""
    theta = _theta(theta)
    if gamma < 0 and np.any(np.abs(theta) >= math.pi):
        raise ValueError("psi with gamma < 0 is unbounded at theta = +-pi")
    return sqrt_star_theta(gamma, theta) * eval_Psi_batch(gamma, K, theta)


def eval_psi(gamma: float, k: int, theta):
    K = abs(k)
    return eval_psi_batch(gamma, K, theta)[K + k]


# ---------------------------------------------------------------------------
# six-term recurrences


@dataclass(frozen=True)
class CosUVW:
    U: tuple  # (U_n, U_{-n})
    V: tuple
    W: tuple


@dataclass(frozen=True)
class SinUVW:
    U: tuple
    V: tuple
    W: tuple


@dataclass(frozen=True)
class ExpABCD:
    D: float
    A: tuple  # (A_n, A_{-n})
    B: tuple
    C: tuple


FAMILIES = ("CosUVW", "SinUVW", "ExpABCD")


def _ladder_data(gamma, n):
    even, odd = jacobi_classes(gamma)
    a, b = recurrence_table(even, n + 1)
    ap, bp = recurrence_table(odd, max(n, 1))
    return a, b, ap, bp


def _cos_uvw(gamma, n):
    a, b, ap, bp = _ladder_data(gamma, n)
    r1, r2 = 1 / math.sqrt(b[n + 1]), 1 / math.sqrt(bp[n])
    U = (0.5 * (r1 + r2), 0.5 * (r1 - r2))
    v1, v2 = a[n] * r1, ap[n - 1] * r2
    V = (0.5 * (v1 + v2), 0.5 * (v1 - v2))
    if n == 1:
        # Psi_{n-1} = Psi_{-(n-1)} = Psi_0 and P~_0 = sqrt(2) Psi_0
        w = math.sqrt(2) / 4 * math.sqrt(b[1]) * r1
        return CosUVW(U, V, (w, w))
    w1, w2 = math.sqrt(b[n]) * r1, math.sqrt(bp[n - 1]) * r2
    return CosUVW(U, V, (0.5 * (w1 + w2), 0.5 * (w1 - w2)))


def _sin_constants(gamma, n):
    """Signed demotion constants (odd class, index n-1) and promotion constants (even class, index n)."""
    even, odd = jacobi_classes(gamma)
    e0 = transfer_coeff(odd, TransferKind.Eps0, n - 1)
    e1 = transfer_coeff(odd, TransferKind.Eps1, n - 1)
    # the closed form returns |eps_2|; in the demotion identity this term enters with a minus sign
    e2 = -transfer_coeff(odd, TransferKind.Eps2, n - 1)
    h0 = transfer_coeff(even, TransferKind.Eta0, n)
    h1 = transfer_coeff(even, TransferKind.EtaM1, n)
    h2 = transfer_coeff(even, TransferKind.EtaM2, n) if n >= 2 else 0.0
    return e0, e1, e2, h0, h1, h2


def _sin_uvw(gamma, n):
    e0, e1, e2, h0, h1, h2 = _sin_constants(gamma, n)
    U = (0.5 * (1 / h0 - 1 / e2), 0.5 * (1 / h0 + 1 / e2))
    V = (0.5 * (e1 / e2 + h1 / h0), 0.5 * (e1 / e2 - h1 / h0))
    if n == 1:
        w = math.sqrt(2) / 4 * e0 / e2
        return SinUVW(U, V, (w, w))
    W = (0.5 * (e0 / e2 + h2 / h0), 0.5 * (e0 / e2 - h2 / h0))
    return SinUVW(U, V, W)


def _exp_expansion(gamma, n):
    """Coefficients c_j with 2 e^{i theta} Psi_n = sum_j c_j Psi_j."""
    a, b, ap, bp = _ladder_data(gamma, n)
    sq = math.sqrt
    if n == 0:
        rho = sq(bp[0] / b[0])
        return {1: sq(2) * (sq(b[1]) + rho), -1: sq(2) * (sq(b[1]) - rho), 0: 2 * a[0]}
    e0, e1, e2, h0, h1, h2 = _sin_constants(gamma, n)
    e2 = -e2
    c = {
        n + 1: sq(b[n + 1]) + sq(bp[n]) + h0 + e2,
        -(n + 1): sq(b[n + 1]) - sq(bp[n]) - h0 + e2,
        n: a[n] + ap[n - 1] + h1 - e1,
        -n: a[n] - ap[n - 1] - h1 - e1,
    }
    if n == 1:
        c[0] = sq(2) * (sq(b[1]) - e0)
    else:
        c[n - 1] = sq(b[n]) + sq(bp[n - 1]) + h2 - e0
        c[-(n - 1)] = sq(b[n]) - sq(bp[n - 1]) - h2 - e0
    return c


def _exp_abcd(gamma, n):
    c = _exp_expansion(gamma, n)
    A = math.sqrt(n + gamma + 1) + math.sqrt(n + 1)
    if n == 0:
        A *= math.sqrt(2)
    # pick A_{-n} so that Psi_{-(n+1)} drops out
    Am = -A * c[-(n + 1)] / c[n + 1]
    D = 0.5 * (A * c[n + 1] + Am * c[-(n + 1)])
    if n == 0:
        return ExpABCD(D, (A, Am), (0.5 * A * c[0], 0.5 * Am * c[0]), (0.0, 0.0))
    B = (0.5 * (A * c[n] + Am * c[-n]), 0.5 * (A * c[-n] + Am * c[n]))
    if n == 1:
        C = (-0.5 * A * c[0], -0.5 * Am * c[0])
    else:
        C = (-0.5 * (A * c[n - 1] + Am * c[-(n - 1)]), -0.5 * (A * c[-(n - 1)] + Am * c[n - 1]))
    return ExpABCD(D, (A, Am), B, C)


def fourier_recurrence_coeffs(gamma: float, n: int, family: str = "CosUVW"):
    """Constants of one six-term recurrence at step n (producing Psi_{n+1}).

    CosUVW and SinUVW need n >= 1 (the seeds Psi_0, Psi_{+-1} come from
    synthesis); ExpABCD also covers n = 0. At n = 1 the two W (or C) entries
    both multiply Psi_0, so their sum is what matters; it is split evenly.
    """
    check_gamma(gamma)
    if family == "CosUVW":
        if n < 1:
            raise ValueError("CosUVW needs n >= 1")
        return _cos_uvw(gamma, n)
    if family == "SinUVW":
        if n < 1:
            raise ValueError("SinUVW needs n >= 1")
        return _sin_uvw(gamma, n)
    if family == "ExpABCD":
        if n < 0:
            raise ValueError("ExpABCD needs n >= 0")
        return _exp_abcd(gamma, n)
    raise ValueError(f"unknown recurrence family {family!r}")


def printed_exp_abcd(gamma: float, n: int) -> ExpABCD:
    """The D/A/B/C block exactly as tabulated in the source, for comparison only.

    It does not satisfy the recurrence (D_n is off already for gamma = 0);
    see :func:`fourier_recurrence_coeffs` for the working constants.
    Raises ValueError where the printed expressions are not real.
    """
    even, _ = jacobi_classes(gamma)
    g = gamma
    sq = math.sqrt
    try:
        if n == 0:
            D = 4 * transfer_coeff(even, TransferKind.Eps2, 0) * sq(g)
            A = (sq(2) * (sq(g + 1) + 1), sq(2) * (sq(g + 1) - 1))
            B = (2 * g * sq(2) / sq(g + 1),) * 2
            return ExpABCD(D, A, B, (0.0, 0.0))
        D = 2 * transfer_coeff(even, TransferKind.Eps2, n) * (sq(n + g) + sq(n))
        A = (sq(n + g + 1) + sq(n + 1), sq(n + g + 1) - sq(n + 1))
        e1 = transfer_coeff(even, TransferKind.Eps1, n)
        pre = -e1 / (2 * sq((n + 1) * (n + g - 1)))
        mid = 2 * sq(n * (n + g)) - 1
        B = (pre * (g * A[0] + mid * A[1]), pre * (g * A[1] + mid * A[0]))
        if n == 1:
            A0 = sq(2) * (sq(g + 1) + 1)
            c = sq((2 * g + 1) * g / (g + 2)) / (A0 * (g + 1))
        else:
            e0 = transfer_coeff(even, TransferKind.Eps0, n)
            An1 = sq(n + g) + sq(n)
            c = g * e0 / (sq((n + g - 2) * (n + g - 1)) * An1) * (sq((n + g) ** 2 - 1) - sq(n * n - 1))
        return ExpABCD(D, A, B, (c, c))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"printed ExpABCD is not real-valued at gamma = {gamma}, n = {n}") from exc


def _step(gamma, n, family, theta, cur, prev, coeffs=None):
    """Psi_{n+1} from (Psi_n, Psi_{-n}) = cur and (Psi_{n-1}, Psi_{-(n-1)}) = prev."""
    c = coeffs or fourier_recurrence_coeffs(gamma, n, family)
    pn, mn = cur
    pp, mp = prev
    if isinstance(c, CosUVW):
        x = np.cos(theta)
        return (c.U[0] * x - c.V[0]) * pn + (c.U[1] * x - c.V[1]) * mn - c.W[0] * pp - c.W[1] * mp
    if isinstance(c, SinUVW):
        x = 1j * np.sin(theta)
        return (c.U[0] * x - c.V[0]) * pn + (c.U[1] * x - c.V[1]) * mn - c.W[0] * pp - c.W[1] * mp
    e = np.exp(1j * theta)
    rhs = (c.A[0] * e - c.B[0]) * pn + (c.A[1] / e - c.B[1]) * mn + c.C[0] * pp + c.C[1] * mp
    return rhs / c.D


def eval_Psi_recurrence(gamma: float, k_max: int, theta, family: str = "CosUVW") -> np.ndarray:
    """Psi_{-k_max}..Psi_{k_max} by marching a six-term recurrence upward.

    Seeds Psi_0 and Psi_{+-1} come from direct synthesis; negative indices
    follow by conjugation.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    theta = _theta(theta)
    seed = eval_Psi_batch(gamma, 1, theta)
    out = np.empty((2 * k_max + 1,) + theta.shape, dtype=complex)
    K = k_max
    out[K - 1:K + 2] = seed
    for n in range(1, k_max):
        nxt = _step(gamma, n, family, theta, (out[K + n], out[K - n]), (out[K + n - 1], out[K - n + 1]))
        out[K + n + 1] = nxt
        out[K - n - 1] = np.conj(nxt)
    return out
