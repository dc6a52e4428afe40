"""Rational bases on the real line and the half-line.

Phi_k^(s)(x) = Psi_k^(s-1)(2 arctan x) and phi_k^(s) = sqrt*(w_x^(s,0)) Phi_k^(s),
plus Wiener's classical functions, the half-line rho_n^(s), and the
mapped-Jacobi families PB/pb and PL/pl.
"""
from __future__ import annotations

import math

import numpy as np

from .domain_maps import sqrt_star_x, theta_from_x
from .fourier_basis import eval_Psi_batch
from .jacobi import eval_jacobi_batch, mass


def check_s(s: float) -> None:
    if not s > 0.5:
        raise ValueError(f"decay parameter must exceed 1/2, got {s}")


def eval_Phi_batch(s: float, K: int, x) -> np.ndarray:
    """Phi_{-K}..Phi_K at ``x`` (row j is k = j - K). x = +-inf is allowed."""
    check_s(s)
    return eval_Psi_batch(s - 1, K, theta_from_x(np.asarray(x, dtype=float)))


def eval_Phi(s: float, k: int, x):
    return eval_Phi_batch(s, abs(k), x)[abs(k) + k]


def eval_phi_batch(s: float, K: int, x) -> np.ndarray:
    """phi_{-K}..phi_K; zero at x = +-inf."""
    return sqrt_star_x(s, x) * eval_Phi_batch(s, K, x)


def eval_phi(s: float, k: int, x):
    return eval_phi_batch(s, abs(k), x)[abs(k) + k]


def eval_wiener_classical(n: int, x):
    """Wiener's functions (1 - ix)^n / (sqrt(pi) (1 + ix)^(n+1))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = np.asarray(x, dtype=float)
    return (1 - 1j * x) ** n / (math.sqrt(math.pi) * (1 + 1j * x) ** (n + 1))


def _half_line_r(x):
    """r = (1 - x^2)/(1 + x^2), with r = -1 at x = inf."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("half-line functions need x >= 0")
    with np.errstate(invalid="ignore", over="ignore"):
        u = 1 / (1 + x * x)
    return 2 * u - 1, u


def eval_rho_batch(s: float, N: int, x) -> np.ndarray:
    """rho_0..rho_N at x >= 0."""
    check_s(s)
    r, u = _half_line_r(x)
    return (2 * u) ** (s / 2) * eval_jacobi_batch((-0.5, s - 1.5), N, r)


def eval_rho(s: float, n: int, x):
    return eval_rho_batch(s, n, x)[n]


def pb_weight(s: float, t: float, x):
    """w_PB^(s,t)(x): the Jacobi weight of class ((2s-3)/2, (2t-3)/2) pulled back by r = x/sqrt(1+x^2).

    Includes the Jacobian dr/dx = (1+x^2)^{-3/2}; without it PB is not
    orthonormal on the line and pb would not decay like |x|^{-s}, |x|^{-t}.
    With the increasing map, s governs x -> +inf and t governs x -> -inf.
    """
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        q = 1 / np.sqrt(1 + x * x)
        r = np.where(np.isinf(x), np.sign(x), x * q)
        # 1 -+ r computed without cancellation for large |x|
        one_minus = np.where(x > 0, q * q / (1 + r), 1 - r)
        one_plus = np.where(x < 0, q * q / (1 - r), 1 + r)
        jac = q ** 3  # dr/dx
    return one_minus ** ((2 * s - 3) / 2) * one_plus ** ((2 * t - 3) / 2) * jac


def eval_mapped_jacobi_batch(s: float, t: float, N: int, x, weighted: bool = False) -> np.ndarray:
    check_s(s)
    check_s(t)
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        r = np.where(np.isinf(x), np.sign(x), x / np.sqrt(1 + x * x))
    vals = eval_jacobi_batch(((2 * s - 3) / 2, (2 * t - 3) / 2), N, r)
    if weighted:
        vals = vals * np.sqrt(pb_weight(s, t, x))
    return vals


def eval_mapped_jacobi(s: float, t: float, n: int, x, weighted: bool = False):
    """PB_n^(s,t)(x), or pb_n^(s,t) when ``weighted``."""
    return eval_mapped_jacobi_batch(s, t, n, x, weighted)[n]


def pl_class(s: float, printed_class: bool = False) -> tuple:
    """Jacobi class behind PL_n^(s).

    The class (-1/2, 2s - 3/2) is the one for which PL is orthonormal under
    (2/(1+x))^{2s} / (2 sqrt(x)) and for which s = 1/2 gives the mapped
    Chebyshev functions TL_n. ``printed_class`` selects (-1/2, 2s - 2)
    instead, which has neither property and is kept for comparison.
    """
    return (-0.5, 2 * s - 2) if printed_class else (-0.5, 2 * s - 1.5)


def eval_semiinfinite_pl_batch(s: float, N: int, x, weighted: bool = False, printed_class: bool = False) -> np.ndarray:
    # the class (-1/2, 2s - 3/2) is admissible down to s > 1/4, which keeps TL_n = PL^(1/2) reachable
    if not s > (0.5 if printed_class else 0.25):
        raise ValueError(f"PL class not admissible for s = {s}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("half-line functions need x >= 0")
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        v = 1 / (1 + x)
    r = 2 * v - 1
    vals = eval_jacobi_batch(pl_class(s, printed_class), N, r)
    if weighted:
        vals = vals * (2 * v) ** s
    return vals


def eval_semiinfinite_pl(s: float, n: int, x, weighted: bool = False, printed_class: bool = False):
    """PL_n^(s)(x) = P~_n((1-x)/(1+x)) in the class of :func:`pl_class`; ``weighted`` adds (2/(1+x))^s."""
    return eval_semiinfinite_pl_batch(s, n, x, weighted, printed_class)[n]


def pl_constant(s: float, printed_class: bool = False) -> float:
    """PL_0^(s), the normalized constant."""
    return 1 / math.sqrt(mass(pl_class(s, printed_class)))
