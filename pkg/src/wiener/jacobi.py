"""Orthonormal Jacobi polynomials and their connection/transfer constants.

Everything here works with the L2-normalized family ``P~_n^(a,b)`` on
``[-1, 1]`` under ``(1-r)^a (1+r)^b``. Unnormalized polynomials are never
formed.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise ValueError(f"Jacobi class needs alpha, beta > -1, got ({self.alpha}, {self.beta})")

    def shifted(self, da: float = 0, db: float = 0) -> "JacobiParams":
        return JacobiParams(self.alpha + da, self.beta + db)


def _params(p) -> JacobiParams:
    if isinstance(p, JacobiParams):
        return p
    return JacobiParams(*p)


class TransferKind(enum.Enum):
    Mu0 = "mu0"
    Mu1 = "mu1"
    Nu0 = "nu0"
    NuM1 = "nu-1"
    GammaDiff = "gamma"
    Eps0 = "eps0"
    Eps1 = "eps1"
    Eps2 = "eps2"
    Eta0 = "eta0"
    EtaM1 = "eta-1"
    EtaM2 = "eta-2"
    A3term = "a"
    B3term = "b"


def weight(params, r):
    """w_r^(a,b)(r) = (1-r)^a (1+r)^b."""
    p = _params(params)
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore"):
        return (1 - r) ** p.alpha * (1 + r) ** p.beta


def mass(params) -> float:
    """Integral of the weight over [-1, 1] (the zeroth recurrence coefficient b_0)."""
    a, b = _params(params).alpha, _params(params).beta
    return math.exp((a + b + 1) * math.log(2) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2))


def recurrence_coeffs(params, n: int) -> tuple[float, float]:
    """Three-term recurrence pair (a_n, b_n) of the orthonormal family."""
    p = _params(params)
    a, b = p.alpha, p.beta
    if n < 0:
        raise ValueError("n must be nonnegative")
    s = a + b
    if n == 0:
        an = (b - a) / (s + 2)
        bn = mass(p)
    else:
        an = (b * b - a * a) / ((2 * n + s) * (2 * n + s + 2))
        if n == 1:
            bn = 4 * (a + 1) * (b + 1) / ((s + 2) ** 2 * (s + 3))
        else:
            bn = 4 * n * (n + a) * (n + b) * (n + s) / ((2 * n + s - 1) * (2 * n + s) ** 2 * (2 * n + s + 1))
    return float(an), float(bn)


def recurrence_table(params, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays a[0..n_max], b[0..n_max]."""
    ab = [recurrence_coeffs(params, n) for n in range(n_max + 1)]
    return np.array([x[0] for x in ab]), np.array([x[1] for x in ab])


def eval_jacobi_batch(params, n_max: int, r):
    """Evaluate P~_0..P~_{n_max} at ``r``.

    Returns an array of shape ``(n_max + 1,) + np.shape(r)``.
    """
    r = np.asarray(r, dtype=float)
    a, b = recurrence_table(params, n_max + 1)
    out = np.empty((n_max + 1,) + r.shape)
    prev = np.zeros_like(r)
    cur = np.full_like(r, 1 / math.sqrt(b[0]))
    out[0] = cur
    for n in range(n_max):
        sb_n = math.sqrt(b[n]) if n > 0 else 0.0
        nxt = ((r - a[n]) * cur - sb_n * prev) / math.sqrt(b[n + 1])
        prev, cur = cur, nxt
        out[n + 1] = cur
    return out


def eval_jacobi(params, n: int, r):
    """Single orthonormal polynomial P~_n at ``r``."""
    if n < 0:
        return np.zeros_like(np.asarray(r, dtype=float))
    return eval_jacobi_batch(params, n, r)[n]


def eval_jacobi_function(params, n: int, r):
    """Jacobi function (1 - r^2)^{1/2} P~_n(r)."""
    r = np.asarray(r, dtype=float)
    return np.sqrt(np.clip(1 - r * r, 0, None)) * eval_jacobi(params, n, r)


def eval_jacobi_derivative(params, n: int, r):
    """d/dr P~_n via d P~_n = gamma_n P~_{n-1}^(a+1,b+1)."""
    p = _params(params)
    if n == 0:
        return np.zeros_like(np.asarray(r, dtype=float))
    return transfer_coeff(p, TransferKind.GammaDiff, n) * eval_jacobi(p.shifted(1, 1), n - 1, r)


def _mu0(a, b, n):
    return math.sqrt(2 * (n + a) * (n + a + b) / ((2 * n + a + b) * (2 * n + a + b + 1)))


def _mu1(a, b, n):
    return math.sqrt(2 * (n + 1) * (n + b + 1) / ((2 * n + a + b + 1) * (2 * n + a + b + 2)))


def _nu0(a, b, n):
    if n == 0:
        # common factor (a + b + 1) cancelled; keeps the Chebyshev class a + b = -1 finite
        return math.sqrt(2 * (a + 1) / (a + b + 2))
    return math.sqrt(2 * (n + a + 1) * (n + a + b + 1) / ((2 * n + a + b + 1) * (2 * n + a + b + 2)))


def _nu_m1(a, b, n):
    if n == 0:
        return 0.0
    return math.sqrt(2 * n * (n + b) / ((2 * n + a + b) * (2 * n + a + b + 1)))


def _eps0(a, b, n):
    s = a + b
    if n == 0:
        return 2 * math.sqrt(a * b / (s * (s + 1)))
    if n == 1:
        return 2 / (s + 2) * math.sqrt((a + 1) * (b + 1) * s / (s + 3))
    return 2 / (2 * n + s) * math.sqrt(
        (n + a) * (n + b) * (n + s - 1) * (n + s) / ((2 * n + s - 1) * (2 * n + s + 1))
    )


def _eps1(a, b, n):
    s = a + b
    if n == 0:
        return 2 * (a - b) / ((s + 2) * math.sqrt(s))
    return 2 * (a - b) * math.sqrt((n + 1) * (n + s)) / ((2 * n + s) * (2 * n + s + 2))


def _eps2(a, b, n):
    s = a + b
    if n == 0:
        return 2 / (s + 2) * math.sqrt(2 * (a + 1) * (b + 1) / ((s + 1) * (s + 3)))
    return 2 / (2 * n + s + 2) * math.sqrt((n + 1) * (n + 2) * (n + a + 1) * (n + b + 1) / ((2 * n + s + 1) * (2 * n + s + 3)))


def transfer_coeff(params, kind: TransferKind, n: int) -> float:
    """Closed-form constants of the Jacobi demotion/promotion/derivative relations.

    The epsilon and eta families follow the printed sign conventions, so that
    ``eta_{n,-2} = -eps_{n-2,2}^(a+1,b+1)``. Their n = 0 branches contain
    ``sqrt(a + b)`` and are only real for a + b >= 0; other n = 0 cases raise
    and callers fall back to :func:`transfer_coeff_gram`, which measures the
    same constant as an inner product.
    """
    p = _params(params)
    a, b = p.alpha, p.beta
    if n < 0:
        raise ValueError("n must be nonnegative")
    try:
        if kind is TransferKind.Mu0:
            return _mu0(a, b, n)
        if kind is TransferKind.Mu1:
            return _mu1(a, b, n)
        if kind is TransferKind.Nu0:
            return _nu0(a, b, n)
        if kind is TransferKind.NuM1:
            return _nu_m1(a, b, n)
        if kind is TransferKind.GammaDiff:
            return math.sqrt(n * (n + a + b + 1))
        if kind is TransferKind.Eps0:
            return _eps0(a, b, n)
        if kind is TransferKind.Eps1:
            return _eps1(a, b, n)
        if kind is TransferKind.Eps2:
            return _eps2(a, b, n)
        if kind is TransferKind.Eta0:
            return _eps0(a + 1, b + 1, n)
        if kind is TransferKind.EtaM1:
            if n < 1:
                raise ValueError("eta_{n,-1} needs n >= 1")
            return _eps1(a + 1, b + 1, n - 1)
        if kind is TransferKind.EtaM2:
            if n < 2:
                raise ValueError("eta_{n,-2} needs n >= 2")
            return -_eps2(a + 1, b + 1, n - 2)
        if kind is TransferKind.A3term:
            return recurrence_coeffs(p, n)[0]
        if kind is TransferKind.B3term:
            return recurrence_coeffs(p, n)[1]
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ValueError) and "needs" in str(exc):
            raise
        raise ValueError(f"{kind.name} is not real-valued for (alpha, beta) = ({a}, {b}), n = {n}") from exc
    raise ValueError(f"unknown transfer kind {kind!r}")


def transfer_coeff_gram(params, kind: TransferKind, n: int) -> float:
    """Transfer constant as an inner product, for cases where the closed form is not real.

    The epsilon and eta families are measured directly from the defining
    expansions (1 - r^2) P~_n = sum eps P~_{n+i}^(a-1,b-1) and
    P~_n = sum eta P~_{n-i}^(a+1,b+1).
    """
    p = _params(params)
    a, b = p.alpha, p.beta
    if kind in (TransferKind.Eps0, TransferKind.Eps1, TransferKind.Eps2):
        i = {TransferKind.Eps0: 0, TransferKind.Eps1: 1, TransferKind.Eps2: 2}[kind]
        lower = (a - 1, b - 1)
        npts = n + i + 4
        r, w = _gauss_nodes(lower, npts)
        val = np.sum(w * (1 - r * r) * eval_jacobi(p, n, r) * eval_jacobi(lower, n + i, r))
        return float(abs(val)) if i == 2 else float(val)
    if kind in (TransferKind.Eta0, TransferKind.EtaM1, TransferKind.EtaM2):
        i = {TransferKind.Eta0: 0, TransferKind.EtaM1: 1, TransferKind.EtaM2: 2}[kind]
        if n < i:
            raise ValueError(f"eta_{{n,-{i}}} needs n >= {i}")
        upper = (a + 1, b + 1)
        return gram_projection(p, n, upper, n - i, upper)
    raise ValueError(f"no inner-product form for {kind.name}")


def _gauss_nodes(params, npts):
    from .jacobi_quad import gauss_rule
    q = gauss_rule(params, npts)
    return q.nodes, q.weights


def gram_projection(f_params, f_degree: int, g_params, g_degree: int, weight_params, npts: int | None = None) -> float:
    """<P~_f, P~_g> under ``weight_params`` by an exact Gauss rule.

    Exactness needs (weight - f_params) and (weight - g_params) to be
    nonnegative integer shifts so the integrand is polynomial times the
    Gauss weight.
    """
    from .jacobi_quad import gauss_rule

    wp = _params(weight_params)
    fp, gp = _params(f_params), _params(g_params)
    base = JacobiParams(min(fp.alpha, gp.alpha, wp.alpha), min(fp.beta, gp.beta, wp.beta))
    ea, eb = wp.alpha - base.alpha, wp.beta - base.beta
    deg = f_degree + g_degree + int(round(ea + eb)) + 2
    rule = gauss_rule(base, npts or max(deg // 2 + 2, 2))
    r = rule.nodes
    vals = eval_jacobi(fp, f_degree, r) * eval_jacobi(gp, g_degree, r) * (1 - r) ** ea * (1 + r) ** eb
    return float(np.dot(vals, rule.weights))


def sl_coefficients(params, a: float, b: float, n: int, r):
    """(p, q, w, lambda_n) of the Sturm-Liouville form satisfied by (1-r)^a (1+r)^b P_n."""
    pp = _params(params)
    al, be = pp.alpha, pp.beta
    r = np.asarray(r, dtype=float)
    p = (1 - r) ** (al + 1 - 2 * a) * (1 + r) ** (be + 1 - 2 * b)
    q = (a * (al - a) * (1 - r) ** -2 + b * (be - b) * (1 + r) ** -2) * p
    w = (1 - r) ** (al - 2 * a) * (1 + r) ** (be - 2 * b)
    lam = n * (n + al + be + 1) - 2 * a * b + a * (be + 1) + b * (al + 1)
    return p, q, w, lam


def sl_residual(params, a: float, b: float, n: int, r):
    """Residual of -(p rho')' + q rho - lambda w rho for rho = (1-r)^a (1+r)^b P~_n.

    Derivatives come from the analytic derivative relation and the product
    rule, not from differencing.
    """
    pp = _params(params)
    al, be = pp.alpha, pp.beta
    r = np.asarray(r, dtype=float)
    P = eval_jacobi(pp, n, r)
    dP = eval_jacobi_derivative(pp, n, r)
    d2P = np.zeros_like(r) if n < 2 else (
        transfer_coeff(pp, TransferKind.GammaDiff, n)
        * eval_jacobi_derivative(pp.shifted(1, 1), n - 1, r)
    )
    m = (1 - r) ** a * (1 + r) ** b
    # logarithmic derivatives of the prefactor
    l1 = -a / (1 - r) + b / (1 + r)
    l2 = -a / (1 - r) ** 2 - b / (1 + r) ** 2
    rho = m * P
    drho = m * (dP + l1 * P)
    d2rho = m * (d2P + 2 * l1 * dP + (l2 + l1 * l1) * P)
    p, q, w, lam = sl_coefficients(pp, a, b, n, r)
    dp = p * (-(al + 1 - 2 * a) / (1 - r) + (be + 1 - 2 * b) / (1 + r))
    return -(dp * drho + p * d2rho) + q * rho - lam * w * rho
