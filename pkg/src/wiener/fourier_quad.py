"""Symmetric theta-space quadrature built from Jacobi Gauss / Gauss-Radau rules.

Even N mirrors an N/2-point Gauss rule of class (-1/2, gamma - 1/2) through
theta = +-arccos(r). Odd N mirrors an (N+1)/2-point Radau rule whose fixed
node r = 1 becomes theta = 0 and carries a doubled weight. Omega integrates
against (1 + cos theta)^gamma; omega = (1 + cos theta)^{-gamma} Omega is the
plain-measure version used with the psi functions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .domain_maps import weight_theta, x_from_theta
from .fourier_basis import check_gamma
from .jacobi_quad import QuadratureRule, gauss_radau_rule, gauss_rule
from .modal import BasisKind, ModalCoefficients, eval_basis
from .wiener_basis import pb_weight, pl_class


@dataclass(frozen=True)
class FourierRule:
    gamma: float
    N: int
    theta: np.ndarray  # ascending
    Omega: np.ndarray
    omega: np.ndarray | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return self.N


def fourier_theta_rule(gamma: float, N: int) -> FourierRule:
    """N-point symmetric rule for the weight (1 + cos theta)^gamma."""
    check_gamma(gamma)
    if N < 2:
        raise ValueError("N must be >= 2")
    cls = (-0.5, gamma - 0.5)
    if N % 2 == 0:
        base = gauss_rule(cls, N // 2)
        half = np.arccos(base.nodes)  # descending in theta as r ascends
        theta = np.concatenate([-half, half[::-1]])
        Omega = np.concatenate([base.weights, base.weights[::-1]])
    else:
        base = gauss_radau_rule(cls, (N + 1) // 2)
        half = np.arccos(base.nodes[:-1])
        theta = np.concatenate([-half, [0.0], half[::-1]])
        Omega = np.concatenate([base.weights[:-1], [2 * base.weights[-1]], base.weights[:-1][::-1]])
    return FourierRule(gamma, N, theta, Omega, meta={"radau": N % 2 == 1})


def weighted_fourier_rule(gamma: float, N: int) -> FourierRule:
    """Same nodes with omega_n = (1 + cos theta_n)^{-gamma} Omega_n attached."""
    rule = fourier_theta_rule(gamma, N)
    omega = weight_theta(-gamma, rule.theta) * rule.Omega
    return FourierRule(rule.gamma, rule.N, rule.theta, rule.Omega, omega, dict(rule.meta))


def map_rule_to_x(rule: FourierRule, s: float | None = None, weighted: bool = False) -> QuadratureRule:
    """Carry a theta rule to x = tan(theta/2).

    Omega is carried unchanged and integrates Phi-products against w_x^(s,0).
    With ``weighted`` the weights integrate phi-products against dx; that
    needs the Jacobian d theta/dx = 1 + cos theta on top of omega, so the x
    weights are omega_n (1 + x_n^2) / 2.
    """
    if s is not None and not math.isclose(s - 1, rule.gamma, abs_tol=1e-14):
        raise ValueError(f"rule was built for gamma = {rule.gamma}, not s - 1 = {s - 1}")
    if weighted and rule.omega is None:
        rule = weighted_fourier_rule(rule.gamma, rule.N)
    w = _x_weights(rule) if weighted else rule.Omega
    params = (0.0, 0.0) if weighted else (rule.gamma + 1, 0.0)
    return QuadratureRule(x_from_theta(rule.theta), w.copy(), rule.N - 1, params, chart="X")


def _x_weights(rule: FourierRule) -> np.ndarray:
    return rule.omega * weight_theta(-1.0, rule.theta)


def rho_rule(s: float, M: int) -> QuadratureRule:
    """Half-line rule for the rho_n^(s): Gauss in class (-1/2, s - 3/2) mapped by x = sqrt((1-r)/(1+r)).

    Integrates rho_m rho_n dx exactly for m + n <= 2M - 1.
    """
    base = gauss_rule((-0.5, s - 1.5), M)
    r = base.nodes
    x = np.sqrt((1 - r) / (1 + r))
    w = base.weights * (1 + r) ** (-s)
    order = np.argsort(x)
    return QuadratureRule(x[order], w[order], 2 * M - 1, (0.0, 0.0), chart="X")


def pl_rule(s: float, M: int) -> QuadratureRule:
    """Half-line rule for pl_n^(s) under f g / (2 sqrt(x)) dx (weight folded into the weights)."""
    base = gauss_rule(pl_class(s), M)
    r = base.nodes
    x = (1 - r) / (1 + r)
    w = base.weights * (1 + r) ** (-2 * s)
    order = np.argsort(x)
    return QuadratureRule(x[order], w[order], 2 * M - 1, (0.0, 0.0), chart="X")


def pb_rule(s: float, t: float, M: int) -> QuadratureRule:
    """Real-line rule for pb_n^(s,t) under dx."""
    base = gauss_rule(((2 * s - 3) / 2, (2 * t - 3) / 2), M)
    r = base.nodes
    x = r / np.sqrt(1 - r * r)
    w = base.weights / pb_weight(s, t, x)
    return QuadratureRule(x, w, 2 * M - 1, (0.0, 0.0), chart="X")


def default_rule(kind: BasisKind, param, size: int):
    """Smallest rule whose Gram on the retained modes is exact; returns (nodes, weights)."""
    if kind.is_fourier:
        return _fourier_points(kind, param, 2 * size + 1)
    M = max(size, 1)
    if kind is BasisKind.rho:
        q = rho_rule(param, M)
    elif kind is BasisKind.pl:
        q = pl_rule(param, M)
    elif kind is BasisKind.pb:
        q = pb_rule(*param, M)
    elif kind is BasisKind.JacobiP:
        q = gauss_rule(param, M)
    else:
        raise ValueError(f"no default rule for {kind}")
    return q.nodes, q.weights


def analyze(samples, kind: BasisKind, param, size: int, nodes=None, weights=None) -> ModalCoefficients:
    """Discrete inner products against the first modes.

    ``samples`` are function values at ``nodes``; without explicit nodes the
    :func:`default_rule` nodes are assumed.
    """
    if nodes is None:
        nodes, weights = default_rule(kind, param, size)
    samples = np.asarray(samples)
    if samples.shape != np.shape(nodes):
        raise ValueError("samples must be given at the rule nodes")
    need = 2 * size + 1 if kind.is_fourier else size
    if kind.is_fourier and len(nodes) < need:
        raise ValueError(f"rule with {len(nodes)} nodes cannot resolve |k| <= {size}; need >= {need}")
    if not kind.is_fourier and len(nodes) < size:
        raise ValueError(f"rule with {len(nodes)} nodes cannot resolve n < {size}")
    B = eval_basis(kind, param, size, nodes)
    return ModalCoefficients(kind, param, np.conj(B) @ (samples * weights))


def analyze_function(f, kind: BasisKind, param, size: int, N: int | None = None) -> ModalCoefficients:
    """Sample ``f`` on a rule (default size, or N points) and analyze."""
    if N is None:
        nodes, weights = default_rule(kind, param, size)
    elif kind.is_fourier:
        nodes, weights = _fourier_points(kind, param, N)
    else:
        nodes, weights = default_rule(kind, param, N)
    return analyze(f(nodes), kind, param, size, nodes, weights)


def _fourier_points(kind, param, N):
    gamma = param if kind in (BasisKind.Psi, BasisKind.psi) else param - 1
    rule = weighted_fourier_rule(gamma, N)
    if kind is BasisKind.Psi:
        return rule.theta, rule.Omega
    if kind is BasisKind.psi:
        return rule.theta, rule.omega
    if kind is BasisKind.Phi:
        return x_from_theta(rule.theta), rule.Omega
    return x_from_theta(rule.theta), _x_weights(rule)


def synthesize(coeffs: ModalCoefficients, points) -> np.ndarray:
    """Partial sum of the expansion at ``points``."""
    size = coeffs.K if coeffs.kind.is_fourier else len(coeffs.entries)
    pts = np.asarray(points, dtype=float)
    if len(coeffs.entries) == 0:
        return np.zeros(pts.shape, dtype=complex)
    B = eval_basis(coeffs.kind, coeffs.param, size, pts)
    return np.tensordot(coeffs.entries, B, axes=(0, 0))
