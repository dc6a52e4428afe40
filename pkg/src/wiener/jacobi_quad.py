"""Gauss and Gauss-Radau rules for Jacobi weights (Golub-Welsch)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .jacobi import JacobiParams, _params, eval_jacobi_batch, recurrence_table


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    weight_params: tuple = ()
    chart: str = "R"
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.nodes)

    def integrate(self, values):
        return np.tensordot(np.asarray(values), self.weights, axes=([-1], [0]))


def _golub_welsch(diag, offdiag, mass):
    nodes, vecs = eigh_tridiagonal(diag, offdiag)
    weights = mass * vecs[0] ** 2
    order = np.argsort(nodes)
    return nodes[order], weights[order]


def _symmetrize(nodes, weights):
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    if len(nodes) % 2:
        nodes[len(nodes) // 2] = 0.0
    return nodes, weights


def gauss_rule(params, N: int) -> QuadratureRule:
    """N-point Gauss rule, exact for polynomials of degree <= 2N - 1."""
    if N < 1:
        raise ValueError("N must be >= 1")
    p = _params(params)
    a, b = recurrence_table(p, N)
    nodes, weights = _golub_welsch(a[:N], np.sqrt(b[1:N]), b[0])
    if p.alpha == p.beta:
        nodes, weights = _symmetrize(nodes, weights)
    return QuadratureRule(nodes, weights, 2 * N - 1, (p.alpha, p.beta))


def gauss_radau_rule(params, N: int) -> QuadratureRule:
    """N-point Gauss-Radau rule with the last node fixed at r = 1.

    Exact for polynomials of degree <= 2N - 2.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    p = _params(params)
    a, b = recurrence_table(p, N)
    diag = a[:N].copy()
    if N == 1:
        diag[0] = 1.0
    else:
        at_one = eval_jacobi_batch(p, N - 1, 1.0)
        diag[N - 1] = 1.0 - math.sqrt(b[N - 1]) * at_one[N - 2] / at_one[N - 1]
    nodes, weights = _golub_welsch(diag, np.sqrt(b[1:N]), b[0])
    nodes[-1] = 1.0
    return QuadratureRule(nodes, weights, 2 * N - 2, (p.alpha, p.beta), meta={"radau": True})
