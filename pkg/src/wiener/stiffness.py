"""Derivative of the weighted Wiener functions and the sparse stiffness matrix.

d phi_k / dx = sum_l tau_{k,l} phi_l with l restricted to the six-point band
{+-k_dn, +-k, +-k_up}, where k_dn = k - sgn(k) and k_up = k + sgn(k).
tau splits as sigma (derivative of the unweighted Phi_k) plus chi
(multiplication by -s/(x - i)).
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from .domain_maps import sqrt_star_x, theta_from_x
from .fourier_basis import jacobi_classes
from .jacobi import eval_jacobi_batch, transfer_coeff, TransferKind
from .modal import BasisKind, ModalCoefficients, canonical_indices
from .wiener_basis import check_s


class NonConvergenceError(RuntimeError):
    """Eigenvalue iteration did not reach the requested tolerance."""


def _sgn(k: int) -> int:
    return (k > 0) - (k < 0)


def band(k: int) -> tuple:
    """The (up to six) distinct indices l with possibly nonzero tau_{k,l}."""
    if k == 0:
        return (-1, 0, 1)
    S = _sgn(k)
    cand = [k, -k, k - S, -(k - S), k + S, -(k + S)]
    return tuple(dict.fromkeys(cand))


def tau(s: float, k: int, l: int) -> complex:
    """Expansion coefficient of phi_l in d phi_k / dx."""
    check_s(s)
    k, l = int(k), int(l)
    if k == 0:
        c = -0.5j * math.sqrt(s - 0.5)
        return {
            -1: c * (1 + math.sqrt(s)) / math.sqrt(1 + s),
            0: c * 2 * math.sqrt(s - 0.5),
            1: c * (1 - math.sqrt(s)) / math.sqrt(1 + s),
        }.get(l, 0j)
    n, S = abs(k) - 1, _sgn(k)
    dn, up = k - S, k + S
    if abs(k) == 1 and l == 0:
        return 0.5j * math.sqrt((2 * s - 1) / (2 * s + 2)) * (S * math.sqrt(s) - 1)
    if l == k:
        return 1j * S * math.sqrt((n + 1) * (n + s)) - 1j * s * (s - 1) ** 2 / (2 * (2 * n + s) * (2 * n + s + 2)) - 0.5j * s
    if l == -k:
        return 1j * s * (s - 1) / (2 * (2 * n + s) * (2 * n + s + 2))
    if abs(k) > 1 and l in (dn, -dn):
        pm = 1 if l == dn else -1
        root = math.sqrt(1 - s * (s - 2) / ((2 * n + s - 1) * (2 * n + s + 1)))
        return 0.25j * root * (
            S * (math.sqrt((n + s - 1) * (n + s)) + pm * math.sqrt(n * (n + 1)))
            - s / (2 * n + s) * (math.sqrt((n + 1) * (n + s - 1)) + pm * math.sqrt(n * (n + s)))
        )
    if l in (up, -up):
        pm = 1 if l == up else -1
        root = math.sqrt(1 - s * (s - 2) / ((2 * n + s + 1) * (2 * n + s + 3)))
        return 0.25j * root * (
            -s / (2 * n + s + 2) * (math.sqrt((n + 2) * (n + s)) + pm * math.sqrt((n + 1) * (n + s + 1)))
            + S * (math.sqrt((n + 1) * (n + 2)) + pm * math.sqrt((n + s) * (n + s + 1)))
        )
    return 0j


def sigma(s: float, k: int, l: int) -> complex:
    """Expansion coefficient of Phi_l in d Phi_k / dx.

    Phi_0 is constant, so the k = 0 row vanishes. For |k| = 1 the entry at
    l = 0 is i sgn(k) sqrt(s (2s - 1) / (2 (s + 1))), obtained by projecting
    directly; the generic k_dn form is singular there at s = 1.
    """
    check_s(s)
    k, l = int(k), int(l)
    if k == 0:
        return 0j
    n, S = abs(k) - 1, _sgn(k)
    dn, up = k - S, k + S
    if abs(k) == 1 and l == 0:
        return 1j * S * math.sqrt(s * (2 * s - 1) / (2 * (s + 1)))
    if l == k:
        return 1j * S * math.sqrt((n + 1) * (n + s))
    if l == -k:
        return 1j * S * math.sqrt((n + 1) * (n + s)) * s * (1 - s) / ((2 * n + s) * (2 * n + s + 2))
    if abs(k) > 1 and l in (dn, -dn):
        pm = 1 if l == dn else -1
        return 1j * S * (n + s) / (2 * (2 * n + s)) * math.sqrt(
            (2 * n + 1) * (2 * n + 2 * s - 1) / ((2 * n + s - 1) * (2 * n + s + 1))
        ) * (math.sqrt((n + s - 1) * (n + s)) + pm * math.sqrt(n * (n + 1)))
    if l in (up, -up):
        pm = 1 if l == up else -1
        return pm * (n + 1) / (n + s + 1) * sigma(s, up, pm * k)
    return 0j


def chi(s: float, k: int, l: int) -> complex:
    """Coefficient of phi_l in (-s / (x - i)) phi_k, as tau - sigma."""
    return tau(s, k, l) - sigma(s, k, l)


# ---------------------------------------------------------------------------
# pointwise derivatives (oracle side)


def eval_dPhi_batch(s: float, K: int, x) -> np.ndarray:
    """d Phi_k / dx for k = -K..K (row K + k), via d theta / dx = 1 + cos theta."""
    check_s(s)
    th = theta_from_x(np.asarray(x, dtype=float))
    (a, b), (a1, b1) = jacobi_classes(s - 1)
    c, sn = np.cos(th), np.sin(th)
    P = eval_jacobi_batch((a, b), K + 1, c)
    Q = eval_jacobi_batch((a1, b1), K + 1, c)
    R = eval_jacobi_batch((a1 + 1, b1 + 1), K + 1, c)
    out = np.zeros((2 * K + 1,) + th.shape, dtype=complex)
    for n in range(1, K + 1):
        dP = transfer_coeff((a, b), TransferKind.GammaDiff, n) * Q[n - 1]
        dQ = 0.0
        if n >= 2:
            dQ = transfer_coeff((a1, b1), TransferKind.GammaDiff, n - 1) * R[n - 2]
        even = -sn * dP
        odd = c * Q[n - 1] - sn * sn * dQ
        out[K + n] = 0.5 * (even + 1j * odd)
        out[K - n] = 0.5 * (even - 1j * odd)
    return out * (1 + c)


def eval_dphi_batch(s: float, K: int, x) -> np.ndarray:
    """d phi_k / dx for k = -K..K: product rule on sqrt*(w) Phi_k."""
    from .wiener_basis import eval_Phi_batch

    x = np.asarray(x, dtype=float)
    w = sqrt_star_x(s, x)
    return w * (-s / (x - 1j) * eval_Phi_batch(s, K, x) + eval_dPhi_batch(s, K, x))


# ---------------------------------------------------------------------------
# assembly


@dataclass(frozen=True)
class SparseStiffness:
    """Triplets (row k, col l, tau_{k,l}) over an ordered index set."""

    N: int
    s: float
    ordering: np.ndarray
    triplets: list = field(repr=False)

    def to_dense(self) -> np.ndarray:
        pos = {int(k): i for i, k in enumerate(self.ordering)}
        A = np.zeros((self.N, self.N), dtype=complex)
        for k, l, v in self.triplets:
            A[pos[k], pos[l]] = v
        return A

    def to_sparse(self):
        pos = {int(k): i for i, k in enumerate(self.ordering)}
        rows = [pos[k] for k, _, _ in self.triplets]
        cols = [pos[l] for _, l, _ in self.triplets]
        vals = [v for _, _, v in self.triplets]
        return scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(self.N, self.N), dtype=complex)

    def nnz_per_row(self) -> np.ndarray:
        pos = {int(k): i for i, k in enumerate(self.ordering)}
        counts = np.zeros(self.N, dtype=int)
        for k, _, _ in self.triplets:
            counts[pos[k]] += 1
        return counts


def stiffness_indices(N: int, mirrored: bool = False) -> np.ndarray:
    """First N indices of 0, 1, -1, 2, -2, ...; ``mirrored`` flips signs (so even N keeps -N/2)."""
    idx = canonical_indices(N)
    return -idx if mirrored else idx


def assemble_stiffness(s: float, N: int, mirrored: bool = False) -> SparseStiffness:
    """tau restricted to an N-element index set (canonical order unless ``mirrored``)."""
    check_s(s)
    if N < 1:
        raise ValueError("N must be >= 1")
    order = stiffness_indices(N, mirrored)
    members = set(int(k) for k in order)
    trip = []
    for k in order:
        k = int(k)
        for l in band(k):
            if l in members:
                v = tau(s, k, l)
                if v != 0:
                    trip.append((k, l, v))
    return SparseStiffness(N, s, order, trip)


def apply_derivative(coeffs: ModalCoefficients) -> ModalCoefficients:
    """phi^(s) coefficients of the derivative; storage grows by one mode so nothing is cut."""
    if coeffs.kind is not BasisKind.phi:
        raise ValueError("apply_derivative needs phi coefficients")
    s = coeffs.param
    K = coeffs.K
    nat = coeffs.natural()
    out = np.zeros(2 * K + 3, dtype=complex)
    for k in range(-K, K + 1):
        c = nat[K + k]
        if c == 0:
            continue
        for l in band(k):
            out[K + 1 + l] += c * tau(s, k, l)
    return ModalCoefficients.from_natural(BasisKind.phi, s, out)


def default_tol() -> float:
    return float(os.environ.get("WIENER_TOL", "1e-12"))


def spectral_radius(S: SparseStiffness, tol: float | None = None, dense_limit: int = 2000) -> float:
    """max |lambda| of S, from the Hermitian matrix i S.

    Dense LAPACK solve up to ``dense_limit``; beyond that an implicitly
    restarted Lanczos iteration on the sparse matrix.
    """
    tol = default_tol() if tol is None else tol
    if S.N <= dense_limit:
        try:
            ev = np.linalg.eigvalsh(1j * S.to_dense())
        except np.linalg.LinAlgError as exc:
            raise NonConvergenceError(f"dense eigensolver failed for N = {S.N}: {exc}") from exc
        return float(np.max(np.abs(ev)))
    H = 1j * S.to_sparse()
    try:
        ev = scipy.sparse.linalg.eigsh(H, k=1, which="LM", tol=tol, return_eigenvectors=False)
    except scipy.sparse.linalg.ArpackNoConvergence as exc:
        raise NonConvergenceError(f"Lanczos did not converge for N = {S.N} at tol = {tol}") from exc
    return float(np.max(np.abs(ev)))


def galerkin_stiffness(s: float, K: int, npts: int | None = None) -> np.ndarray:
    """Dense tau_{k,l} for |k| <= K, |l| <= K + 1 by quadrature (row K + k, column K + 1 + l).

    Reference for tests: projects the pointwise derivative onto phi_l with
    the weighted x-chart rule, which integrates these products exactly.
    """
    from .fourier_quad import _fourier_points
    from .wiener_basis import eval_phi_batch

    x, w = _fourier_points(BasisKind.phi, s, npts or 4 * K + 20)
    B = eval_phi_batch(s, K + 1, x)
    D = eval_dphi_batch(s, K, x)
    return (D * w) @ np.conj(B).T


__all__ = [
    "NonConvergenceError",
    "SparseStiffness",
    "band",
    "tau",
    "sigma",
    "chi",
    "eval_dPhi_batch",
    "eval_dphi_batch",
    "stiffness_indices",
    "assemble_stiffness",
    "apply_derivative",
    "spectral_radius",
    "galerkin_stiffness",
]
