"""Sparse connection algorithms between Jacobi, Psi/psi and Phi/phi expansions.

All routines work on coefficient vectors of finite length; coefficients past
the stored range are taken to be exactly zero. Backward solves therefore
start at the top stored index.
"""
from __future__ import annotations

import enum
import math
from functools import lru_cache
from math import comb

import numpy as np
from scipy.linalg import solve_banded

from .jacobi import JacobiParams, TransferKind, _params, transfer_coeff
from .modal import (
    BasisKind,
    ModalCoefficients,
    canonical_to_natural,
    natural_to_canonical,
)


class Direction(enum.Enum):
    Forward = "forward"
    Backward = "backward"


def _direction(d) -> Direction:
    return d if isinstance(d, Direction) else Direction(str(d).lower())


def _integer_shift(G, what="shift") -> int:
    if isinstance(G, (int, np.integer)) and not isinstance(G, bool):
        return int(G)
    if isinstance(G, float) and G.is_integer():
        return int(G)
    raise NonIntegerShiftError(f"{what} {G!r} is not an integer; no sparse connection exists")


class NonIntegerShiftError(ValueError):
    """Raised when a connection is requested for a non-integer parameter shift."""


# ---------------------------------------------------------------------------
# Jacobi level


@lru_cache(maxsize=512)
def _nu_arrays(a: float, b: float, N: int):
    """nu_{n,0}^(a,b) for n < N and nu_{n,-1}^(a,b) for 1 <= n < N (index n - 1)."""
    nu0 = np.array([transfer_coeff((a, b), TransferKind.Nu0, n) for n in range(N)])
    nu1 = np.array([transfer_coeff((a, b), TransferKind.NuM1, n) for n in range(1, N)])
    return nu0, nu1


def _step(c, p: JacobiParams, axis: str):
    """One promotion: class (a+1, b) for axis 'alpha', (a, b+1) for 'beta'.

    The beta step uses the swapped (b, a) constants with a plus sign; the
    alpha step carries a minus sign on the off-diagonal term.
    """
    a, b = p.alpha, p.beta
    nu0, nu1 = _nu_arrays(a, b, len(c)) if axis == "alpha" else _nu_arrays(b, a, len(c))
    sign = -1.0 if axis == "alpha" else 1.0
    out = nu0 * c
    out[:-1] += sign * nu1 * c[1:]
    return out


def _unstep(g, p: JacobiParams, axis: str):
    """Inverse of :func:`_step` (p is the source class), by back-substitution from the top."""
    a, b = p.alpha, p.beta
    nu0, nu1 = _nu_arrays(a, b, len(g)) if axis == "alpha" else _nu_arrays(b, a, len(g))
    sign = -1.0 if axis == "alpha" else 1.0
    out = np.empty_like(g)
    nxt = 0j
    for n in range(len(g) - 1, -1, -1):
        rhs = g[n] - sign * nu1[n] * nxt if n + 1 < len(g) else g[n]
        nxt = out[n] = rhs / nu0[n]
    return out


def _connect_array(c, params, A: int, B: int, direction: Direction):
    p = _params(params)
    c = np.asarray(c, dtype=complex)
    if direction is Direction.Forward:
        for _ in range(A):
            c, p = _step(c, p, "alpha"), p.shifted(1, 0)
        for _ in range(B):
            c, p = _step(c, p, "beta"), p.shifted(0, 1)
        return c, p
    # undo beta steps first, then alpha steps
    for _ in range(B):
        p = p.shifted(0, -1)
        c = _unstep(c, p, "beta")
    for _ in range(A):
        p = p.shifted(-1, 0)
        c = _unstep(c, p, "alpha")
    return c, p


def jacobi_connect(coeffs: ModalCoefficients, A: int, B: int, direction=Direction.Forward) -> ModalCoefficients:
    """Re-expand a Jacobi series in class (a + A, b + B) (Forward) or (a - A, b - B) (Backward).

    Forward is the banded (A + B + 1)-term map built from single promotions;
    Backward inverts it by back-substitution on the stored range.
    """
    if coeffs.kind is not BasisKind.JacobiP:
        raise ValueError("jacobi_connect needs JacobiP coefficients")
    A, B = _integer_shift(A), _integer_shift(B)
    if A < 0 or B < 0:
        raise ValueError("A and B must be nonnegative")
    c, p = _connect_array(coeffs.entries, coeffs.param, A, B, _direction(direction))
    return ModalCoefficients(BasisKind.JacobiP, (p.alpha, p.beta), c)


def lambda_P(params, A: int, B: int, N: int) -> np.ndarray:
    """Dense N x N matrix of lambda^P_{n,m}; upper triangular with bandwidth A + B."""
    I = np.eye(N)
    cols = [_connect_array(I[:, m], params, A, B, Direction.Forward)[0].real for m in range(N)]
    return np.array(cols).T


# ---------------------------------------------------------------------------
# Psi level


def _ladders(nat, K):
    """Split natural-order Fourier coefficients into the even and odd Jacobi ladders."""
    e = np.empty(K + 1, dtype=complex)
    e[0] = math.sqrt(2) * nat[K]
    e[1:] = nat[K + 1:] + nat[K - 1::-1]
    o = nat[K + 1:] - nat[K - 1::-1]
    return e, o


def _recombine(e, o, K):
    nat = np.empty(2 * K + 1, dtype=complex)
    nat[K] = e[0] / math.sqrt(2)
    nat[K + 1:] = 0.5 * (e[1:] + o)
    nat[K - 1::-1] = 0.5 * (e[1:] - o)
    return nat


def _psi_psi_natural(nat, gamma: float, G: int, direction: Direction):
    K = (len(nat) - 1) // 2
    e, o = _ladders(nat, K)
    even, odd = (-0.5, gamma - 0.5), (0.5, gamma + 0.5)
    e, _ = _connect_array(e, even, 0, G, direction)
    if K > 0:
        o, _ = _connect_array(o, odd, 0, G, direction)
    return _recombine(e, o, K)


def _shifted_gamma(gamma, G, direction):
    new = gamma + G if direction is Direction.Forward else gamma - G
    if not new > -0.5:
        raise ValueError(f"target gamma = {new} must exceed -1/2")
    return new


def psi_psi_connect(coeffs: ModalCoefficients, G, direction=Direction.Forward) -> ModalCoefficients:
    """Psi^(gamma) -> Psi^(gamma +- G) via the even/odd Jacobi ladders; O(K G).

    Phi coefficients are accepted too (gamma = s - 1), the numbers being identical.
    """
    if coeffs.kind not in (BasisKind.Psi, BasisKind.Phi):
        raise ValueError("psi_psi_connect needs Psi or Phi coefficients")
    G = _integer_shift(G)
    if G < 0:
        raise ValueError("G must be nonnegative")
    direction = _direction(direction)
    gamma = coeffs.param if coeffs.kind is BasisKind.Psi else coeffs.param - 1
    new_gamma = _shifted_gamma(gamma, G, direction)
    nat = _psi_psi_natural(coeffs.natural(), gamma, G, direction)
    new_param = new_gamma if coeffs.kind is BasisKind.Psi else new_gamma + 1
    return ModalCoefficients(coeffs.kind, new_param, natural_to_canonical(nat))


def lambda_Psi(gamma: float, G: int, k: int, l: int) -> float:
    """lambda^Psi_{k,l} = <Psi_l^(gamma), Psi_k^(gamma+G)> under w^(gamma+G).

    Nonzero only for |k| <= |l| <= |k| + G. With n = |k| and m = |l| - |k|:
    k = 0 gives lambda^e_{0,0} at l = 0 and lambda^e_{0,m} / sqrt(2) otherwise;
    k != 0 gives (lambda^e_{n,n+m} +- sgn(k) lambda^o_{n-1,n-1+m}) / 2 for l = +-(n+m),
    where lambda^e, lambda^o connect the classes (-1/2, gamma-1/2) and
    (1/2, gamma+1/2) by beta += G.
    """
    G = _integer_shift(G)
    n, m = abs(k), abs(l) - abs(k)
    if m < 0 or m > G:
        return 0.0
    size = n + G + 1
    le = lambda_P((-0.5, gamma - 0.5), 0, G, size)
    if k == 0:
        return float(le[0, 0]) if l == 0 else float(le[0, m] / math.sqrt(2))
    lo = lambda_P((0.5, gamma + 0.5), 0, G, size)
    sign = np.sign(k) * np.sign(l)
    return float(0.5 * (le[n, n + m] + sign * lo[n - 1, n - 1 + m]))


# ---------------------------------------------------------------------------
# weight changes in the canonical Fourier basis


def _phase_multiply(nat, p: int):
    """Psi^(0) coefficients of h * [i (1 + e^{-i theta}) / sqrt 2]^p for integer p.

    p > 0 multiplies (support grows by p on the negative side; storage grows by p).
    p < 0 divides, one subtraction stage at a time from the top index down,
    with coefficients above the stored range taken as zero.
    """
    nat = np.asarray(nat, dtype=complex)
    if p == 0:
        return nat.copy()
    K = (len(nat) - 1) // 2
    if p > 0:
        Kn = K + p
        out = np.zeros(2 * Kn + 1, dtype=complex)
        # coefficient at k collects h_{k+m} C(p, m)
        for mm in range(p + 1):
            out[Kn - K - mm: Kn + K + 1 - mm] += comb(p, mm) * nat
        return (1j / math.sqrt(2)) ** p * out
    out = nat
    for _ in range(-p):
        rhs = (math.sqrt(2) / 1j) * out
        nxt = np.empty_like(rhs)
        nxt[-1] = rhs[-1]
        for j in range(len(rhs) - 2, -1, -1):
            nxt[j] = rhs[j] - nxt[j + 1]
        out = nxt
    return out


def _pad(nat, K):
    cur = (len(nat) - 1) // 2
    if K <= cur:
        return nat
    out = np.zeros(2 * K + 1, dtype=complex)
    out[K - cur: K + cur + 1] = nat
    return out


def _require_integer_param(value, what):
    v = _integer_shift(value, what)
    if v < 0:
        raise ValueError(f"{what} must be a nonnegative integer")
    return v


def _reweight(nat, g_in: int, power: int, g_out: int):
    """Psi^(g_in) -> canonical basis -> times [i(1+e^{-i theta})/sqrt2]^power -> Psi^(g_out)."""
    h = _psi_psi_natural(nat, float(g_in), g_in, Direction.Backward)
    h = _phase_multiply(h, power)
    return _psi_psi_natural(h, 0.0, g_out, Direction.Forward)


def _truncate(nat, K):
    cur = (len(nat) - 1) // 2
    return nat[cur - K: cur + K + 1]


def _banded_matrix(apply, n: int, band: int):
    """Band storage (for solve_banded) of the n x n canonical-order matrix of ``apply``.

    Columns further apart than ``band`` do not overlap, so 2 band + 1 probes suffice.
    """
    K = (n - 1) // 2
    ab = np.zeros((2 * band + 1, n), dtype=complex)
    stride = 2 * band + 1
    for r in range(min(stride, n)):
        v = np.zeros(n, dtype=complex)
        cols = np.arange(r, n, stride)
        v[cols] = 1
        out = natural_to_canonical(_truncate(apply(canonical_to_natural(v)), K))
        for j in cols:
            lo, hi = max(0, j - band), min(n, j + band + 1)
            ab[band + np.arange(lo, hi) - j, j] = out[lo:hi]
    return ab


def _solve_reweight(nat, g_level: int, power: int, g_src: int, method: str):
    """Invert v -> _reweight(v, g_level, power, g_src) on the stored modes.

    ``method='banded'`` (only for g_level == g_src, where the map has
    bandwidth 2 power + 1 in storage order) probes the stable product and
    solves the banded system. ``method='recurrence'`` goes down to the
    canonical basis and divides with top-down subtraction stages, which
    loses roughly K^power in accuracy.
    """
    if method == "recurrence":
        h = _psi_psi_natural(nat, float(g_src), g_src, Direction.Backward)
        h = _phase_multiply(h, -power)
        return _psi_psi_natural(h, 0.0, g_level, Direction.Forward)
    if method != "banded":
        raise ValueError(f"unknown method {method!r}")
    if g_level != g_src:
        raise ValueError("banded inversion needs equal levels")
    n = len(nat)
    band = min(2 * power + 2, n - 1)
    ab = _banded_matrix(lambda v: _reweight(v, g_level, power, g_src), n, band)
    sol = solve_banded((band, band), ab, natural_to_canonical(nat))
    return canonical_to_natural(sol)


def Psi_to_psi(coeffs: ModalCoefficients, direction=Direction.Forward, method: str = "banded") -> ModalCoefficients:
    """Psi^(G) <-> psi^(G) coefficients for integer G (and Phi^(s) <-> phi^(s), s integer).

    Backward (psi -> Psi): backward Psi-Psi to gamma = 0, multiply by
    sqrt*(w) (binomial convolution), forward Psi-Psi back to G. The product
    widens the spectrum, so the output carries K + G modes.
    Forward (Psi -> psi) inverts that map on the stored modes. It is exact
    when the input function is sqrt*(w) times a trigonometric polynomial.
    ``method='recurrence'`` uses the literal top-down binomial solve at gamma = 0.
    """
    direction = _direction(direction)
    if direction is Direction.Forward:
        if coeffs.kind not in (BasisKind.Psi, BasisKind.Phi):
            raise ValueError("forward Psi_to_psi needs Psi or Phi coefficients")
    elif coeffs.kind not in (BasisKind.psi, BasisKind.phi):
        raise ValueError("backward Psi_to_psi needs psi or phi coefficients")
    x_chart = coeffs.kind in (BasisKind.Phi, BasisKind.phi)
    if x_chart:
        s = _require_integer_param(coeffs.param, "s")
        if s < 1:
            raise ValueError("s must be a positive integer")
        G, power = s - 1, s
    else:
        G = power = _require_integer_param(coeffs.param, "gamma")
    nat = coeffs.natural()
    if direction is Direction.Forward:
        out = _solve_reweight(nat, G, power, G, method)
        kind = BasisKind.phi if x_chart else BasisKind.psi
    else:
        out = _reweight(nat, G, power, G)
        kind = BasisKind.Phi if x_chart else BasisKind.Psi
    return ModalCoefficients(kind, coeffs.param, natural_to_canonical(out))


def modify_s(coeffs: ModalCoefficients, target, method: str = "banded") -> ModalCoefficients:
    """psi^(F) -> psi^(G) (or phi^(F) -> phi^(G)) for integers F, G.

    The weight changes by [i (1 + e^{-i theta}) / sqrt 2]^(F - G). Lowering
    the parameter multiplies and widens the storage by F - G. Raising it
    divides: the default passes through the unweighted Psi^(F) and Psi^(G)
    expansions (storage grows by F), while
    ``method='recurrence'`` runs G - F top-down stages
    h_k <- (sqrt2 / i) h_k - h_{k+1} in the canonical basis.
    """
    if coeffs.kind not in (BasisKind.psi, BasisKind.phi):
        raise ValueError("modify_s needs psi or phi coefficients")
    F = _require_integer_param(coeffs.param, "source parameter")
    Gt = _require_integer_param(target, "target parameter")
    shift = 1 if coeffs.kind is BasisKind.phi else 0
    if F - shift < 0 or Gt - shift < 0:
        raise ValueError("phi parameters must be positive integers")
    nat = coeffs.natural()
    if F == Gt:
        out = nat.copy()
    elif Gt < F:
        out = _reweight(nat, F - shift, F - Gt, Gt - shift)
    elif method == "recurrence":
        out = _solve_reweight(nat, Gt - shift, Gt - F, F - shift, method)
    else:
        # psi^(F) -> Psi^(F) (multiply), Psi^(F) -> Psi^(Gt) (banded), Psi^(Gt) -> psi^(Gt) (banded solve)
        out = _reweight(nat, F - shift, F, F - shift)
        out = _psi_psi_natural(out, float(F - shift), Gt - F, Direction.Forward)
        out = _solve_reweight(out, Gt - shift, Gt, Gt - shift, method)
    return ModalCoefficients(coeffs.kind, Gt, natural_to_canonical(out))


def pad_fourier(coeffs: ModalCoefficients, K: int) -> ModalCoefficients:
    """Zero-pad a Fourier coefficient vector to |k| <= K."""
    return ModalCoefficients(coeffs.kind, coeffs.param, natural_to_canonical(_pad(coeffs.natural(), K)))


__all__ = [
    "Direction",
    "NonIntegerShiftError",
    "jacobi_connect",
    "lambda_P",
    "lambda_Psi",
    "psi_psi_connect",
    "Psi_to_psi",
    "modify_s",
    "pad_fourier",
    "ModalCoefficients",
    "BasisKind",
]
