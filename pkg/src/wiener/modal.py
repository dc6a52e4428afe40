"""Coefficient containers, basis kinds, and the canonical Fourier storage order.

Fourier kinds store k in the order 0, 1, -1, 2, -2, ..., K, -K.
Polynomial kinds store n = 0..N-1.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .fourier_basis import eval_Psi_batch, eval_psi_batch
from .jacobi import eval_jacobi_batch
from .wiener_basis import (
    eval_mapped_jacobi_batch,
    eval_Phi_batch,
    eval_phi_batch,
    eval_rho_batch,
    eval_semiinfinite_pl_batch,
)


class BasisKind(enum.Enum):
    Psi = "Psi"
    psi = "psi"
    Phi = "Phi"
    phi = "phi"
    rho = "rho"
    PB = "PB"
    pb = "pb"
    PL = "PL"
    pl = "pl"
    JacobiP = "JacobiP"

    @property
    def is_fourier(self) -> bool:
        return self in FOURIER_KINDS


FOURIER_KINDS = frozenset({BasisKind.Psi, BasisKind.psi, BasisKind.Phi, BasisKind.phi})
STORAGE_ORDER = "0,1,-1,2,-2,..."


def canonical_indices(count: int) -> np.ndarray:
    """First ``count`` Fourier indices in storage order."""
    j = np.arange(count)
    return np.where(j % 2 == 1, (j + 1) // 2, -(j // 2))


def canonical_position(k: int) -> int:
    return 2 * k - 1 if k > 0 else -2 * k


def natural_to_canonical(v) -> np.ndarray:
    """Reorder an array indexed k = -K..K into storage order."""
    v = np.asarray(v)
    K = (len(v) - 1) // 2
    return v[K + canonical_indices(len(v))]


def canonical_to_natural(v) -> np.ndarray:
    v = np.asarray(v)
    out = np.empty_like(v)
    K = (len(v) - 1) // 2
    out[K + canonical_indices(len(v))] = v
    return out


@dataclass(frozen=True)
class ModalCoefficients:
    kind: BasisKind
    param: object  # gamma, s, (s, t) or (alpha, beta)
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.ndim != 1:
            raise ValueError("entries must be one-dimensional")
        if self.kind.is_fourier and len(e) % 2 == 0:
            raise ValueError("Fourier coefficients need an odd length 2K + 1")
        object.__setattr__(self, "entries", e)

    @property
    def K(self) -> int:
        return (len(self.entries) - 1) // 2

    @property
    def indices(self) -> np.ndarray:
        if self.kind.is_fourier:
            return canonical_indices(len(self.entries))
        return np.arange(len(self.entries))

    def natural(self) -> np.ndarray:
        """Fourier entries ordered k = -K..K."""
        return canonical_to_natural(self.entries)

    def get(self, k: int) -> complex:
        if self.kind.is_fourier:
            if abs(k) > self.K:
                return 0j
            return self.entries[canonical_position(k)]
        return self.entries[k] if 0 <= k < len(self.entries) else 0j

    def with_entries(self, entries, param=None) -> "ModalCoefficients":
        return replace(self, entries=np.asarray(entries, dtype=complex), param=self.param if param is None else param)

    @classmethod
    def from_natural(cls, kind, param, values) -> "ModalCoefficients":
        return cls(kind, param, natural_to_canonical(np.asarray(values, dtype=complex)))

    @classmethod
    def zeros(cls, kind, param, size: int) -> "ModalCoefficients":
        n = 2 * size + 1 if kind.is_fourier else size
        return cls(kind, param, np.zeros(n, dtype=complex))


def eval_basis(kind: BasisKind, param, size: int, points) -> np.ndarray:
    """Basis values in storage order; shape (count,) + points.shape.

    ``size`` is K for Fourier kinds (2K + 1 functions) and N for the
    polynomial kinds (n = 0..N-1).
    """
    pts = np.asarray(points, dtype=float)
    if kind.is_fourier:
        f = {BasisKind.Psi: eval_Psi_batch, BasisKind.psi: eval_psi_batch,
             BasisKind.Phi: eval_Phi_batch, BasisKind.phi: eval_phi_batch}[kind]
        vals = f(param, size, pts)
        return vals[size + canonical_indices(2 * size + 1)]
    n_max = size - 1
    if n_max < 0:
        return np.zeros((0,) + pts.shape)
    if kind is BasisKind.rho:
        return eval_rho_batch(param, n_max, pts)
    if kind in (BasisKind.PB, BasisKind.pb):
        s, t = param
        return eval_mapped_jacobi_batch(s, t, n_max, pts, weighted=kind is BasisKind.pb)
    if kind in (BasisKind.PL, BasisKind.pl):
        return eval_semiinfinite_pl_batch(param, n_max, pts, weighted=kind is BasisKind.pl)
    if kind is BasisKind.JacobiP:
        return eval_jacobi_batch(param, n_max, pts)
    raise ValueError(f"unsupported kind {kind}")
