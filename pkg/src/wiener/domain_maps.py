"""Coordinate charts x, z, theta, r, the maps between them, and the weights.

x lives on the extended real line, z on the unit circle, theta on
[-pi, pi] and r on [-1, 1]. The r chart only sees the upper half
(theta in [0, pi], x >= 0), so maps into r lose the sign.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Chart(enum.Enum):
    X = "x"
    Z = "z"
    Theta = "theta"
    R = "r"


@dataclass(frozen=True)
class DomainPoint:
    chart: Chart
    value: complex

    def __post_init__(self):
        v = self.value
        if self.chart is Chart.Theta and not (-math.pi <= float(np.real(v)) <= math.pi):
            raise ValueError(f"theta = {v} outside [-pi, pi]")
        if self.chart is Chart.R and not (-1.0 <= float(np.real(v)) <= 1.0):
            raise ValueError(f"r = {v} outside [-1, 1]")
        if self.chart is Chart.Z and abs(abs(v) - 1.0) > 1e-12:
            raise ValueError(f"z = {v} is not on the unit circle")


@dataclass(frozen=True)
class WeightParams:
    first: float
    second: float = 0.0


def _asparams(params) -> WeightParams:
    if isinstance(params, WeightParams):
        return params
    if np.isscalar(params):
        return WeightParams(float(params), 0.0)
    return WeightParams(*params)


def theta_from_x(x):
    return 2 * np.arctan(x)


def x_from_theta(theta):
    theta = np.asarray(theta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        x = np.tan(theta / 2)
    x = np.where(theta >= math.pi, np.inf, x)
    x = np.where(theta <= -math.pi, -np.inf, x)
    return x[()] if x.ndim == 0 else x


def r_from_x(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore"):
        u = 1 / (1 + x * x)
    return 2 * u - 1


def _convert(value, source: Chart, target: Chart):
    if source is target:
        return value
    # route everything through theta; r only reaches the upper half
    if source is Chart.X:
        theta = theta_from_x(float(np.real(value)))
        if target is Chart.R:
            return float(r_from_x(float(np.real(value))))
    elif source is Chart.Z:
        theta = float(np.angle(value))
    elif source is Chart.Theta:
        theta = float(np.real(value))
    else:
        r = float(np.real(value))
        if target is Chart.X:
            return math.inf if r == -1 else math.sqrt((1 - r) / (1 + r))
        theta = math.acos(r)
    if target is Chart.Theta:
        return theta
    if target is Chart.X:
        return float(x_from_theta(theta))
    if target is Chart.Z:
        return complex(math.cos(theta), math.sin(theta))
    return math.cos(theta)


def map_point(p: DomainPoint, target: Chart) -> DomainPoint:
    """Image of ``p`` in ``target`` chart; theta = +-pi maps to x = +-inf."""
    if p.chart is Chart.Z and target is Chart.X:
        z = complex(p.value)
        if z == -1:
            return DomainPoint(Chart.X, math.inf)
        return DomainPoint(Chart.X, float(np.real(1j * (1 - z) / (1 + z))))
    if p.chart is Chart.X and target is Chart.Z:
        x = float(np.real(p.value))
        if math.isinf(x):
            return DomainPoint(Chart.Z, complex(-1.0, 0.0))
        return DomainPoint(Chart.Z, complex(-(x - 1j) / (x + 1j)))
    return DomainPoint(target, _convert(p.value, p.chart, target))


def weight_r(params, r):
    """(1 - r)^alpha (1 + r)^beta."""
    w = _asparams(params)
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore"):
        return (1 - r) ** w.first * (1 + r) ** w.second


def weight_theta(params, theta):
    """(1 + cos theta)^gamma (1 - cos theta)^delta, via half angles to avoid cancellation."""
    w = _asparams(params)
    theta = np.asarray(theta, dtype=float)
    c = np.cos(theta / 2)
    c = np.where(np.abs(theta) >= math.pi, 0.0, c)
    s = np.sin(theta / 2)
    with np.errstate(divide="ignore"):
        return (2 * c * c) ** w.first * (2 * s * s) ** w.second


def weight_x(params, x):
    """2^{s+t} (1 + x^2)^{-s} (x^2 / (1 + x^2))^t."""
    w = _asparams(params)
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        u = 1 / (1 + x * x)
        # |x| sqrt(u) rather than x^2 u so tiny |x| does not underflow before the power
        v = np.where(np.isinf(x), 1.0, np.abs(x) * np.sqrt(u))
    with np.errstate(divide="ignore"):
        return 2 ** (w.first + w.second) * u ** w.first * v ** (2 * w.second)


def weight(chart: Chart, params, p):
    """Weight value at ``p`` (a DomainPoint or a raw value in ``chart``)."""
    v = p.value if isinstance(p, DomainPoint) else p
    if chart is Chart.R:
        return weight_r(params, np.real(v))
    if chart is Chart.Theta:
        return weight_theta(params, np.real(v))
    if chart is Chart.X:
        return weight_x(params, np.real(v))
    raise ValueError(f"no weight defined on chart {chart}")


def sqrt_star_x(params, x):
    """Phase-shifted square root 2^{(s+t)/2} x^t / (x - i)^{s+t} (principal powers)."""
    w = _asparams(params)
    s, t = w.first, w.second
    x = np.asarray(x, dtype=float)
    fin = np.isfinite(x)
    xf = np.where(fin, x, 0.0).astype(complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        num = xf ** t if t != 0 else np.ones_like(xf)
        out = 2 ** ((s + t) / 2) * num / (xf - 1j) ** (s + t)
    if s > 0:
        out = np.where(fin, out, 0.0)
    elif s == 0:
        # x^t / (x - i)^t -> 1 at +inf and exp(2 i pi t) at -inf (principal branches)
        lim = 2 ** (t / 2) * np.exp(2j * math.pi * t * (x < 0))
        out = np.where(fin, out, lim)
    else:
        out = np.where(fin, out, np.inf)
    return out[()] if out.ndim == 0 else out


def sqrt_star_theta(params, theta):
    """Phase-shifted square root in the theta chart.

    2^{(g+d)/2} sin^d(theta/2) cos^g(theta/2) exp(i (g+d)(pi - theta)/2),
    principal powers, so it agrees with :func:`sqrt_star_x` at x = tan(theta/2).
    """
    w = _asparams(params)
    g, d = w.first, w.second
    theta = np.asarray(theta, dtype=float)
    c = np.cos(theta / 2)
    c = np.where(np.abs(theta) >= math.pi, 0.0, c)
    s = np.sin(theta / 2).astype(complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        sd = s ** d if d != 0 else np.ones_like(s)
        cg = c.astype(complex) ** g if g != 0 else np.ones_like(s)
        out = 2 ** ((g + d) / 2) * sd * cg * np.exp(0.5j * (g + d) * (math.pi - theta))
    if g < 0:
        out = np.where(np.abs(theta) >= math.pi, np.inf, out)
    return out[()] if out.ndim == 0 else out


def sqrt_star(chart: Chart, params, p):
    v = p.value if isinstance(p, DomainPoint) else p
    if chart is Chart.X:
        return sqrt_star_x(params, np.real(v))
    if chart is Chart.Theta:
        return sqrt_star_theta(params, np.real(v))
    raise ValueError("sqrt_star is defined on the X and Theta charts only")
