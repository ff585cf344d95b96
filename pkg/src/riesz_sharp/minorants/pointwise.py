"""Plurisubharmonic minorants and the pointwise gap functions they control.

Angles: the phase of zw is taken as (arg z + arg w) reduced to [0, 2pi).
Summing principal arguments without the reduction makes Phi_1 jump across
the positive real axis of zw, and the lemma fails there.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ..params import ParamSpace

TWO_PI = 2 * math.pi


class PolarPair(NamedTuple):
    """w = r e^{it} after normalising the larger argument to z = 1."""

    r: float
    t: float


def _out(a):
    return float(a) if np.ndim(a) == 0 else a


def _phase(z, w) -> np.ndarray:
    return np.mod(np.angle(z) + np.angle(w), TWO_PI)


def phi1(z, w, p: float):
    """|zw|^(p/2) cos(p (pi - t - u) / 2), equal to Re (-zw)^(p/2)."""
    z, w = np.asarray(z, dtype=complex), np.asarray(w, dtype=complex)
    m = np.abs(z * w)
    return _out(m ** (p / 2) * np.cos(p * (math.pi - _phase(z, w)) / 2))


def v_p(t, p: float):
    t = np.mod(np.asarray(t, dtype=float), TWO_PI)
    left = -np.cos(p * t / 2)
    right = -np.cos(p * (TWO_PI - t) / 2)
    middle = np.maximum(np.abs(left), np.abs(right))
    edge = TWO_PI / p
    return _out(np.where(t <= edge, left, np.where(t >= TWO_PI - edge, right, middle)))


def phi2(z, w, p: float):
    z, w = np.asarray(z, dtype=complex), np.asarray(w, dtype=complex)
    return _out(np.abs(z * w) ** (p / 2) * v_p(_phase(z, w), p))


def _power_mean_term(mz, mw, p: float, s: float):
    # ((|z|^s + |w|^s)/2)^(p/s) with the max factored out against overflow
    top = np.maximum(mz, mw)
    safe = np.where(top > 0, top, 1.0)
    return top**p * (((mz / safe) ** s + (mw / safe) ** s) / 2) ** (p / s)


def lemma1_gap(z, w, ps: ParamSpace):
    """Left side of the 1 < p <= 2 pointwise inequality; it is <= 0 for s >= p."""
    p, s = ps.p, ps.s
    a = math.pi / (2 * p)
    z, w = np.asarray(z, dtype=complex), np.asarray(w, dtype=complex)
    first = _power_mean_term(np.abs(z), np.abs(w), p, s)
    second = np.abs(z + np.conj(w)) ** p / (2 * math.sin(a)) ** p
    return _out(-first + second + phi1(z, w, p) / math.tan(a))


def lemma2_gap(z, w, ps: ParamSpace):
    """Left side of the p >= 9 pointwise inequality; it is <= 0 for s >= p/(p-1)."""
    p, s = ps.p, ps.s
    a = math.pi / (2 * p)
    z, w = np.asarray(z, dtype=complex), np.asarray(w, dtype=complex)
    first = _power_mean_term(np.abs(z), np.abs(w), p, s)
    second = np.abs(z + np.conj(w)) ** p / (2 * math.cos(a)) ** p
    return _out(-first + second + math.tan(a) * phi2(z, w, p))


def _phi3(r, t, p: float, s: float):
    a = math.pi / (2 * p)
    base = np.maximum(1 + r * r + 2 * r * np.cos(t), 0.0)
    return (
        base ** (p / 2) / (2 * math.sin(a)) ** p
        - ((1 + r**s) / 2) ** (p / s)
        + r ** (p / 2) / math.tan(a) * np.cos((math.pi - t) * p / 2)
    )


def _phi4(r, t, p: float):
    s = p / (p - 1)
    a = math.pi / (2 * p)
    base = np.maximum(1 + r * r + 2 * r * np.cos(t), 0.0)
    return (
        base ** (p / 2) / (2 * math.cos(a)) ** p
        - ((1 + r**s) / 2) ** (p / s)
        + r ** (p / 2) * math.tan(a) * v_p(t, p)
    )


def _check_rect(r, t, t_hi: float):
    r, t = np.asarray(r, dtype=float), np.asarray(t, dtype=float)
    if np.any((r < 0) | (r > 1)):
        raise ValueError("r must lie in [0, 1]")
    if np.any((t < 0) | (t > t_hi)):
        raise ValueError(f"t must lie in [0, {t_hi}]")
    return r, t


def reduced_phi3(r, t, ps: ParamSpace):
    """lemma1_gap(1, r e^{it}) on r in [0,1], t in [0,pi]."""
    r, t = _check_rect(r, t, math.pi)
    return _out(_phi3(r, t, ps.p, ps.s))


def reduced_phi4(r, t, p: float):
    """lemma2_gap(1, r e^{it}) with s = p/(p-1), on r in [0,1], t in [0,2pi]."""
    r, t = _check_rect(r, t, TWO_PI)
    return _out(_phi4(r, t, p))


def psh_line_margins(which: str, z0, w0, a, b, radius, p: float, n: int = 256) -> np.ndarray:
    """Circle mean minus centre value of Phi along lambda -> (z0 + lambda a, w0 + lambda b).

    All of z0, w0, a, b, radius broadcast together; one margin per line.
    """
    fn = {"phi1": phi1, "phi2": phi2}[which]
    if n < 64:
        raise ValueError("need at least 64 quadrature nodes")
    z0, w0, a, b = (np.asarray(x, dtype=complex)[..., None] for x in (z0, w0, a, b))
    radius = np.asarray(radius, dtype=float)[..., None]
    if np.any((a == 0) & (b == 0)):
        raise ValueError("direction vector must be nonzero")
    lam = radius * np.exp(2j * np.pi * np.arange(n) / n)
    mean = fn(z0 + lam * a, w0 + lam * b, p).mean(axis=-1)
    return mean - fn(z0, w0, p)[..., 0]


def psh_scale(z0, w0, p: float):
    """Size of Phi near the centre, for relative tolerances (Phi is p-homogeneous)."""
    return np.maximum(1.0, np.maximum(np.abs(z0), np.abs(w0))) ** p


def psh_line_test(which: str, z0: complex, w0: complex, direction: tuple[complex, complex],
                  radius: float, n: int, p: float) -> float:
    """Sub-mean-value margin on one complex line; >= -1e-7 * psh_scale if psh."""
    a, b = direction
    if a == 0 and b == 0:
        raise ValueError("direction vector must be nonzero")
    limit = 1e-2 * max(1.0, abs(z0), abs(w0))
    if not 0 < radius <= limit:
        raise ValueError(f"radius must lie in (0, {limit}]")
    return float(psh_line_margins(which, z0, w0, a, b, radius, p, n))
