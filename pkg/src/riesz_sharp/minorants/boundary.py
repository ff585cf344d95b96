"""Stationary-point and boundary estimates that finish the pointwise
inequalities: interior critical points, the edges r=1 and t=0, and the
one-variable margins in p they reduce to.

Every function returns a signed margin or gap; callers compare against a
tolerance.  Nothing here asserts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from ..params import ParamSpace

SINGULAR_CUTOFF = 1e-6


def _out(a):
    return float(a) if np.ndim(a) == 0 else a


def stationary_quotient(r, s: float):
    """(1 - r^(2-s)) / (r - r^(1-s)) on 0 < r < 1, with the r -> 1 limit 1 - 2/s."""
    r = np.asarray(r, dtype=float)
    if np.any((r <= 0) | (r >= 1)):
        raise ValueError("r must lie strictly inside (0, 1)")
    near_one = np.abs(1 - r) < SINGULAR_CUTOFF
    rr = np.where(near_one, 0.5, r)
    q = (rr ** (s - 1) - rr) / (rr**s - 1)
    return _out(np.where(near_one, 1 - 2 / s, q))


def stationary_gap3(r, t, ps: ParamSpace):
    """Must be >= 0 at any interior critical point of reduced_phi3."""
    p = ps.p
    t = np.asarray(t, dtype=float)
    ang = (math.pi - t) * p / 2
    return _out(stationary_quotient(r, ps.s) * np.sin(ang) + np.sin(t + ang))


def stationary_gap4(r, t, p: float):
    """Same for reduced_phi4, with s = p/(p-1) and 0 < t < pi/p."""
    s = p / (p - 1)
    t = np.asarray(t, dtype=float)
    return _out(stationary_quotient(r, s) * np.sin(t * p / 2) + np.sin((p / 2 - 1) * t))


def stationary_lower_chain3(t, ps: ParamSpace):
    """2 sin((pi-t)p/2) (1/p - 1/s): the bound stationary_gap3 dominates."""
    return _out(2 * np.sin((math.pi - np.asarray(t, dtype=float)) * ps.p / 2) * (1 / ps.p - 1 / ps.s))


def stationary_lower_chain4(t, p: float):
    s = p / (p - 1)
    return _out(2 * (1 - 1 / p - 1 / s) * np.sin(np.asarray(t, dtype=float) * p / 2))


def boundary_r1_case_p_lt2(t, p: float):
    """phi(t) - 1/sin^p(pi/2p) on the edge r=1; >= 0 with equality at t=pi/(2p)."""
    t = np.asarray(t, dtype=float)
    if np.any(t < SINGULAR_CUTOFF) or np.any(t > math.pi / 2):
        raise ValueError(f"t must lie in [{SINGULAR_CUTOFF}, pi/2]")
    a = math.pi / (2 * p)
    phi = (1 - np.cos(p * t) / math.tan(a)) / np.sin(t) ** p
    return _out(phi - 1 / math.sin(a) ** p)


def boundary_r1_case_p_ge9(t, p: float):
    """cos^p t / cos^p(pi/2p) - 1 - tan(pi/2p) cos(pt) on [0, pi/(2p)]; <= 0."""
    t = np.asarray(t, dtype=float)
    a = math.pi / (2 * p)
    if np.any(t < 0) or np.any(t > a):
        raise ValueError("t must lie in [0, pi/(2p)]")
    return _out((np.cos(t) / math.cos(a)) ** p - 1 - math.tan(a) * np.cos(p * t))


# -- edge t = pi, 1 < p < 2 ----------------------------------------------------

def section5_phi(r, p: float):
    """reduced_phi3 on the edge t = pi (w = -r), s = p; must be <= 0 on [0, 1]."""
    r = np.asarray(r, dtype=float)
    a = math.pi / (2 * p)
    return _out((1 - r) ** p / (2 * math.sin(a)) ** p - (1 + r**p) / 2 + r ** (p / 2) / math.tan(a))


def section5_jensen_ratio(r, p: float):
    """((1-r)^2 + 2r sin(pi/p))^(p/2) / (1 + r^p); decreasing, so <= 1 on [0, 1]."""
    r = np.asarray(r, dtype=float)
    return _out(((1 - r) ** 2 + 2 * r * math.sin(math.pi / p)) ** (p / 2) / (1 + r**p))


class Section5Margins(NamedTuple):
    jensen: float  # >= 0 on [4/3, 2]
    quadratic: float  # >= 0 on (1, 4/3]


def section5_aux(p: float) -> Section5Margins:
    a = math.pi / (2 * p)
    cot = 1 / math.tan(a)
    m5 = 2 ** (p - 1) * math.sin(a) ** p - (1 + cot) ** (1 - p / 2)
    m6 = 1 - 4 / (4**p * math.sin(a) ** (2 * p)) - cot**2
    return Section5Margins(m5, m6)


def section5_amgm_margin(p: float) -> float:
    """2^(p-1) - 1 - F(p), F(p) = (p/2) cot^2 + (1 - p/2) cot at angle pi/(2p)."""
    cot = 1 / math.tan(math.pi / (2 * p))
    return 2 ** (p - 1) - 1 - (p / 2 * cot**2 + (1 - p / 2) * cot)


# -- edge t = 0, p >= 9 ----------------------------------------------------------

def section6_phi(r, p: float):
    """reduced_phi4 on the edge t = 0 (w = r); must be <= 0 on [0, 1]."""
    r = np.asarray(r, dtype=float)
    a = math.pi / (2 * p)
    return _out(
        (1 + r) ** p / (2 * math.cos(a)) ** p
        - ((1 + r ** (p / (p - 1))) / 2) ** (p - 1)
        - r ** (p / 2) * math.tan(a)
    )


# lower bounds for r_p on [9, 12], as (left end, right end, bound)
C_TABLE = (
    (9.0, 9.5, Fraction(303, 5000)),
    (9.5, 10.0, Fraction(29, 500)),
    (10.0, 11.0, Fraction(1, 19)),
    (11.0, 12.0, Fraction(1, 20)),
)


def c_table(p: float) -> Optional[float]:
    for lo, hi, c in C_TABLE:
        if lo <= p <= hi:
            return float(c)
    return None


def r_p(p: float) -> float:
    return 2 ** (1 / p) * math.cos(math.pi / (2 * p)) - 1


def L_of_p(p: float) -> float:
    return (math.sqrt(1 - 2 / p) / (1 - 1 / p)) ** p


def _A(x: float, p: float) -> float:
    return x ** (1 / (p - 1)) * (1 + x ** (p / (p - 1))) ** (p - 2) * (1 + x)


@dataclass(frozen=True)
class Section6Margins:
    r_p: float
    rp_vs_half_over_p: float  # r_p - 1/(2p) > 0
    rp_vs_table: Optional[float]  # r_p - c(p) >= 0, only on [9, 12]
    A: float  # A - 1 >= 0
    A_table: Optional[float]  # A(p) - 1 with the tabulated c, on [9, 12]
    h: Optional[float]  # h(p) - 1 > 0, only claimed for p >= 12
    L: float  # L(p) - cot(pi/2p)(sec^p(pi/2p) - 1) >= 0
    L_monotone: float  # L(p) - L(9) >= 0
    y_inequality: float  # (4/pi) atan(y) log(1 + L(9) y) - y^2 at y = tan(pi/2p)
    g_endpoint: float  # g(1 - 2/p) > 0

    def margins(self) -> dict[str, float]:
        return {k: v for k, v in self.__dict__.items() if k != "r_p" and v is not None}


def section6_aux(p: float) -> Section6Margins:
    if not 9 <= p <= 40:
        raise ValueError("large-p margins are tabulated for p in [9, 40]")
    a = math.pi / (2 * p)
    rp = r_p(p)
    c = c_table(p)
    x = 1 / (2 * p)
    h = (1 + (p - 1) * x ** (p / (p - 1))) * x ** (1 / (p - 1))
    y = math.tan(a)
    c9 = L_of_p(9)
    g_end = 2 / p - (p - 1) * (p - 2) / p + (p - 1) * (1 - 2 / p) ** (p / (p - 1))
    return Section6Margins(
        r_p=rp,
        rp_vs_half_over_p=rp - 1 / (2 * p),
        rp_vs_table=None if c is None else rp - c,
        A=_A(rp, p) - 1,
        A_table=None if c is None else _A(c, p) - 1,
        h=h - 1 if p >= 12 else None,
        L=L_of_p(p) - (1 / math.tan(a)) * (1 / math.cos(a) ** p - 1),
        L_monotone=L_of_p(p) - c9,
        y_inequality=(4 / math.pi) * math.atan(y) * math.log(1 + c9 * y) - y * y,
        g_endpoint=g_end,
    )


# -- one-variable monotonicity facts used to shrink the rectangles --------------

def aux_monotone_checks(p: float, n: int = 2000) -> dict[str, float]:
    """Worst margins (>= 0 means the claim holds on the grid).

    p <= 2: lower bound for sin(pt)/(cos t sin^(p-1) t) on [pi/2p, pi/2) and
    1 - p cos^2(pi/2p) >= 0.  p > 2: sin(pt)/(sin t cos^(p-1) t) decreasing on
    [pi/2p, pi/p] and 1 - p sin^2(pi/2p) >= 0.
    """
    a = math.pi / (2 * p)
    if p <= 2:
        t = np.linspace(a, math.pi / 2, n, endpoint=False)
        f = np.sin(p * t) / (np.cos(t) * np.sin(t) ** (p - 1))
        bound = math.tan(a) / math.sin(a) ** p
        return {
            "f_lower_bound": float(np.min(f - bound)),
            "g_at_left_end": 1 - p * math.cos(a) ** 2,
        }
    t = np.linspace(a, 2 * a, n)
    F = np.sin(p * t) / (np.sin(t) * np.cos(t) ** (p - 1))
    return {
        "F_decreasing": float(-np.max(np.diff(F))),
        "h_at_right_end": 1 - p * math.sin(a) ** 2,
    }
