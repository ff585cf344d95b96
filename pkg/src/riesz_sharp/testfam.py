"""Near-extremal family f = alpha Re g + i beta Im g, g = ((1+z)/(1-z))^(2 gamma/pi).

On the boundary arg g = +-gamma, so the ratio of the aggregate norm to the
norm of f equals the closed form at angle gamma up to constant terms; those
become negligible once the L^p norm of g blows up, which happens as
gamma -> pi/(2p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fourier import CircleGrid, lp_norm, s_aggregate, split_samples
from .params import ParamSpace


@dataclass(frozen=True)
class TestFamilyParams:
    __test__ = False  # keep pytest from collecting this

    alpha: float
    beta: float
    gamma: float
    rho: float

    def __post_init__(self):
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("(alpha, beta) must not both vanish")
        if not 0 < self.gamma < math.pi / 2:
            raise ValueError(f"gamma must lie in (0, pi/2), got {self.gamma}")
        if not 0 < self.rho < 1:
            raise ValueError(f"rho must lie in (0, 1), got {self.rho}")


def critical_gamma(p: float) -> float:
    """Angle at which |g|^p stops being integrable on the circle."""
    return math.pi / (2 * p)


def eval_g_gamma(gamma: float, z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise ValueError("g_gamma is only defined on the open unit disk")
    out = np.exp((2 * gamma / math.pi) * np.log((1 + z) / (1 - z)))
    return out[()] if out.ndim == 0 else out


def build_test_function(tp: TestFamilyParams, size: int) -> CircleGrid:
    theta = 2 * np.pi * np.arange(size) / size
    g = eval_g_gamma(tp.gamma, tp.rho * np.exp(1j * theta))
    return CircleGrid(size, tp.rho, tp.alpha * g.real + 1j * tp.beta * g.imag)


def closed_form_T(alpha: float, beta: float, ps: ParamSpace) -> float:
    if alpha == 0 and beta == 0:
        raise ValueError("(alpha, beta) must not both vanish")
    s, a = ps.s, math.pi / (2 * ps.p)
    top = max(abs(alpha + beta), abs(alpha - beta))
    num = top * ((abs(alpha + beta) / top) ** s + (abs(alpha - beta) / top) ** s) ** (1 / s)
    den = 2 * math.sqrt(alpha**2 * math.cos(a) ** 2 + beta**2 * math.sin(a) ** 2)
    return num / den


def empirical_ratio(tp: TestFamilyParams, ps: ParamSpace, size: int) -> float:
    """||(|P+f|^s + |P-f|^s)^(1/s)||_p / ||f||_p for the sampled dilate."""
    f = build_test_function(tp, size)
    plus, minus = split_samples(f)
    den = lp_norm(f, ps.p)
    if den == 0:
        raise ValueError("test function vanishes on the grid")
    return lp_norm(s_aggregate(plus, minus, ps.s), ps.p) / den


def limit_ratio_check(tp: TestFamilyParams, ps: ParamSpace, size: int) -> float:
    """Relative deviation of the empirical ratio from ``closed_form_T``."""
    target = closed_form_T(tp.alpha, tp.beta, ps)
    return abs(empirical_ratio(tp, ps, size) - target) / target


def refine(tp: TestFamilyParams, size: int, target_gamma: float) -> tuple[TestFamilyParams, int]:
    """One refinement step: halve the gap to ``target_gamma`` and to rho=1, double the grid."""
    gamma = target_gamma - (target_gamma - tp.gamma) / 2
    rho = 1 - (1 - tp.rho) / 2
    return TestFamilyParams(tp.alpha, tp.beta, gamma, rho), 2 * size
