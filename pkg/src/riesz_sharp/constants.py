"""Lower bounds for B_{p,s} from the near-extremal family, and the proven
sharp values.

For 1 < p <= 2 the bound is the reciprocal of

    inf_{0<=t<=1} (1 + t^s)^(1/s) / sqrt(1 + t^2 - 2 t cos(pi/p)),

whose minimiser sits at t=0 (s <= 1), at t=1, or at the unique interior zero
of psi.  For p > 2 the same machinery runs with the dual exponent, because
cos(pi/p) = -cos(pi/p').
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .params import ParamSpace

GRID_POINTS = 10**6
ROOT_TOL = 1e-12
ROOT_FLOOR = 1e-12
GRID_RTOL = 1e-8
SHARP_TOL = 1e-10


class NoSharpConstant(ValueError):
    """Raised for (p, s) outside every proven regime; carries the lower bound."""

    def __init__(self, ps: ParamSpace, lower: "ConstantResult"):
        super().__init__(
            f"no sharp constant proven for p={ps.p!r}, s={ps.s!r}; "
            f"lower bound {lower.value!r} (case {lower.case_label})"
        )
        self.params = ps
        self.lower_bound = lower


class ClassificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ConstantResult:
    value: float
    case_label: int
    minimizer_t: float
    t_tilde: Optional[float] = None
    # exponent the case analysis ran on (p itself, or p' when p > 2)
    p_effective: Optional[float] = None


def _check_t(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any((t < 0) | (t > 1)) or np.any(np.isnan(t)):
        raise ValueError("t must lie in [0, 1]")
    return t


def _scalar(a):
    return float(a) if np.ndim(a) == 0 else a


def branch_objective(t, p: float, s: float, sign: int = -1):
    """(1 + t^s)^(1/s) / sqrt(1 + t^2 + 2*sign*t*cos(pi/p)), vectorised.

    ``sign=-1`` is the branch that carries the infimum for p <= 2; the
    normalisation alpha+beta=1, alpha-beta=t of the two-parameter ratio
    produces ``sign=+1`` for t >= 0 and ``sign=-1`` for t < 0.
    """
    t = np.asarray(t, dtype=float)
    c = math.cos(math.pi / p)
    return (1 + t**s) ** (1 / s) / np.sqrt(1 + t * t + 2 * sign * t * c)


def reduced_objective(t, ps: ParamSpace):
    if not ps.p <= 2:
        raise ValueError("reduced objective is stated for 1 < p <= 2; pass the dual exponent")
    return _scalar(branch_objective(_check_t(t), ps.p, ps.s, -1))


def psi(t, ps: ParamSpace):
    """t^(s-1) - t + cos(pi/p) (1 - t^s); same sign as the derivative of G."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(t > 1):
        raise ValueError("t must lie in [0, 1]")
    if ps.s < 1 and np.any(t <= 0):
        raise ValueError("psi is singular at t=0 when s < 1")
    s = ps.s
    return _scalar(t ** (s - 1) - t + math.cos(math.pi / ps.p) * (1 - t**s))


def case_discriminant(ps: ParamSpace) -> float:
    """s - 2 - s cos(pi/p): the sign of psi'' near t=1, which splits cases 1 and 3."""
    return ps.s - 2 - ps.s * math.cos(math.pi / ps.p)


def classify_case(ps: ParamSpace) -> int:
    if not 1 < ps.p <= 2:
        raise ValueError(f"case analysis needs 1 < p <= 2, got p={ps.p}")
    if ps.s <= 1:
        return 4
    if ps.s >= 2:
        return 2
    return 1 if case_discriminant(ps) >= 0 else 3


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = ROOT_TOL) -> float:
    """Maximiser of a unimodal f on [a, b]."""
    invphi = (math.sqrt(5) - 1) / 2
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float = ROOT_TOL) -> float:
    """Root of f on [lo, hi] given f(lo) < 0 < f(hi) (either orientation works)."""
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    # the last bracket is at most tol wide; polish to the smaller residual
    return lo if abs(f(lo)) <= abs(f(hi)) else hi


def find_t_tilde(ps: ParamSpace) -> float:
    """Interior zero of psi in case 3, where the reduced objective is minimal."""
    if classify_case(ps) != 3:
        raise ClassificationError(f"p={ps.p}, s={ps.s} is not an interior-minimum case")
    if ps.p >= 2:
        # cos(pi/2) = 0: psi = t^(s-1) - t > 0 inside, so the minimum sits at t = 0
        return 0.0
    f = lambda t: psi(t, ps)
    t0 = golden_section_max(f, ROOT_FLOOR, 1.0)
    if f(t0) <= 0:
        raise ClassificationError(f"psi has no positive maximum for p={ps.p}, s={ps.s}")
    lo = ROOT_FLOOR
    if f(lo) >= 0:
        # root below the floor: bisect in log t instead
        g = lambda x: f(math.exp(x))
        floor = math.log(np.finfo(float).tiny)
        if g(floor) >= 0:
            raise ClassificationError(f"psi root below the double range for p={ps.p}, s={ps.s}")
        return math.exp(bisect(g, floor, math.log(lo), tol=ROOT_TOL))
    return bisect(f, lo, t0)


def _case_machinery(p: float, s: float) -> ConstantResult:
    ps = ParamSpace(p, s)
    case = classify_case(ps)
    if case == 4:
        return ConstantResult(1.0, 4, 0.0, None, p)
    if case in (1, 2):
        value = 2 ** (1 - 1 / s) * math.sin(math.pi / (2 * p))
        return ConstantResult(value, case, 1.0, None, p)
    tt = find_t_tilde(ps)
    value = 1.0 / float(branch_objective(tt, p, s, -1))
    return ConstantResult(value, 3, tt, tt, p)


def grid_infimum(ps: ParamSpace, n: int = GRID_POINTS) -> tuple[float, float, int]:
    """Brute-force infimum of the two-branch objective on n points of [0, 1].

    Returns (infimum, argmin t, branch sign).  Independent of the case
    analysis and of duality: both branches are evaluated with the given p.
    """
    t = np.linspace(0.0, 1.0, n)
    best = None
    for sign in (-1, 1):
        v = branch_objective(t, ps.p, ps.s, sign)
        i = int(np.argmin(v))
        if best is None or v[i] < best[0]:
            best = (float(v[i]), float(t[i]), sign)
    return best


def lower_bound(ps: ParamSpace, check: bool = True, n: int = GRID_POINTS) -> ConstantResult:
    """(inf of the reduced objective)^-1, via the case analysis.

    With ``check`` the result is compared against ``grid_infimum`` and a
    mismatch beyond 1e-8 relative raises.
    """
    p_eff = ps.p if ps.p <= 2 else ps.dual_p
    result = _case_machinery(p_eff, ps.s)
    if check:
        inf, _, _ = grid_infimum(ps, n)
        oracle = 1.0 / inf
        if abs(oracle - result.value) > GRID_RTOL * oracle:
            raise ClassificationError(
                f"case {result.case_label} value {result.value!r} disagrees with grid {oracle!r}"
            )
    return result


def regime_formula(ps: ParamSpace, regime: int) -> float:
    if regime == 1:
        return 2 ** (1 - 1 / ps.s) * math.sin(math.pi / (2 * ps.p))
    if regime == 2:
        return 2 ** (1 - 1 / ps.s) * math.cos(math.pi / (2 * ps.p))
    if regime == 3:
        return 1.0
    raise ValueError(f"unknown regime {regime}")


def sharp_constant(ps: ParamSpace) -> float:
    regime = ps.regime
    if regime is None:
        raise NoSharpConstant(ps, lower_bound(ps, check=False))
    return regime_formula(ps, regime)


def regime_flag(ps: ParamSpace, result: Optional[ConstantResult] = None) -> str:
    """'sharp' inside a proven regime; 'conjectured' when the bound has the
    closed t=1 form but sharpness is unproven; 'lower-bound' otherwise."""
    if ps.regime is not None:
        return "sharp"
    result = result or lower_bound(ps, check=False)
    return "conjectured" if result.case_label in (1, 2) else "lower-bound"
