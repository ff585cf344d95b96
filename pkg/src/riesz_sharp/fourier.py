"""Trigonometric polynomials on the unit circle, the analytic/co-analytic
projections acting on them, and quadrature of circle means.

Projections act on coefficient vectors, so they are exact; samples are only
ever produced from coefficients (or handed in by a caller) and are used for
norms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .params import ParamSpace

DEFAULT_GRID = 2**14
DENOMINATOR_FLOOR = 1e-300


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """Finite Fourier series sum_{n=-N}^{N} c_n e^{i n theta}.

    ``coeffs[k]`` holds the amplitude of frequency ``k - N``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs)
        if c.ndim != 1 or c.size % 2 != 1:
            raise ValueError("coefficient vector must have odd length 2N+1")
        object.__setattr__(self, "coeffs", _frozen(c))

    @property
    def degree_bound(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def frequencies(self) -> np.ndarray:
        n = self.degree_bound
        return np.arange(-n, n + 1)

    @classmethod
    def zeros(cls, degree_bound: int) -> "TrigPoly":
        return cls(np.zeros(2 * degree_bound + 1, dtype=complex))

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, complex]) -> "TrigPoly":
        n = max((abs(k) for k in coeffs), default=0)
        c = np.zeros(2 * n + 1, dtype=complex)
        for k, v in coeffs.items():
            c[k + n] = v
        return cls(c)

    @classmethod
    def random(cls, degree_bound: int, rng: np.random.Generator) -> "TrigPoly":
        """Complex Gaussian coefficients on every frequency in [-N, N]."""
        size = 2 * degree_bound + 1
        return cls(rng.standard_normal(size) + 1j * rng.standard_normal(size))

    def coefficient(self, n: int) -> complex:
        N = self.degree_bound
        if abs(n) > N:
            return 0j
        return complex(self.coeffs[n + N])

    def with_degree_bound(self, degree_bound: int) -> "TrigPoly":
        """Zero-pad to a larger bound (never truncates nonzero modes)."""
        N = self.degree_bound
        if degree_bound < N:
            if np.any(self.coeffs[: N - degree_bound]) or np.any(self.coeffs[N + degree_bound + 1 :]):
                raise ValueError("cannot shrink degree bound below a nonzero mode")
            return TrigPoly(self.coeffs[N - degree_bound : N + degree_bound + 1])
        pad = degree_bound - N
        return TrigPoly(np.pad(self.coeffs, pad))

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            return NotImplemented
        n = max(self.degree_bound, other.degree_bound)
        return TrigPoly(self.with_degree_bound(n).coeffs + other.with_degree_bound(n).coeffs)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self + (-1) * other

    def __mul__(self, scalar: complex) -> "TrigPoly":
        if not np.isscalar(scalar):
            return NotImplemented
        return TrigPoly(self.coeffs * scalar)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrigPoly):
            return NotImplemented
        n = max(self.degree_bound, other.degree_bound)
        return bool(np.array_equal(self.with_degree_bound(n).coeffs, other.with_degree_bound(n).coeffs))

    def conj(self) -> "TrigPoly":
        """Pointwise complex conjugate on the circle: c_n -> conj(c_{-n})."""
        return TrigPoly(np.conj(self.coeffs[::-1]))

    def evaluate(self, theta, radius: float = 1.0) -> np.ndarray:
        """Harmonic extension at radius * e^{i theta} (direct summation)."""
        theta = np.asarray(theta, dtype=float)
        n = self.frequencies
        weights = self.coeffs * radius ** np.abs(n)
        return np.exp(1j * np.multiply.outer(theta, n)) @ weights

    def sample(self, size: int = DEFAULT_GRID, radius: float = 1.0) -> "CircleGrid":
        """Samples of the dilate on an equispaced grid, via one inverse FFT.

        Frequencies beyond the Nyquist range are folded onto their aliases,
        so the samples are exact values of the polynomial for any ``size``.
        """
        _check_grid(size, radius)
        n = self.frequencies
        spectrum = np.zeros(size, dtype=complex)
        np.add.at(spectrum, np.mod(n, size), self.coeffs * radius ** np.abs(n))
        return CircleGrid(size, radius, np.fft.ifft(spectrum) * size)


def _check_grid(size: int, radius: float) -> None:
    if size < 1 or size & (size - 1):
        raise ValueError(f"grid size must be a positive power of two, got {size}")
    if not 0.0 < radius <= 1.0:
        raise ValueError(f"radius must lie in (0, 1], got {radius}")


@dataclass(frozen=True, eq=False)
class CircleGrid:
    """Samples at radius * e^{2 pi i k / size}, k = 0..size-1."""

    size: int
    radius: float
    samples: np.ndarray

    def __post_init__(self):
        _check_grid(self.size, self.radius)
        s = np.asarray(self.samples)
        if s.shape != (self.size,):
            raise ValueError(f"expected {self.size} samples, got shape {s.shape}")
        object.__setattr__(self, "samples", _frozen(s))

    @property
    def theta(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.size) / self.size

    def spectrum(self) -> np.ndarray:
        """DFT coefficients normalised so that index k is the mode fftfreq(k)."""
        return np.fft.fft(self.samples) / self.size

    def to_trigpoly(self, degree_bound: int) -> TrigPoly:
        """Recover a polynomial of the given bound, undoing the dilation."""
        if 2 * degree_bound >= self.size:
            raise ValueError("degree bound must be below half the grid size")
        n = np.arange(-degree_bound, degree_bound + 1)
        c = self.spectrum()[np.mod(n, self.size)] / self.radius ** np.abs(n)
        return TrigPoly(c)


def project_plus(f: TrigPoly) -> TrigPoly:
    """Keep the modes n >= 0 (the constant term is analytic)."""
    return TrigPoly(np.where(f.frequencies >= 0, f.coeffs, 0))


def project_minus(f: TrigPoly) -> TrigPoly:
    return TrigPoly(np.where(f.frequencies < 0, f.coeffs, 0))


def split_samples(g: CircleGrid) -> tuple[CircleGrid, CircleGrid]:
    """Analytic and co-analytic parts of sampled data by DFT truncation.

    The Nyquist mode is assigned to the negative side, as ``np.fft.fftfreq``
    does.
    """
    c = g.spectrum()
    k = np.fft.fftfreq(g.size, 1.0 / g.size)
    plus = np.where(k >= 0, c, 0)
    minus = c - plus
    make = lambda spectrum: CircleGrid(g.size, g.radius, np.fft.ifft(spectrum) * g.size)
    return make(plus), make(minus)


def lp_norm(g: CircleGrid, p: float) -> float:
    """(size^-1 sum |samples|^p)^(1/p): rectangle rule for the circle mean."""
    if not p > 0:
        raise ValueError(f"exponent must be positive, got {p}")
    a = np.abs(g.samples)
    scale = a.max(initial=0.0)
    if scale == 0.0:
        return 0.0
    # factor out the max so large p cannot overflow
    return float(scale * np.mean((a / scale) ** p) ** (1.0 / p))


def s_aggregate(a: CircleGrid, b: CircleGrid, s: float) -> CircleGrid:
    if a.size != b.size or a.radius != b.radius:
        raise ValueError("grids differ in size or radius")
    if not s > 0:
        raise ValueError(f"aggregation exponent must be positive, got {s}")
    x, y = np.abs(a.samples), np.abs(b.samples)
    top = np.maximum(x, y)
    safe = np.where(top > 0, top, 1.0)
    agg = top * ((x / safe) ** s + (y / safe) ** s) ** (1.0 / s)
    return CircleGrid(a.size, a.radius, agg.astype(complex))


def reverse_ratio(f: TrigPoly, ps: ParamSpace, size: int = DEFAULT_GRID) -> float:
    """||f||_p / ||(|P+f|^s + |P-f|^s)^(1/s)||_p on the unit circle."""
    if 2 * f.degree_bound >= size:
        raise ValueError(f"degree {f.degree_bound} needs a grid larger than {size}")
    num = lp_norm(f.sample(size), ps.p)
    agg = s_aggregate(project_plus(f).sample(size), project_minus(f).sample(size), ps.s)
    den = lp_norm(agg, ps.p)
    if den < DENOMINATOR_FLOOR:
        raise ValueError("degenerate input: projection aggregate vanishes (f == 0)")
    return num / den
