from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class ParamSpace:
    """Lebesgue exponent ``p`` and aggregation exponent ``s``."""

    p: float
    s: float

    def __post_init__(self):
        if not (math.isfinite(self.p) and self.p > 1):
            raise ValueError(f"p must be a finite real > 1, got {self.p}")
        if not (math.isfinite(self.s) and self.s > 0):
            raise ValueError(f"s must be a finite real > 0, got {self.s}")

    @property
    def dual_p(self) -> float:
        return self.p / (self.p - 1)

    @property
    def in_regime1(self) -> bool:
        return 1 < self.p <= 2 and self.s >= self.p

    @property
    def in_regime2(self) -> bool:
        return self.p >= 9 and self.s >= self.dual_p

    @property
    def in_regime3(self) -> bool:
        return 0 < self.s <= 1

    @property
    def regime(self) -> Optional[int]:
        """Which proven part applies (1, 2 or 3), or None.  The parts are disjoint."""
        if self.in_regime3:
            return 3
        if self.in_regime1:
            return 1
        if self.in_regime2:
            return 2
        return None
