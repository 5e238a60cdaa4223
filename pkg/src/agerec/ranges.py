"""Age ranges: the closed interval of reader ages every other module works on."""

from __future__ import annotations

import math
from dataclasses import dataclass

AGE_DOMAIN = (0.0, 18.0)


@dataclass(frozen=True)
class AgeRange:
    """Closed interval [lo, hi] of reader ages in years."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"age bounds must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"invalid age range: lo={self.lo} > hi={self.hi}")

    @property
    def mean(self) -> float:
        return (self.lo + self.hi) / 2.0

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi
