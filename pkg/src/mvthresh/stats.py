"""Sub-range statistics over a histogram: count, mean, deviation, replacements.

Sums are accumulated as exact Python integers before a single real division,
so results are deterministic across platforms. Standard deviation is the
population form (divide by N): the histogram is the whole pixel population.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image import MAX_INTENSITY, Histogram

_VALUES = np.arange(256, dtype=np.int64)


@dataclass(frozen=True)
class SubRange:
    """Inclusive intensity interval [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self):
        if not (0 <= self.lo <= self.hi <= MAX_INTENSITY):
            raise ValueError(f"invalid sub-range [{self.lo}, {self.hi}]")

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class RangeStats:
    """Pixel count, mean and population std of one sub-range.

    An empty sub-range has ``count == 0`` and ``mean is std is None``;
    it is a regular outcome, not an error.
    """

    count: int
    mean: float | None
    std: float | None

    @property
    def empty(self) -> bool:
        return self.count == 0


def _moments(hist: Histogram, r: SubRange) -> tuple[int, int, int]:
    seg = hist.bins[r.lo : r.hi + 1]
    values = _VALUES[r.lo : r.hi + 1]
    s0 = int(seg.sum())
    s1 = int((values * seg).sum())
    s2 = int((values * values * seg).sum())
    return s0, s1, s2


def range_stats(hist: Histogram, r: SubRange) -> RangeStats:
    """Count, mean and std of all pixels with intensity in ``r``."""
    s0, s1, s2 = _moments(hist, r)
    if s0 == 0:
        return RangeStats(count=0, mean=None, std=None)
    mean = s1 / s0
    # exact integer numerator: s0*s2 - s1^2 == s0^2 * variance
    var = (s0 * s2 - s1 * s1) / (s0 * s0)
    return RangeStats(count=s0, mean=mean, std=math.sqrt(var))


def weighted_mean(hist: Histogram, r: SubRange) -> int | None:
    """Count-weighted intensity mean over ``r``, rounded half up.

    Returns None when the sub-range holds no pixels.
    """
    seg = hist.bins[r.lo : r.hi + 1]
    s0 = int(seg.sum())
    if s0 == 0:
        return None
    s1 = int((_VALUES[r.lo : r.hi + 1] * seg).sum())
    # round-half-up of s1/s0 in pure integer arithmetic
    return (2 * s1 + s0) // (2 * s0)


def midpoint(r: SubRange) -> int:
    """Middle intensity of the sub-range, floor((lo+hi)/2)."""
    return (r.lo + r.hi) // 2


def round_half_up(x: float) -> int:
    """Round to the nearest integer, halves toward +infinity."""
    return math.floor(x + 0.5)
