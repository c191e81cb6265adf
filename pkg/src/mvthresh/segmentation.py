"""Recursive mean/variance multilevel thresholding.

Each pass computes mean and deviation of the current intensity range [a, b]
from the histogram, cuts at T1 = mu - k1*sigma and T2 = mu + k2*sigma, freezes
the outer classes [a, T1] and [T2, b], and recurses on [T1+1, T2-1]. After
(n-1)/2 passes the residual range is split once at its rounded mean, which
becomes the middle threshold, for n thresholds total. Low-variance ranges that
cannot be cut any further stop the recursion early with fewer thresholds.

All cut positions are derived from mean/deviation only; the replacement mode
(weighted mean vs. interval midpoint) affects output intensities, not cuts.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .image import LEVELS, MAX_INTENSITY, GrayImage, Histogram, compute_histogram
from .quality import psnr, timed
from .stats import (
    RangeStats,
    SubRange,
    midpoint,
    range_stats,
    round_half_up,
    weighted_mean,
)


class Replacement(enum.Enum):
    """How a class interval collapses to a single output intensity."""

    WEIGHTED_MEAN = "weighted-mean"
    MIDPOINT = "midpoint"


@dataclass(frozen=True)
class SegmentationParams:
    """Requested threshold count, kappa schedule, and replacement mode.

    ``kappa_schedule`` holds one (k1, k2) pair per pass; the last entry is
    reused when the schedule is shorter than (n-1)/2. Asymmetric pairs widen
    or narrow the two cuts independently for skewed histograms.
    """

    n: int
    kappa_schedule: tuple[tuple[float, float], ...] = ((1.0, 1.0),)
    replacement: Replacement = Replacement.WEIGHTED_MEAN

    def __post_init__(self):
        if self.n % 2 == 0 or self.n < 3:
            raise ValueError(f"threshold count must be an odd integer >= 3, got {self.n}")
        schedule = tuple((float(k1), float(k2)) for k1, k2 in self.kappa_schedule)
        if not schedule:
            raise ValueError("kappa schedule must not be empty")
        for k1, k2 in schedule:
            if not (math.isfinite(k1) and k1 > 0.0 and math.isfinite(k2) and k2 > 0.0):
                raise ValueError(f"kappa values must be positive and finite, got ({k1}, {k2})")
        object.__setattr__(self, "kappa_schedule", schedule)

    @property
    def passes(self) -> int:
        return (self.n - 1) // 2

    def kappa_for(self, index: int) -> tuple[float, float]:
        return self.kappa_schedule[min(index, len(self.kappa_schedule) - 1)]

    def to_dict(self) -> dict:
        return {
            "levels": self.n,
            "kappa_schedule": [list(pair) for pair in self.kappa_schedule],
            "replacement": self.replacement.value,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "SegmentationParams":
        return cls(
            n=int(payload["levels"]),
            kappa_schedule=tuple(tuple(pair) for pair in payload["kappa_schedule"]),
            replacement=Replacement(payload["replacement"]),
        )


@dataclass(frozen=True, eq=False)
class SegmentationResult:
    """Thresholds, class partition of [0,255], and the derived lookup table."""

    thresholds: tuple[int, ...]
    classes: tuple[tuple[SubRange, int], ...]
    lut: np.ndarray = field(init=False, repr=False)
    effective_n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "thresholds", tuple(self.thresholds))
        object.__setattr__(self, "classes", tuple(self.classes))
        if not self.thresholds or not self.classes:
            raise ValueError("thresholds and classes must be non-empty")
        for t in self.thresholds:
            if not 0 <= t <= MAX_INTENSITY:
                raise ValueError(f"threshold {t} outside [0, 255]")
        if any(a >= b for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise ValueError(f"thresholds not strictly increasing: {self.thresholds}")

        lut = np.empty(LEVELS, dtype=np.uint8)
        position = 0
        for interval, value in self.classes:
            if interval.lo != position:
                raise ValueError("classes must tile [0, 255] without gaps or overlaps")
            if not interval.contains(value):
                raise ValueError(f"replacement {value} outside its interval {interval}")
            lut[interval.lo : interval.hi + 1] = value
            position = interval.hi + 1
        if position != LEVELS:
            raise ValueError("classes must cover [0, 255] completely")
        lut.flags.writeable = False
        object.__setattr__(self, "lut", lut)
        object.__setattr__(self, "effective_n", len(self.thresholds))

    def __eq__(self, other):
        if not isinstance(other, SegmentationResult):
            return NotImplemented
        return self.thresholds == other.thresholds and self.classes == other.classes

    def __hash__(self):
        return hash((self.thresholds, self.classes))


def step_thresholds(
    stats: RangeStats, r: SubRange, kappa1: float, kappa2: float
) -> tuple[int, int] | None:
    """Cut positions mu - k1*sigma and mu + k2*sigma, clamped into ``r``.

    Returns None (degenerate) when the range is empty of pixels or the cuts
    leave no interior sub-range to recurse on.
    """
    if stats.empty:
        return None
    t1 = min(max(round_half_up(stats.mean - kappa1 * stats.std), r.lo), r.hi)
    t2 = min(max(round_half_up(stats.mean + kappa2 * stats.std), r.lo), r.hi)
    if t2 - t1 < 2:
        return None
    return t1, t2


def _class_value(hist: Histogram, interval: SubRange, mode: Replacement) -> int:
    if mode is Replacement.MIDPOINT:
        return midpoint(interval)
    value = weighted_mean(hist, interval)
    # a pixel-empty interval has no weighted mean; its midpoint is the only
    # representable stand-in that stays inside the interval
    return midpoint(interval) if value is None else value


def _final_split(
    hist: Histogram, r: SubRange, mode: Replacement
) -> tuple[int, list[tuple[SubRange, int]]]:
    """Split the residual range at its rounded mean (the middle threshold)."""
    split = weighted_mean(hist, r)
    if split is None:
        split = midpoint(r)
    upper_empty = split >= r.hi or int(hist.bins[split + 1 : r.hi + 1].sum()) == 0
    if upper_empty:
        # nothing above the mean: keep the residual range as one class so
        # every level it covers maps to the same value the pixels map to
        return split, [(r, _class_value(hist, r, mode))]
    low = SubRange(r.lo, split)
    high = SubRange(split + 1, r.hi)
    return split, [
        (low, _class_value(hist, low, mode)),
        (high, _class_value(hist, high, mode)),
    ]


def segment(hist: Histogram, params: SegmentationParams) -> SegmentationResult:
    """Run the recursive segmentation over a histogram.

    Degenerate passes (zero variance, cuts that collapse, or a pixel-empty
    residual) stop the recursion early; the result then reports
    ``effective_n`` < ``params.n``.
    """
    if hist.total == 0:
        raise ValueError("cannot segment an empty image")
    lower: list[tuple[SubRange, int]] = []
    upper: list[tuple[SubRange, int]] = []
    cuts_low: list[int] = []
    cuts_high: list[int] = []
    r = SubRange(0, MAX_INTENSITY)
    for index in range(params.passes):
        kappa1, kappa2 = params.kappa_for(index)
        cut = step_thresholds(range_stats(hist, r), r, kappa1, kappa2)
        if cut is None:
            break
        t1, t2 = cut
        low_iv = SubRange(r.lo, t1)
        high_iv = SubRange(t2, r.hi)
        lower.append((low_iv, _class_value(hist, low_iv, params.replacement)))
        upper.append((high_iv, _class_value(hist, high_iv, params.replacement)))
        cuts_low.append(t1)
        cuts_high.append(t2)
        r = SubRange(t1 + 1, t2 - 1)
    middle, middle_classes = _final_split(hist, r, params.replacement)
    thresholds = tuple(cuts_low) + (middle,) + tuple(reversed(cuts_high))
    classes = tuple(lower) + tuple(middle_classes) + tuple(reversed(upper))
    return SegmentationResult(thresholds=thresholds, classes=classes)


def apply_mapping(image: GrayImage, result: SegmentationResult) -> GrayImage:
    """Quantize every pixel through the result's lookup table."""
    return GrayImage(image.width, image.height, result.lut[image.pixels])


def segment_image(
    image: GrayImage, params: SegmentationParams
) -> tuple[SegmentationResult, GrayImage]:
    """Full pipeline: histogram, recursive cuts, quantized raster."""
    result = segment(compute_histogram(image), params)
    return result, apply_mapping(image, result)


@dataclass(frozen=True)
class SweepPoint:
    """One evaluated threshold count in a PSNR sweep."""

    n: int
    psnr_db: float
    elapsed_ms: float


def auto_select_n(
    image: GrayImage,
    base: SegmentationParams,
    epsilon: float,
    n_max: int,
) -> tuple[int, list[SweepPoint]]:
    """Pick the threshold count where PSNR stops improving.

    Evaluates n = 3, 5, 7, ... and returns the smallest n whose PSNR gain to
    n+2 falls below ``epsilon`` dB, together with every evaluated sweep point.
    An infinite PSNR (exact reconstruction) saturates immediately; without
    saturation the sweep runs through ``n_max`` and returns it.
    """
    if not math.isfinite(epsilon) or epsilon <= 0.0:
        raise ValueError("epsilon must be positive and finite")
    if n_max % 2 == 0 or n_max < 3:
        raise ValueError(f"n_max must be an odd integer >= 3, got {n_max}")
    sweep: list[SweepPoint] = []
    previous: tuple[int, float] | None = None
    for n in range(3, n_max + 1, 2):
        params = replace(base, n=n)
        (_, quantized), elapsed = timed(segment_image, image, params)
        value = psnr(image, quantized)
        sweep.append(SweepPoint(n=n, psnr_db=value, elapsed_ms=elapsed))
        if math.isinf(value):
            return n, sweep
        if previous is not None and value - previous[1] < epsilon:
            return previous[0], sweep
        previous = (n, value)
    return n_max, sweep
