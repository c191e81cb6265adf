"""Image quality (MSE, PSNR) and wall-clock measurement.

PSNR uses the 8-bit peak of 255. A perfect reconstruction has MSE 0 and an
explicit infinite PSNR (math.inf), serialized as the string "inf" — never a
floating-point overflow.
"""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Callable, TypeVar

import numpy as np

from .image import GrayImage

if TYPE_CHECKING:
    from .segmentation import SegmentationParams

T = TypeVar("T")

PEAK = 255


def mse(a: GrayImage, b: GrayImage) -> float:
    """Mean squared error, accumulated exactly in integers before dividing."""
    if (a.width, a.height) != (b.width, b.height):
        raise ValueError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    diff = a.pixels.astype(np.int64) - b.pixels.astype(np.int64)
    return int((diff * diff).sum()) / diff.size


def psnr(a: GrayImage, b: GrayImage) -> float:
    """Peak signal-to-noise ratio in dB; math.inf for identical images."""
    err = mse(a, b)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / err)


def timed(fn: Callable[..., T], *args, **kwargs) -> tuple[T, float]:
    """Run ``fn`` once; returns (result, elapsed ms) on the monotonic clock."""
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, (time.perf_counter() - start) * 1000.0


def median_elapsed_ms(fn: Callable[..., T], *args, runs: int = 20, **kwargs) -> tuple[T, float]:
    """Median wall-clock over ``runs`` sequential warm executions.

    Returns the last run's result, which for pure operations equals every
    other run's.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    times = []
    out = None
    for _ in range(runs):
        out, elapsed = timed(fn, *args, **kwargs)
        times.append(elapsed)
    return out, statistics.median(times)


def format_db(value: float) -> str:
    """Serialize a dB value; infinity becomes the sentinel string "inf"."""
    return "inf" if math.isinf(value) else repr(value)


def parse_db(text: Any) -> float:
    if text == "inf":
        return math.inf
    return float(text)


@dataclass(frozen=True)
class QualityReport:
    """MSE, PSNR and elapsed time for one segmentation run."""

    mse: float
    psnr_db: float
    elapsed_ms: float
    params: "SegmentationParams"

    def __post_init__(self):
        if (self.mse == 0.0) != math.isinf(self.psnr_db):
            raise ValueError("psnr must be the infinity sentinel exactly when mse is 0")

    def to_dict(self) -> dict:
        return {
            "mse": self.mse,
            "psnr_db": format_db(self.psnr_db),
            "elapsed_ms": self.elapsed_ms,
            "params": self.params.to_dict(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "QualityReport":
        from .segmentation import SegmentationParams

        return cls(
            mse=float(payload["mse"]),
            psnr_db=parse_db(payload["psnr_db"]),
            elapsed_ms=float(payload["elapsed_ms"]),
            params=SegmentationParams.from_dict(payload["params"]),
        )
