"""Shared assertion helpers for the segmentation invariants."""

import numpy as np


def assert_valid_partition(result, requested_n=None):
    """Check every structural invariant of a segmentation result."""
    ts = result.thresholds
    assert len(ts) >= 1
    assert all(0 <= t <= 255 for t in ts)
    assert all(a < b for a, b in zip(ts, ts[1:])), f"thresholds not increasing: {ts}"
    assert result.effective_n == len(ts)
    if requested_n is not None:
        assert result.effective_n <= requested_n

    position = 0
    for interval, value in result.classes:
        assert interval.lo == position, "gap or overlap in class tiling"
        assert interval.lo <= value <= interval.hi, "replacement escapes its interval"
        position = interval.hi + 1
    assert position == 256, "classes do not cover [0, 255]"

    lut = result.lut
    assert lut.shape == (256,)
    assert np.all(np.diff(lut.astype(np.int64)) >= 0), "lut not monotone"
    for interval, value in result.classes:
        assert np.all(lut[interval.lo : interval.hi + 1] == value)
