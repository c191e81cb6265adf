"""Deterministic synthetic grayscale images for tests and benchmarks.

Each generator is seeded and pure, so fixture corpora are reproducible
byte-for-byte. The images imitate the smooth content and roughly bell-shaped
histograms of photographic material.
"""

from __future__ import annotations

import numpy as np

from .image import GrayImage


def _quantize(field: np.ndarray) -> GrayImage:
    return GrayImage.from_array(np.clip(np.rint(field), 0, 255).astype(np.uint8))


def gradient_sky(size: int = 256) -> GrayImage:
    """Horizon-style diagonal ramp with mild banding."""
    y, x = np.mgrid[0:size, 0:size]
    field = 40 + 150 * (x + 2 * y) / (3 * (size - 1))
    field += 10 * np.sin(2 * np.pi * y / 37.0)
    return _quantize(field)


def soft_blobs(size: int = 256, seed: int = 7) -> GrayImage:
    """A few wide Gaussian bumps over a midtone background plus grain."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size]
    field = np.full((size, size), 110.0)
    for _ in range(6):
        cx, cy = rng.uniform(0, size, size=2)
        radius = rng.uniform(size / 8, size / 3)
        amplitude = rng.uniform(-70, 90)
        field += amplitude * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2 * radius**2))
    field += rng.normal(0, 6, size=(size, size))
    return _quantize(field)


def vignette(size: int = 256) -> GrayImage:
    """Bright center with radial falloff, like a vignetted photograph."""
    y, x = np.mgrid[0:size, 0:size]
    c = (size - 1) / 2
    r = np.hypot(x - c, y - c) / c
    field = 215 - 160 * r**1.5 + 15 * np.cos(2 * np.pi * x / 61.0)
    return _quantize(field)


def film_grain(size: int = 256, seed: int = 3) -> GrayImage:
    """Gaussian-histogram noise field around a midtone."""
    rng = np.random.default_rng(seed)
    field = rng.normal(128, 34, size=(size, size))
    return _quantize(field)


GENERATORS = {
    "gradient_sky": gradient_sky,
    "soft_blobs": soft_blobs,
    "vignette": vignette,
    "film_grain": film_grain,
}
