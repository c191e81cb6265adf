"""8-bit grayscale rasters, intensity histograms, and PGM (P2/P5) file I/O.

Images are immutable value objects backed by read-only numpy arrays. All
statistics downstream are computed from the 256-bin histogram, never by
rescanning pixels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

LEVELS = 256
MAX_INTENSITY = 255


class PgmError(ValueError):
    """Base class for PGM decoding failures."""


class PgmFormatError(PgmError):
    """Malformed magic number or header."""


class PgmDepthError(PgmError):
    """Sample depth other than maxval 255."""


class PgmLengthError(PgmError):
    """Pixel payload shorter than width*height."""


def _frozen_copy(arr: np.ndarray) -> np.ndarray:
    """Contiguous private copy with the write flag cleared."""
    out = arr.copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Single-channel 8-bit raster, row-major with top-left origin."""

    width: int
    height: int
    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be positive, got {self.width}x{self.height}")
        raw = np.asarray(self.pixels)
        if raw.ndim != 1 or raw.size != self.width * self.height:
            raise ValueError(
                f"pixel buffer has {raw.size} samples, expected {self.width * self.height}"
            )
        if raw.dtype != np.uint8:
            if raw.dtype.kind not in "iu":
                raise ValueError(f"intensities must be integers, got dtype {raw.dtype}")
            if raw.size and (raw.min() < 0 or raw.max() > MAX_INTENSITY):
                raise ValueError("intensities must lie in [0, 255]")
            raw = raw.astype(np.uint8)
        object.__setattr__(self, "pixels", _frozen_copy(raw))

    @classmethod
    def from_array(cls, arr) -> "GrayImage":
        """Build from a 2-D (height, width) array-like of intensities."""
        a = np.asarray(arr)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D array, got ndim={a.ndim}")
        return cls(width=a.shape[1], height=a.shape[0], pixels=a.reshape(-1))

    def as_array(self) -> np.ndarray:
        """Read-only (height, width) view of the raster."""
        return self.pixels.reshape(self.height, self.width)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )

    def __hash__(self):
        return hash((self.width, self.height, self.pixels.tobytes()))


@dataclass(frozen=True, eq=False)
class Histogram:
    """256-bin intensity counts; ``total`` is the source pixel count."""

    bins: np.ndarray = field(repr=False)
    total: int = field(init=False)

    def __post_init__(self):
        raw = np.asarray(self.bins, dtype=np.int64)
        if raw.shape != (LEVELS,):
            raise ValueError(f"histogram needs exactly {LEVELS} bins, got shape {raw.shape}")
        if raw.size and raw.min() < 0:
            raise ValueError("histogram counts must be non-negative")
        object.__setattr__(self, "bins", _frozen_copy(raw))
        object.__setattr__(self, "total", int(raw.sum()))

    def __eq__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        return np.array_equal(self.bins, other.bins)

    def __hash__(self):
        return hash(self.bins.tobytes())


def compute_histogram(image: GrayImage) -> Histogram:
    """Tally pixels per intensity; bins[v] counts pixels of value v."""
    return Histogram(np.bincount(image.pixels, minlength=LEVELS))


# --- PGM codec ------------------------------------------------------------

_WHITESPACE = b" \t\n\r\x0b\x0c"


class _EndOfHeader(PgmFormatError):
    """Ran out of bytes while a header token was still expected."""


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Token after whitespace/comment runs; returns (token, index past it)."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c == b"#":
            eol = data.find(b"\n", pos)
            pos = n if eol < 0 else eol + 1
        elif c in _WHITESPACE:
            pos += 1
        else:
            break
    if pos >= n:
        raise _EndOfHeader("unexpected end of header")
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, pos = _next_token(data, pos)
    if not token.isdigit():
        raise PgmFormatError(f"bad {what} field: {token!r}")
    return int(token), pos


def read_pgm(data: bytes) -> GrayImage:
    """Decode a PGM byte stream (binary P5 or ASCII P2, maxval 255).

    Header tokens may be separated by any whitespace run; ``#`` comments
    run to end of line. Trailing bytes beyond width*height samples are
    ignored.
    """
    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise PgmFormatError(f"not a supported PGM (magic {magic!r})")
    width, pos = _header_int(data, 2, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise PgmFormatError(f"bad dimensions {width}x{height}")
    if maxval != MAX_INTENSITY:
        raise PgmDepthError(f"only maxval 255 supported, got {maxval}")
    count = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
            raise PgmFormatError("missing separator before binary raster")
        pos += 1
        raster = data[pos : pos + count]
        if len(raster) < count:
            raise PgmLengthError(f"raster holds {len(raster)} bytes, expected {count}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        samples = np.empty(count, dtype=np.uint8)
        for i in range(count):
            try:
                value, pos = _header_int(data, pos, "sample")
            except _EndOfHeader:
                raise PgmLengthError(f"raster holds {i} samples, expected {count}") from None
            if value > maxval:
                raise PgmFormatError(f"sample {value} exceeds maxval {maxval}")
            samples[i] = value
        pixels = samples

    return GrayImage(width=width, height=height, pixels=pixels)


def write_pgm(image: GrayImage) -> bytes:
    """Encode as binary P5 with the canonical ``P5\\n<w> <h>\\n255\\n`` header."""
    header = f"P5\n{image.width} {image.height}\n{MAX_INTENSITY}\n".encode("ascii")
    return header + image.pixels.tobytes()
