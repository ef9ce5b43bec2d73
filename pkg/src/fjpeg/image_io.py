"""Netpbm (PGM/PPM) reading and writing plus grayscale conversion."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    PNMError,
    PNMHeaderError,
    PNMMaxvalError,
    PNMTruncatedError,
    SampleRangeError,
)

__all__ = [
    "Image",
    "read_pnm",
    "write_pnm",
    "read_image",
    "write_image",
    "to_grayscale",
]

_MAGIC_CHANNELS = {b"P2": 1, b"P3": 3, b"P5": 1, b"P6": 3}
_WHITESPACE = b" \t\r\n\v\f"


@dataclass(frozen=True, eq=False)
class Image:
    """An 8-bit image stored as a ``(channels, height, width)`` uint8 array."""

    planes: np.ndarray

    def __post_init__(self):
        planes = np.asarray(self.planes)
        if planes.ndim != 3 or planes.shape[0] not in (1, 3):
            raise ValueError(
                f"planes must have shape (1|3, height, width), got {planes.shape}"
            )
        if planes.shape[1] < 1 or planes.shape[2] < 1:
            raise ValueError("image dimensions must be at least 1x1")
        if planes.dtype != np.uint8:
            if planes.size and (planes.min() < 0 or planes.max() > 255):
                raise SampleRangeError("samples must lie in [0, 255]")
            planes = planes.astype(np.uint8)
        object.__setattr__(self, "planes", planes)

    @classmethod
    def from_array(cls, array) -> Image:
        """Build from ``(height, width)`` or ``(height, width, 3)`` pixel data."""
        array = np.asarray(array)
        if array.ndim == 2:
            return cls(array[np.newaxis])
        if array.ndim == 3 and array.shape[2] in (1, 3):
            return cls(np.moveaxis(array, 2, 0))
        raise ValueError(f"cannot interpret array of shape {array.shape} as an image")

    def to_array(self) -> np.ndarray:
        if self.channels == 1:
            return self.planes[0].copy()
        return np.ascontiguousarray(np.moveaxis(self.planes, 0, 2))

    @property
    def channels(self) -> int:
        return self.planes.shape[0]

    @property
    def height(self) -> int:
        return self.planes.shape[1]

    @property
    def width(self) -> int:
        return self.planes.shape[2]

    @property
    def raw_size(self) -> int:
        return self.width * self.height * self.channels

    def __eq__(self, other):
        if not isinstance(other, Image):
            return NotImplemented
        return self.planes.shape == other.planes.shape and bool(
            np.array_equal(self.planes, other.planes)
        )

    def __repr__(self):
        return f"Image(width={self.width}, height={self.height}, channels={self.channels})"


class _Cursor:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def skip_space(self):
        data = self.data
        while self.pos < len(data):
            c = data[self.pos : self.pos + 1]
            if c == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            elif c in _WHITESPACE:
                self.pos += 1
            else:
                break

    def token(self, what: str) -> bytes:
        self.skip_space()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos : self.pos + 1] not in _WHITESPACE + b"#":
            self.pos += 1
        if self.pos == start:
            raise PNMTruncatedError(f"expected {what}, found end of data", start)
        return data[start : self.pos]

    def integer(self, what: str) -> int:
        start = self.pos
        tok = self.token(what)
        if not tok.isdigit():
            raise PNMHeaderError(f"expected {what}, found {tok[:16]!r}", start)
        return int(tok)


def read_pnm(data: bytes) -> Image:
    """Parse a P2, P3, P5 or P6 anymap with maxval 255.

    Raises a :class:`~fjpeg.errors.PNMError` subclass carrying the byte
    offset of the first problem.
    """
    data = bytes(data)
    magic = data[:2]
    if magic not in _MAGIC_CHANNELS:
        raise PNMHeaderError(f"unknown magic number {magic!r}", 0)
    channels = _MAGIC_CHANNELS[magic]
    cur = _Cursor(data)
    cur.pos = 2
    width = cur.integer("width")
    height = cur.integer("height")
    maxval_at = cur.pos
    maxval = cur.integer("maxval")
    if width < 1 or height < 1:
        raise PNMHeaderError(f"invalid dimensions {width}x{height}", maxval_at)
    if maxval != 255:
        raise PNMMaxvalError(f"maxval must be 255, got {maxval}", maxval_at)

    count = width * height * channels
    if magic in (b"P5", b"P6"):
        if cur.pos >= len(data) or data[cur.pos : cur.pos + 1] not in _WHITESPACE:
            raise PNMHeaderError("missing whitespace after maxval", cur.pos)
        start = cur.pos + 1
        payload = data[start : start + count]
        if len(payload) < count:
            raise PNMTruncatedError(
                f"raster needs {count} bytes, only {len(payload)} present", len(data)
            )
        samples = np.frombuffer(payload, dtype=np.uint8)
    else:
        samples = np.empty(count, dtype=np.uint8)
        for i in range(count):
            at = cur.pos
            value = cur.integer("sample")
            if value > maxval:
                raise PNMError(f"sample {value} exceeds maxval {maxval}", at)
            samples[i] = value

    pixels = samples.reshape(height, width, channels)
    return Image(np.ascontiguousarray(np.moveaxis(pixels, 2, 0)))


def write_pnm(image: Image, ascii: bool = False) -> bytes:
    """Serialize to P5/P6, or P2/P3 when ``ascii`` is set."""
    gray = image.channels == 1
    if ascii:
        magic = "P2" if gray else "P3"
    else:
        magic = "P5" if gray else "P6"
    header = f"{magic} {image.width} {image.height} 255\n".encode("ascii")
    interleaved = np.moveaxis(image.planes, 0, 2).reshape(-1)
    if not ascii:
        return header + interleaved.tobytes()
    # netpbm recommends lines of at most 70 characters
    values = [str(v) for v in interleaved.tolist()]
    lines = [" ".join(values[i : i + 17]) for i in range(0, len(values), 17)]
    return header + ("\n".join(lines) + "\n").encode("ascii")


def read_image(path) -> Image:
    return read_pnm(Path(path).read_bytes())


def write_image(path, image: Image, ascii: bool = False) -> None:
    Path(path).write_bytes(write_pnm(image, ascii=ascii))


def to_grayscale(image: Image) -> Image:
    """BT.601 luma, rounded half away from zero."""
    if image.channels == 1:
        return image
    r, g, b = image.planes.astype(np.float64)
    luma = 0.299 * r + 0.587 * g + 0.114 * b
    luma = np.floor(luma + 0.5)
    return Image(np.clip(luma, 0, 255).astype(np.uint8)[np.newaxis])
