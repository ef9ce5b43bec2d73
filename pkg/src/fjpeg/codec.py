"""Encode and decode pipelines plus the ``.fjpg`` container.

Container layout (all integers big-endian)::

    magic     4 bytes  b"FJPG"
    version   1 byte   1
    mode      1 byte   0 = baseline, 1 = fmm
    width     4 bytes
    height    4 bytes
    channels  1 byte   1 or 3
    quality   1 byte   1..100
    then per channel:
        length   4 bytes
        payload  ``length`` bytes of entropy-coded blocks
"""
from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

import numpy as np

from . import entropy
from .errors import (
    BadMagicError,
    BadModeError,
    ContainerError,
    HeaderFieldError,
    PayloadLengthError,
    UnsupportedVersionError,
)
from .fmm import FMM_MAX, fmm_forward, fmm_inverse
from .image_io import Image, to_grayscale
from .quant import (
    DEFAULT_QUALITY,
    LUMINANCE_TABLE,
    check_quality,
    dequantize,
    quantize,
    round_half_away,
    scale_table,
)
from .transform import block_grid, dct_8x8, idct_8x8, merge_blocks, split_blocks

__all__ = [
    "MAGIC",
    "VERSION",
    "Mode",
    "CodecConfig",
    "StreamInfo",
    "encode",
    "decode",
    "inspect",
    "quantized_blocks",
]

MAGIC = b"FJPG"
VERSION = 1
MAX_SAMPLES = 1 << 28

_HEADER = struct.Struct(">4sBBIIBB")
_LENGTH = struct.Struct(">I")


class Mode(enum.IntEnum):
    BASELINE = 0
    FMM = 1

    @classmethod
    def parse(cls, value) -> Mode:
        if isinstance(value, str):
            try:
                return cls[value.upper()]
            except KeyError:
                raise ValueError(f"unknown mode {value!r}") from None
        return cls(value)

    def __str__(self):
        return self.name.lower()


@dataclass(frozen=True)
class CodecConfig:
    mode: Mode = Mode.FMM
    quality: int = DEFAULT_QUALITY
    gray: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        object.__setattr__(self, "quality", check_quality(self.quality))


@dataclass(frozen=True)
class StreamInfo:
    version: int
    mode: Mode
    width: int
    height: int
    channels: int
    quality: int
    payload_sizes: tuple[int, ...]

    @property
    def total_size(self) -> int:
        return _HEADER.size + sum(_LENGTH.size + n for n in self.payload_sizes)


def _sample_max(mode: Mode) -> int:
    return FMM_MAX if mode is Mode.FMM else 255


def quantized_blocks(plane, mode, quality: int) -> np.ndarray:
    """Run one plane through the lossy front half: FMM (if enabled), DCT, quantization."""
    mode = Mode.parse(mode)
    if mode is Mode.FMM:
        plane = fmm_forward(plane)
    table = scale_table(LUMINANCE_TABLE, quality)
    return quantize(dct_8x8(split_blocks(plane)), table)


def _reconstruct_plane(q, mode: Mode, quality: int, width: int, height: int) -> np.ndarray:
    table = scale_table(LUMINANCE_TABLE, quality)
    samples = round_half_away(idct_8x8(dequantize(q, table)))
    plane = merge_blocks(samples, width, height)
    plane = np.clip(plane, 0, _sample_max(mode)).astype(np.uint8)
    if mode is Mode.FMM:
        plane = fmm_inverse(plane)
    return plane


def encode(image: Image, config: CodecConfig | None = None) -> bytes:
    """Compress ``image`` into ``.fjpg`` container bytes."""
    config = config or CodecConfig()
    if config.gray:
        image = to_grayscale(image)
    header = _HEADER.pack(
        MAGIC,
        VERSION,
        int(config.mode),
        image.width,
        image.height,
        image.channels,
        config.quality,
    )
    parts = [header]
    for plane in image.planes:
        payload = entropy.encode_blocks(quantized_blocks(plane, config.mode, config.quality))
        parts.append(_LENGTH.pack(len(payload)))
        parts.append(payload)
    return b"".join(parts)


def _parse(data: bytes) -> tuple[StreamInfo, list[bytes]]:
    data = bytes(data)
    if len(data) < len(MAGIC) or data[: len(MAGIC)] != MAGIC:
        raise BadMagicError(f"not an FJPG stream (magic {data[:4]!r})")
    if len(data) < _HEADER.size:
        raise ContainerError(f"header needs {_HEADER.size} bytes, stream has {len(data)}")
    _, version, mode, width, height, channels, quality = _HEADER.unpack_from(data)
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported container version {version}")
    try:
        mode = Mode(mode)
    except ValueError:
        raise BadModeError(f"unknown mode byte {mode}") from None
    if width < 1 or height < 1 or width * height > MAX_SAMPLES:
        raise HeaderFieldError(f"unsupported dimensions {width}x{height}")
    if channels not in (1, 3):
        raise HeaderFieldError(f"unsupported channel count {channels}")
    if not 1 <= quality <= 100:
        raise HeaderFieldError(f"quality byte {quality} outside 1..100")

    payloads = []
    pos = _HEADER.size
    for c in range(channels):
        if pos + _LENGTH.size > len(data):
            raise PayloadLengthError(f"stream ends before length of channel {c} (byte {pos})")
        (length,) = _LENGTH.unpack_from(data, pos)
        pos += _LENGTH.size
        if pos + length > len(data):
            raise PayloadLengthError(
                f"channel {c} declares {length} payload bytes, only {len(data) - pos} remain"
            )
        payloads.append(data[pos : pos + length])
        pos += length
    if pos != len(data):
        raise PayloadLengthError(
            f"declared sizes account for {pos} bytes but stream has {len(data)}"
        )
    info = StreamInfo(version, mode, width, height, channels, quality, tuple(map(len, payloads)))
    return info, payloads


def inspect(data: bytes) -> StreamInfo:
    """Validate the container framing and return its header fields."""
    return _parse(data)[0]


def decode(data: bytes) -> Image:
    info, payloads = _parse(data)
    rows, cols = block_grid(info.width, info.height)
    planes = []
    for payload in payloads:
        q = entropy.decode_blocks(payload, rows * cols)
        planes.append(_reconstruct_plane(q, info.mode, info.quality, info.width, info.height))
    return Image(np.stack(planes))
