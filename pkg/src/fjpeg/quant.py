"""Quality-scaled quantization of DCT coefficients."""
from __future__ import annotations

import numpy as np

from .errors import QualityError

__all__ = [
    "LUMINANCE_TABLE",
    "DEFAULT_QUALITY",
    "round_half_away",
    "scale_table",
    "quantize",
    "dequantize",
]

DEFAULT_QUALITY = 75

# ITU-T T.81 Annex K.1 luminance table, row-major
LUMINANCE_TABLE = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int32,
)
LUMINANCE_TABLE.flags.writeable = False


def round_half_away(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return np.copysign(np.floor(np.abs(x) + 0.5), x)


def check_quality(quality) -> int:
    if isinstance(quality, bool) or int(quality) != quality or not 1 <= quality <= 100:
        raise QualityError(f"quality must be an integer in 1..100, got {quality!r}")
    return int(quality)


def scale_table(base=LUMINANCE_TABLE, quality: int = DEFAULT_QUALITY) -> np.ndarray:
    """Scale a base table with the IJG quality convention.

    Quality 50 returns ``base`` unchanged and quality 100 gives all ones.
    """
    quality = check_quality(quality)
    scale = 5000 // quality if quality < 50 else 200 - 2 * quality
    base = np.asarray(base, dtype=np.int64)
    return np.clip((base * scale + 50) // 100, 1, 255).astype(np.int32)


def quantize(coefs, table) -> np.ndarray:
    return round_half_away(np.asarray(coefs) / table).astype(np.int32)


def dequantize(q, table) -> np.ndarray:
    return np.asarray(q, dtype=np.float64) * table
