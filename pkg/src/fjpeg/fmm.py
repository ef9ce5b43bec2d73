"""Five Modulus Method: snap samples to multiples of five and divide by five.

The forward map sends 8-bit intensities ``[0, 255]`` into ``[0, 51]``;
the inverse multiplies by five.  Rounding error per sample is at most 2.
"""
from __future__ import annotations

import numpy as np

from .errors import SampleRangeError

__all__ = ["FMM_MAX", "fmm_round", "fmm_forward", "fmm_inverse"]

FMM_MAX = 51


def fmm_round(p: int) -> int:
    """Adjust ``p`` to a multiple of five using the residue rules.

    >>> fmm_round(106), fmm_round(98), fmm_round(97)
    (105, 100, 95)
    """
    p = int(p)
    if not 0 <= p <= 255:
        raise SampleRangeError(f"intensity {p} outside [0, 255]")
    r = p % 5
    if r == 4:
        p = p + 1
    elif r == 3:
        p = p + 2
    elif r == 2:
        p = p - 2
    elif r == 1:
        p = p - 1
    return p


# the scalar rule stays the single source of truth; arrays go through this table
_FORWARD_LUT = np.array([fmm_round(p) // 5 for p in range(256)], dtype=np.uint8)


def fmm_forward(plane) -> np.ndarray:
    """Map an intensity array to the ``[0, 51]`` FMM domain (uint8)."""
    plane = np.asarray(plane)
    if plane.size and (plane.min() < 0 or plane.max() > 255):
        raise SampleRangeError("FMM input must lie in [0, 255]")
    return _FORWARD_LUT[plane.astype(np.intp)]


def fmm_inverse(plane) -> np.ndarray:
    """Multiply FMM-domain samples by five (uint8 output)."""
    plane = np.asarray(plane)
    if plane.size and (plane.min() < 0 or plane.max() > FMM_MAX):
        raise SampleRangeError(f"FMM samples must lie in [0, {FMM_MAX}]")
    return (plane.astype(np.int32) * 5).astype(np.uint8)
