"""A single 8x8 block carried through FMM and the DCT, with published values.

``ORIGINAL_BLOCK`` is a block from a natural image.  The other constants
are the published results of processing it; :func:`run_checks` recomputes
each one and compares.  DCT values were published as integers truncated
toward zero, hence the 1.0 tolerance on coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fmm import fmm_forward, fmm_inverse
from .metrics import nonzero_count, std_dev
from .quant import DEFAULT_QUALITY, LUMINANCE_TABLE, quantize, scale_table
from .transform import dct_8x8

ORIGINAL_BLOCK = np.array(
    [
        [106, 98, 104, 102, 109, 110, 107, 113],
        [103, 107, 104, 110, 109, 110, 110, 113],
        [106, 106, 105, 110, 111, 107, 104, 108],
        [104, 105, 110, 111, 109, 108, 110, 104],
        [106, 106, 119, 113, 111, 107, 109, 108],
        [106, 104, 101, 105, 104, 104, 107, 113],
        [97, 103, 104, 101, 102, 104, 106, 110],
        [103, 106, 110, 105, 103, 105, 103, 108],
    ]
)

FMM_ROUNDED_BLOCK = np.array(
    [
        [105, 100, 105, 100, 110, 110, 105, 115],
        [105, 105, 105, 110, 110, 110, 110, 115],
        [105, 105, 105, 110, 110, 105, 105, 110],
        [105, 105, 110, 110, 110, 110, 110, 105],
        [105, 105, 120, 115, 110, 105, 110, 110],
        [105, 105, 100, 105, 105, 105, 105, 115],
        [95, 105, 105, 100, 100, 105, 105, 110],
        [105, 105, 110, 105, 105, 105, 105, 110],
    ]
)

FMM_BLOCK = np.array(
    [
        [21, 20, 21, 20, 22, 22, 21, 23],
        [21, 21, 21, 22, 22, 22, 22, 23],
        [21, 21, 21, 22, 22, 21, 21, 22],
        [21, 21, 22, 22, 22, 22, 22, 21],
        [21, 21, 24, 23, 22, 21, 22, 22],
        [21, 21, 20, 21, 21, 21, 21, 23],
        [19, 21, 21, 20, 20, 21, 21, 22],
        [21, 21, 22, 21, 21, 21, 21, 22],
    ]
)

DCT_ORIGINAL = np.array(
    [
        [853, -10, -2, -6, 2, 0, 2, 0],
        [7, -3, -2, 6, 4, 0, 0, 0],
        [-8, -5, 6, 1, 0, -4, 3, -1],
        [0, -5, 5, 0, 1, 0, 2, 2],
        [4, 4, -4, -1, -3, 3, 5, 5],
        [-8, -3, 1, 3, 0, 0, 0, 1],
        [-1, 2, 3, 3, 5, -1, 1, 0],
        [1, 2, -3, -2, 0, -1, 3, 3],
    ]
)

DCT_FMM = np.array(
    [
        [170, -2, 0, -1, 0, 0, 0, 0],
        [1, 0, 0, 1, 1, 0, 0, 0],
        [-1, -1, 1, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0, 0, 1],
        [-1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0, 0, 0],
    ]
)

for _a in (ORIGINAL_BLOCK, FMM_ROUNDED_BLOCK, FMM_BLOCK, DCT_ORIGINAL, DCT_FMM):
    _a.flags.writeable = False

STD_ORIGINAL = 3.84
STD_FMM = 0.85
STD_DCT_ORIGINAL = 106.65
STD_DCT_FMM = 21.26
NONZERO_DCT_ORIGINAL = 50
NONZERO_DCT_FMM = 15

BLOCK_STD_TOL = 0.01
DCT_STD_TOL = 0.5
DCT_CELL_TOL = 1.0
# absorbs float noise: the FMM block's DC is exactly 171 against a published 170
_FLOAT_SLACK = 1e-9


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def _cell_diffs(actual, expected, tol) -> list[str]:
    bad = np.argwhere(np.abs(actual - expected) > tol + _FLOAT_SLACK)
    return [
        f"({r},{c}) got {actual[r, c]:.3f} expected {expected[r, c]}" for r, c in bad
    ]


def _exact(name, actual, expected) -> Check:
    bad = _cell_diffs(actual.astype(float), expected, 0)
    return Check(name, not bad, "; ".join(bad) or "all 64 cells exact")


def _close_cells(name, actual, expected) -> Check:
    bad = _cell_diffs(actual, expected, DCT_CELL_TOL)
    worst = float(np.max(np.abs(actual - expected)))
    return Check(name, not bad, "; ".join(bad) or f"max |diff| = {worst:.4f}")


def _scalar(name, actual, expected, tol) -> Check:
    return Check(name, abs(actual - expected) <= tol + _FLOAT_SLACK, f"{actual:.4f} vs {expected} (tol {tol})")


@dataclass
class WorkedExample:
    rounded: np.ndarray
    divided: np.ndarray
    dct_original: np.ndarray
    dct_fmm: np.ndarray
    quantized_original: np.ndarray
    quantized_fmm: np.ndarray


def compute(quality: int = DEFAULT_QUALITY) -> WorkedExample:
    divided = fmm_forward(ORIGINAL_BLOCK).astype(np.int64)
    table = scale_table(LUMINANCE_TABLE, quality)
    dct_orig = dct_8x8(ORIGINAL_BLOCK)
    dct_fmm = dct_8x8(divided)
    return WorkedExample(
        rounded=fmm_inverse(divided).astype(np.int64),
        divided=divided,
        dct_original=dct_orig,
        dct_fmm=dct_fmm,
        quantized_original=quantize(dct_orig, table),
        quantized_fmm=quantize(dct_fmm, table),
    )


def run_checks(ex: WorkedExample | None = None) -> list[Check]:
    ex = ex or compute()
    checks = [
        _exact("FMM rounding", ex.rounded, FMM_ROUNDED_BLOCK),
        _exact("FMM division", ex.divided, FMM_BLOCK),
        _close_cells("DCT of original block", ex.dct_original, DCT_ORIGINAL),
        _close_cells("DCT of FMM block", ex.dct_fmm, DCT_FMM),
        _scalar("STD original block", std_dev(ORIGINAL_BLOCK), STD_ORIGINAL, BLOCK_STD_TOL),
        _scalar("STD FMM block", std_dev(ex.divided), STD_FMM, BLOCK_STD_TOL),
        _scalar("STD DCT original", std_dev(ex.dct_original), STD_DCT_ORIGINAL, DCT_STD_TOL),
        _scalar("STD DCT FMM", std_dev(ex.dct_fmm), STD_DCT_FMM, DCT_STD_TOL),
    ]
    n_orig = nonzero_count(DCT_ORIGINAL)
    n_fmm = nonzero_count(DCT_FMM)
    checks.append(
        Check(
            "non-zero DCT cells (published)",
            (n_orig, n_fmm) == (NONZERO_DCT_ORIGINAL, NONZERO_DCT_FMM),
            f"{n_orig} vs {n_fmm}",
        )
    )
    t_orig = nonzero_count(np.trunc(ex.dct_original))
    t_fmm = nonzero_count(np.trunc(ex.dct_fmm))
    checks.append(
        Check(
            "non-zero DCT cells (computed, truncated)",
            (t_orig, t_fmm) == (NONZERO_DCT_ORIGINAL, NONZERO_DCT_FMM),
            f"{t_orig} vs {t_fmm}",
        )
    )
    q_orig = nonzero_count(ex.quantized_original)
    q_fmm = nonzero_count(ex.quantized_fmm)
    checks.append(Check("non-zero quantized (FMM sparser)", q_fmm < q_orig, f"{q_orig} vs {q_fmm}"))
    return checks
