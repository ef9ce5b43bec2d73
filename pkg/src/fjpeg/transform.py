"""8x8 orthonormal DCT-II and plane/block tiling.

No level shift is applied: a constant block of value ``c`` has DC ``8c``.
All functions accept either a single ``(8, 8)`` block or a stack of shape
``(n, 8, 8)``.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "BLOCK",
    "DCT_MATRIX",
    "dct_8x8",
    "idct_8x8",
    "split_blocks",
    "merge_blocks",
    "block_grid",
]

BLOCK = 8


def _dct_matrix() -> np.ndarray:
    k = np.arange(BLOCK)
    scale = np.where(k == 0, np.sqrt(1.0 / BLOCK), np.sqrt(2.0 / BLOCK))
    return scale[:, None] * np.cos((2 * k[None, :] + 1) * k[:, None] * np.pi / (2 * BLOCK))


# row u holds basis vector u; D @ D.T == I
DCT_MATRIX = _dct_matrix()
DCT_MATRIX.flags.writeable = False


def dct_8x8(block) -> np.ndarray:
    block = np.asarray(block, dtype=np.float64)
    return DCT_MATRIX @ block @ DCT_MATRIX.T


def idct_8x8(coefs) -> np.ndarray:
    """Exact inverse of :func:`dct_8x8`; output is real-valued, not rounded."""
    coefs = np.asarray(coefs, dtype=np.float64)
    return DCT_MATRIX.T @ coefs @ DCT_MATRIX


def block_grid(width: int, height: int) -> tuple[int, int]:
    """Number of block rows and columns covering a ``width`` x ``height`` plane."""
    return -(-height // BLOCK), -(-width // BLOCK)


def split_blocks(plane) -> np.ndarray:
    """Tile a 2-D plane into ``(n, 8, 8)`` blocks in raster order.

    Partial blocks at the right and bottom edges are filled by repeating
    the last column and row.
    """
    plane = np.asarray(plane)
    if plane.ndim != 2 or min(plane.shape) < 1:
        raise ValueError(f"expected a non-empty 2-D plane, got shape {plane.shape}")
    height, width = plane.shape
    rows, cols = block_grid(width, height)
    padded = np.pad(
        plane, ((0, rows * BLOCK - height), (0, cols * BLOCK - width)), mode="edge"
    )
    blocks = padded.reshape(rows, BLOCK, cols, BLOCK).swapaxes(1, 2)
    return blocks.reshape(rows * cols, BLOCK, BLOCK)


def merge_blocks(blocks, width: int, height: int) -> np.ndarray:
    """Inverse of :func:`split_blocks`, cropping away the padding."""
    blocks = np.asarray(blocks)
    rows, cols = block_grid(width, height)
    if blocks.shape != (rows * cols, BLOCK, BLOCK):
        raise ValueError(
            f"{width}x{height} plane needs {rows * cols} blocks, got array of shape {blocks.shape}"
        )
    plane = blocks.reshape(rows, cols, BLOCK, BLOCK).swapaxes(1, 2)
    plane = plane.reshape(rows * BLOCK, cols * BLOCK)
    return np.ascontiguousarray(plane[:height, :width])
