import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fjpeg.quant import round_half_away
from fjpeg.transform import dct_8x8, idct_8x8, merge_blocks, split_blocks
from fjpeg.worked_example import DCT_FMM, DCT_ORIGINAL, FMM_BLOCK, ORIGINAL_BLOCK


def dct_oracle(f):
    """Direct quadruple sum of the orthonormal 2-D DCT-II."""
    out = np.zeros((8, 8))
    for u in range(8):
        for v in range(8):
            cu = 1 / math.sqrt(2) if u == 0 else 1.0
            cv = 1 / math.sqrt(2) if v == 0 else 1.0
            s = 0.0
            for x in range(8):
                for y in range(8):
                    s += (
                        f[x][y]
                        * math.cos((2 * x + 1) * u * math.pi / 16)
                        * math.cos((2 * y + 1) * v * math.pi / 16)
                    )
            out[u, v] = 0.25 * cu * cv * s
    return out


def test_matches_oracle(rng):
    for _ in range(20):
        b = rng.integers(0, 256, (8, 8))
        assert np.allclose(dct_8x8(b), dct_oracle(b.tolist()), atol=1e-9, rtol=0)


def test_worked_tables():
    assert np.abs(dct_8x8(ORIGINAL_BLOCK) - DCT_ORIGINAL).max() <= 1.0
    fmm = dct_8x8(FMM_BLOCK)
    assert np.abs(fmm - DCT_FMM).max() <= 1.0 + 1e-9
    assert fmm[0, 0] == pytest.approx(171.0)


def test_constant_block():
    c = dct_8x8(np.full((8, 8), 37))
    assert c[0, 0] == pytest.approx(8 * 37)
    c[0, 0] = 0
    assert np.abs(c).max() < 1e-9


def test_inverse_examples():
    assert np.array_equal(round_half_away(idct_8x8(dct_8x8(ORIGINAL_BLOCK))), ORIGINAL_BLOCK)
    assert not idct_8x8(np.zeros((8, 8))).any()


def test_invertible_and_parseval(rng):
    blocks = rng.integers(0, 256, (1000, 8, 8))
    coefs = dct_8x8(blocks)
    assert np.array_equal(round_half_away(idct_8x8(coefs)), blocks)
    e_in = (blocks.astype(float) ** 2).sum(axis=(1, 2))
    e_out = (coefs**2).sum(axis=(1, 2))
    assert np.allclose(e_out, e_in, rtol=1e-6, atol=0)


def test_linearity(rng):
    x, y = rng.normal(size=(2, 8, 8))
    assert np.allclose(dct_8x8(3 * x - 2 * y), 3 * dct_8x8(x) - 2 * dct_8x8(y), atol=1e-9)


def test_batch_equals_single(rng):
    blocks = rng.integers(0, 256, (5, 8, 8))
    batch = dct_8x8(blocks)
    for b, c in zip(blocks, batch):
        assert np.array_equal(dct_8x8(b), c)


def test_split_16x8():
    plane = np.arange(128).reshape(8, 16)
    blocks = split_blocks(plane)
    assert blocks.shape == (2, 8, 8)
    assert np.array_equal(blocks[0], plane[:, :8])
    assert np.array_equal(blocks[1], plane[:, 8:])


def test_split_pads_by_replication():
    plane = np.arange(81).reshape(9, 9)
    blocks = split_blocks(plane)
    assert blocks.shape == (4, 8, 8)
    # block 1 covers column 8 and replicates it
    assert (blocks[1] == plane[:8, 8:9]).all()
    assert (blocks[2] == plane[8:9, :8]).all()
    assert (blocks[3] == plane[8, 8]).all()


@given(st.integers(1, 30), st.integers(1, 30))
def test_merge_inverts_split(w, h):
    plane = np.arange(w * h).reshape(h, w)
    assert np.array_equal(merge_blocks(split_blocks(plane), w, h), plane)


def test_merge_count_mismatch():
    with pytest.raises(ValueError):
        merge_blocks(np.zeros((3, 8, 8)), 16, 16)
