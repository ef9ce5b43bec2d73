import time

import numpy as np
import pytest
from conftest import random_quantized_blocks
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fjpeg.entropy import (
    AC_TABLE,
    DC_TABLE,
    ZIGZAG,
    BitReader,
    BitWriter,
    decode_blocks,
    encode_blocks,
    izigzag,
    size_category,
    zigzag,
)
from fjpeg.errors import (
    EncodeError,
    EntropyError,
    InvalidCodeError,
    RunOverflowError,
    TrailingDataError,
    TruncatedStreamError,
)


def test_zigzag_positions():
    idx = np.arange(64).reshape(8, 8)
    z = zigzag(idx)
    assert z[0] == 0 and z[1] == 1 and z[2] == 8 and z[63] == 63
    assert list(z[:10]) == [0, 1, 8, 16, 9, 2, 3, 10, 17, 24]
    assert sorted(ZIGZAG) == list(range(64))


def test_zigzag_last_cell():
    b = np.zeros((8, 8), int)
    b[7, 7] = 5
    z = zigzag(b)
    assert not z[:63].any() and z[63] == 5


def test_izigzag_round_trip(rng):
    b = rng.integers(-50, 50, (100, 8, 8))
    assert np.array_equal(izigzag(zigzag(b)), b)


def test_table_invariants():
    for table in (DC_TABLE, AC_TABLE):
        lengths = table.code_lengths().values()
        assert max(lengths) <= 16
        assert sum(2.0**-n for n in lengths) < 1.0
        codes = [format(c, f"0{n}b") for c, n in table.codes.values()]
        for a in codes:
            for b in codes:
                assert a == b or not b.startswith(a)
    assert len(AC_TABLE.codes) == 162 and len(DC_TABLE.codes) == 12


def test_bit_writer_pads_with_ones():
    w = BitWriter()
    w.write(0b101, 3)
    assert w.getvalue() == bytes([0b10111111])
    r = BitReader(w.getvalue())
    assert r.read(3) == 0b101
    with pytest.raises(TruncatedStreamError):
        r.read(6)


def test_size_category():
    assert [size_category(v) for v in (0, 1, -1, 2, -3, 170, 2047, -32767)] == [
        0, 1, 1, 2, 2, 8, 11, 15,
    ]


def test_single_block_dc_170():
    # DC category 8 -> code 111110, amplitude 10101010, EOB 1010, pad 111111
    b = np.zeros((1, 8, 8), int)
    b[0, 0, 0] = 170
    assert encode_blocks(b) == bytes([0b11111010, 0b10101010, 0b10111111])


def test_zero_blocks_are_dc0_plus_eob():
    # each block: DC category 0 (00) + EOB (1010) = 6 bits
    assert len(encode_blocks(np.zeros((4, 8, 8), int))) == 3
    assert encode_blocks(np.zeros((4, 8, 8), int)) == bytes.fromhex("28a28a")


def test_negative_amplitude_and_dpcm():
    b = np.zeros((2, 8, 8), int)
    b[0, 0, 0] = -3
    b[1, 0, 0] = -3
    b[0, 0, 1] = -1
    out = decode_blocks(encode_blocks(b), 2)
    assert np.array_equal(out, b)


def test_last_coefficient_has_no_eob():
    b = np.zeros((1, 8, 8), int)
    b[0, 7, 7] = 1
    assert np.array_equal(decode_blocks(encode_blocks(b), 1), b)


def test_escape_symbols_round_trip():
    b = np.zeros((2, 8, 8), int)
    b[0, 0, 0] = 16000  # DC category 14, escaped
    b[0, 0, 1] = 1500  # AC size 11, escaped
    b[0, 3, 3] = -32767  # AC size 15, escaped
    b[1, 0, 0] = -16000  # DC diff -32000, category 15
    assert np.array_equal(decode_blocks(encode_blocks(b), 2), b)


def test_encode_rejects_category_16():
    b = np.zeros((1, 8, 8), int)
    b[0, 0, 1] = 40000
    with pytest.raises(EncodeError):
        encode_blocks(b)
    b = np.zeros((1, 8, 8), int)
    b[0, 0, 0] = 40000
    with pytest.raises(EncodeError):
        encode_blocks(b)


def test_random_round_trip(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        blocks = random_quantized_blocks(rng, n)
        data = encode_blocks(blocks)
        assert np.array_equal(decode_blocks(data, n), blocks)


small_blocks = arrays(
    np.int64,
    st.tuples(st.integers(1, 4), st.just(8), st.just(8)),
    elements=st.integers(-300, 300) | st.just(0),
)


@given(small_blocks)
def test_round_trip_property(blocks):
    assert np.array_equal(decode_blocks(encode_blocks(blocks), len(blocks)), blocks)


@given(small_blocks)
def test_deterministic(blocks):
    assert encode_blocks(blocks) == encode_blocks(blocks.copy())


@given(small_blocks, st.integers(0, 3))
def test_clearing_ac_field_never_grows(blocks, i):
    i = i % len(blocks)
    cleared = blocks.copy()
    cleared[i] = 0
    cleared[i, 0, 0] = blocks[i, 0, 0]
    assert len(encode_blocks(cleared)) <= len(encode_blocks(blocks))


def test_zeroing_single_coefficient_can_grow_stream():
    # (0,1)+(0,3) costs 3+6 bits; the merged (1,3) costs 10
    b = np.zeros((8, 8, 8), int)
    b[:, 0, 1] = 1
    b[:, 1, 0] = 4
    sparser = b.copy()
    sparser[:, 0, 1] = 0
    assert len(encode_blocks(sparser)) == len(encode_blocks(b)) + 1


def test_truncated_stream():
    data = encode_blocks(np.ones((4, 8, 8), int))
    with pytest.raises(TruncatedStreamError):
        decode_blocks(data[:-3], 4)
    with pytest.raises(TruncatedStreamError):
        decode_blocks(b"", 1)


def test_trailing_data():
    data = encode_blocks(np.ones((2, 8, 8), int))
    with pytest.raises(TrailingDataError):
        decode_blocks(data + b"\x00", 2)
    with pytest.raises(TrailingDataError):
        decode_blocks(data, 1)


def test_run_overflow():
    w = BitWriter()
    DC_TABLE.write(w, 0)
    for _ in range(4):
        AC_TABLE.write(w, 0xF0)
    with pytest.raises(RunOverflowError):
        decode_blocks(w.getvalue(), 1)
    w = BitWriter()
    DC_TABLE.write(w, 0)
    AC_TABLE.write(w, 0xF0)
    AC_TABLE.write(w, 0xF0)
    AC_TABLE.write(w, 0xF0)
    AC_TABLE.write(w, 0xF1)  # 48 zeros then 15 more puts the value at 64
    w.write(1, 1)
    with pytest.raises(RunOverflowError):
        decode_blocks(w.getvalue(), 1)


def test_undefined_symbols():
    w = BitWriter()
    DC_TABLE.write(w, 0)
    AC_TABLE.write(w, 0x30)  # (3, 0) is neither EOB nor ZRL
    with pytest.raises(InvalidCodeError):
        decode_blocks(w.getvalue(), 1)
    w = BitWriter()
    w.write(*DC_TABLE.escape)
    w.write(5, 4)  # category 5 has a regular code
    with pytest.raises(InvalidCodeError):
        decode_blocks(w.getvalue(), 1)


def test_bit_flip_fuzz(rng):
    start = time.monotonic()
    outcomes = {"ok": 0, "error": 0}
    for _ in range(300):
        n = int(rng.integers(1, 5))
        blocks = random_quantized_blocks(rng, n)
        data = bytearray(encode_blocks(blocks))
        bit = int(rng.integers(0, len(data) * 8))
        data[bit >> 3] ^= 0x80 >> (bit & 7)
        try:
            out = decode_blocks(bytes(data), n)
        except EntropyError:
            outcomes["error"] += 1
        else:
            assert out.shape == (n, 8, 8)
            outcomes["ok"] += 1
    assert outcomes["error"] > 0
    assert time.monotonic() - start < 20


@settings(max_examples=300)
@given(st.binary(max_size=64), st.integers(0, 8))
def test_decoder_total_on_garbage(data, n):
    try:
        out = decode_blocks(data, n)
    except EntropyError:
        return
    assert out.shape == (n, 8, 8)
