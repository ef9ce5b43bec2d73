"""Zigzag scan, DC prediction, AC run-length and Huffman coding.

Bitstream layout for one channel: for each block in raster order, the DC
difference from the previous block (predictor starts at 0) as a size
category symbol plus amplitude bits, then AC ``(run, size)`` symbols with
ZRL for sixteen zeros and EOB when the rest of the block is zero.  Bits
are packed MSB first and the final byte is padded with 1-bits.

The code tables are the ITU-T T.81 Annex K luminance tables.  Those tables
have no codes for DC categories above 11 or AC sizes above 10, so each
table reserves its unused all-ones codeword as an escape: the escape code
is followed by the raw symbol (4 bits for DC, 8 bits for AC).
"""
from __future__ import annotations

import numpy as np

from .errors import (
    EncodeError,
    InvalidCodeError,
    RunOverflowError,
    TrailingDataError,
    TruncatedStreamError,
)

__all__ = [
    "ZIGZAG",
    "zigzag",
    "izigzag",
    "BitWriter",
    "BitReader",
    "HuffmanTable",
    "DC_TABLE",
    "AC_TABLE",
    "size_category",
    "encode_blocks",
    "decode_blocks",
]

MAX_CATEGORY = 15
EOB = 0x00
ZRL = 0xF0


def _zigzag_order() -> np.ndarray:
    cells = sorted(
        ((r, c) for r in range(8) for c in range(8)),
        key=lambda rc: (rc[0] + rc[1], rc[0] if (rc[0] + rc[1]) % 2 else rc[1]),
    )
    return np.array([r * 8 + c for r, c in cells], dtype=np.intp)


# ZIGZAG[k] is the row-major index of the k-th coefficient in scan order
ZIGZAG = _zigzag_order()
ZIGZAG.flags.writeable = False
_UNZIGZAG = np.argsort(ZIGZAG)


def zigzag(block) -> np.ndarray:
    """Reorder ``(..., 8, 8)`` blocks into ``(..., 64)`` scan vectors."""
    block = np.asarray(block)
    return block.reshape(block.shape[:-2] + (64,))[..., ZIGZAG]


def izigzag(vector) -> np.ndarray:
    vector = np.asarray(vector)
    return vector[..., _UNZIGZAG].reshape(vector.shape[:-1] + (8, 8))


class BitWriter:
    def __init__(self):
        self._out = bytearray()
        self._acc = 0
        self._count = 0

    def write(self, value: int, nbits: int) -> None:
        acc = (self._acc << nbits) | value
        count = self._count + nbits
        out = self._out
        while count >= 8:
            count -= 8
            out.append((acc >> count) & 0xFF)
        self._acc = acc & ((1 << count) - 1)
        self._count = count

    def getvalue(self) -> bytes:
        """Return the packed bytes, padding the last partial byte with ones."""
        out = bytes(self._out)
        if self._count:
            pad = 8 - self._count
            out += bytes([((self._acc << pad) | ((1 << pad) - 1)) & 0xFF])
        return out


class BitReader:
    def __init__(self, data: bytes):
        self.nbits = len(data) * 8
        # padding lets peek() run past the end; read() still enforces the bound
        self._buf = bytes(data) + b"\xff\xff\xff\xff"
        self.pos = 0

    def peek(self, nbits: int) -> int:
        pos = self.pos
        i = pos >> 3
        word = int.from_bytes(self._buf[i : i + 4], "big")
        return (word >> (32 - (pos & 7) - nbits)) & ((1 << nbits) - 1)

    def skip(self, nbits: int) -> None:
        self.pos += nbits
        if self.pos > self.nbits:
            raise TruncatedStreamError(f"bitstream ended at bit {self.nbits}")

    def read(self, nbits: int) -> int:
        if nbits == 0:
            return 0
        value = self.peek(nbits)
        self.skip(nbits)
        return value

    @property
    def remaining(self) -> int:
        return self.nbits - self.pos


_ESCAPE = -1
_INVALID = -2


class HuffmanTable:
    """Canonical Huffman code built from JPEG-style ``bits``/``values`` lists.

    ``bits[i]`` is the number of codes of length ``i + 1``.  When the code
    space is not full, the all-ones codeword of maximal length becomes an
    escape followed by ``symbol_bits`` raw bits.
    """

    def __init__(self, bits, values, symbol_bits: int):
        bits = list(bits)
        values = list(values)
        if len(bits) != 16 or sum(bits) != len(values):
            raise ValueError("bits must have 16 entries summing to len(values)")
        if len(set(values)) != len(values):
            raise ValueError("duplicate symbols in Huffman table")
        self.symbol_bits = symbol_bits
        self.codes: dict[int, tuple[int, int]] = {}
        code = 0
        k = 0
        for length in range(1, 17):
            for _ in range(bits[length - 1]):
                self.codes[values[k]] = (code, length)
                code += 1
                k += 1
            code <<= 1
        self.max_length = max(length for _, length in self.codes.values())
        kraft = sum(2.0 ** -length for _, length in self.codes.values())
        if kraft > 1.0:
            raise ValueError("code lengths violate the Kraft inequality")

        size = 1 << self.max_length
        lookup = [_INVALID] * size
        for symbol, (c, length) in self.codes.items():
            shift = self.max_length - length
            entry = (symbol << 5) | length
            lookup[c << shift : (c + 1) << shift] = [entry] * (1 << shift)
        self.escape = None
        if lookup[size - 1] == _INVALID:
            lookup[size - 1] = _ESCAPE
            self.escape = (size - 1, self.max_length)
        self._lookup = lookup

    def code_lengths(self) -> dict[int, int]:
        return {s: length for s, (_, length) in self.codes.items()}

    def write(self, writer: BitWriter, symbol: int) -> None:
        code = self.codes.get(symbol)
        if code is not None:
            writer.write(*code)
        elif self.escape is not None and 0 <= symbol < (1 << self.symbol_bits):
            writer.write(*self.escape)
            writer.write(symbol, self.symbol_bits)
        else:
            raise EncodeError(f"symbol {symbol:#x} has no code")

    def read(self, reader: BitReader) -> int:
        at = reader.pos
        entry = self._lookup[reader.peek(self.max_length)]
        if entry >= 0:
            reader.skip(entry & 31)
            return entry >> 5
        if entry == _ESCAPE:
            reader.skip(self.max_length)
            symbol = reader.read(self.symbol_bits)
            if symbol in self.codes:
                raise InvalidCodeError(f"escaped symbol {symbol:#x} has a regular code (bit {at})")
            return symbol
        raise InvalidCodeError(f"invalid Huffman code at bit {at}")


DC_TABLE = HuffmanTable(
    bits=(0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0),
    values=range(12),
    symbol_bits=4,
)

AC_TABLE = HuffmanTable(
    bits=(0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7D),
    values=(
        0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07,
        0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xA1, 0x08, 0x23, 0x42, 0xB1, 0xC1, 0x15, 0x52, 0xD1, 0xF0,
        0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0A, 0x16, 0x17, 0x18, 0x19, 0x1A, 0x25, 0x26, 0x27, 0x28,
        0x29, 0x2A, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49,
        0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59, 0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69,
        0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7A, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
        0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9A, 0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7,
        0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6, 0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3, 0xC4, 0xC5,
        0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3, 0xD4, 0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA, 0xE1, 0xE2,
        0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9, 0xEA, 0xF1, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8,
        0xF9, 0xFA,
    ),
    symbol_bits=8,
)


def size_category(value: int) -> int:
    """Number of bits needed for ``|value|``; 0 for zero."""
    return abs(int(value)).bit_length()


def _amplitude(value: int, size: int) -> int:
    # negative values are sent as value - 1 in the low ``size`` bits
    return value if value >= 0 else value + (1 << size) - 1


def _extend(bits: int, size: int) -> int:
    if size and bits < (1 << (size - 1)):
        return bits - (1 << size) + 1
    return bits


def encode_blocks(blocks) -> bytes:
    """Entropy-code a raster-ordered sequence of quantized 8x8 blocks."""
    blocks = np.asarray(blocks)
    if blocks.ndim != 3 or blocks.shape[1:] != (8, 8):
        raise ValueError(f"expected blocks of shape (n, 8, 8), got {blocks.shape}")
    scans = zigzag(blocks).astype(np.int64).tolist()
    w = BitWriter()
    dc_write = DC_TABLE.write
    ac_write = AC_TABLE.write
    pred = 0
    for scan in scans:
        diff = scan[0] - pred
        pred = scan[0]
        size = size_category(diff)
        if size > MAX_CATEGORY:
            raise EncodeError(f"DC difference {diff} exceeds category {MAX_CATEGORY}")
        dc_write(w, size)
        if size:
            w.write(_amplitude(diff, size), size)

        last = 0
        for k in range(1, 64):
            v = scan[k]
            if not v:
                continue
            run = k - last - 1
            while run > 15:
                ac_write(w, ZRL)
                run -= 16
            size = size_category(v)
            if size > MAX_CATEGORY:
                raise EncodeError(f"AC coefficient {v} exceeds category {MAX_CATEGORY}")
            ac_write(w, (run << 4) | size)
            w.write(_amplitude(v, size), size)
            last = k
        if last != 63:
            ac_write(w, EOB)
    return w.getvalue()


def decode_blocks(data: bytes, block_count: int) -> np.ndarray:
    """Decode ``block_count`` blocks; returns an ``(n, 8, 8)`` int64 array.

    Raises an :class:`~fjpeg.errors.EntropyError` subclass for truncated,
    malformed or over-long input.
    """
    r = BitReader(data)
    dc_read = DC_TABLE.read
    ac_read = AC_TABLE.read
    read = r.read
    scans = np.zeros((block_count, 64), dtype=np.int64)
    pred = 0
    for b in range(block_count):
        row = scans[b]
        size = dc_read(r)
        if size > MAX_CATEGORY:
            raise InvalidCodeError(f"DC category {size} in block {b}")
        pred += _extend(read(size), size)
        row[0] = pred
        k = 1
        while k < 64:
            symbol = ac_read(r)
            run = symbol >> 4
            size = symbol & 15
            if size == 0:
                if run == 0:
                    break
                if run != 15:
                    raise InvalidCodeError(f"undefined AC symbol {symbol:#x} in block {b}")
                k += 16
                if k > 63:
                    raise RunOverflowError(f"zero run passes coefficient 63 in block {b}")
                continue
            k += run
            if k > 63:
                raise RunOverflowError(f"zero run passes coefficient 63 in block {b}")
            row[k] = _extend(read(size), size)
            k += 1
    rest = r.remaining
    if rest >= 8 or (rest and r.peek(rest) != (1 << rest) - 1):
        raise TrailingDataError(f"{rest} unused bits after {block_count} blocks")
    return izigzag(scans)
