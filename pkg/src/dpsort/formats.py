"""On-disk string sets.

Text: newline-delimited byte strings; byte ``c`` becomes symbol ``c + 1``.
A final newline terminates the last string rather than starting a new one.

Binary (little-endian): ``b"DPSS"``, u64 k, u64 N, u32 sigma, then k u64
lengths, then N u32 symbols.
"""

from __future__ import annotations

import struct

import numpy as np

from .strings import SYMBOL_DTYPE, StringSet

MAGIC = b"DPSS"
HEADER = struct.Struct("<4sQQI")


class FormatError(ValueError):
    pass


def parse_text(data: bytes) -> StringSet:
    if not data:
        return StringSet.from_bytes([])
    lines = data.split(b"\n")
    if data.endswith(b"\n"):
        lines.pop()
    return StringSet.from_bytes(lines)


_NEWLINE_SYMBOL = ord("\n") + 1


def _text_safe(strings: StringSet) -> bool:
    packed = strings.compacted().buffer
    return not packed.size or (packed.max() <= 256 and not (packed == _NEWLINE_SYMBOL).any())


def dump_text(strings: StringSet) -> bytes:
    if not _text_safe(strings):
        raise FormatError("strings contain newlines or non-byte symbols")
    return b"".join(strings.to_bytes(i) + b"\n" for i in range(strings.k))


def parse_binary(data: bytes) -> StringSet:
    if len(data) < HEADER.size:
        raise FormatError("truncated header")
    magic, k, n, sigma = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError("bad magic")
    expected = HEADER.size + 8 * k + 4 * n
    if len(data) != expected:
        raise FormatError(f"expected {expected} bytes, got {len(data)}")
    lengths = np.frombuffer(data, dtype="<u8", count=k, offset=HEADER.size).astype(np.int64)
    if int(lengths.sum()) != n:
        raise FormatError("lengths do not sum to N")
    symbols = np.frombuffer(data, dtype="<u4", count=n, offset=HEADER.size + 8 * k)
    offsets = np.zeros(k, dtype=np.int64)
    if k:
        offsets[1:] = np.cumsum(lengths)[:-1]
    return StringSet(symbols.astype(SYMBOL_DTYPE), offsets, lengths, sigma)


def dump_binary(strings: StringSet) -> bytes:
    packed = strings.compacted()
    return b"".join([
        HEADER.pack(MAGIC, packed.k, packed.n, packed.sigma),
        packed.lengths.astype("<u8").tobytes(),
        packed.buffer.astype("<u4").tobytes(),
    ])


def load(path) -> StringSet:
    """Read either format; binary files are recognised by their magic."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] == MAGIC:
        try:
            return parse_binary(data)
        except FormatError:
            pass  # a text file whose first line happens to start with the magic
    return parse_text(data)


def save(strings: StringSet, path, encoding: str = "auto"):
    """Write as ``"text"`` or ``"binary"``.

    ``"auto"`` picks text when every symbol is a byte other than newline.
    """
    if encoding == "auto":
        encoding = "text" if _text_safe(strings) else "binary"
    if encoding == "text":
        data = dump_text(strings)
    elif encoding == "binary":
        data = dump_binary(strings)
    else:
        raise ValueError(f"unknown encoding {encoding!r}")
    with open(path, "wb") as fh:
        fh.write(data)
