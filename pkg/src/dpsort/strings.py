"""String sets stored as one concatenated symbol buffer.

Symbols are unsigned 32-bit integers >= 1. Byte strings are lifted by
mapping byte ``c`` to symbol ``c + 1`` so that 0 is never a symbol; several
routines rely on 0 as an end-of-string sentinel that sorts before every
real symbol.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

SYMBOL_DTYPE = np.uint32
MAX_SIGMA = (1 << 32) - 1

LESS, EQUAL, GREATER = -1, 0, 1


class LengthExceeds(ValueError):
    """A truncation length is larger than the string it applies to."""


class WorkStats:
    """Counts symbol reads and per-round active set sizes.

    ``add`` is lock-protected so concurrent phases can report into one
    instance; the total does not depend on scheduling.
    """

    def __init__(self):
        self.symbols_inspected = 0
        self.per_round_active: list[int] = []
        self.rounds_executed = 0
        self._lock = threading.Lock()

    def add(self, n):
        n = int(n)
        if n < 0:
            raise ValueError("symbol count must be non-negative")
        with self._lock:
            self.symbols_inspected += n

    def start_round(self, k_r):
        self.per_round_active.append(int(k_r))
        self.rounds_executed += 1

    def merge(self, other: WorkStats):
        self.add(other.symbols_inspected)
        self.per_round_active.extend(other.per_round_active)
        self.rounds_executed += other.rounds_executed

    def as_dict(self):
        return {
            "symbols_inspected": self.symbols_inspected,
            "per_round_active": list(self.per_round_active),
            "rounds_executed": self.rounds_executed,
        }

    def __repr__(self):
        return (f"WorkStats(symbols_inspected={self.symbols_inspected}, "
                f"rounds_executed={self.rounds_executed}, "
                f"per_round_active={self.per_round_active})")


@dataclass(frozen=True)
class StringSet:
    """``k`` strings referencing slices of a shared symbol buffer.

    ``offsets[i]:offsets[i] + lengths[i]`` is string ``i``. Slices may
    overlap (a truncated set shares its parent's buffer), so ``n`` is the
    sum of the lengths, not the buffer size.
    """

    buffer: np.ndarray
    offsets: np.ndarray
    lengths: np.ndarray
    sigma: int = field(default=0)

    def __post_init__(self):
        buf = np.ascontiguousarray(self.buffer, dtype=SYMBOL_DTYPE)
        off = np.ascontiguousarray(self.offsets, dtype=np.int64)
        lens = np.ascontiguousarray(self.lengths, dtype=np.int64)
        if buf.ndim != 1 or off.ndim != 1 or off.shape != lens.shape:
            raise ValueError("buffer must be 1-D and offsets/lengths equally long")
        if lens.size:
            if (lens < 0).any() or (off < 0).any():
                raise ValueError("negative offset or length")
            if (off + lens > buf.size).any():
                raise ValueError("string extends past the end of the buffer")
        if buf.size and buf.min() == 0:
            raise ValueError("symbol 0 is reserved; symbols must be >= 1")
        top = int(buf.max()) if buf.size else 0
        sigma = self.sigma or top
        if sigma < top:
            raise ValueError(f"sigma={sigma} is smaller than symbol {top}")
        if sigma > MAX_SIGMA:
            raise ValueError("sigma must fit in 32 bits")
        object.__setattr__(self, "buffer", buf)
        object.__setattr__(self, "offsets", off)
        object.__setattr__(self, "lengths", lens)
        object.__setattr__(self, "sigma", int(sigma))
        for arr in (buf, off, lens):
            arr.flags.writeable = False

    @classmethod
    def from_sequences(cls, strings: Iterable[Sequence[int]], sigma=0) -> StringSet:
        parts = [np.asarray(s, dtype=np.int64).ravel() for s in strings]
        lengths = np.array([p.size for p in parts], dtype=np.int64)
        offsets = np.zeros(lengths.size, dtype=np.int64)
        if lengths.size:
            offsets[1:] = np.cumsum(lengths)[:-1]
        buf = np.concatenate(parts) if parts else np.zeros(0, np.int64)
        if buf.size and (buf.min() < 1 or buf.max() > MAX_SIGMA):
            raise ValueError("symbols must lie in [1, 2**32 - 1]")
        return cls(buf.astype(SYMBOL_DTYPE), offsets, lengths, sigma)

    @classmethod
    def from_bytes(cls, strings: Iterable[bytes | str]) -> StringSet:
        """Lift byte strings (``str`` is UTF-8 encoded) to symbols ``b + 1``."""
        raw = [s.encode() if isinstance(s, str) else bytes(s) for s in strings]
        lengths = np.array([len(s) for s in raw], dtype=np.int64)
        offsets = np.zeros(lengths.size, dtype=np.int64)
        if lengths.size:
            offsets[1:] = np.cumsum(lengths)[:-1]
        buf = np.frombuffer(b"".join(raw), dtype=np.uint8).astype(SYMBOL_DTYPE) + 1
        return cls(buf, offsets, lengths, 256)

    @property
    def k(self) -> int:
        return int(self.lengths.size)

    @property
    def n(self) -> int:
        return int(self.lengths.sum())

    def __len__(self):
        return self.k

    def string(self, i) -> np.ndarray:
        o = self.offsets[i]
        return self.buffer[o:o + self.lengths[i]]

    def __iter__(self):
        for i in range(self.k):
            yield self.string(i)

    def to_bytes(self, i) -> bytes:
        s = self.string(i)
        if s.size and s.max() > 256:
            raise ValueError("string has symbols outside the byte range")
        return (s - 1).astype(np.uint8).tobytes()

    def to_lists(self) -> list[list[int]]:
        return [self.string(i).tolist() for i in range(self.k)]

    def subset(self, idx) -> StringSet:
        idx = np.asarray(idx, dtype=np.int64)
        return StringSet(self.buffer, self.offsets[idx], self.lengths[idx], self.sigma)

    def compacted(self) -> StringSet:
        """Copy into a fresh buffer holding exactly the referenced symbols."""
        if self.k == 0:
            return StringSet(np.zeros(0, SYMBOL_DTYPE), self.offsets, self.lengths, self.sigma)
        pos = gather_positions(self.offsets, self.lengths)
        offsets = np.zeros(self.k, dtype=np.int64)
        offsets[1:] = np.cumsum(self.lengths)[:-1]
        return StringSet(self.buffer[pos], offsets, self.lengths, self.sigma)


def gather_positions(offsets, lengths) -> np.ndarray:
    """Buffer positions of all symbols of the given slices, in slice order."""
    lengths = np.asarray(lengths, dtype=np.int64)
    total = int(lengths.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    starts = np.cumsum(lengths) - lengths
    shift = np.asarray(offsets, dtype=np.int64) - starts
    return np.repeat(shift, lengths) + np.arange(total, dtype=np.int64)


def lex_compare(a, b, stats: WorkStats | None = None) -> tuple[int, int]:
    """Compare two symbol sequences; return ``(ordering, lcp)``.

    ``ordering`` is ``LESS``, ``EQUAL`` or ``GREATER``. A proper prefix is
    smaller than its extensions. Reading stops at the first mismatch, so
    ``2 * min(lcp + 1, min(len(a), len(b)))`` symbols are charged.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    m = min(a.size, b.size)
    neq = np.flatnonzero(a[:m] != b[:m])
    lcp = int(neq[0]) if neq.size else m
    if stats is not None:
        stats.add(2 * min(lcp + 1, m))
    if lcp < m:
        return (LESS if a[lcp] < b[lcp] else GREATER), lcp
    if a.size == b.size:
        return EQUAL, lcp
    return (LESS if a.size < b.size else GREATER), lcp


def truncate(strings: StringSet, lengths) -> StringSet:
    """Prefixes ``s_i[:lengths[i]]``; shares the buffer, copies nothing."""
    lengths = np.asarray(lengths, dtype=np.int64)
    if lengths.shape != strings.lengths.shape:
        raise ValueError("need exactly one length per string")
    bad = np.flatnonzero((lengths > strings.lengths) | (lengths < 0))
    if bad.size:
        i = int(bad[0])
        raise LengthExceeds(
            f"string {i}: length {int(lengths[i])} not in [0, {int(strings.lengths[i])}]")
    return StringSet(strings.buffer, strings.offsets, lengths, strings.sigma)
