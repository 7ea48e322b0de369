"""Karp-Rabin fingerprints of string slices.

A slice ``s[x:x+n]`` hashes to ``sum(s[x+j] * base**(n-1-j)) mod q``. The
powers of the base come from a multiplicative scan, the weighted symbols
are combined with an additive one, so a batch of equal-length prefixes is
hashed with a handful of vectorised passes.

Arithmetic stays in uint64. For the default Mersenne prime 2**61 - 1 the
128-bit product is assembled from 32-bit halves and folded with
``2**61 == 1 (mod q)``; moduli below 2**32 multiply directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scan import all_prefix, parallel_map
from .strings import StringSet, WorkStats

MERSENNE_61 = (1 << 61) - 1

_M61 = np.uint64(MERSENNE_61)
_LO32 = np.uint64(0xFFFFFFFF)
_LO29 = np.uint64((1 << 29) - 1)
_U32, _U29, _U61, _U3 = np.uint64(32), np.uint64(29), np.uint64(61), np.uint64(3)

_ROW_CHUNK = 4096


@dataclass(frozen=True)
class FingerprintParams:
    """Modulus ``q`` (prime) and base ``b`` drawn uniformly from ``[q, 2q)``."""

    q: int
    b: int
    seed: int | None = None

    def __post_init__(self):
        if self.q != MERSENNE_61 and not 2 <= self.q < (1 << 32):
            raise ValueError("q must be 2**61 - 1 or a prime below 2**32")
        if not self.q <= self.b < 2 * self.q:
            raise ValueError("base must lie in [q, 2q)")

    @classmethod
    def from_seed(cls, seed: int | None = 0, q: int = MERSENNE_61) -> FingerprintParams:
        rng = np.random.default_rng(seed)
        return cls(q=q, b=q + int(rng.integers(0, q)), seed=seed)

    @property
    def base(self) -> int:
        """The base reduced into ``[0, q)``."""
        return self.b - self.q


def mulmod(a, b, q: int) -> np.ndarray:
    """Elementwise ``a * b mod q`` for uint64 arrays with entries below ``q``."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    if q < (1 << 32):
        return (a * b) % np.uint64(q)
    if q != MERSENNE_61:
        raise ValueError("unsupported modulus")
    a0, a1 = a & _LO32, a >> _U32
    b0, b1 = b & _LO32, b >> _U32
    low = a0 * b0
    mid = a1 * b0 + a0 * b1
    r = ((a1 * b1) << _U3) + (mid >> _U29) + ((mid & _LO29) << _U32) \
        + (low & _M61) + (low >> _U61)
    r = (r & _M61) + (r >> _U61)
    return r - np.where(r >= _M61, _M61, np.uint64(0))


def addmod(a, b, q: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    s = a + b
    qq = np.uint64(q)
    return s - np.where(s >= qq, qq, np.uint64(0))


def _powers_desc(length, params: FingerprintParams) -> np.ndarray:
    """``[base**(length-1), ..., base**1, base**0] mod q``."""
    q = params.q
    seed = np.full(length, params.base % q, dtype=np.uint64)
    seed[0] = 1
    powers = all_prefix(seed, lambda x, y: mulmod(x, y, q))
    return powers[::-1].copy()


def _reduce_rows(f, q):
    # pairwise fold of each row; equals the last entry of an additive scan
    while f.shape[1] > 1:
        if f.shape[1] % 2:
            f = np.concatenate([f, np.zeros((f.shape[0], 1), np.uint64)], axis=1)
        f = addmod(f[:, 0::2], f[:, 1::2], q)
    return f[:, 0]


def fingerprint_substring(strings: StringSet, i: int, start: int, length: int,
                          params: FingerprintParams, stats: WorkStats | None = None) -> int:
    """Fingerprint of ``strings[i][start:start+length]`` (0-based ``start``)."""
    if length < 1 or start < 0 or start + length > strings.lengths[i]:
        raise IndexError(
            f"slice [{start}, {start + length}) outside string {i} "
            f"of length {int(strings.lengths[i])}")
    q = params.q
    sym = strings.string(i)[start:start + length].astype(np.uint64) % np.uint64(q)
    if stats is not None:
        stats.add(length)
    weighted = mulmod(sym, _powers_desc(length, params), q)
    return int(all_prefix(weighted, lambda x, y: addmod(x, y, q))[-1])


def fingerprint_prefix_batch(strings: StringSet, active, length: int,
                             params: FingerprintParams,
                             stats: WorkStats | None = None) -> np.ndarray:
    """Fingerprints of the length-``length`` prefixes of ``strings[active]``."""
    active = np.asarray(active, dtype=np.int64)
    if active.size == 0:
        return np.zeros(0, dtype=np.uint64)
    if length < 1:
        raise IndexError("prefix length must be positive")
    short = np.flatnonzero(strings.lengths[active] < length)
    if short.size:
        i = int(active[short[0]])
        raise IndexError(f"string {i} is shorter than {length}")
    q = params.q
    weights = _powers_desc(length, params)
    cols = np.arange(length, dtype=np.int64)
    offsets = strings.offsets[active]

    def rows(span):
        lo, hi = span
        sym = strings.buffer[offsets[lo:hi, None] + cols].astype(np.uint64)
        sym %= np.uint64(q)
        return _reduce_rows(mulmod(sym, weights[None, :], q), q)

    chunk = max(1, _ROW_CHUNK // length)
    spans = [(lo, min(lo + chunk, active.size)) for lo in range(0, active.size, chunk)]
    out = np.concatenate(parallel_map(rows, spans))
    if stats is not None:
        stats.add(active.size * length)
    return out
