"""All-prefix operations and stable compaction.

Arrays are cut into fixed-size blocks. Each block is scanned on its own
(in parallel), the block totals are folded left to right, and each block
except the first is then combined with the carry of the blocks before it.
The block size does not depend on the thread count, so results are
identical for every ``num_threads`` setting.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import numpy as np

BLOCK_SIZE = 1 << 16

_num_threads = os.cpu_count() or 1


def get_num_threads() -> int:
    return _num_threads


def set_num_threads(n: int | None):
    """Set the worker count; ``None`` means hardware parallelism."""
    global _num_threads
    if n is None:
        n = os.cpu_count() or 1
    if n < 1:
        raise ValueError("need at least one thread")
    _num_threads = int(n)


@contextmanager
def num_threads(n: int | None):
    old = _num_threads
    set_num_threads(n)
    try:
        yield
    finally:
        set_num_threads(old)


def parallel_map(fn, items):
    """``list(map(fn, items))`` on the shared worker count."""
    items = list(items)
    if _num_threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(_num_threads, len(items))) as pool:
        return list(pool.map(fn, items))


def _blocks(n, size=BLOCK_SIZE):
    return [(lo, min(lo + size, n)) for lo in range(0, n, size)]


def _sweep_scan(x, op):
    """In-place inclusive scan by an up-sweep and a down-sweep.

    Only ``op(left, right)`` with ``left`` preceding ``right`` is ever
    evaluated, so ``op`` needs to be associative but not commutative.
    """
    n = x.shape[0]
    d = 1
    while d < n:
        right = x[2 * d - 1::2 * d]
        x[2 * d - 1::2 * d] = op(x[d - 1::2 * d][:right.shape[0]], right)
        d *= 2
    d //= 2
    while d >= 1:
        right = x[3 * d - 1::2 * d]
        if right.shape[0]:
            x[3 * d - 1::2 * d] = op(x[2 * d - 1::2 * d][:right.shape[0]], right)
        d //= 2
    return x


def _block_scan(op):
    if isinstance(op, np.ufunc):
        return lambda block: op.accumulate(block)
    return lambda block: _sweep_scan(block.copy(), op)


def all_prefix(values, op) -> np.ndarray:
    """Inclusive scan ``[a0, a0 op a1, a0 op a1 op a2, ...]``.

    ``op`` must be associative, pure, and elementwise over equally shaped
    numpy arrays (a ufunc such as ``np.add`` or any vectorised function).
    """
    a = np.asarray(values)
    if a.ndim != 1:
        raise ValueError("all_prefix expects a 1-D array")
    if a.shape[0] <= 1:
        return a.copy()
    scan = _block_scan(op)
    spans = _blocks(a.shape[0])
    parts = parallel_map(lambda s: scan(a[s[0]:s[1]]), spans)
    if len(parts) == 1:
        return np.asarray(parts[0], dtype=a.dtype)
    carries = [parts[0][-1:]]
    for part in parts[1:-1]:
        carries.append(op(carries[-1], part[-1:]))

    def apply(j):
        if j == 0:
            return parts[0]
        part = parts[j]
        return op(np.broadcast_to(carries[j - 1], part.shape).copy(), part)

    out = parallel_map(apply, range(len(parts)))
    return np.concatenate(out).astype(a.dtype, copy=False)


def all_prefix_sums(values) -> np.ndarray:
    """Inclusive prefix sums of an integer array (int64 accumulator)."""
    a = np.asarray(values)
    if a.dtype == bool or a.dtype.kind in "iu":
        a = a.astype(np.int64, copy=False)
    return all_prefix(a, np.add)


def compact(values, keep) -> np.ndarray:
    """Entries of ``values`` whose flag is set, in their original order."""
    values = np.asarray(values)
    keep = np.asarray(keep, dtype=bool)
    if values.shape[0] != keep.shape[0]:
        raise ValueError("values and keep must have equal length")
    if keep.shape[0] == 0:
        return values[:0].copy()
    dest = all_prefix_sums(keep)
    out = np.empty(int(dest[-1]), dtype=values.dtype)
    out[dest[keep] - 1] = values[keep]
    return out
