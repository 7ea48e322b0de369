"""Semisorting active strings by their length-``2**r`` prefixes.

A semisort only has to make equal keys contiguous. Four strategies are
available:

``compare``
    exact multikey sort of the prefixes themselves; groups come out in
    lexicographic order.
``fpsort``
    Karp-Rabin fingerprints, then a parallel stable merge sort on them.
``fpgroup``
    fingerprints grouped through a hash table (``pandas.factorize``),
    groups in order of first appearance.
``hybrid``
    ``fpgroup`` in rounds with many survivors (``k_r > k / lg(k)**2``),
    ``fpsort`` otherwise.

Length-1 prefixes are grouped by the symbol itself, never hashed.

Equal prefixes always share a fingerprint, so a collision can only merge
two groups. With ``confirm=True`` every adjacent pair inside a fingerprint
group is compared symbol by symbol and any merged group is regrouped
exactly, so the returned boundaries are always correct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import pandas as pd

from .fingerprint import FingerprintParams, fingerprint_prefix_batch
from .multikey import refine_sort
from .scan import BLOCK_SIZE, get_num_threads, parallel_map
from .strings import StringSet, WorkStats

_PAIR_CHUNK = 1 << 16


class Strategy(str, Enum):
    COMPARE = "compare"
    FPSORT = "fpsort"
    FPGROUP = "fpgroup"
    HYBRID = "hybrid"


@dataclass
class SemisortResult:
    order: np.ndarray
    boundaries: np.ndarray  # True where a new group starts

    def groups(self) -> list[np.ndarray]:
        starts = np.flatnonzero(self.boundaries)
        return np.split(self.order, starts[1:])


def default_hybrid_threshold(k: int, r: int) -> float:
    return k / math.log2(k) ** 2


def hybrid_select(k: int, k_r: int, r: int, threshold=default_hybrid_threshold) -> Strategy:
    """Pick the concrete strategy the hybrid policy uses for one round."""
    if k < 2:
        return Strategy.FPGROUP
    return Strategy.FPGROUP if k_r > threshold(k, r) else Strategy.FPSORT


def _merge(keys, a, b):
    ka, kb = keys[a], keys[b]
    out = np.empty(a.size + b.size, dtype=np.int64)
    out[np.arange(a.size) + np.searchsorted(kb, ka, side="left")] = a
    out[np.arange(b.size) + np.searchsorted(ka, kb, side="right")] = b
    return out


def stable_argsort(keys) -> np.ndarray:
    """Stable argsort: sorted blocks merged pairwise in parallel.

    The output equals ``np.argsort(keys, kind="stable")``.
    """
    keys = np.asarray(keys)
    n = keys.size
    if n <= BLOCK_SIZE or get_num_threads() == 1:
        return np.argsort(keys, kind="stable")
    runs = parallel_map(
        lambda lo: lo + np.argsort(keys[lo:lo + BLOCK_SIZE], kind="stable"),
        range(0, n, BLOCK_SIZE))
    while len(runs) > 1:
        pairs = [runs[j:j + 2] for j in range(0, len(runs), 2)]
        runs = parallel_map(lambda p: p[0] if len(p) == 1 else _merge(keys, p[0], p[1]), pairs)
    return runs[0]


def hash_group(keys) -> np.ndarray:
    """Permutation that makes equal keys contiguous, keeping input order inside groups."""
    codes, _ = pd.factorize(np.asarray(keys), sort=False)
    return np.argsort(codes, kind="stable")


def adjacent_lcp(strings: StringSet, left, right, length: int):
    """lcp of ``strings[left[j]][:length]`` and ``strings[right[j]][:length]``.

    Returns ``(lcp, reads)`` where each pair is read up to and including its
    first mismatch.
    """
    left = np.asarray(left, dtype=np.int64)
    right = np.asarray(right, dtype=np.int64)
    if left.size == 0:
        return np.zeros(0, dtype=np.int64), 0
    cols = np.arange(length, dtype=np.int64)
    buf, off = strings.buffer, strings.offsets
    chunk = max(1, _PAIR_CHUNK // length)

    def run(lo):
        a = buf[off[left[lo:lo + chunk], None] + cols]
        b = buf[off[right[lo:lo + chunk], None] + cols]
        neq = a != b
        return np.where(neq.any(axis=1), neq.argmax(axis=1), length)

    lcp = np.concatenate(parallel_map(run, range(0, left.size, chunk)))
    reads = 2 * int(np.minimum(lcp + 1, length).sum())
    return lcp, reads


def _exact_prefix_sort(strings, members, length, stats):
    prefixes = StringSet(strings.buffer, strings.offsets[members],
                         np.full(members.size, length), strings.sigma)
    packed = prefixes.compacted()
    if stats is not None:
        stats.add(packed.n)
    perm, equal_prev = refine_sort(packed.buffer, packed.offsets, packed.lengths)
    return members[perm], ~equal_prev


def _confirm(strings, order, boundaries, length, stats):
    inner = np.flatnonzero(~boundaries)
    lcp, reads = adjacent_lcp(strings, order[inner - 1], order[inner], length)
    if stats is not None:
        stats.add(reads)
    split = inner[lcp < length]
    if split.size == 0:
        return order, boundaries
    order, boundaries = order.copy(), boundaries.copy()
    starts = np.flatnonzero(boundaries)
    ends = np.append(starts[1:], order.size)
    for g in np.unique(np.searchsorted(starts, split, side="right") - 1):
        lo, hi = starts[g], ends[g]
        order[lo:hi], boundaries[lo:hi] = _exact_prefix_sort(
            strings, np.sort(order[lo:hi]), length, stats)
    return order, boundaries


def semisort_round(strings: StringSet, active, length: int, strategy=Strategy.HYBRID,
                   params: FingerprintParams | None = None, *, k_total: int | None = None,
                   confirm: bool = True, stats: WorkStats | None = None) -> SemisortResult:
    """Group ``active`` so equal length-``length`` prefixes are contiguous.

    Every active string must have at least ``length`` symbols. Inside a
    group, indices appear in ascending order.
    """
    strategy = Strategy(strategy)
    active = np.sort(np.asarray(active, dtype=np.int64))
    if active.size == 0:
        return SemisortResult(active, np.zeros(0, dtype=bool))
    if (strings.lengths[active] < length).any():
        raise IndexError(f"an active string is shorter than {length}")
    if strategy is Strategy.HYBRID:
        r = length.bit_length() - 1
        strategy = hybrid_select(k_total or active.size, active.size, r)

    exact = length == 1
    if exact:
        keys = strings.buffer[strings.offsets[active]]
        if stats is not None:
            stats.add(active.size)
    elif strategy is Strategy.COMPARE:
        order, boundaries = _exact_prefix_sort(strings, active, length, stats)
        return SemisortResult(order, boundaries)
    else:
        if params is None:
            raise ValueError("fingerprint strategies need FingerprintParams")
        keys = fingerprint_prefix_batch(strings, active, length, params, stats)

    if strategy is Strategy.FPGROUP:
        perm = hash_group(keys)
    else:
        perm = stable_argsort(keys)
    order = active[perm]
    keys = keys[perm]
    boundaries = np.ones(order.size, dtype=bool)
    boundaries[1:] = keys[1:] != keys[:-1]
    if not exact and confirm:
        order, boundaries = _confirm(strings, order, boundaries, length, stats)
    return SemisortResult(order, boundaries)
