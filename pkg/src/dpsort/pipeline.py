"""Approximate, truncate, sort.

Once every string is cut to its approximate relevant prefix ``L[i]``, the
order of the prefixes equals the order of the full strings, and any plain
string sorter finishes the job on at most ``2 * D`` symbols.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .approx import ApproxLengths, approximate, approximate_relaxed
from .multikey import multikey_sort
from .scan import all_prefix_sums
from .semisort import Strategy
from .strings import SYMBOL_DTYPE, StringSet, WorkStats, gather_positions, truncate


@dataclass(frozen=True)
class AlphabetReductionMap:
    original_symbols: np.ndarray  # sorted, distinct

    @property
    def m(self) -> int:
        return int(self.original_symbols.size)

    def rank_of(self, symbol) -> int:
        j = int(np.searchsorted(self.original_symbols, symbol))
        if j == self.m or self.original_symbols[j] != symbol:
            raise KeyError(symbol)
        return j + 1

    def __getitem__(self, symbol):
        return self.rank_of(symbol)

    def as_dict(self):
        return {int(s): j + 1 for j, s in enumerate(self.original_symbols)}


def reduce_alphabet(strings: StringSet, stats: WorkStats | None = None):
    """Replace each symbol by its rank among the symbols that occur.

    Symbols are laid out as (string, position, symbol) tuples in string
    order, sorted by symbol, the first occurrence of each distinct symbol is
    marked, and the prefix sums of the marks give the ranks. The result is
    a compact set over ``[1, m]``, ``m <= n``, with the same order between
    any two strings.
    """
    lengths = strings.lengths
    n = strings.n
    if n == 0:
        empty = StringSet(np.zeros(0, SYMBOL_DTYPE), np.zeros(strings.k, np.int64), lengths, 0)
        return empty, AlphabetReductionMap(np.zeros(0, SYMBOL_DTYPE))
    dest_end = all_prefix_sums(lengths)
    starts = dest_end - lengths
    symbols = strings.buffer[gather_positions(strings.offsets, lengths)]
    if stats is not None:
        stats.add(n)
    by_symbol = np.argsort(symbols, kind="stable")
    ordered = symbols[by_symbol]
    first = np.zeros(n, dtype=bool)
    first[1:] = ordered[1:] != ordered[:-1]
    ranks = np.empty(n, dtype=np.int64)
    ranks[by_symbol] = all_prefix_sums(first) + 1
    first[0] = True
    mapping = AlphabetReductionMap(ordered[first].copy())
    return StringSet(ranks, starts, lengths, mapping.m), mapping


def sort_truncated(strings: StringSet, stats: WorkStats | None = None) -> np.ndarray:
    """Plain (not prefix-aware) string sort; reads every symbol once."""
    order, _ = multikey_sort(strings, stats)
    return order


# the D-unaware baseline is the same sorter applied to the untruncated strings
full_sort = sort_truncated


@dataclass(frozen=True)
class SortConfig:
    variant: str = "full"
    strategy: Strategy = Strategy.HYBRID
    seed: int | None = 0
    confirm_boundaries: bool = True
    reduce_alphabet: bool = False

    def __post_init__(self):
        if self.variant not in ("full", "relaxed"):
            raise ValueError(f"unknown variant {self.variant!r}")
        object.__setattr__(self, "strategy", Strategy(self.strategy))

    def as_dict(self):
        d = asdict(self)
        d["strategy"] = self.strategy.value
        return d


@dataclass
class SortResult:
    order: np.ndarray
    stats: WorkStats
    approx: ApproxLengths | None
    config: SortConfig
    timings: dict = field(default_factory=dict)


def d_aware_sort(strings: StringSet, config: SortConfig | None = None) -> SortResult:
    """Sort by approximating relevant prefixes, truncating, then sorting.

    ``stats`` covers the approximation plus the final sort (and the
    alphabet reduction of the truncated strings when enabled).
    """
    config = config or SortConfig()
    timings = {}
    t = time.perf_counter()
    run = approximate_relaxed if config.variant == "relaxed" and strings.k >= 2 else approximate
    approx = run(strings, config.strategy, seed=config.seed, confirm=config.confirm_boundaries)
    timings["approximate"] = time.perf_counter() - t

    stats = WorkStats()
    stats.merge(approx.stats)
    t = time.perf_counter()
    pruned = truncate(strings, approx.L)
    if config.reduce_alphabet:
        pruned, _ = reduce_alphabet(pruned, stats)
    timings["truncate"] = time.perf_counter() - t
    t = time.perf_counter()
    order = sort_truncated(pruned, stats)
    timings["sort"] = time.perf_counter() - t
    return SortResult(order, stats, approx, config, timings)
