"""Round-based 2-approximation of relevant prefix lengths.

Round ``r`` semisorts the surviving strings by their length-``2**r``
prefixes. A string whose prefix is alone in its group is finished with
``L = 2**r``. Otherwise it is finished with ``L = len(s)`` once it is too
short for the next round (``len(s) < 2**(r + 1)``). Survivors are
compacted into the next round's active array.

Work accounting per round ``r`` with ``k_r`` active strings: the semisort
reads at most ``k_r * 2**r`` symbols for its keys, and boundary
confirmation reads at most ``2 * (k_r - 1) * 2**r`` more. The sum over
all rounds of ``k_r * 2**r`` is below ``4 * D``, so the full variant stays
below ``12 * D`` reads unless fingerprints collide (each collision adds
one exact regrouping of the affected group).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fingerprint import FingerprintParams
from .scan import compact
from .semisort import SemisortResult, Strategy, semisort_round
from .strings import StringSet, WorkStats


@dataclass
class RoundState:
    r: int
    active: np.ndarray

    @property
    def k_r(self) -> int:
        return int(self.active.size)


@dataclass
class ApproxLengths:
    L: np.ndarray
    relaxed: bool = False
    stats: WorkStats = field(default_factory=WorkStats)
    first_round: int = 0


def skipped_rounds(k: int) -> int:
    """``ceil(lg lg k)`` in integer arithmetic; 0 for ``k <= 2``."""
    r = 0
    while k > 2 and (1 << (1 << r)) < k:
        r += 1
    return r


def compaction_phase(strings: StringSet, state: RoundState, grouped: SemisortResult):
    """Finish unique and too-short strings; return ``(next_state, done, values)``.

    ``done`` are the finished string indices and ``values`` their ``L``.
    """
    order, starts = grouped.order, grouped.boundaries
    n = order.size
    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return RoundState(state.r + 1, empty), empty, empty
    ends = np.ones(n, dtype=bool)
    ends[:-1] = starts[1:]
    unique = starts & ends
    lengths = strings.lengths[order]
    short = ~unique & (lengths < (2 << state.r))
    done = unique | short
    values = np.where(unique, 1 << state.r, lengths)
    survivors = compact(order, ~done)
    return (RoundState(state.r + 1, survivors),
            compact(order, done), compact(values, done))


def _run(strings, first_round, strategy, params, seed, confirm, relaxed):
    stats = WorkStats()
    k = strings.k
    lengths = strings.lengths
    L = np.zeros(k, dtype=np.int64)
    if params is None:
        params = FingerprintParams.from_seed(seed)
    # strings too short for the first executed round keep their full length
    short = lengths < (1 << first_round)
    L[short] = lengths[short]
    state = RoundState(first_round, np.flatnonzero(~short))
    while state.k_r:
        stats.start_round(state.k_r)
        grouped = semisort_round(strings, state.active, 1 << state.r, strategy, params,
                                 k_total=k, confirm=confirm, stats=stats)
        state, done, values = compaction_phase(strings, state, grouped)
        L[done] = values
    return ApproxLengths(L, relaxed, stats, first_round)


def approximate(strings: StringSet, strategy=Strategy.HYBRID,
                params: FingerprintParams | None = None, *, seed: int | None = 0,
                confirm: bool = True) -> ApproxLengths:
    """``L`` with ``ell_i <= L[i] < 2 * ell_i`` (``L[i] = 0`` for empty strings)."""
    return _run(strings, 0, strategy, params, seed, confirm, relaxed=False)


def approximate_relaxed(strings: StringSet, strategy=Strategy.HYBRID,
                        params: FingerprintParams | None = None, *, seed: int | None = 0,
                        confirm: bool = True) -> ApproxLengths:
    """Start at round ``ceil(lg lg k)``: ``ell_i <= L[i] < 2 * max(lg k, ell_i)``.

    Strings shorter than ``2**ceil(lg lg k)`` are finished before the first
    round with their full length.
    """
    return _run(strings, skipped_rounds(strings.k), strategy, params, seed, confirm,
                relaxed=True)
