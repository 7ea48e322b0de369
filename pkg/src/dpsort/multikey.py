"""Most-significant-symbol-first refinement sort for symbol slices.

Every string starts in one group. At depth ``t`` the still-ambiguous
groups are stably reordered by their ``t``-th symbol (0 once a string has
ended), and split wherever that symbol changes. A group is finished once
it is a singleton or all its members ended. Stability means strings that
are equal keep their input order.

The routine reads a string's symbol at depth ``t`` only while the string
still shares its length-``t`` prefix with another one, i.e. at most
``lcp-with-a-neighbour + 1`` symbols per string.
"""

from __future__ import annotations

import numpy as np

from .strings import StringSet, WorkStats


def refine_sort(buffer, offsets, lengths, stats: WorkStats | None = None):
    """Return ``(order, equal_prev)``.

    ``order`` lists input positions in lexicographic order with ties kept
    in input order. ``equal_prev[j]`` says whether the string at sorted
    position ``j`` equals the one at ``j - 1``.
    """
    offsets = np.asarray(offsets, dtype=np.int64)
    lengths = np.asarray(lengths, dtype=np.int64)
    k = lengths.size
    order = np.arange(k, dtype=np.int64)
    equal_prev = np.zeros(k, dtype=bool)
    if k <= 1:
        return order, equal_prev
    group = np.zeros(k, dtype=np.int64)
    pos = np.arange(k, dtype=np.int64)
    depth = 0
    while pos.size:
        idx = order[pos]
        has = lengths[idx] > depth
        key = np.zeros(pos.size, dtype=np.int64)
        key[has] = buffer[offsets[idx[has]] + depth]
        if stats is not None:
            stats.add(int(has.sum()))
        g = group[pos]
        # groups occupy contiguous positions, so sorting by (g, key) keeps them in place
        perm = np.lexsort((key, g))
        idx, key = idx[perm], key[perm]
        order[pos] = idx
        new_run = np.ones(pos.size, dtype=bool)
        new_run[1:] = (g[1:] != g[:-1]) | (key[1:] != key[:-1])
        run_id = np.cumsum(new_run) - 1
        group[pos] = pos[new_run][run_id]
        size = np.bincount(run_id)[run_id]
        ended = key == 0
        equal_prev[pos[ended & ~new_run]] = True
        pos = pos[(size > 1) & ~ended]
        depth += 1
    return order, equal_prev


def multikey_sort(strings: StringSet, stats: WorkStats | None = None):
    """Sort a whole set; charges one read per symbol of the set.

    The strings are first copied into a packed buffer (``n`` reads), the
    refinement then works on that copy.
    """
    packed = strings.compacted()
    if stats is not None:
        stats.add(packed.n)
    return refine_sort(packed.buffer, packed.offsets, packed.lengths)
