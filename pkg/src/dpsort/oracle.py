"""Sequential ground truth: relevant prefix lengths and reference order.

Deliberately plain Python and independent of the rest of the package.
Used only at test scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .strings import StringSet


@dataclass(frozen=True)
class RelevantPrefixInfo:
    ell: np.ndarray
    D: int
    d: int

    def as_dict(self):
        return {"ell": self.ell.tolist(), "D": self.D, "d": self.d}


def lcp(a, b) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def _sequences(strings: StringSet) -> list[list[int]]:
    flat = strings.buffer.tolist()
    return [flat[o:o + n] for o, n in zip(strings.offsets.tolist(), strings.lengths.tolist())]


def _sorted_indices(seqs):
    # Python list comparison is lexicographic with proper prefixes first
    return sorted(range(len(seqs)), key=lambda i: (seqs[i], i))


def reference_sort(strings: StringSet) -> np.ndarray:
    """Lexicographic order of string indices, equal strings by index."""
    return np.array(_sorted_indices(_sequences(strings)), dtype=np.int64)


def _info(ell):
    ell = np.asarray(ell, dtype=np.int64)
    return RelevantPrefixInfo(ell, int(ell.sum()), int(ell.max()) if ell.size else 0)


def relevant_prefixes_pairwise(strings: StringSet) -> RelevantPrefixInfo:
    """Definition applied literally over all pairs (quadratic)."""
    seqs = _sequences(strings)
    k = len(seqs)
    if k == 1:
        return _info([min(len(seqs[0]), 1)])
    best = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            h = lcp(seqs[i], seqs[j])
            best[i] = max(best[i], h)
            best[j] = max(best[j], h)
    return _info([min(len(s), 1 + h) for s, h in zip(seqs, best)])


def relevant_prefixes(strings: StringSet) -> RelevantPrefixInfo:
    """Relevant prefix lengths via lcps of lexicographic neighbours.

    The longest common prefix of a string with any other string is attained
    at one of its neighbours in sorted order.
    """
    seqs = _sequences(strings)
    k = len(seqs)
    if k <= 1:
        return _info([min(len(s), 1) for s in seqs])
    order = _sorted_indices(seqs)
    best = [0] * k
    for a, b in zip(order, order[1:]):
        h = lcp(seqs[a], seqs[b])
        best[a] = max(best[a], h)
        best[b] = max(best[b], h)
    return _info([min(len(s), 1 + h) for s, h in zip(seqs, best)])
