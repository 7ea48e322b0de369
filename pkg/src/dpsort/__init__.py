"""Prefix-aware string sorting.

Approximates each string's relevant prefix length (the shortest prefix
that no other string shares) to within a factor of two, truncates the
strings to those approximations and sorts the result, so the symbols read
scale with the distinguishing prefix size rather than the input size.
"""

from .approx import ApproxLengths, RoundState, approximate, approximate_relaxed, compaction_phase
from .fingerprint import FingerprintParams, fingerprint_prefix_batch, fingerprint_substring
from .oracle import RelevantPrefixInfo, reference_sort, relevant_prefixes
from .pipeline import (AlphabetReductionMap, SortConfig, SortResult, d_aware_sort, full_sort,
                       reduce_alphabet, sort_truncated)
from .scan import all_prefix, all_prefix_sums, compact, num_threads, set_num_threads
from .semisort import Strategy, hybrid_select, semisort_round
from .strings import LengthExceeds, StringSet, WorkStats, lex_compare, truncate

__version__ = "0.1.0"
