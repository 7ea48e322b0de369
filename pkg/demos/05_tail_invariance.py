"""
Work that does not grow with the input
======================================

Clustered corpora share a prefix per group and then diverge; everything
after the divergence point is tail that never affects the order. Making
the tails longer grows N but leaves D alone, and the d-aware sorter's
work stays the same to the symbol. The baseline reads every symbol once,
so it is cheaper on short tails and loses once the tails dominate.
"""

from dpsort import SortConfig, WorkStats, d_aware_sort, full_sort
from dpsort.corpus import CorpusSpec, generate
from dpsort.oracle import relevant_prefixes

print(f"{'tail':>5} {'N':>9} {'D':>7} {'d-aware':>9} {'baseline':>9}")
for tail in (100, 200, 400, 800):
    spec = CorpusSpec(k=500, profile="clustered", groups=8, prefix_length=20,
                      tail_length=tail, seed=1)
    strings = generate(spec)
    aware = d_aware_sort(strings, SortConfig()).stats.symbols_inspected
    stats = WorkStats()
    full_sort(strings, stats)
    D = relevant_prefixes(strings).D
    print(f"{tail:5d} {strings.n:9d} {D:7d} {aware:9d} {stats.symbols_inspected:9d}")
