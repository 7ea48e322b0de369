"""
Sorting through the relevant prefixes
=====================================

Approximate the relevant prefixes, cut every string to its estimate, and
sort the short strings. The cut keeps the relative order of any two
strings, so the result is the order of the full strings.
"""

from dpsort import SortConfig, StringSet, WorkStats, d_aware_sort, full_sort, truncate
from dpsort.oracle import reference_sort

words = ["eureka", "eurasia", "excells", "europar"]
strings = StringSet.from_bytes(words)

result = d_aware_sort(strings)
print("order:", [words[i] for i in result.order])
print("matches reference:", (result.order == reference_sort(strings)).all())

pruned = truncate(strings, result.approx.L)
print("pruned strings:", [pruned.to_bytes(i).decode() for i in range(pruned.k)])

# all semisort strategies and both variants agree on the permutation
for strategy in ("compare", "fpsort", "fpgroup", "hybrid"):
    for variant in ("full", "relaxed"):
        cfg = SortConfig(variant=variant, strategy=strategy, reduce_alphabet=True)
        res = d_aware_sort(strings, cfg)
        print(f"{strategy:8s} {variant:8s} order={res.order.tolist()} "
              f"symbols={res.stats.symbols_inspected}")

stats = WorkStats()
full_sort(strings, stats)
print("baseline symbols:", stats.symbols_inspected)
