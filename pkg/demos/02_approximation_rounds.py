"""
Approximating relevant prefixes by doubling
============================================

Round r groups the still-active strings by their first 2**r symbols.
A string alone in its group is finished with L = 2**r; the others move
on to the next round. Every finished string ends with ell <= L < 2 ell.
"""

import numpy as np

from dpsort import StringSet, approximate, approximate_relaxed
from dpsort.oracle import relevant_prefixes

strings = StringSet.from_bytes(["eureka", "eurasia", "excells", "europar"])
result = approximate(strings)
ell = relevant_prefixes(strings).ell

print("L    :", result.L.tolist())
print("ell  :", ell.tolist())
# active strings at the start of each round: 4, then 4, then 3
print("active per round:", result.stats.per_round_active)
print("symbols inspected:", result.stats.symbols_inspected)

# with many strings the relaxed variant skips the first ceil(lg lg k) rounds
rng = np.random.default_rng(0)
many = StringSet.from_sequences(rng.integers(1, 5, size=(4096, 40)), sigma=4)
full = approximate(many)
relaxed = approximate_relaxed(many)
print("rounds, full vs relaxed:", full.stats.rounds_executed, relaxed.stats.rounds_executed)
print("sum L, full vs relaxed:", int(full.L.sum()), int(relaxed.L.sum()),
      " D =", relevant_prefixes(many).D)
