"""
Karp-Rabin fingerprints
=======================

Groups are formed by hashing prefixes instead of comparing them. The hash
of s[0:n] is sum s[z] * b**(n-1-z) mod q with q = 2**61 - 1 and a seeded
random base b.
"""

import numpy as np

from dpsort import FingerprintParams, StringSet, fingerprint_prefix_batch, fingerprint_substring

params = FingerprintParams.from_seed(42)
print("q =", params.q, " base =", params.base)

strings = StringSet.from_bytes(["abracadabra", "abracadabrx", "cadabra"])

# equal content collides wherever it sits
a = fingerprint_substring(strings, 0, 4, 7, params)   # "cadabra" inside the first string
b = fingerprint_substring(strings, 2, 0, 7, params)
print("cadabra twice:", a == b)

# one call fingerprints the same-length prefix of many strings
fp = fingerprint_prefix_batch(strings, np.array([0, 1]), 10, params)
print("prefixes of length 10 equal:", fp[0] == fp[1])
fp = fingerprint_prefix_batch(strings, np.array([0, 1]), 11, params)
print("prefixes of length 11 equal:", fp[0] == fp[1])

# a tiny modulus makes collisions easy to find; the sorter confirms
# group boundaries by direct comparison, so such collisions are harmless
tiny = FingerprintParams(q=2, b=3, seed=None)
print("'a' and 'c' collide under q=2:", fingerprint_substring(strings, 0, 0, 1, tiny)
      == fingerprint_substring(strings, 2, 0, 1, tiny))
