"""
Relevant prefixes and the distinguishing prefix size
=====================================================

A string only needs to be read far enough to tell it apart from every
other string. That length is its relevant prefix; the sum over all strings
is D, the number of symbols any comparison sorter must look at.
"""

from dpsort import StringSet
from dpsort.oracle import lcp, relevant_prefixes

words = ["eureka", "eurasia", "excells", "europar"]
strings = StringSet.from_bytes(words)

# the oracle takes the longest lcp with any other string, plus one
info = relevant_prefixes(strings)
for w, ell in zip(words, info.ell):
    print(f"{w:8s} ell={ell}  relevant prefix {w[:ell]!r}")
print("D =", info.D, " d =", info.d, " N =", strings.n)

# eureka and europar share "eur", so both need four symbols
print("lcp(eureka, europar) =", lcp(b"eureka", b"europar"))

# a string that is a prefix of another is read to its end
chain = StringSet.from_bytes(["a", "ab", "abc", "b"])
print("prefix chain ell:", relevant_prefixes(chain).ell.tolist())
