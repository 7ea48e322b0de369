"""Deterministic benchmark corpora.

Symbols are derived by hashing ``(seed, string, position)`` rather than by
drawing from a stream, so a corpus with a longer ``tail_length`` is an
exact extension of the same corpus with a shorter one. That is what lets
tail-scaling experiments keep the distinguishing prefix fixed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .strings import StringSet

PROFILES = ("random", "clustered", "dictionary")

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_DOMAIN_BODY, _DOMAIN_TAIL, _DOMAIN_GROUP, _DOMAIN_LEN = 1, 2, 3, 4


def _splitmix(x):
    with np.errstate(over="ignore"):
        x = x + _GOLDEN
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return x ^ (x >> np.uint64(31))


def _hash(*parts):
    h = np.zeros((), dtype=np.uint64)
    for p in parts:
        h = _splitmix(h ^ np.asarray(p, dtype=np.int64).astype(np.uint64))
    return h


def _symbols(seed, domain, row, length, sigma):
    """``length`` symbols in ``[1, sigma]`` for one (domain, row) stream."""
    j = np.arange(length, dtype=np.int64)
    return (_hash(seed, domain, row, j) % np.uint64(sigma)).astype(np.int64) + 1


@dataclass(frozen=True)
class CorpusSpec:
    k: int
    profile: str = "random"
    sigma: int = 26
    seed: int = 0
    tail_length: int = 0
    groups: int = 1
    prefix_length: int = 0
    min_length: int = 1
    max_length: int = 16
    dictionary: str | None = None

    def __post_init__(self):
        if self.profile not in PROFILES:
            raise ValueError(f"unknown profile {self.profile!r}")
        if self.k < 0 or self.sigma < 1 or self.tail_length < 0:
            raise ValueError("k, sigma and tail_length must be non-negative (sigma >= 1)")
        if self.profile == "clustered" and self.groups < 1:
            raise ValueError("clustered corpora need at least one group")
        if self.profile == "dictionary" and not self.dictionary:
            raise ValueError("dictionary profile needs a word list")
        if not 0 <= self.min_length <= self.max_length:
            raise ValueError("need 0 <= min_length <= max_length")

    def as_dict(self):
        return asdict(self)


def _random_bodies(spec):
    span = spec.max_length - spec.min_length + 1
    lens = spec.min_length + (_hash(spec.seed, _DOMAIN_LEN, np.arange(spec.k))
                              % np.uint64(span)).astype(np.int64)
    return [_symbols(spec.seed, _DOMAIN_BODY, i, n, spec.sigma) for i, n in enumerate(lens)]


def _clustered_bodies(spec):
    # group prefix, then one symbol that differs between members of a group
    # (as long as the group has at most sigma members)
    c, p = spec.groups, spec.prefix_length
    prefixes = [_symbols(spec.seed, _DOMAIN_GROUP, g, p, spec.sigma) for g in range(c)]
    bodies = []
    for i in range(spec.k):
        g, rank = i % c, i // c
        shift = int(_hash(spec.seed, _DOMAIN_GROUP, g, -1) % np.uint64(spec.sigma))
        bodies.append(np.append(prefixes[g], (rank + shift) % spec.sigma + 1))
    return bodies


def _dictionary_bodies(spec):
    with open(spec.dictionary, "rb") as fh:
        words = [w for w in fh.read().split(b"\n") if w]
    if not words:
        raise ValueError(f"{spec.dictionary} contains no words")
    pick = (_hash(spec.seed, _DOMAIN_LEN, np.arange(spec.k)) % np.uint64(len(words))).astype(np.int64)
    return [np.frombuffer(words[j], dtype=np.uint8).astype(np.int64) + 1 for j in pick]


def generate(spec: CorpusSpec) -> StringSet:
    """Build the corpus described by ``spec``; equal specs give equal sets."""
    if spec.profile == "random":
        bodies = _random_bodies(spec)
    elif spec.profile == "clustered":
        bodies = _clustered_bodies(spec)
    else:
        bodies = _dictionary_bodies(spec)
    tail_sigma = spec.sigma if spec.profile != "dictionary" else 256
    strings = [
        np.concatenate([b, _symbols(spec.seed, _DOMAIN_TAIL, i, spec.tail_length, tail_sigma)])
        for i, b in enumerate(bodies)
    ]
    sigma = max(spec.sigma, 256) if spec.profile == "dictionary" else spec.sigma
    return StringSet.from_sequences(strings, sigma=sigma)
