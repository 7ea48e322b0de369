import numpy as np
import pytest

from dpsort import StringSet
from dpsort.oracle import reference_sort, relevant_prefixes, relevant_prefixes_pairwise
from corpora import exhaustive_sets, random_corpus


def test_example(example):
    info = relevant_prefixes(example)
    assert info.ell.tolist() == [4, 4, 2, 4]
    assert (info.D, info.d) == (14, 4)
    assert reference_sort(example).tolist() == [1, 0, 3, 2]


@pytest.mark.parametrize("words, ell", [
    (["a"], [1]),
    ([""], [0]),
    (["ab", "ab"], [2, 2]),
    (["", "a", "ab"], [0, 1, 2]),
])
def test_small_cases(words, ell):
    info = relevant_prefixes(StringSet.from_bytes(words))
    assert info.ell.tolist() == ell
    assert info.D == sum(ell) and info.d == max(ell)


def test_empty_set():
    s = StringSet.from_bytes([])
    assert reference_sort(s).size == 0
    assert relevant_prefixes(s).D == 0 and relevant_prefixes(s).d == 0


def test_reverse_sorted():
    s = StringSet.from_bytes(["d", "c", "b", "a"])
    assert reference_sort(s).tolist() == [3, 2, 1, 0]


def test_neighbour_method_matches_definition_exhaustively():
    for s in exhaustive_sets(max_k=4, max_len=3, sigma=2):
        assert np.array_equal(relevant_prefixes(s).ell, relevant_prefixes_pairwise(s).ell)


@pytest.mark.parametrize("seed", range(10))
def test_invariants(seed):
    s = random_corpus(seed, max_k=300)
    info = relevant_prefixes(s)
    assert np.array_equal(info.ell, relevant_prefixes_pairwise(s).ell)
    assert info.D <= s.n and info.d <= s.lengths.max()
    # truncating to the relevant prefixes does not change the order
    cut = StringSet(s.buffer, s.offsets, info.ell, s.sigma)
    assert np.array_equal(reference_sort(cut), reference_sort(s))
