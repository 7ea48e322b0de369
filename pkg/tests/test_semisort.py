import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dpsort import FingerprintParams, StringSet, WorkStats
from dpsort.semisort import Strategy, hybrid_select, semisort_round, stable_argsort
from dpsort.scan import num_threads

STRATEGIES = [Strategy.COMPARE, Strategy.FPSORT, Strategy.FPGROUP, Strategy.HYBRID]
PARAMS = FingerprintParams.from_seed(11)


def fig1_strings():
    # prefix classes of length 2: {0, 2}, {1, 4}, {3}
    return StringSet.from_bytes(["abxxxx", "cde", "abyyyy", "ghzzzz", "cdffff"])


def prefix(s, i, n):
    return tuple(s.string(i)[:n].tolist())


def assert_grouping(s, result, active, n):
    assert sorted(result.order.tolist()) == sorted(active)
    keys = [prefix(s, i, n) for i in result.order]
    starts = [j == 0 or keys[j] != keys[j - 1] for j in range(len(keys))]
    assert result.boundaries.tolist() == starts
    seen = set()
    for j, key in enumerate(keys):
        if starts[j]:
            assert key not in seen, "group split across runs"
            seen.add(key)


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_fig1_grouping(strategy):
    s = fig1_strings()
    res = semisort_round(s, [0, 1, 2, 3, 4], 2, strategy, PARAMS)
    assert_grouping(s, res, [0, 1, 2, 3, 4], 2)
    assert sorted(map(tuple, (g.tolist() for g in res.groups()))) == [(0, 2), (1, 4), (3,)]


def test_compare_groups_in_lexicographic_order():
    s = fig1_strings()
    res = semisort_round(s, [4, 3, 2, 1, 0], 2, Strategy.COMPARE)
    assert res.order.tolist() == [0, 2, 1, 4, 3]


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_all_distinct_and_all_equal(strategy):
    s = StringSet.from_bytes(["ab", "cd", "ef"])
    res = semisort_round(s, [0, 1, 2], 2, strategy, PARAMS)
    assert res.boundaries.all()
    s = StringSet.from_bytes(["aab", "aac", "aa"])
    res = semisort_round(s, [0, 1, 2], 2, strategy, PARAMS)
    assert res.order.tolist() == [0, 1, 2]
    assert res.boundaries.tolist() == [True, False, False]


def test_charges_reads():
    s = fig1_strings()
    stats = WorkStats()
    semisort_round(s, [0, 1, 2, 3, 4], 2, Strategy.COMPARE, stats=stats)
    assert stats.symbols_inspected == 10
    stats = WorkStats()
    semisort_round(s, [0, 1, 2, 3, 4], 2, Strategy.FPSORT, PARAMS, stats=stats)
    # 10 fingerprint reads plus 2 confirmed pairs of 2 + 2 symbols
    assert stats.symbols_inspected == 18
    stats = WorkStats()
    semisort_round(s, [0, 1, 2, 3, 4], 1, Strategy.FPSORT, PARAMS, stats=stats)
    assert stats.symbols_inspected == 5


@pytest.mark.parametrize("k, k_r, expected", [
    (2**20, 2**19, Strategy.FPGROUP),
    (2**20, 100, Strategy.FPSORT),
    (2**20, 2622, Strategy.FPGROUP),
    (2**20, 2621, Strategy.FPSORT),
    (2, 2, Strategy.FPSORT),  # 2 > 2 / lg(2)**2 is false
    (2, 3, Strategy.FPGROUP),
])
def test_hybrid_select(k, k_r, expected):
    assert hybrid_select(k, k_r, 3) is expected


def test_hybrid_custom_threshold():
    assert hybrid_select(16, 3, 0, threshold=lambda k, r: 0) is Strategy.FPGROUP


prefix_sets = st.lists(st.lists(st.integers(1, 3), min_size=4, max_size=7), min_size=1,
                       max_size=40)


@settings(max_examples=150, deadline=None)
@given(prefix_sets, st.sampled_from([1, 2, 4]), st.sampled_from(STRATEGIES), st.integers(0, 99))
def test_contiguity(seqs, n, strategy, seed):
    s = StringSet.from_sequences(seqs, sigma=3)
    active = list(range(s.k))
    res = semisort_round(s, active, n, strategy, FingerprintParams.from_seed(seed))
    assert_grouping(s, res, active, n)
    for g in res.groups():
        assert g.tolist() == sorted(g.tolist())


@settings(max_examples=100, deadline=None)
@given(prefix_sets, st.sampled_from([2, 4]))
def test_compare_equals_reference_stable_sort(seqs, n):
    s = StringSet.from_sequences(seqs, sigma=3)
    res = semisort_round(s, range(s.k), n, Strategy.COMPARE)
    expected = sorted(range(s.k), key=lambda i: (seqs[i][:n], i))
    assert res.order.tolist() == expected


@pytest.mark.parametrize("strategy", [Strategy.FPSORT, Strategy.FPGROUP])
def test_confirmation_repairs_collisions(strategy):
    # q = 2 makes most distinct prefixes collide
    rng = np.random.default_rng(0)
    s = StringSet.from_sequences(rng.integers(1, 4, size=(200, 6)), sigma=3)
    params = FingerprintParams(q=2, b=3)
    res = semisort_round(s, range(200), 4, strategy, params, confirm=True)
    assert_grouping(s, res, list(range(200)), 4)
    loose = semisort_round(s, range(200), 4, strategy, params, confirm=False)
    # without confirmation groups can only merge, never split
    keys = [prefix(s, i, 4) for i in loose.order]
    group = np.cumsum(loose.boundaries)
    by_key = {}
    for key, g in zip(keys, group):
        assert by_key.setdefault(key, g) == g
    assert loose.boundaries.sum() < res.boundaries.sum()


def test_stable_argsort_parallel_matches_numpy():
    keys = np.random.default_rng(2).integers(0, 50, size=300_000).astype(np.uint64)
    with num_threads(4):
        got = stable_argsort(keys)
    assert np.array_equal(got, np.argsort(keys, kind="stable"))


def test_needs_params_and_long_enough():
    s = fig1_strings()
    with pytest.raises(ValueError):
        semisort_round(s, [0, 1], 2, Strategy.FPSORT, None)
    with pytest.raises(IndexError):
        semisort_round(s, [1], 4, Strategy.COMPARE)
    assert semisort_round(s, [], 2, Strategy.FPGROUP, PARAMS).order.size == 0
