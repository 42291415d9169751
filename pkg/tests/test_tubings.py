from itertools import combinations
from math import comb, factorial

import pytest

from tubix.graph import all_graphs, generate_family, is_connected_subset, mask_of, parse_graph
from tubix.tubings import (
    PairClass,
    TubingError,
    are_compatible,
    classify_pair,
    enumerate_maximal_tubings,
    enumerate_tubes,
    enumerate_tubings,
    f_vector,
    flip_neighbors,
    is_tube,
    is_valid_tubing,
    tubing_from_lists,
    tubing_to_lists,
)

from conftest import brute_tubes, brute_tubings

M = mask_of
CATALAN = [1, 1, 2, 5, 14, 42, 132]


def test_is_tube(path3):
    assert is_tube(path3, M([0, 1]))
    assert not is_tube(path3, M([0, 2]))
    assert not is_tube(path3, M([0, 1, 2]))


def test_enumerate_tubes_examples(path3):
    assert tubing_to_lists(enumerate_tubes(path3)) == [[0], [1], [2], [0, 1], [1, 2]]
    assert len(enumerate_tubes(generate_family("complete", 4))) == 14
    assert len(enumerate_tubes(generate_family("cycle", 4))) == 12


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumerate_tubes_matches_brute_force(n):
    for g in all_graphs(n):
        tubes = enumerate_tubes(g)
        assert set(tubes) == brute_tubes(g)
        assert len(tubes) == len(set(tubes))


def test_classify_examples(path3):
    assert classify_pair(path3, M([0]), M([0, 1])) is PairClass.NESTED
    assert classify_pair(path3, M([0, 1]), M([1, 2])) is PairClass.INTERSECTING
    assert classify_pair(path3, M([0]), M([1])) is PairClass.ADJACENT
    assert classify_pair(path3, M([0]), M([2])) is PairClass.FAR
    with pytest.raises(TubingError):
        classify_pair(path3, M([0]), M([0]))


def test_compatible_examples(path3):
    assert are_compatible(path3, M([0]), M([2]))
    # union is the whole connected path: adjacent, not compatible
    assert not are_compatible(path3, M([0]), M([1, 2]))
    assert are_compatible(path3, M([1]), M([0, 1]))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_pair_trichotomy_exhaustive(n):
    for g in all_graphs(n):
        tubes = enumerate_tubes(g)
        for a, b in combinations(tubes, 2):
            nested = (a & b) in (a, b)
            intersecting = bool(a & b) and not nested
            adjacent = not a & b and is_connected_subset(g, a | b)
            far = not a & b and not is_connected_subset(g, a | b)
            assert nested + intersecting + adjacent + far == 1
            cls = classify_pair(g, a, b)
            assert cls is classify_pair(g, b, a)
            expected = (PairClass.NESTED if nested else PairClass.INTERSECTING if intersecting
                        else PairClass.ADJACENT if adjacent else PairClass.FAR)
            assert cls is expected


def test_valid_tubing_examples(path3):
    g = parse_graph('{"n":4,"edges":[[0,1],[2,3]]}')
    assert not is_valid_tubing(g, [M([0, 1]), M([2, 3])])
    assert not is_valid_tubing(g, [M([0]), M([0, 1]), M([2, 3])])
    assert is_valid_tubing(g, [M([0]), M([0, 1]), M([2])])
    assert is_valid_tubing(path3, [M([0]), M([2])])
    with pytest.raises(TubingError):
        is_valid_tubing(path3, [M([0, 2])])


def test_enumerate_tubings_examples(path3, empty3):
    assert len(enumerate_tubings(path3, 1)) == 5
    assert len(enumerate_tubings(path3, 2)) == 5
    assert len(enumerate_tubings(empty3, 2)) == 3
    assert enumerate_tubings(path3, 0) == [()]
    with pytest.raises(TubingError):
        enumerate_tubings(path3, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumerate_tubings_matches_brute_force(n):
    for g in all_graphs(n):
        if n == 5 and len(g.edges) not in (0, 3, 5, 10):
            continue
        fast = enumerate_tubings(g)
        assert len(fast) == len(set(fast))
        assert set(map(frozenset, fast)) == set(brute_tubings(g))


def test_enumeration_is_deterministic():
    g = generate_family("cycle", 5)
    assert enumerate_tubings(g) == enumerate_tubings(g)
    tubings = enumerate_tubings(g, 3)
    assert tubings == sorted(tubings, key=lambda t: [enumerate_tubes(g).index(x) for x in t])


def test_maximal_examples(path3, complete3):
    assert len(enumerate_maximal_tubings(path3)) == 5
    assert len(enumerate_maximal_tubings(complete3)) == 6
    assert len(enumerate_maximal_tubings(generate_family("cycle", 4))) == 20
    with pytest.raises(TubingError):
        enumerate_maximal_tubings(generate_family("path", 1))


@pytest.mark.parametrize("n", range(2, 7))
def test_family_counts(n):
    assert len(enumerate_maximal_tubings(generate_family("path", n))) == CATALAN[n]
    assert len(enumerate_maximal_tubings(generate_family("complete", n))) == factorial(n)
    assert len(enumerate_maximal_tubings(generate_family("empty", n))) == n
    if n >= 3:
        assert len(enumerate_maximal_tubings(generate_family("cycle", n))) == comb(2 * n - 2, n - 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_inclusion_maximal_tubings_have_n_minus_1_tubes(n):
    for g in all_graphs(n):
        if n == 5 and len(g.edges) % 3:
            continue
        tubings = enumerate_tubings(g)
        tubes = enumerate_tubes(g)
        by_set = set(map(frozenset, tubings))
        for t in tubings:
            extendable = any(frozenset(t) | {x} in by_set for x in tubes if x not in t)
            assert extendable == (len(t) < n - 1)


def test_flip_examples(path3, complete3):
    assert flip_neighbors(path3, tubing_from_lists([[0], [0, 1]])) == [
        tubing_from_lists([[1], [0, 1]]), tubing_from_lists([[0], [2]])]
    for u in enumerate_maximal_tubings(complete3):
        assert len(flip_neighbors(complete3, u)) == 2
    k4 = generate_family("complete", 4)
    for u in enumerate_maximal_tubings(k4):
        assert len(flip_neighbors(k4, u)) == 3
    with pytest.raises(TubingError):
        flip_neighbors(path3, tubing_from_lists([[0]]))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_flip_graph_regular_and_connected(n):
    for g in all_graphs(n):
        if n == 5 and len(g.edges) % 2:
            continue
        verts = enumerate_maximal_tubings(g)
        adj = {u: flip_neighbors(g, u) for u in verts}
        for u, nbrs in adj.items():
            assert len(nbrs) == n - 1
            for w in nbrs:
                assert len(set(u) & set(w)) == n - 2
                assert u in adj[w]
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        assert len(seen) == len(verts)


def test_f_vector_examples(path3, complete3):
    assert f_vector(path3) == [5, 5]
    assert f_vector(complete3) == [6, 6]
    assert f_vector(generate_family("complete", 4)) == [14, 36, 24]


def test_every_tubing_lies_in_a_maximal_one():
    for g in all_graphs(4):
        maximal = [set(u) for u in enumerate_maximal_tubings(g)]
        for t in enumerate_tubings(g):
            assert any(set(t) <= m for m in maximal)


def test_serialization_round_trip():
    t = tubing_from_lists([[0, 1], [0]])
    assert tubing_to_lists(t) == [[0], [0, 1]]
    assert tubing_from_lists(tubing_to_lists(t)) == t
