import random

import pytest
from hypothesis import given, strategies as st

from boolconn.graph import (ascend, components, descend, diameter, distance, is_connected,
                            shortest_path_vectors)
from boolconn.relation import Relation, relation

from helpers import bfs_component_count, bfs_distances, bfs_labels


@st.composite
def relations(draw, max_arity=6):
    k = draw(st.integers(1, max_arity))
    members = draw(st.sets(st.integers(0, (1 << k) - 1)))
    return Relation.from_members(k, members)


def bfs_diameter(rel):
    members = set(rel)
    return max((max(bfs_distances(members, rel.arity, s).values()) for s in members), default=0)


def test_or_is_connected_and_equality_is_not():
    assert is_connected(relation("01", "10", "11"))
    eq = relation("00", "11")
    assert not is_connected(eq)
    assert components(eq).count == 2
    assert distance(eq, 0, 3) == float("inf")


def test_empty_relation_is_connected():
    assert is_connected(Relation.empty(3))
    assert components(Relation.empty(3)).count == 0


def test_path_relation_distance_and_diameter():
    path = relation("000", "001", "011", "111")
    assert distance(path, 0, 7) == 3
    assert diameter(path) == 3
    assert shortest_path_vectors(path, 0, 7) == [0, 1, 3, 7]


@given(relations())
def test_components_match_bfs(rel):
    part = components(rel)
    assert part.count == bfs_component_count(rel, rel.arity)
    want = bfs_labels(rel, rel.arity)
    for a in rel:
        for b in rel:
            assert (part.label_of(a) == part.label_of(b)) == (want[a] == want[b])
    assert sorted(part.minima()) == part.minima()
    assert sum(part.sizes()) == len(rel)


@given(relations())
def test_diameter_matches_bfs(rel):
    assert diameter(rel) == bfs_diameter(rel)


def test_bit_parallel_diameter_crosses_word_boundary():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(7, 10)
        members = {v for v in range(1 << n) if rng.random() < 0.55}
        rel = Relation.from_members(n, members)
        assert diameter(rel, chunk=64) == bfs_diameter(rel)


def test_full_cube_diameter_uses_the_subcube_shortcut():
    assert diameter(Relation.full(12)) == 12


@given(relations(), st.data())
def test_distance_matches_bfs(rel, data):
    if not len(rel):
        return
    members = sorted(rel)
    s = data.draw(st.sampled_from(members))
    t = data.draw(st.sampled_from(members))
    want = bfs_distances(set(members), rel.arity, s).get(t, float("inf"))
    assert distance(rel, s, t) == want
    path = shortest_path_vectors(rel, s, t)
    if want == float("inf"):
        assert path is None
    else:
        assert len(path) == want + 1
        assert all(p in rel for p in path)


def test_descend_and_ascend_reach_component_extremes():
    rel = relation("0110", "0111", "1110", "1111")
    low = descend(rel, 0b1111)
    assert low in rel and low & 0b1111 == low
    assert ascend(rel, 0b0110) == 0b1111


def test_distance_rejects_non_members():
    with pytest.raises(Exception):
        distance(relation("01"), 0, 1)
