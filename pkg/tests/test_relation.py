import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from boolconn.errors import InputError
from boolconn.relation import (ONE, ZERO, Relation, bit_of, exists_project, forall_restrict, identify,
                               project, pullback, relation, str_to_vec, substitute, vec_to_str)


@st.composite
def relations(draw, max_arity=4):
    k = draw(st.integers(1, max_arity))
    return Relation(k, draw(st.integers(0, (1 << (1 << k)) - 1)))


def tuples(rel):
    return {tuple(map(int, s)) for s in rel.to_strings()}


def test_first_variable_is_most_significant():
    assert str_to_vec("100") == 4
    assert vec_to_str(1, 3) == "001"
    assert bit_of(4, 0, 3) == 1 and bit_of(4, 2, 3) == 0


def test_or_members_and_bits():
    rel = relation("01", "10", "11")
    assert rel.arity == 2
    assert rel.bits == 0b1110
    assert list(rel) == [1, 2, 3]
    assert "10" in rel and "00" not in rel
    assert str(rel) == "{01 10 11}"


def test_from_strings_rejects_bad_input():
    with pytest.raises(InputError):
        Relation.from_strings(["01", "011"])
    with pytest.raises(InputError):
        Relation.from_strings(["01", "01"])
    with pytest.raises(InputError):
        Relation(2, 1 << 4)


def test_table_roundtrip_large_arity():
    rng = np.random.default_rng(3)
    table = rng.random(1 << 10) < 0.3
    rel = Relation.from_table(10, table)
    assert np.array_equal(Relation(10, rel.bits).table, table)
    assert len(rel) == int(table.sum())


@given(relations())
def test_flip_matches_tuplewise_negation(rel):
    want = {tuple(1 - b for b in t) for t in tuples(rel)}
    assert tuples(rel.flip()) == want
    assert rel.flip().flip() == rel


@given(relations(), st.data())
def test_permute_matches_tuple_reordering(rel, data):
    order = data.draw(st.permutations(range(rel.arity)))
    want = {tuple(t[o] for o in order) for t in tuples(rel)}
    assert tuples(rel.permute(order)) == want


@given(relations(), st.data())
def test_identify_and_substitute(rel, data):
    if rel.arity < 2:
        return
    i, j = sorted(data.draw(st.lists(st.integers(1, rel.arity), min_size=2, max_size=2, unique=True)))
    want = {t[:j - 1] + t[j:] for t in tuples(rel) if t[i - 1] == t[j - 1]}
    assert tuples(identify(rel, i, j)) == want
    c = data.draw(st.integers(0, 1))
    want = {t[:i - 1] + t[i:] for t in tuples(rel) if t[i - 1] == c}
    assert tuples(substitute(rel, i, c)) == want


@given(relations())
def test_quantifier_restrictions(rel):
    if rel.arity < 2:
        return
    ts = tuples(rel)
    ex = {t[1:] for t in ts}
    fa = {t[1:] for t in ts if (1 - t[0],) + t[1:] in ts}
    assert tuples(exists_project(rel, 1)) == ex
    assert tuples(forall_restrict(rel, 1)) == fa


@given(relations(max_arity=3), st.data())
def test_pullback_with_constants(rel, data):
    new_arity = data.draw(st.integers(1, 4))
    terms = data.draw(st.lists(st.one_of(st.integers(0, new_arity - 1), st.sampled_from([ZERO, ONE])),
                               min_size=rel.arity, max_size=rel.arity))
    ts = tuples(rel)
    want = set()
    for b in itertools.product((0, 1), repeat=new_arity):
        image = tuple(t.value if t in (ZERO, ONE) else b[t] for t in terms)
        if image in ts:
            want.add(b)
    assert tuples(pullback(rel, terms, new_arity)) == want


@given(relations(), relations())
def test_product_and_projection(a, b):
    if a.arity + b.arity > 6:
        return
    prod = a.product(b)
    assert len(prod) == len(a) * len(b)
    if len(b):
        assert project(prod, list(range(a.arity))) == a
    if len(a):
        assert project(prod, list(range(a.arity, a.arity + b.arity))) == b


def test_set_algebra_requires_equal_arity():
    with pytest.raises(InputError):
        relation("01") | relation("011")
    r = relation("01", "10")
    assert (r | r.complement()) == Relation.full(2)
    assert (r & r.complement()).is_empty()
