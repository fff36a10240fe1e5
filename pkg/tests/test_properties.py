import itertools

import pytest
from hypothesis import given, strategies as st

from boolconn.errors import InputError
from boolconn.properties import Modifier, Prop, check, check_property, identification_minors, parse_property
from boolconn.relation import Relation, relation

from helpers import all_relations


def closed_under(rel, op, arity):
    members = list(rel)
    n = rel.arity
    for args in itertools.product(members, repeat=arity):
        out = 0
        for i in range(n):
            bits = [(a >> i) & 1 for a in args]
            out |= op(*bits) << i
        if out not in rel:
            return False
    return True


OPS = {
    Prop.HORN: (lambda a, b: a & b, 2),
    Prop.DUAL_HORN: (lambda a, b: a | b, 2),
    Prop.BIJUNCTIVE: (lambda a, b, c: (a & b) | (b & c) | (a & c), 3),
    Prop.AFFINE: (lambda a, b, c: a ^ b ^ c, 3),
    Prop.IHSB_MINUS: (lambda a, b, c: a & (b | c), 3),
    Prop.IHSB_PLUS: (lambda a, b, c: a | (b & c), 3),
}


@pytest.mark.parametrize("prop", list(OPS))
def test_closure_properties_against_polymorphism_brute_force(prop):
    op, k = OPS[prop]
    for rel in all_relations(3):
        assert check_property(rel, prop) == closed_under(rel, op, k), (prop, rel)


def test_constant_valid_and_complementive():
    nae = Relation.from_predicate(3, lambda t: len(set(t)) == 2)
    assert check_property(nae, Prop.COMPLEMENTIVE)
    assert not check_property(nae, Prop.ZERO_VALID)
    assert check_property(relation("000", "111"), Prop.ONE_VALID)


def test_or_free_and_nand_free():
    or2 = relation("01", "10", "11")
    assert not check_property(or2, Prop.OR_FREE)
    assert check_property(or2, Prop.NAND_FREE)
    # the 3-ary OR yields OR under identification, so it is not safely OR-free
    or3 = Relation.from_predicate(3, any)
    assert not check(or3, Prop.OR_FREE, Modifier.SAFELY)
    eq = relation("00", "11")
    assert check(eq, Prop.OR_FREE, Modifier.SAFELY)


def test_componentwise_bijunctive_on_disconnected_relation():
    one3 = relation("001", "010", "100")
    assert not check_property(one3, Prop.BIJUNCTIVE)
    assert check(one3, Prop.BIJUNCTIVE, Modifier.COMPONENTWISE)


def test_identification_minor_count():
    # the relation itself comes first; equal minors are listed once
    assert identification_minors(Relation.full(3)) == (Relation.full(3), Relation.full(2), Relation.full(1))
    minors = identification_minors(relation("001", "010", "100"))
    assert minors[0].arity == 3
    assert Relation(2, 0b0100) in minors and Relation(1, 0) in minors


@pytest.mark.parametrize("name,expected", [
    ("Horn", (Prop.HORN, Modifier.PLAIN)),
    ("SafelyOrFree", (Prop.OR_FREE, Modifier.SAFELY)),
    ("SafelyComponentwiseBijunctive", (Prop.BIJUNCTIVE, Modifier.SAFELY_COMPONENTWISE)),
    ("ComponentwiseIhsbMinus", (Prop.IHSB_MINUS, Modifier.COMPONENTWISE)),
])
def test_parse_property(name, expected):
    assert parse_property(name) == expected


@pytest.mark.parametrize("name", ["SafelyHorn", "ComponentwiseAffine", "Tight"])
def test_parse_property_rejects(name):
    with pytest.raises(InputError):
        parse_property(name)


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(st.just(k), st.integers(0, (1 << (1 << k)) - 1))))
def test_flip_swaps_horn_and_dual_horn(kb):
    rel = Relation(*kb)
    assert check_property(rel, Prop.HORN) == check_property(rel.flip(), Prop.DUAL_HORN)
    assert check_property(rel, Prop.IHSB_MINUS) == check_property(rel.flip(), Prop.IHSB_PLUS)
