import itertools

from hypothesis import given, strategies as st

from boolconn import gf2
from boolconn.implicates import (FAMILIES, clause, clauses_relation, evaluate_clause, prime_implicates,
                                 representable)
from boolconn.relation import Relation, relation

from helpers import all_relations


@st.composite
def relations(draw, max_arity=4):
    k = draw(st.integers(1, max_arity))
    return Relation(k, draw(st.integers(0, (1 << (1 << k)) - 1)))


def test_or_has_single_prime_implicate():
    assert prime_implicates(relation("01", "10", "11")) == (clause(1, 2),)


def test_equality_prime_implicates():
    got = set(prime_implicates(relation("00", "11")))
    assert got == {clause(1, -2), clause(-1, 2)}


def test_one_in_three_is_not_bijunctive():
    one3 = relation("001", "010", "100")
    assert not representable(one3, "bijunctive")
    assert representable(one3, "all")


@given(relations())
def test_prime_implicates_define_the_relation(rel):
    assert clauses_relation(rel.arity, prime_implicates(rel)) == rel


@given(relations(max_arity=3))
def test_prime_implicates_are_minimal(rel):
    for c in prime_implicates(rel):
        assert all(evaluate_clause(c, [int(b) for b in s]) for s in rel.to_strings())
        lits = [v + 1 for v in c.pos] + [-(v + 1) for v in c.neg]
        for drop in range(len(lits)):
            weaker = clause(*(lits[:drop] + lits[drop + 1:]))
            # dropping any literal yields a clause some member violates
            assert not all(evaluate_clause(weaker, [int(b) for b in s]) for s in rel.to_strings())


def test_families_brute_force_arity_two():
    # a 2-ary relation is Horn iff closed under AND; check against direct enumeration
    for rel in all_relations(2):
        members = list(rel)
        and_closed = all((a & b) in members for a, b in itertools.product(members, repeat=2))
        or_closed = all((a | b) in members for a, b in itertools.product(members, repeat=2))
        assert representable(rel, "horn") == and_closed
        assert representable(rel, "dual-horn") == or_closed
    assert "bijunctive" in FAMILIES


def test_gf2_elimination_solves_system():
    # x1 + x2 = 1, x2 + x3 = 0 over three variables: rows use the MSB-first bit order
    sys_ = gf2.eliminate(3, [0b110, 0b011], [1, 0])
    assert sys_.rank == 2
    sols = [x for x in range(8) if sys_.satisfies(x)]
    assert sols == [0b011, 0b100]


def test_gf2_inconsistent_system():
    sys_ = gf2.eliminate(2, [0b11, 0b11], [0, 1])
    assert sys_.particular() is None


@given(relations())
def test_coset_iff_hull_has_same_size(rel):
    if rel.is_empty():
        return
    members = list(rel)
    closed = all((a ^ b ^ c) in members for a, b, c in itertools.product(members, repeat=3))
    assert gf2.is_coset(rel) == closed
    assert gf2.hull_size(rel) >= len(rel)


def test_nullspace_is_orthogonal():
    rows = [0b1010, 0b0110]
    for v in gf2.nullspace(4, rows):
        assert all((v & r).bit_count() % 2 == 0 for r in rows)
    assert len(gf2.nullspace(4, rows)) == 2
