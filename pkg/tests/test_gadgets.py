import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from boolconn.errors import InputError, PreconditionError
from boolconn.formula import CnfFormula, RelationSet, formula_to_relation, parse_formula, satisfiable
from boolconn.gadgets import (N_CLAUSE, P_CLAUSE, S3, build_another_sat_reduction, build_conn_hardness_instance,
                              diameter_witness, diameter_witness_endpoints, find_isolating_relation,
                              isolated_vectors, make_expression, reduce_conn_c_to_conn, replace_constants,
                              search_expression, verify_structural_expressibility, witness_table)
from boolconn.graph import components, diameter, distance
from boolconn.properties import Prop, check_safely
from boolconn.relation import ONE, ZERO, Relation, relation

from helpers import all_relations, bfs_component_count, random_formula

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
NEQ = relation("01", "10")


@given(st.integers(1, 4).flatmap(lambda k: st.tuples(st.just(k), st.integers(0, (1 << (1 << k)) - 1))))
def test_isolated_vectors_brute(kb):
    rel = Relation(*kb)
    want = [m for m in rel if all((m ^ (1 << b)) not in rel for b in range(rel.arity))]
    assert isolated_vectors(rel) == want


def test_neq_from_xor_relation_is_verified():
    rels = RelationSet.of({"NEQ": NEQ})
    w = make_expression(rels, NEQ, 0, [("NEQ", (0, 1))])
    assert verify_structural_expressibility(w).ok


def test_disconnected_witnesses_are_rejected():
    # x != y through an auxiliary z with z = x or z = y picked freely: (x,y) = (0,1) has witnesses 0 and 1 only
    eq3 = relation("000", "011", "101", "110")
    rels = RelationSet.of({"EVEN": eq3, "NEQ": NEQ})
    w = make_expression(rels, NEQ, 2, [("NEQ", (0, 1)), ("EVEN", (0, 1, 2)), ("NEQ", (2, 3))])
    rec = verify_structural_expressibility(w)
    assert rec.projection
    table = witness_table(w)
    assert set(table) == {"01", "10"}
    assert rec.ok == all(len(v) == 1 for v in table.values())


def test_projection_mismatch_is_reported():
    rels = RelationSet.of({"OR": relation("01", "10", "11")})
    w = make_expression(rels, NEQ, 0, [("OR", (0, 1))])
    rec = verify_structural_expressibility(w)
    assert not rec.projection and not rec
    assert "projection differs from target" in rec.failures


def test_search_finds_neq_over_nae():
    rels = RelationSet.of({"NAE": Relation.from_predicate(3, lambda v: len(set(v)) == 2)})
    w = search_expression(rels, NEQ, max_aux=1, constants=False)
    assert w is not None
    assert verify_structural_expressibility(w).ok
    assert formula_to_relation(w.formula.matrix()).arity == w.formula.num_vars


def test_search_gives_up_within_bounds():
    rels = RelationSet.of({"OR": relation("01", "10", "11")})
    assert search_expression(rels, NEQ, max_aux=1, constants=False) is None


NOT_OR_FREE = [r for r in all_relations(3) if not check_safely(r, Prop.OR_FREE)]


@settings(max_examples=60)
@given(st.sampled_from(NOT_OR_FREE))
def test_isolating_relation_construction(rel):
    res = find_isolating_relation(rel, 1)
    assert formula_to_relation(res.formula) == res.relation
    assert res.isolated != 0 and res.isolated in isolated_vectors(res.relation)
    assert not res.formula.uses_constants()


@settings(max_examples=40)
@given(st.sampled_from([r for r in all_relations(3) if not check_safely(r, Prop.NAND_FREE)]))
def test_zero_isolating_construction(rel):
    res = find_isolating_relation(rel, 0)
    full = (1 << res.relation.arity) - 1
    assert formula_to_relation(res.formula) == res.relation
    assert res.isolated != full and res.isolated in isolated_vectors(res.relation)


def test_safely_or_free_relation_has_no_isolating_formula():
    with pytest.raises(PreconditionError):
        find_isolating_relation(relation("00", "11"), 1)


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_replace_constants_embeds_solutions(seed):
    rng = random.Random(seed)
    nae = Relation.from_predicate(3, lambda v: len(set(v)) == 2)
    or3 = S3["S3_0"]
    phi = random_formula(rng, [nae, or3], rng.randint(2, 6), rng.randint(1, 4), constants=True, p_const=0.3)
    iso0 = find_isolating_relation(S3["S3_3"], 0, name="S3_3")
    iso1 = find_isolating_relation(or3, 1, name="S3_0")
    rep = replace_constants(phi, iso0.formula, iso1.formula)
    out = formula_to_relation(rep.formula)
    for s in range(1 << phi.num_vars):
        assert (rep.lift(s) in out) == (s in formula_to_relation(phi))


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_unique_solution_reduction_keeps_component_count(seed):
    rng = random.Random(seed)
    rels = rng.sample(all_relations(3), 2)
    phi = random_formula(rng, rels, rng.randint(2, 6), rng.randint(1, 4), constants=True, p_const=0.3)
    u0 = relation("01", "11")     # unique solution 01 besides all-ones
    u1 = relation("00", "10")     # unique solution 10 besides all-zeros
    rep = reduce_conn_c_to_conn(phi, u0, u1)
    assert not rep.formula.uses_constants()
    assert components(formula_to_relation(rep.formula)).count == components(formula_to_relation(phi)).count


def test_reduction_rejects_non_unique_formulas():
    phi = CnfFormula.build(1, {"OR": relation("01", "10", "11")}, [("OR", (0, ONE))], constants=True)
    with pytest.raises(PreconditionError):
        reduce_conn_c_to_conn(phi, relation("00", "01", "10"), relation("10"))


def _pn(rng, n, m_pos, m_neg):
    cons = [("P", tuple(rng.sample(range(n), 3))) for _ in range(m_pos)]
    cons += [("N", tuple(rng.sample(range(n), 2))) for _ in range(m_neg)]
    return CnfFormula.build(n, {"P": P_CLAUSE, "N": N_CLAUSE}, cons)


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_hardness_instance_connected_iff_unsatisfiable(seed):
    rng = random.Random(seed)
    psi = _pn(rng, rng.randint(3, 4), rng.randint(1, 2), rng.randint(0, 5))
    out = build_conn_hardness_instance(psi)
    if out.num_vars > 18:
        return
    connected = components(formula_to_relation(out)).count <= 1
    assert connected == (satisfiable(psi) is None)


def test_hardness_instance_needs_a_positive_clause():
    psi = CnfFormula.build(2, {"N": N_CLAUSE}, [("N", (0, 1))])
    with pytest.raises(PreconditionError):
        build_conn_hardness_instance(psi)


def test_another_sat_reduction():
    rels = RelationSet.of({"OR": relation("01", "10", "11"), "NEQ": NEQ})
    neq = make_expression(rels, NEQ, 0, [("NEQ", (0, 1))])
    unique = CnfFormula.build(2, rels, [("OR", (0, 0)), ("OR", (1, 1))])            # only 11
    several = CnfFormula.build(2, rels, [("OR", (0, 1))])
    assert components(formula_to_relation(build_another_sat_reduction(unique, "11", neq))).count <= 1
    assert components(formula_to_relation(build_another_sat_reduction(several, "11", neq))).count > 1
    with pytest.raises(PreconditionError):
        build_another_sat_reduction(several, "00", neq)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_diameter_witness_is_an_induced_path(n):
    phi = diameter_witness(n)
    rel = formula_to_relation(phi)
    length = 2 ** (n // 2 + 1) - 2
    assert len(rel) == length + 1
    s, t = diameter_witness_endpoints(n)
    assert distance(rel, s, t) == length
    assert diameter(rel) == length
    assert set(phi.relations.names()) <= set(S3.names())


def test_diameter_witness_rejects_odd_n():
    with pytest.raises(InputError):
        diameter_witness(5)
