import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from boolconn.classify import TightMode, Verdict, all_verdicts, classify_relation, classify_set
from boolconn.errors import MethodInapplicable
from boolconn.formula import formula_to_relation, parse_formula, parse_relation_set
from boolconn.graph import components, distance
from boolconn.relation import relation, vec_to_str
from boolconn.solvers import CONN_METHODS, dispatch_conn, dispatch_st_conn, verify_disconnection

from helpers import all_relations, pool, random_instance

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

P, CO, PS, OPEN_CO, OPEN_PS = (Verdict.IN_P, Verdict.CONP_COMPLETE, Verdict.PSPACE_COMPLETE,
                               Verdict.IN_CONP_OPEN, Verdict.IN_PSPACE_OPEN)

# (conn, conn_c, st_conn, st_conn_c, q_conn_c, q_st_conn_c)
FROZEN = {
    "eq.rel": (P, P, P, P, P, P),
    "horn2.rel": (P, P, P, P, P, P),
    "m.rel": (P, CO, P, P, CO, P),
    "nae.rel": (OPEN_PS, PS, PS, PS, PS, PS),
    "one_in_three.rel": (CO, CO, P, P, PS, PS),
    "or.rel": (P, P, P, P, P, P),
    "pn.rel": (PS, PS, PS, PS, PS, PS),
    "quasi.rel": (P, PS, PS, PS, PS, PS),
    "s3.rel": (PS, PS, PS, PS, PS, PS),
    "xor.rel": (P, P, P, P, P, P),
}
KEYS = ("conn", "conn_c", "st_conn", "st_conn_c", "q_conn_c", "q_st_conn_c")


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_corpus_verdicts(name):
    c = classify_set(parse_relation_set((CORPUS / name).read_text()))
    got = all_verdicts(c)
    assert tuple(got[k] for k in KEYS) == FROZEN[name]


def test_or_relation_flags():
    p = classify_relation(relation("01", "10", "11"))
    assert p.bijunctive and p.dual_horn and not p.horn
    assert p.safely_nand_free and not p.safely_or_free
    assert p.one_valid and not p.zero_valid


def test_set_properties_need_every_relation():
    rels = parse_relation_set((CORPUS / "horn2.rel").read_text())
    c = classify_set(rels)
    assert "horn" in c.schaefer_types and "dual-horn" not in c.schaefer_types
    assert TightMode.OR_FREE in c.tight_modes


def test_verdict_payload_is_json_ready():
    d = classify_set(parse_relation_set((CORPUS / "or.rel").read_text())).as_dict()
    assert d["verdicts"]["conn"] == "InP"
    assert d["set"]["schaefer_types"] == ["bijunctive", "dual-horn"]


def _seeded_instance(seed, constants):
    rng = random.Random(seed)
    rels = all_relations(3)
    return random_instance(rng, rng.sample(rels, 40), max_vars=9, constants=constants)


@settings(max_examples=150)
@given(st.integers(0, 10 ** 7), st.booleans())
def test_dispatch_conn_matches_brute(seed, constants):
    phi = _seeded_instance(seed, constants)
    assert dispatch_conn(phi).connected == dispatch_conn(phi, brute=True).connected


@settings(max_examples=80)
@given(st.integers(0, 10 ** 7))
def test_pinned_methods_agree(seed):
    phi = _seeded_instance(seed, False)
    want = components(formula_to_relation(phi)).count <= 1
    for method in CONN_METHODS:
        try:
            got = dispatch_conn(phi, method=method)
        except MethodInapplicable:
            continue
        assert got.connected == want, method


def test_inapplicable_method_is_reported():
    phi = parse_formula((CORPUS / "nae_ring.cnfs").read_text(), base_dir=CORPUS)
    with pytest.raises(MethodInapplicable):
        dispatch_conn(phi, method="affine")


def test_brute_witness_lists_two_component_minima():
    phi = parse_formula((CORPUS / "cycle.cnfs").read_text(), base_dir=CORPUS)
    res = dispatch_conn(phi, brute=True)
    assert not res.connected
    assert res.witness == {"kind": "separated-solutions", "s": "000", "t": "111", "components": 2}


TIGHT = pool(lambda p: p.safely_cw_bijunctive or p.safely_or_free or p.safely_nand_free)


@settings(max_examples=150)
@given(st.integers(0, 10 ** 7), st.booleans())
def test_dispatch_st_conn_matches_bfs(seed, constants):
    rng = random.Random(seed)
    phi = random_instance(rng, TIGHT, max_vars=10, constants=constants)
    rel = formula_to_relation(phi)
    members = list(rel)
    if not members:
        return
    s, t = rng.choice(members), rng.choice(members)
    n = phi.num_vars
    res = dispatch_st_conn(phi, vec_to_str(s, n), vec_to_str(t, n))
    assert res.connected == (distance(rel, s, t) != float("inf"))


def test_verify_disconnection_on_equality_cycle():
    phi = parse_formula((CORPUS / "cycle.cnfs").read_text(), base_dir=CORPUS)
    ok, _ = verify_disconnection(phi, "000", "111", TightMode.CW_BIJUNCTIVE)
    assert ok
