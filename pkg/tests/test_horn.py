import random

from hypothesis import given, settings, strategies as st

from boolconn.formula import formula_to_relation
from boolconn.graph import components
from boolconn.horn import (HornStructure, horn_disconnected, horn_synthesis, imp, implicative_conn,
                           is_self_implicating, largest_self_implicating_set, maximal_self_implicating_sets,
                           nu_normal_form, to_dot)
from boolconn.implicates import Clause
from boolconn.relation import Relation

from helpers import bfs_connected, random_horn_clauses


def structure(n, items, units=()):
    impls = tuple((h, b) for h, b in items if h is not None)
    restraints = tuple(b for h, b in items if h is None)
    return HornStructure(n, frozenset(units), impls, restraints)


def brute_imp(h, start):
    closure = set(start) | set(h.units)
    changed = True
    while changed:
        changed = False
        for head, body in h.implications:
            if body <= closure and head not in closure:
                closure.add(head)
                changed = True
    return frozenset(closure)


def test_cycle_is_self_implicating():
    # x0 -> x1 -> x2 -> x0 as implications x1 <- x0 etc.
    h = structure(3, [(1, frozenset({0})), (2, frozenset({1})), (0, frozenset({2}))])
    assert is_self_implicating(h, {0, 1, 2})
    assert largest_self_implicating_set(h) == frozenset({0, 1, 2})
    assert horn_disconnected(h)
    assert maximal_self_implicating_sets(h) == [frozenset({0, 1, 2})]


def test_restraint_blocks_disconnection():
    h = structure(2, [(1, frozenset({0})), (0, frozenset({1})), (None, frozenset({0, 1}))])
    assert not horn_disconnected(h)
    assert bfs_connected(formula_to_relation(h.to_formula()), 2)


@settings(max_examples=80)
@given(st.integers(0, 10 ** 6))
def test_imp_is_forward_chaining(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    h = structure(n, random_horn_clauses(rng, n, rng.randint(1, 2 * n), 0.2))
    start = {v for v in range(n) if rng.random() < 0.3}
    assert imp(h, start) == brute_imp(h, start)


@settings(max_examples=80)
@given(st.integers(0, 10 ** 6))
def test_horn_disconnected_matches_bfs(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 9)
    h = structure(n, random_horn_clauses(rng, n, rng.randint(1, 2 * n), rng.random() * 0.4))
    rel = h.to_relation()
    assert horn_disconnected(h) == (not bfs_connected(rel, n))


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_normal_form_preserves_solutions(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    h = structure(n, random_horn_clauses(rng, n, rng.randint(1, 2 * n), 0.3))
    nf = nu_normal_form(h)
    assert nf.to_relation() == h.to_relation()
    assert nu_normal_form(nf) == nf


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_unit_elimination_keeps_connectivity(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    h = structure(n, random_horn_clauses(rng, n, rng.randint(1, n), 0.1), units={rng.randrange(n)})
    reduced, forced = h.without_vars_forced()
    assert forced >= h.units
    mask = sum(1 << (n - 1 - v) for v in forced)
    kept = Relation.from_members(n, [a for a in reduced.to_relation() if a & mask == mask])
    assert kept == h.to_relation()


def test_synthesis_roundtrip():
    rel = Relation.from_strings(["000", "001", "011", "111"])
    h = horn_synthesis(rel)
    assert h.to_relation() == rel


def test_implicative_conn_on_implication_formula():
    h = structure(3, [(1, frozenset({0})), (0, frozenset({1}))])
    phi = h.to_formula()
    assert not implicative_conn(phi)
    assert components(formula_to_relation(phi)).count == 2


def test_dot_output_lists_every_clause():
    h = structure(3, [(2, frozenset({0, 1})), (None, frozenset({2}))])
    dot = to_dot(h, ["a", "b", "c"])
    assert dot.startswith("digraph")
    assert '"a"' in dot and '"c"' in dot
    assert to_dot(h, ["a", "b", "c"]) == dot
    assert h.clauses()[-1] == Clause(frozenset(), frozenset({2}))
