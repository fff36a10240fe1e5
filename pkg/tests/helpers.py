"""Random instance generators and plain-Python oracles shared by the test modules."""
from __future__ import annotations

import random
from collections import deque
from functools import lru_cache
from typing import Iterable, Sequence

from boolconn.classify import RelationProperties, classify_relation
from boolconn.formula import CnfFormula, RelationSet, formula_to_relation
from boolconn.relation import ONE, ZERO, Relation


# ---------------------------------------------------------------------------
# plain BFS oracles (independent of the scipy graph code)


def bfs_labels(members: Iterable[int], n: int) -> dict[int, int]:
    """Component label per solution, labels numbered by smallest member."""
    todo = set(members)
    labels: dict[int, int] = {}
    for start in sorted(todo):
        if start in labels:
            continue
        lab = len(set(labels.values()))
        labels[start] = lab
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for i in range(n):
                w = v ^ (1 << i)
                if w in todo and w not in labels:
                    labels[w] = lab
                    queue.append(w)
    return labels


def bfs_component_count(members: Iterable[int], n: int) -> int:
    labels = bfs_labels(members, n)
    return len(set(labels.values()))


def bfs_connected(members: Iterable[int], n: int) -> bool:
    return bfs_component_count(members, n) <= 1


def bfs_distances(members: set[int], n: int, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for i in range(n):
            w = v ^ (1 << i)
            if w in members and w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def solutions(phi: CnfFormula) -> set[int]:
    return set(formula_to_relation(phi))


def hamming(a: int, b: int) -> int:
    return (a ^ b).bit_count()


# ---------------------------------------------------------------------------
# relation pools


@lru_cache(maxsize=None)
def all_relations(max_arity: int = 3, nonempty: bool = True) -> tuple[Relation, ...]:
    out = []
    for k in range(1, max_arity + 1):
        for bits in range(1 if nonempty else 0, 1 << (1 << k)):
            out.append(Relation(k, bits))
    return tuple(out)


@lru_cache(maxsize=None)
def classified_pool(max_arity: int = 3) -> tuple[tuple[Relation, RelationProperties], ...]:
    return tuple((r, classify_relation(r)) for r in all_relations(max_arity))


def pool(predicate, max_arity: int = 3) -> list[Relation]:
    return [r for r, p in classified_pool(max_arity) if predicate(p)]


def random_relation(rng: random.Random, k: int, density: float = 0.5) -> Relation:
    return Relation.from_members(k, [v for v in range(1 << k) if rng.random() < density])


# ---------------------------------------------------------------------------
# random formulas


def random_formula(rng: random.Random, relations: Sequence[Relation], n: int, m: int,
                   constants: bool = False, p_const: float = 0.1,
                   prefix: Sequence[tuple[str, int]] = ()) -> CnfFormula:
    """``m`` random constraints over ``n`` variables; arguments may repeat."""
    names = {f"R{i}": r for i, r in enumerate(relations)}
    keys = list(names)
    cons = []
    for _ in range(m):
        name = rng.choice(keys)
        args = []
        for _ in range(names[name].arity):
            if constants and rng.random() < p_const:
                args.append(rng.choice((ZERO, ONE)))
            else:
                args.append(rng.randrange(n))
        cons.append((name, tuple(args)))
    used = {name for name, _ in cons}
    rels = RelationSet.of({k: v for k, v in names.items() if k in used})
    return CnfFormula.build(n, rels, cons, constants=constants, prefix=prefix)


def random_instance(rng: random.Random, rel_pool: Sequence[Relation], max_vars: int = 12,
                    constants: bool = False, max_rels: int = 3, min_vars: int = 2) -> CnfFormula:
    n = rng.randint(min_vars, max_vars)
    chosen = rng.sample(list(rel_pool), k=min(len(rel_pool), rng.randint(1, max_rels)))
    m = rng.randint(1, n + 2)
    return random_formula(rng, chosen, n, m, constants=constants)


def random_pair(rng: random.Random, members: Sequence[int]) -> tuple[int, int]:
    return rng.choice(members), rng.choice(members)


def random_horn_clauses(rng: random.Random, n: int, m: int, restraint_rate: float = 0.3,
                        max_body: int = 3):
    """Implication and restraint clauses as (head or None, body) pairs, no positive units."""
    out = []
    for _ in range(m):
        size = rng.randint(1, min(max_body, n - 1)) if n > 1 else 1
        vars_ = rng.sample(range(n), k=min(n, size + 1))
        if rng.random() < restraint_rate or len(vars_) < 2:
            out.append((None, frozenset(vars_[:size])))
        else:
            out.append((vars_[0], frozenset(vars_[1:])))
    return out
