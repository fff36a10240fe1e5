"""Clause implicates of a relation, computed on the {0,1,*}^n pattern cube.

A clause corresponds to the subcube of vectors falsifying it: a positive
literal ``x_i`` pins coordinate i to 0, a negative literal pins it to 1, and
absent variables are ``*``.  The clause is an implicate iff that subcube holds
no member.  One pass over the cube therefore gives every implicate at once.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .limits import require
from .relation import Relation

FAMILIES = ("all", "bijunctive", "horn", "dual-horn", "ihsb-minus", "ihsb-plus")


class Clause(NamedTuple):
    pos: frozenset[int]
    neg: frozenset[int]

    def variables(self) -> frozenset[int]:
        return self.pos | self.neg

    def __str__(self) -> str:
        lits = [f"x{v + 1}" for v in sorted(self.pos)] + [f"-x{v + 1}" for v in sorted(self.neg)]
        return "(" + " | ".join(lits) + ")" if lits else "()"


def clause(*lits: int) -> Clause:
    """Build a clause from signed 1-based literals, DIMACS style."""
    pos = frozenset(l - 1 for l in lits if l > 0)
    neg = frozenset(-l - 1 for l in lits if l < 0)
    return Clause(pos, neg)


def _member_cube(rel: Relation) -> np.ndarray:
    """``cube[p]`` is True iff some member matches pattern ``p`` (index 2 = *)."""
    n = rel.arity
    cube = rel.table.reshape((2,) * n) if n else rel.table.reshape(())
    for axis in range(n):
        cube = np.concatenate([cube, cube.any(axis=axis, keepdims=True)], axis=axis)
    return cube


def _counts(n: int) -> tuple[np.ndarray, np.ndarray]:
    zeros = np.zeros((3,) * n, dtype=np.int8)
    ones = np.zeros((3,) * n, dtype=np.int8)
    for axis in range(n):
        shape = [1] * n
        shape[axis] = 3
        zeros += (np.arange(3) == 0).astype(np.int8).reshape(shape)
        ones += (np.arange(3) == 1).astype(np.int8).reshape(shape)
    return zeros, ones


def _family_mask(n: int, family: str) -> np.ndarray:
    if family not in FAMILIES:
        raise ValueError(f"unknown clause family {family!r}")
    zeros, ones = _counts(n)   # zeros = positive literals, ones = negative literals
    if family == "all":
        return np.ones((3,) * n, dtype=bool)
    if family == "bijunctive":
        return zeros + ones <= 2
    if family == "horn":
        return zeros <= 1
    if family == "dual-horn":
        return ones <= 1
    if family == "ihsb-minus":
        return (zeros == 0) | ((zeros == 1) & (ones <= 1))
    return (ones == 0) | ((ones == 1) & (zeros <= 1))


def _patterns_to_clauses(mask: np.ndarray) -> list[Clause]:
    out = []
    for p in np.argwhere(mask):
        pos = frozenset(int(i) for i in np.flatnonzero(p == 0))
        neg = frozenset(int(i) for i in np.flatnonzero(p == 1))
        out.append(Clause(pos, neg))
    out.sort(key=lambda c: (len(c.pos) + len(c.neg), sorted(c.pos), sorted(c.neg)))
    return out


def _entailed(rel: Relation, family: str) -> tuple[np.ndarray, np.ndarray]:
    require("clause synthesis arity", rel.arity, "horn_synthesis")
    cube = _member_cube(rel)
    return ~cube & _family_mask(rel.arity, family), cube


@lru_cache(maxsize=4096)
def prime_implicates(rel: Relation, family: str = "all") -> tuple[Clause, ...]:
    """All prime implicates of ``rel`` whose shape lies in ``family``.

    Each family is closed under dropping literals, so these are exactly the
    family's minimal implicates.  The empty relation yields the empty clause.
    """
    entailed, cube = _entailed(rel, family)
    n = rel.arity
    prime = entailed.copy()
    for axis in range(n):
        widened = np.take(cube, [2], axis=axis)   # pattern with coordinate axis set to *
        fixed = np.ones((3,) * n, dtype=bool)
        idx = [slice(None)] * n
        idx[axis] = slice(0, 2)
        fixed[tuple(idx)] = False
        prime &= fixed | np.broadcast_to(widened, cube.shape)
    return tuple(_patterns_to_clauses(prime))


def clauses_table(n: int, clauses: Iterable[Clause]) -> np.ndarray:
    """Membership table of the conjunction of ``clauses`` over ``n`` variables."""
    ok = np.ones(1 << n, dtype=bool)
    vectors = np.arange(1 << n, dtype=np.int64)
    for c in clauses:
        falsified = np.ones(1 << n, dtype=bool)
        for v in c.pos:
            falsified &= ((vectors >> (n - 1 - v)) & 1) == 0
        for v in c.neg:
            falsified &= ((vectors >> (n - 1 - v)) & 1) == 1
        ok &= ~falsified
    return ok


def clauses_relation(n: int, clauses: Iterable[Clause]) -> Relation:
    return Relation.from_table(n, clauses_table(n, clauses))


@lru_cache(maxsize=4096)
def representable(rel: Relation, family: str) -> bool:
    """True iff ``rel`` is the conjunction of its implicates of the given shape."""
    entailed, _ = _entailed(rel, family)
    n = rel.arity
    falsified = entailed
    for axis in range(n):
        lo = np.take(falsified, [0], axis=axis) | np.take(falsified, [2], axis=axis)
        hi = np.take(falsified, [1], axis=axis) | np.take(falsified, [2], axis=axis)
        falsified = np.concatenate([lo, hi], axis=axis)
    table = ~falsified.reshape(-1) if n else ~falsified.reshape(1)
    return bool(np.array_equal(table, rel.table))


def evaluate_clause(c: Clause, assignment: Sequence[int]) -> bool:
    return any(assignment[v] for v in c.pos) or any(not assignment[v] for v in c.neg)
