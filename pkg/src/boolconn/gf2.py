"""Linear algebra over GF(2) on integer bitmask rows.

A row over ``n`` variables is an int whose bit ``n-1-i`` is the coefficient
of variable ``i`` (same MSB-first convention as relation vectors).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .relation import Relation


@dataclass(frozen=True)
class AffineSystem:
    """Equations ``row . x = rhs`` over ``n`` variables, in reduced echelon form."""

    n: int
    rows: tuple[int, ...]
    rhs: tuple[int, ...]
    pivots: tuple[int, ...]   # pivot bit position of each row
    consistent: bool

    @property
    def rank(self) -> int:
        return len(self.rows)

    def particular(self) -> int | None:
        """A solution with every non-pivot variable set to 0."""
        if not self.consistent:
            return None
        x = 0
        for row, b, p in zip(self.rows, self.rhs, self.pivots):
            if b:
                x |= 1 << p
        return x

    def satisfies(self, x: int) -> bool:
        if not self.consistent:
            return False
        return all(((row & x).bit_count() & 1) == b for row, b in zip(self.rows, self.rhs))

    def support(self) -> int:
        """Bitmask of variables occurring in some equation."""
        s = 0
        for row in self.rows:
            s |= row
        return s


def eliminate(n: int, rows: Sequence[int], rhs: Sequence[int]) -> AffineSystem:
    """Gauss-Jordan elimination of ``rows x = rhs``."""
    work = [[r, b] for r, b in zip(rows, rhs) if r or b]
    out_rows: list[int] = []
    out_rhs: list[int] = []
    pivots: list[int] = []
    consistent = True
    remaining = work
    for bit in range(n - 1, -1, -1):
        pivot_idx = next((k for k, (r, _) in enumerate(remaining) if (r >> bit) & 1), None)
        if pivot_idx is None:
            continue
        pr, pb = remaining.pop(pivot_idx)
        for item in remaining:
            if (item[0] >> bit) & 1:
                item[0] ^= pr
                item[1] ^= pb
        for k in range(len(out_rows)):
            if (out_rows[k] >> bit) & 1:
                out_rows[k] ^= pr
                out_rhs[k] ^= pb
        out_rows.append(pr)
        out_rhs.append(pb)
        pivots.append(bit)
    for r, b in remaining:
        if r == 0 and b:
            consistent = False
    return AffineSystem(n, tuple(out_rows), tuple(out_rhs), tuple(pivots), consistent)


def span_basis(n: int, vectors: Sequence[int]) -> list[int]:
    basis = eliminate(n, vectors, [0] * len(vectors))
    return list(basis.rows)


def nullspace(n: int, rows: Sequence[int]) -> list[int]:
    """Basis of ``{x : row . x = 0 for all rows}``."""
    system = eliminate(n, rows, [0] * len(rows))
    pivot_set = set(system.pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        x = 1 << free
        for row, p in zip(system.rows, system.pivots):
            if (row >> free) & 1:
                x |= 1 << p
        basis.append(x)
    return basis


def affine_hull(rel: Relation) -> AffineSystem:
    """Equations of the smallest affine subspace containing the relation.

    The empty relation gets an inconsistent system.
    """
    n = rel.arity
    members = [int(m) for m in rel.members]
    if not members:
        return AffineSystem(n, (0,), (1,), (), False)
    base = members[0]
    directions = [m ^ base for m in members[1:]]
    normals = nullspace(n, span_basis(n, directions))
    rhs = [(h & base).bit_count() & 1 for h in normals]
    return eliminate(n, normals, rhs)


def hull_size(rel: Relation) -> int:
    system = affine_hull(rel)
    if not system.consistent:
        return 0
    return 1 << (rel.arity - system.rank)


def is_coset(rel: Relation) -> bool:
    """Independent affine test: the relation equals its affine hull."""
    if rel.is_empty():
        return True
    return hull_size(rel) == len(rel)
