"""The solution graph of a relation: members as hypercube vertices, edges at Hamming distance 1."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import InputError
from .limits import require
from .relation import Relation, hamming


def _edges(rel: Relation) -> tuple[np.ndarray, np.ndarray]:
    """Member-index pairs (u, v) with u < v for every hypercube edge inside ``rel``."""
    members = rel.members
    table = rel.table
    src, dst = [], []
    for b in range(rel.arity):
        bit = np.int64(1) << b
        low = members[(members & bit) == 0]
        high = low | bit
        hit = table[high]
        src.append(np.searchsorted(members, low[hit]))
        dst.append(np.searchsorted(members, high[hit]))
    if not src:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    return np.concatenate(src), np.concatenate(dst)


def adjacency(rel: Relation) -> csr_matrix:
    r = len(rel.members)
    u, v = _edges(rel)
    data = np.ones(2 * len(u), dtype=np.int8)
    return csr_matrix((data, (np.concatenate([u, v]), np.concatenate([v, u]))), shape=(r, r))


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components, numbered in order of their smallest member."""

    arity: int
    members: np.ndarray   # sorted member vectors
    labels: np.ndarray    # component label per member

    @property
    def count(self) -> int:
        return int(self.labels.max()) + 1 if len(self.labels) else 0

    def component(self, label: int) -> Relation:
        return Relation.from_members(self.arity, (int(m) for m in self.members[self.labels == label]))

    def components(self) -> list[Relation]:
        return [self.component(k) for k in range(self.count)]

    def label_of(self, vector: int) -> int:
        idx = int(np.searchsorted(self.members, vector))
        if idx >= len(self.members) or int(self.members[idx]) != vector:
            raise InputError("vector is not a solution")
        return int(self.labels[idx])

    def minima(self) -> list[int]:
        """Smallest member (as integer) of each component."""
        out = [0] * self.count
        seen = [False] * self.count
        for m, lab in zip(self.members, self.labels):
            if not seen[lab]:
                out[lab] = int(m)
                seen[lab] = True
        return out

    def minimum_weight_members(self) -> list[int]:
        """Per component, a member of least Hamming weight (smallest integer on ties)."""
        best: list[int | None] = [None] * self.count
        for m, lab in zip(self.members, self.labels):
            m = int(m)
            cur = best[lab]
            if cur is None or (m.bit_count(), m) < (cur.bit_count(), cur):
                best[lab] = m
        return [int(b) for b in best]  # type: ignore[arg-type]

    def sizes(self) -> list[int]:
        return np.bincount(self.labels, minlength=self.count).tolist()


@lru_cache(maxsize=8192)
def components(rel: Relation) -> ComponentPartition:
    require("solution-graph arity", rel.arity, "enumeration")
    members = rel.members
    r = len(members)
    if r == 0:
        return ComponentPartition(rel.arity, members, np.zeros(0, np.int64))
    _, raw = connected_components(adjacency(rel), directed=False)
    # relabel by first occurrence so that labels follow the smallest member
    order: dict[int, int] = {}
    labels = np.empty(r, dtype=np.int64)
    for k, lab in enumerate(raw):
        lab = int(lab)
        if lab not in order:
            order[lab] = len(order)
        labels[k] = order[lab]
    return ComponentPartition(rel.arity, members, labels)


def is_connected(rel: Relation) -> bool:
    """The empty graph counts as connected."""
    return components(rel).count <= 1


def _index(rel: Relation, vector: int) -> int:
    idx = int(np.searchsorted(rel.members, vector))
    if idx >= len(rel.members) or int(rel.members[idx]) != vector:
        raise InputError(f"{vector:0{rel.arity}b} is not a solution")
    return idx


def distance(rel: Relation, s: int, t: int) -> float:
    """Shortest-path distance between members ``s`` and ``t``; ``inf`` if disconnected."""
    i, j = _index(rel, s), _index(rel, t)
    if i == j:
        return 0
    part = components(rel)
    if part.labels[i] != part.labels[j]:
        return float("inf")
    d = shortest_path(adjacency(rel), method="D", unweighted=True, directed=False, indices=[i])
    return int(d[0, j])


def shortest_path_vectors(rel: Relation, s: int, t: int) -> list[int] | None:
    """One shortest path from ``s`` to ``t`` as a list of vectors, or None."""
    i, j = _index(rel, s), _index(rel, t)
    _, pred = shortest_path(adjacency(rel), method="D", unweighted=True, directed=False,
                            indices=[i], return_predecessors=True)
    if i != j and pred[0, j] < 0:
        return None
    path = [j]
    while path[-1] != i:
        path.append(int(pred[0, path[-1]]))
    return [int(rel.members[k]) for k in reversed(path)]


def _is_subcube(members: np.ndarray) -> tuple[bool, int]:
    lower = int(np.bitwise_and.reduce(members))
    upper = int(np.bitwise_or.reduce(members))
    dim = (upper ^ lower).bit_count()
    return len(members) == (1 << dim), dim


def _neighbour_rows(rel: Relation) -> list[np.ndarray]:
    """Per coordinate, the member index of each member's neighbour (``len(members)`` if absent)."""
    members = rel.members
    r = len(members)
    out = []
    for b in range(rel.arity):
        flipped = members ^ (np.int64(1) << b)
        idx = np.searchsorted(members, flipped)
        idx = np.minimum(idx, r - 1)
        out.append(np.where(members[idx] == flipped, idx, r))
    return out


def _max_eccentricity(rel: Relation, sources: np.ndarray, nbrs: list[np.ndarray], chunk: int) -> int:
    """Bit-parallel BFS: 64 sources share one machine word per vertex."""
    r = len(rel.members)
    best = 0
    for start in range(0, len(sources), chunk):
        batch = sources[start:start + chunk]
        words = (len(batch) + 63) // 64
        visited = np.zeros((r + 1, words), dtype=np.uint64)
        cols = np.arange(len(batch))
        visited[batch, cols // 64] |= np.left_shift(np.uint64(1), (cols % 64).astype(np.uint64))
        frontier = visited.copy()
        depth = 0
        while True:
            new = np.zeros_like(frontier)
            for nb in nbrs:
                new[:r] |= frontier[nb]
            new &= ~visited
            if not new.any():
                break
            depth += 1
            visited |= new
            frontier = new
        best = max(best, depth)
    return best


def diameter(rel: Relation, chunk: int = 4096) -> int:
    """Largest finite distance over all member pairs (max over components)."""
    require("diameter arity", rel.arity, "diameter")
    part = components(rel)
    best = 0
    pending = []
    for label in range(part.count):
        idx = np.flatnonzero(part.labels == label)
        cube, dim = _is_subcube(part.members[idx])
        if cube:
            best = max(best, dim)
        else:
            pending.append(idx)
    if pending:
        best = max(best, _max_eccentricity(rel, np.concatenate(pending), _neighbour_rows(rel), chunk))
    return best


def descend(rel: Relation, a: int) -> int:
    """Flip 1s to 0s while staying inside ``rel``, lowest variable index first."""
    n = rel.arity
    if a not in rel:
        raise InputError("start vector is not a solution")
    changed = True
    while changed:
        changed = False
        for var in range(n):
            bit = 1 << (n - 1 - var)
            if a & bit and (a ^ bit) in rel:
                a ^= bit
                changed = True
                break
    return a


def ascend(rel: Relation, a: int) -> int:
    """Flip 0s to 1s while staying inside ``rel``, lowest variable index first."""
    n = rel.arity
    full = (1 << n) - 1
    return descend(rel.flip(), a ^ full) ^ full


__all__ = [
    "ComponentPartition", "adjacency", "ascend", "components", "descend", "diameter",
    "distance", "hamming", "is_connected", "shortest_path_vectors",
]
