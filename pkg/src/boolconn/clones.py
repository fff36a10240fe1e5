"""Boolean functions, B-formulas and B-circuits, clone identification and connectivity."""
from __future__ import annotations

import functools
import graphlib
import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import CapExceeded, InputError, MethodInapplicable, PreconditionError
from .graph import components, distance, is_connected
from .limits import limits, require
from .relation import Relation, hamming, vec_to_str

INF = math.inf


# ---------------------------------------------------------------------------
# functions


@dataclass(frozen=True)
class BoolFunction:
    """A ``k``-ary function by truth table; inputs in lexicographic order, variable 1 most significant."""

    name: str
    arity: int
    bits: int   # bit ``a`` holds f(a)

    @classmethod
    def from_table(cls, name: str, arity: int, table: Sequence[int] | np.ndarray | str) -> "BoolFunction":
        if isinstance(table, str):
            if any(ch not in "01" for ch in table):
                raise InputError(f"function {name}: table must be a 0/1 string")
            table = [int(ch) for ch in table]
        table = list(table)
        if arity < 0 or len(table) != 1 << arity:
            raise InputError(f"function {name}: table length {len(table)} does not match arity {arity}")
        bits = 0
        for a, v in enumerate(table):
            if v:
                bits |= 1 << a
        return cls(name, arity, bits)

    @classmethod
    def from_callable(cls, name: str, arity: int, fn: Callable[..., int]) -> "BoolFunction":
        table = []
        for a in range(1 << arity):
            args = [(a >> (arity - 1 - i)) & 1 for i in range(arity)]
            table.append(int(bool(fn(*args))))
        return cls.from_table(name, arity, table)

    @functools.cached_property
    def table(self) -> np.ndarray:
        require("function arity", self.arity, "enumeration")
        size = 1 << self.arity
        raw = np.frombuffer(self.bits.to_bytes(max(1, (size + 7) // 8), "little"), dtype=np.uint8)
        out = np.unpackbits(raw, bitorder="little")[:size].astype(bool)
        out.setflags(write=False)
        return out

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise InputError(f"{self.name} expects {self.arity} arguments")
        a = 0
        for v in args:
            a = (a << 1) | (1 if v else 0)
        return (self.bits >> a) & 1

    def table_string(self) -> str:
        return "".join("1" if v else "0" for v in self.table)

    def preimage(self, value: int) -> list[int]:
        return [a for a in range(1 << self.arity) if ((self.bits >> a) & 1) == value]

    def solutions(self) -> Relation:
        return Relation.from_table(self.arity, self.table)

    def dual(self, name: str | None = None) -> "BoolFunction":
        full = (1 << self.arity) - 1
        table = [1 - ((self.bits >> (a ^ full)) & 1) for a in range(1 << self.arity)]
        return BoolFunction.from_table(name or f"dual({self.name})", self.arity, table)

    def lifted(self) -> "BoolFunction":
        """0-ary constants become unary functions with a fictive variable; others unchanged."""
        if self.arity > 0:
            return self
        v = self.bits & 1
        return BoolFunction(self.name, 1, 0b11 * v)

    def fictive(self) -> frozenset[int]:
        """0-based indices of variables the function does not depend on."""
        out = set()
        t = self.table
        for i in range(self.arity):
            bit = 1 << (self.arity - 1 - i)
            idx = np.arange(1 << self.arity)
            if np.array_equal(t, t[idx ^ bit]):
                out.add(i)
        return frozenset(out)

    def __str__(self) -> str:
        return f"function {self.name} arity={self.arity} table={self.table_string()}"


def threshold(n: int, k: int, name: str | None = None) -> BoolFunction:
    return BoolFunction.from_callable(name or f"T{k}_{n}", n, lambda *v: sum(v) >= k)


def _f(name: str, arity: int, fn) -> BoolFunction:
    return BoolFunction.from_callable(name, arity, fn)


ZERO_F = BoolFunction("ZERO", 0, 0)
ONE_F = BoolFunction("ONE", 0, 1)
ID_F = _f("ID", 1, lambda x: x)
NOT_F = _f("NOT", 1, lambda x: 1 - x)
AND_F = _f("AND", 2, lambda x, y: x & y)
OR_F = _f("OR", 2, lambda x, y: x | y)
XOR_F = _f("XOR", 2, lambda x, y: x ^ y)
EQ_F = _f("EQ", 2, lambda x, y: 1 - (x ^ y))
IMP_F = _f("IMP", 2, lambda x, y: (1 - x) | y)
NIMP_F = _f("NIMP", 2, lambda x, y: x & (1 - y))
MAJ_F = _f("MAJ", 3, lambda x, y, z: int(x + y + z >= 2))

STANDARD = {f.name: f for f in (ZERO_F, ONE_F, ID_F, NOT_F, AND_F, OR_F, XOR_F, EQ_F, IMP_F, NIMP_F, MAJ_F)}


# ---------------------------------------------------------------------------
# properties


def _lift(f: BoolFunction) -> BoolFunction:
    return f.lifted()


def is_reproducing(f: BoolFunction, c: int) -> bool:
    f = _lift(f)
    full = (1 << f.arity) - 1
    return ((f.bits >> (full if c else 0)) & 1) == c


def is_monotone(f: BoolFunction) -> bool:
    f = _lift(f)
    t = f.table
    idx = np.arange(1 << f.arity)
    for b in range(f.arity):
        low = idx[(idx >> b) & 1 == 0]
        if np.any(t[low] & ~t[low | (1 << b)]):
            return False
    return True


def is_self_dual(f: BoolFunction) -> bool:
    f = _lift(f)
    t = f.table
    full = (1 << f.arity) - 1
    return bool(np.all(t != t[np.arange(1 << f.arity) ^ full]))


def linear_form(f: BoolFunction) -> tuple[int, frozenset[int]] | None:
    """``(c, S)`` with ``f = c xor XOR_{i in S} x_i``, or None if ``f`` is not affine."""
    n = f.arity
    c = f.bits & 1
    support = set()
    for i in range(n):
        if (f.bits >> (1 << (n - 1 - i))) & 1 != c:
            support.add(i)
    for a in range(1 << n):
        v = c
        for i in support:
            v ^= (a >> (n - 1 - i)) & 1
        if v != (f.bits >> a) & 1:
            return None
    return c, frozenset(support)


def is_linear(f: BoolFunction) -> bool:
    return linear_form(f) is not None


def separation_degree(f: BoolFunction, c: int) -> float:
    """Largest ``m`` such that every set of at most ``m`` vectors of ``f^-1(c)`` shares a coordinate equal to ``c``.

    ``inf`` when the whole preimage shares one (``f`` is c-separating).
    """
    f = _lift(f)
    n = f.arity
    full = (1 << n) - 1
    # a set shares a coordinate equal to c iff the OR of the (complemented for c=1) vectors is not full
    table = f.table.astype(bool) if c == 1 else ~f.table.astype(bool)
    if c == 1:
        table = table[::-1]   # index a ^ full
    if not table.any():
        return INF
    idx = np.arange(1 << n, dtype=np.int64)
    # only inclusion-maximal vectors matter; above[s] says some vector strictly contains s
    up = table.copy()
    for i in range(n):
        bit = 1 << i
        low = (idx & bit) == 0
        up[idx[low]] |= up[idx[low] | bit]
    above = np.zeros_like(table)
    for i in range(n):
        bit = 1 << i
        low = (idx & bit) == 0
        above[idx[low]] |= up[idx[low] | bit]
    vectors = idx[table & ~above]
    if np.bitwise_or.reduce(vectors) != full:
        return INF
    seen = np.zeros(1 << n, dtype=bool)
    seen[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    steps = 0
    while frontier.size:
        steps += 1
        cand = np.unique((frontier[:, None] | vectors[None, :]).ravel())
        cand = cand[~seen[cand]]
        if (cand == full).any():
            return steps - 1
        seen[cand] = True
        frontier = cand
    return INF


def is_separating(f: BoolFunction, c: int, degree: int | None = None) -> bool:
    d = separation_degree(f, c)
    return d == INF if degree is None else d >= degree


def is_constant(f: BoolFunction) -> bool:
    f = _lift(f)
    return f.bits == 0 or f.bits == (1 << (1 << f.arity)) - 1


def _is_gate(f: BoolFunction, combine) -> bool:
    f = _lift(f)
    if is_constant(f):
        return True
    n = f.arity
    essential = [i for i in range(n) if i not in f.fictive()]
    target = BoolFunction.from_callable("", n, lambda *v: combine(v[i] for i in essential))
    return target.bits == f.bits


def is_constant_or_conjunction(f: BoolFunction) -> bool:
    return _is_gate(f, all)


def is_constant_or_disjunction(f: BoolFunction) -> bool:
    return _is_gate(f, any)


def is_essentially_unary(f: BoolFunction) -> bool:
    f = _lift(f)
    return f.arity - len(f.fictive()) <= 1


def is_constant_or_projection(f: BoolFunction) -> bool:
    f = _lift(f)
    if is_constant(f):
        return True
    if not is_essentially_unary(f):
        return False
    i = next(i for i in range(f.arity) if i not in f.fictive())
    return (f.bits >> (1 << (f.arity - 1 - i))) & 1 == 1


PROPERTIES = ("0-reproducing", "1-reproducing", "monotone", "self-dual", "linear", "0-separating",
              "1-separating", "0-separating-of-degree", "1-separating-of-degree", "constant-or-conjunction",
              "constant-or-disjunction", "essentially-unary", "constant-or-projection")


def function_property(f: BoolFunction, prop: str, degree: int | None = None) -> bool:
    """Truth-table check of a named property; the degree variants need ``degree >= 2``.

    Degree-``m`` separation is read as: every subset of at most ``m`` preimage
    vectors shares a coordinate equal to ``c``.
    """
    if prop in ("0-separating-of-degree", "1-separating-of-degree"):
        if degree is None or degree < 2:
            raise InputError("separation degree must be at least 2")
        return is_separating(f, int(prop[0]), degree)
    checks = {
        "0-reproducing": lambda: is_reproducing(f, 0),
        "1-reproducing": lambda: is_reproducing(f, 1),
        "monotone": lambda: is_monotone(f),
        "self-dual": lambda: is_self_dual(f),
        "linear": lambda: is_linear(f),
        "0-separating": lambda: is_separating(f, 0),
        "1-separating": lambda: is_separating(f, 1),
        "constant-or-conjunction": lambda: is_constant_or_conjunction(f),
        "constant-or-disjunction": lambda: is_constant_or_disjunction(f),
        "essentially-unary": lambda: is_essentially_unary(f),
        "constant-or-projection": lambda: is_constant_or_projection(f),
    }
    if prop not in checks:
        raise InputError(f"unknown function property {prop!r}")
    return checks[prop]()


# ---------------------------------------------------------------------------
# clones

# predicate keys: R0 R1 M D L S0 S1 E V N I; "S0^" / "S1^" take the degree parameter
CLASS_PREDICATES: dict[str, frozenset[str]] = {
    "BF": frozenset(), "R0": frozenset({"R0"}), "R1": frozenset({"R1"}), "R2": frozenset({"R0", "R1"}),
    "M": frozenset({"M"}), "M0": frozenset({"M", "R0"}), "M1": frozenset({"M", "R1"}),
    "M2": frozenset({"M", "R0", "R1"}),
    "S0": frozenset({"S0"}), "S0^n": frozenset({"S0^"}), "S1": frozenset({"S1"}), "S1^n": frozenset({"S1^"}),
    "S02^n": frozenset({"S0^", "R0", "R1"}), "S02": frozenset({"S0", "R0", "R1"}),
    "S01^n": frozenset({"S0^", "M"}), "S01": frozenset({"S0", "M"}),
    "S00^n": frozenset({"S0^", "R0", "R1", "M"}), "S00": frozenset({"S0", "R0", "R1", "M"}),
    "S12^n": frozenset({"S1^", "R0", "R1"}), "S12": frozenset({"S1", "R0", "R1"}),
    "S11^n": frozenset({"S1^", "M"}), "S11": frozenset({"S1", "M"}),
    "S10^n": frozenset({"S1^", "R0", "R1", "M"}), "S10": frozenset({"S1", "R0", "R1", "M"}),
    "D": frozenset({"D"}), "D1": frozenset({"D", "R0", "R1"}), "D2": frozenset({"D", "M"}),
    "L": frozenset({"L"}), "L0": frozenset({"L", "R0"}), "L1": frozenset({"L", "R1"}),
    "L2": frozenset({"L", "R0", "R1"}), "L3": frozenset({"L", "D"}),
    "E": frozenset({"E"}), "E0": frozenset({"E", "R0"}), "E1": frozenset({"E", "R1"}),
    "E2": frozenset({"E", "R0", "R1"}),
    "V": frozenset({"V"}), "V0": frozenset({"V", "R0"}), "V1": frozenset({"V", "R1"}),
    "V2": frozenset({"V", "R0", "R1"}),
    "N": frozenset({"N"}), "N2": frozenset({"N", "D"}),
    "I": frozenset({"I"}), "I0": frozenset({"I", "R0"}), "I1": frozenset({"I", "R1"}),
    "I2": frozenset({"I", "R0", "R1"}),
}
CLASS_NAMES = tuple(CLASS_PREDICATES)
FAMILIES = tuple(n for n in CLASS_NAMES if n.endswith("^n"))


@dataclass(frozen=True, order=True)
class CloneLabel:
    name: str                   # a key of CLASS_PREDICATES; families end in "^n"
    degree: int | None = None   # required exactly for families

    def __post_init__(self) -> None:
        if self.name not in CLASS_PREDICATES:
            raise InputError(f"unknown clone {self.name!r}")
        family = self.name in FAMILIES
        if family != (self.degree is not None) or (family and self.degree < 2):
            raise InputError(f"bad degree for clone {self.name}")

    @classmethod
    def parse(cls, text: str) -> "CloneLabel":
        m = re.fullmatch(r"(\w+)\^(\d+)", text.strip())
        if m:
            return cls(m.group(1) + "^n", int(m.group(2)))
        return cls(text.strip())

    def __str__(self) -> str:
        return self.name[:-1] + str(self.degree) if self.degree is not None else self.name


@functools.lru_cache(maxsize=4096)
def _profile(f: BoolFunction) -> dict[str, float | bool]:
    return {
        "R0": is_reproducing(f, 0), "R1": is_reproducing(f, 1), "M": is_monotone(f), "D": is_self_dual(f),
        "L": is_linear(f), "E": is_constant_or_conjunction(f), "V": is_constant_or_disjunction(f),
        "N": is_essentially_unary(f), "I": is_constant_or_projection(f),
        "d0": separation_degree(f, 0), "d1": separation_degree(f, 1),
    }


def in_clone(f: BoolFunction, label: CloneLabel) -> bool:
    p = _profile(f)
    for key in CLASS_PREDICATES[label.name]:
        if key == "S0":
            ok = p["d0"] == INF
        elif key == "S1":
            ok = p["d1"] == INF
        elif key == "S0^":
            ok = p["d0"] >= label.degree
        elif key == "S1^":
            ok = p["d1"] >= label.degree
        else:
            ok = p[key]
        if not ok:
            return False
    return True


def clone_base(label: CloneLabel) -> tuple[BoolFunction, ...]:
    """The base listed for each class (threshold functions instantiated at the label's degree)."""
    n = label.degree
    h = lambda name, k, fn: _f(name, k, fn)  # noqa: E731
    x_or_y_and_not_z = h("x|(y&-z)", 3, lambda x, y, z: x | (y & (1 - z)))
    x_or_y_and_z = h("x|(y&z)", 3, lambda x, y, z: x | (y & z))
    x_and_y_or_not_z = h("x&(y|-z)", 3, lambda x, y, z: x & (y | (1 - z)))
    x_and_y_or_z = h("x&(y|z)", 3, lambda x, y, z: x & (y | z))
    t = threshold(n + 1, n, f"T{n}_{n + 1}") if n else None
    tdual = t.dual(f"dual(T{n}_{n + 1})") if n else None
    bases: dict[str, tuple] = {
        "BF": (AND_F, NOT_F), "R0": (AND_F, XOR_F), "R1": (OR_F, EQ_F),
        "R2": (OR_F, h("x&(y=z)", 3, lambda x, y, z: x & (1 - (y ^ z)))),
        "M": (AND_F, OR_F, ZERO_F, ONE_F), "M0": (AND_F, OR_F, ZERO_F), "M1": (AND_F, OR_F, ONE_F),
        "M2": (AND_F, OR_F),
        "S0": (IMP_F,), "S0^n": (IMP_F, tdual), "S1": (NIMP_F,), "S1^n": (NIMP_F, t),
        "S02^n": (x_or_y_and_not_z, tdual), "S02": (x_or_y_and_not_z,),
        "S01^n": (tdual, ONE_F), "S01": (x_or_y_and_z, ONE_F),
        "S00^n": (x_or_y_and_z, tdual), "S00": (x_or_y_and_z,),
        "S12^n": (x_and_y_or_not_z, t), "S12": (x_and_y_or_not_z,),
        "S11^n": (t, ZERO_F), "S11": (x_and_y_or_z, ZERO_F),
        "S10^n": (x_and_y_or_z, t), "S10": (x_and_y_or_z,),
        "D": (h("maj(x,-y,-z)", 3, lambda x, y, z: int(x + (1 - y) + (1 - z) >= 2)),),
        "D1": (h("maj(x,y,-z)", 3, lambda x, y, z: int(x + y + (1 - z) >= 2)),),
        "D2": (MAJ_F,),
        "L": (XOR_F, ONE_F), "L0": (XOR_F,), "L1": (EQ_F,),
        "L2": (h("x^y^z", 3, lambda x, y, z: x ^ y ^ z),),
        "L3": (h("x^y^z^1", 3, lambda x, y, z: 1 ^ x ^ y ^ z),),
        "E": (AND_F, ZERO_F, ONE_F), "E0": (AND_F, ZERO_F), "E1": (AND_F, ONE_F), "E2": (AND_F,),
        "V": (OR_F, ZERO_F, ONE_F), "V0": (OR_F, ZERO_F), "V1": (OR_F, ONE_F), "V2": (OR_F,),
        "N": (NOT_F, ZERO_F, ONE_F), "N2": (NOT_F,),
        "I": (ID_F, ZERO_F, ONE_F), "I0": (ID_F, ZERO_F), "I1": (ID_F, ONE_F), "I2": (ID_F,),
    }
    return bases[label.name]


@functools.lru_cache(maxsize=1 << 14)
def clone_leq(a: CloneLabel, b: CloneLabel) -> bool:
    """Inclusion of clones: ``a`` is contained in ``b`` iff ``b`` contains a base of ``a``."""
    return all(in_clone(f, b) for f in clone_base(a))


def _candidates(B: Sequence[BoolFunction]) -> list[CloneLabel]:
    out = []
    for name in CLASS_NAMES:
        if name in FAMILIES:
            key = "d0" if name.startswith("S0") else "d1"
            deg = min(_profile(f)[key] for f in B)
            if deg == INF or deg < 2:
                continue
            label = CloneLabel(name, int(deg))
        else:
            label = CloneLabel(name)
        if all(in_clone(f, label) for f in B):
            out.append(label)
    return out


def clone_of(B: Iterable[BoolFunction]) -> CloneLabel:
    """The smallest class of the lattice containing every function of ``B``."""
    B = list(B)
    if not B:
        raise InputError("clone of an empty set")
    cands = _candidates(B)
    for c in cands:
        if all(clone_leq(c, d) for d in cands):
            return c
    raise AssertionError("no least class among candidates")  # lattice property


M_CLONE, L_CLONE, S0_CLONE = CloneLabel("M"), CloneLabel("L"), CloneLabel("S0")


def verdict_bf(B: Iterable[BoolFunction]) -> str:
    c = clone_of(B)
    return "easy" if any(clone_leq(c, x) for x in (M_CLONE, L_CLONE, S0_CLONE)) else "hard"


def verdict_qbf(B: Iterable[BoolFunction]) -> str:
    c = clone_of(B)
    return "easy" if any(clone_leq(c, x) for x in (M_CLONE, L_CLONE)) else "hard"


def lattice_labels(degrees: Sequence[int] = (2, 3)) -> list[CloneLabel]:
    out = []
    for name in CLASS_NAMES:
        if name in FAMILIES:
            out.extend(CloneLabel(name, d) for d in degrees)
        else:
            out.append(CloneLabel(name))
    return out


def derive_covers(degrees: Sequence[int] = (2, 3)) -> list[tuple[str, str]]:
    """Cover pairs (lower, upper) of the inclusion order on the lattice fragment with these degrees."""
    labels = lattice_labels(degrees)
    below = {a: {b for b in labels if b != a and clone_leq(b, a)} for a in labels}
    covers = []
    for upper in labels:
        for lower in below[upper]:
            if not any(lower in below[mid] for mid in below[upper]):
                covers.append((str(lower), str(upper)))
    return sorted(covers)


# Hasse diagram of the lattice fragment with degrees 2 and 3 (lower, upper);
# a test re-derives it from the class bases.
LATTICE_COVERS: tuple[tuple[str, str], ...] = (
    ("D", "BF"), ("D1", "D"), ("D1", "R2"), ("D2", "D1"), ("D2", "S00^2"), ("D2", "S10^2"),
    ("E", "M"), ("E0", "E"), ("E0", "S11"), ("E1", "E"), ("E1", "M1"), ("E2", "E0"), ("E2", "E1"),
    ("E2", "S10"), ("I", "E"), ("I", "N"), ("I", "V"), ("I0", "E0"), ("I0", "I"), ("I0", "L0"),
    ("I0", "V0"), ("I1", "E1"), ("I1", "I"), ("I1", "L1"), ("I1", "V1"), ("I2", "D2"), ("I2", "E2"),
    ("I2", "I0"), ("I2", "I1"), ("I2", "L2"), ("I2", "N2"), ("I2", "V2"), ("L", "BF"), ("L0", "L"),
    ("L0", "R0"), ("L1", "L"), ("L1", "R1"), ("L2", "D1"), ("L2", "L0"), ("L2", "L1"), ("L2", "L3"),
    ("L3", "D"), ("L3", "L"), ("M", "BF"), ("M0", "M"), ("M0", "R0"), ("M1", "M"), ("M1", "R1"),
    ("M2", "M0"), ("M2", "M1"), ("M2", "R2"), ("N", "L"), ("N2", "L3"), ("N2", "N"), ("R0", "BF"),
    ("R1", "BF"), ("R2", "R0"), ("R2", "R1"), ("S0", "S0^3"), ("S00", "S00^3"), ("S00", "S01"),
    ("S00", "S02"), ("S00^2", "M2"), ("S00^2", "S01^2"), ("S00^2", "S02^2"), ("S00^3", "S00^2"),
    ("S00^3", "S01^3"), ("S00^3", "S02^3"), ("S01", "S0"), ("S01", "S01^3"), ("S01^2", "M1"),
    ("S01^2", "S0^2"), ("S01^3", "S01^2"), ("S01^3", "S0^3"), ("S02", "S0"), ("S02", "S02^3"),
    ("S02^2", "R2"), ("S02^2", "S0^2"), ("S02^3", "S02^2"), ("S02^3", "S0^3"), ("S0^2", "R1"),
    ("S0^3", "S0^2"), ("S1", "S1^3"), ("S10", "S10^3"), ("S10", "S11"), ("S10", "S12"),
    ("S10^2", "M2"), ("S10^2", "S11^2"), ("S10^2", "S12^2"), ("S10^3", "S10^2"), ("S10^3", "S11^3"),
    ("S10^3", "S12^3"), ("S11", "S1"), ("S11", "S11^3"), ("S11^2", "M0"), ("S11^2", "S1^2"),
    ("S11^3", "S11^2"), ("S11^3", "S1^3"), ("S12", "S1"), ("S12", "S12^3"), ("S12^2", "R2"),
    ("S12^2", "S1^2"), ("S12^3", "S12^2"), ("S12^3", "S1^3"), ("S1^2", "R0"), ("S1^3", "S1^2"),
    ("V", "M"), ("V0", "M0"), ("V0", "V"), ("V1", "S01"), ("V1", "V"), ("V2", "S00"), ("V2", "V0"),
    ("V2", "V1"),
)


def lattice_leq(a: CloneLabel | str, b: CloneLabel | str) -> bool:
    """Inclusion read off the frozen cover table (degrees 2 and 3 only)."""
    a, b = str(a), str(b)
    if a == b:
        return True
    ups: dict[str, list[str]] = {}
    for lo, hi in LATTICE_COVERS:
        ups.setdefault(lo, []).append(hi)
    stack, seen = [a], {a}
    while stack:
        cur = stack.pop()
        for nxt in ups.get(cur, ()):
            if nxt == b:
                return True
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


# ---------------------------------------------------------------------------
# formulas and circuits


@dataclass(frozen=True)
class Var:
    index: int   # 0-based

    def __str__(self) -> str:
        return f"x{self.index + 1}"


@dataclass(frozen=True)
class Node:
    name: str
    children: tuple["BFormula", ...] = ()

    def __str__(self) -> str:
        if not self.children:
            return f"({self.name})"
        return "(" + " ".join([self.name] + [str(c) for c in self.children]) + ")"


BFormula = Union[Var, Node]


def formula_vars(phi: BFormula) -> int:
    """Number of variables, i.e. one more than the largest index used."""
    if isinstance(phi, Var):
        return phi.index + 1
    return max((formula_vars(c) for c in phi.children), default=0)


def formula_size(phi: BFormula) -> int:
    if isinstance(phi, Var):
        return 1
    return 1 + sum(formula_size(c) for c in phi.children)


def formula_functions(phi: BFormula) -> set[str]:
    if isinstance(phi, Var):
        return set()
    out = {phi.name}
    for c in phi.children:
        out |= formula_functions(c)
    return out


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_bformula(text: str, B: Mapping[str, BoolFunction] | None = None) -> BFormula:
    """Parse ``(NAME child ...)`` with leaves ``x<i>``; a bare name denotes a 0-ary function."""
    tokens = _TOKEN.findall(text)
    pos = 0

    def leaf(tok: str) -> BFormula:
        m = re.fullmatch(r"x(\d+)", tok)
        if m:
            if int(m.group(1)) < 1:
                raise InputError("variables are numbered from x1")
            return Var(int(m.group(1)) - 1)
        return Node(tok)

    def parse() -> BFormula:
        nonlocal pos
        if pos >= len(tokens):
            raise InputError("unexpected end of formula")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise InputError("unexpected ')'")
        if tok != "(":
            return leaf(tok)
        if pos >= len(tokens) or tokens[pos] in "()":
            raise InputError("expected a function name after '('")
        name = tokens[pos]
        pos += 1
        children = []
        while True:
            if pos >= len(tokens):
                raise InputError("missing ')'")
            if tokens[pos] == ")":
                pos += 1
                break
            children.append(parse())
        return Node(name, tuple(children))

    phi = parse()
    if pos != len(tokens):
        raise InputError("trailing text after formula")
    if B is not None:
        check_formula(phi, B)
    return phi


def check_formula(phi: BFormula, B: Mapping[str, BoolFunction]) -> None:
    if isinstance(phi, Var):
        return
    if phi.name not in B:
        raise InputError(f"unknown function {phi.name}")
    if len(phi.children) != B[phi.name].arity:
        raise InputError(f"arity mismatch for {phi.name}: expected {B[phi.name].arity}, got {len(phi.children)}")
    for c in phi.children:
        check_formula(c, B)


def _vars_table(n: int) -> list[np.ndarray]:
    idx = np.arange(1 << n, dtype=np.int64)
    return [((idx >> (n - 1 - i)) & 1).astype(np.int64) for i in range(n)]


def _apply(f: BoolFunction, args: Sequence[np.ndarray], size: int) -> np.ndarray:
    index = np.zeros(size, dtype=np.int64)
    for a in args:
        index = (index << 1) | a
    return f.table[index].astype(np.int64)


def formula_table(B: Mapping[str, BoolFunction], phi: BFormula, n: int | None = None) -> np.ndarray:
    """Values at all ``2^n`` assignments."""
    check_formula(phi, B)
    n = formula_vars(phi) if n is None else n
    require("formula variables", n, "enumeration")
    xs = _vars_table(n)
    size = 1 << n

    def go(node: BFormula) -> np.ndarray:
        if isinstance(node, Var):
            if node.index >= n:
                raise InputError(f"variable {node} out of range")
            return xs[node.index]
        return _apply(B[node.name], [go(c) for c in node.children], size)

    return go(phi).astype(bool)


def eval_bformula(B: Mapping[str, BoolFunction], phi: BFormula, a: Sequence[int] | str) -> bool:
    if isinstance(a, str):
        a = [int(ch) for ch in a]
    check_formula(phi, B)

    def go(node: BFormula) -> int:
        if isinstance(node, Var):
            if node.index >= len(a):
                raise InputError(f"no value for {node}")
            return a[node.index]
        return B[node.name](*[go(c) for c in node.children])

    return bool(go(phi))


def formula_function(B: Mapping[str, BoolFunction], phi: BFormula, n: int | None = None,
                     name: str = "phi") -> BoolFunction:
    n = formula_vars(phi) if n is None else n
    return BoolFunction.from_table(name, n, formula_table(B, phi, n).astype(int))


def substitute(phi: BFormula, mapping: Mapping[int, BFormula]) -> BFormula:
    if isinstance(phi, Var):
        return mapping.get(phi.index, phi)
    return Node(phi.name, tuple(substitute(c, mapping) for c in phi.children))


@dataclass(frozen=True)
class Gate:
    label: int | str         # variable index or function name
    preds: tuple[int, ...] = ()


@dataclass(frozen=True)
class BCircuit:
    gates: tuple[tuple[int, Gate], ...]
    output: int

    def __post_init__(self) -> None:
        ids = [g for g, _ in self.gates]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate gate id")
        known = set(ids)
        if self.output not in known:
            raise InputError("output gate is not defined")
        for gid, gate in self.gates:
            for p in gate.preds:
                if p not in known:
                    raise InputError(f"gate {gid}: unknown predecessor {p}")
            if isinstance(gate.label, int) and gate.preds:
                raise InputError(f"gate {gid}: variable gates take no inputs")
        self.order()  # cycle check

    @property
    def gate_map(self) -> dict[int, Gate]:
        return dict(self.gates)

    def order(self) -> list[int]:
        ts = graphlib.TopologicalSorter({gid: set(g.preds) for gid, g in self.gates})
        try:
            return list(ts.static_order())
        except graphlib.CycleError as exc:
            raise InputError("circuit contains a cycle") from exc

    @property
    def num_vars(self) -> int:
        return max((g.label + 1 for _, g in self.gates if isinstance(g.label, int)), default=0)

    def functions(self) -> set[str]:
        return {g.label for _, g in self.gates if isinstance(g.label, str)}


def check_circuit(C: BCircuit, B: Mapping[str, BoolFunction]) -> None:
    for gid, g in C.gates:
        if isinstance(g.label, str):
            if g.label not in B:
                raise InputError(f"unknown function {g.label}")
            if len(g.preds) != B[g.label].arity:
                raise InputError(f"gate {gid}: arity mismatch for {g.label}")


def parse_circuit(text: str, source: str = "<circuit>") -> BCircuit:
    gates = []
    output = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"gate\s+(\d+)\s*=\s*(\S+)\s*(.*)", line)
        if m:
            gid, label, rest = int(m.group(1)), m.group(2), m.group(3)
            preds = tuple(int(p) for p in re.findall(r"\d+", rest))
            if re.sub(r"[\d\s,\[\]]", "", rest):
                raise InputError(f"{source}:{lineno}: bad predecessor list", lineno, source)
            vm = re.fullmatch(r"x(\d+)", label)
            gates.append((gid, Gate(int(vm.group(1)) - 1 if vm else label, preds)))
            continue
        m = re.fullmatch(r"output\s+(\d+)", line)
        if m:
            output = int(m.group(1))
            continue
        raise InputError(f"{source}:{lineno}: cannot parse {line!r}", lineno, source)
    if output is None:
        raise InputError(f"{source}: missing output line", None, source)
    return BCircuit(tuple(gates), output)


def format_circuit(C: BCircuit) -> str:
    lines = []
    for gid, g in C.gates:
        label = f"x{g.label + 1}" if isinstance(g.label, int) else g.label
        preds = "".join(f" {p}" for p in g.preds)
        lines.append(f"gate {gid} = {label}{(' [' + preds.strip() + ']') if g.preds else ''}")
    lines.append(f"output {C.output}")
    return "\n".join(lines) + "\n"


def circuit_table(B: Mapping[str, BoolFunction], C: BCircuit, n: int | None = None) -> np.ndarray:
    check_circuit(C, B)
    n = C.num_vars if n is None else n
    require("circuit variables", n, "enumeration")
    xs = _vars_table(n)
    size = 1 << n
    gm = C.gate_map
    values: dict[int, np.ndarray] = {}
    for gid in C.order():
        g = gm[gid]
        if isinstance(g.label, int):
            if g.label >= n:
                raise InputError(f"variable x{g.label + 1} out of range")
            values[gid] = xs[g.label]
        else:
            values[gid] = _apply(B[g.label], [values[p] for p in g.preds], size)
    return values[C.output].astype(bool)


def eval_bcircuit(B: Mapping[str, BoolFunction], C: BCircuit, a: Sequence[int] | str) -> bool:
    if isinstance(a, str):
        a = [int(ch) for ch in a]
    check_circuit(C, B)
    gm = C.gate_map
    values: dict[int, int] = {}
    for gid in C.order():
        g = gm[gid]
        if isinstance(g.label, int):
            if g.label >= len(a):
                raise InputError(f"no value for x{g.label + 1}")
            values[gid] = a[g.label]
        else:
            values[gid] = B[g.label](*[values[p] for p in g.preds])
    return bool(values[C.output])


def formula_to_circuit(phi: BFormula) -> BCircuit:
    """Tree to DAG: one gate per variable, one gate per function node (out-degree at most one)."""
    gates: list[tuple[int, Gate]] = []
    var_gate: dict[int, int] = {}

    def go(node: BFormula) -> int:
        if isinstance(node, Var):
            if node.index not in var_gate:
                var_gate[node.index] = len(gates) + 1
                gates.append((len(gates) + 1, Gate(node.index)))
            return var_gate[node.index]
        preds = tuple(go(c) for c in node.children)
        gid = len(gates) + 1
        gates.append((gid, Gate(node.name, preds)))
        return gid

    out = go(phi)
    return BCircuit(tuple(gates), out)


def fictive_vars_linear(B: Mapping[str, BoolFunction], C: BCircuit, n: int | None = None) -> frozenset[int]:
    """Fictive variables of a circuit over affine functions, via backward-path parity.

    Each gate is rewritten as ``c xor`` (XOR of some inputs); a variable is
    fictive iff the number of paths from the output back to its gate through
    those inputs is even.
    """
    check_circuit(C, B)
    forms = {}
    for name in C.functions():
        lf = linear_form(B[name])
        if lf is None:
            raise MethodInapplicable(f"method inapplicable: {name} is not affine")
        forms[name] = lf[1]
    n = C.num_vars if n is None else n
    gm = C.gate_map
    parity = {gid: 0 for gid, _ in C.gates}
    parity[C.output] = 1
    for gid in reversed(C.order()):
        g = gm[gid]
        if isinstance(g.label, str) and parity[gid]:
            for pos in forms[g.label]:
                parity[g.preds[pos]] ^= 1
    live = {g.label for gid, g in C.gates if isinstance(g.label, int) and parity[gid]}
    return frozenset(i for i in range(n) if i not in live)


# ---------------------------------------------------------------------------
# connectivity for B-formulas


@dataclass(frozen=True)
class BfResult:
    connected: bool
    method: str
    distance: int | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = {"connected": self.connected, "method": self.method, "details": self.details}
        if self.distance is not None:
            d["distance"] = self.distance
        return d


def _used(B: Mapping[str, BoolFunction], phi: BFormula) -> list[BoolFunction]:
    check_formula(phi, B)
    return [B[name] for name in sorted(formula_functions(phi))]


def _easy_class(used: list[BoolFunction]) -> str | None:
    if not used:
        return "monotone"
    c = clone_of(used)
    if clone_leq(c, M_CLONE):
        return "monotone"
    if clone_leq(c, L_CLONE):
        return "linear"
    if clone_leq(c, S0_CLONE):
        return "zero-separating"
    return None


def conn_bformula(B: Mapping[str, BoolFunction], phi: BFormula, n: int | None = None) -> BfResult:
    n = formula_vars(phi) if n is None else n
    kind = _easy_class(_used(B, phi))
    if kind in ("monotone", "zero-separating"):
        return BfResult(True, kind)
    if kind == "linear":
        fictive = fictive_vars_linear(B, formula_to_circuit(phi), n)
        live = n - len(fictive)
        return BfResult(live <= 1, kind, details={"non_fictive": [f"x{i + 1}" for i in range(n) if i not in fictive]})
    rel = Relation.from_table(n, formula_table(B, phi, n))
    return BfResult(is_connected(rel), "brute", details={"components": components(rel).count})


def _bits(v: Sequence[int] | str | int, n: int) -> int:
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        if len(v) != n or any(ch not in "01" for ch in v):
            raise InputError(f"expected a 0/1 string of length {n}")
        return int(v, 2) if v else 0
    return int("".join(str(int(x)) for x in v), 2) if len(v) else 0


def zero_separating_route(f: BoolFunction, s: int, t: int) -> list[int]:
    """Path from ``s`` to ``t`` through solutions: raise the separating coordinate, walk, lower it."""
    n = f.arity
    zeros = f.preimage(0)
    coord = next(i for i in range(n) if all(not (a >> (n - 1 - i)) & 1 for a in zeros))
    bit = 1 << (n - 1 - coord)
    path = [s]
    cur = s
    if not cur & bit:
        cur |= bit
        path.append(cur)
    for i in range(n):
        b = 1 << (n - 1 - i)
        if b != bit and (cur ^ t) & b:
            cur ^= b
            path.append(cur)
    if cur != t:
        path.append(t)
    return path


def st_conn_bformula(B: Mapping[str, BoolFunction], phi: BFormula, s, t, n: int | None = None) -> BfResult:
    n = formula_vars(phi) if n is None else n
    s, t = _bits(s, n), _bits(t, n)
    used = _used(B, phi)
    sv = [(s >> (n - 1 - i)) & 1 for i in range(n)]
    tv = [(t >> (n - 1 - i)) & 1 for i in range(n)]
    if not (eval_bformula(B, phi, sv) and eval_bformula(B, phi, tv)):
        raise InputError("endpoint not a solution")
    kind = _easy_class(used)
    if kind == "monotone":
        return BfResult(True, kind, hamming(s, t))
    if kind == "linear":
        fictive = fictive_vars_linear(B, formula_to_circuit(phi), n)
        diff = {i for i in range(n) if ((s ^ t) >> (n - 1 - i)) & 1}
        ok = diff <= fictive
        return BfResult(ok, kind, hamming(s, t) if ok else None)
    if kind == "zero-separating":
        f = formula_function(B, phi, n)
        route = zero_separating_route(f, s, t)
        d = int(distance(f.solutions(), s, t)) if n <= limits().diameter else None
        return BfResult(True, kind, d, {"route_length": len(route) - 1})
    rel = Relation.from_table(n, formula_table(B, phi, n))
    d = distance(rel, s, t)
    return BfResult(d != INF, "brute", None if d == INF else int(d))


# ---------------------------------------------------------------------------
# transformations over the standard connectives


def _and(*parts: BFormula) -> BFormula:
    if not parts:
        return Node("ONE")
    out = parts[0]
    for p in parts[1:]:
        out = Node("AND", (out, p))
    return out


def _or(*parts: BFormula) -> BFormula:
    if not parts:
        return Node("ZERO")
    out = parts[0]
    for p in parts[1:]:
        out = Node("OR", (out, p))
    return out


def _not(p: BFormula) -> BFormula:
    return Node("NOT", (p,))


def _equals(vars_: Sequence[int], pattern: Sequence[int]) -> BFormula:
    return _and(*[Var(v) if b else _not(Var(v)) for v, b in zip(vars_, pattern)])


def cnf_to_bformula(clauses: Sequence[Sequence[int]], n: int) -> BFormula:
    """DIMACS-style clauses (``-3`` is the negation of ``x3``) as a standard-connective formula."""
    parts = []
    for c in clauses:
        if not c:
            raise InputError("empty clause")
        lits = []
        for lit in c:
            if lit == 0 or abs(lit) > n:
                raise InputError(f"literal {lit} out of range")
            lits.append(Var(lit - 1) if lit > 0 else _not(Var(-lit - 1)))
        parts.append(_or(*lits))
    return _and(*parts)


def _require_one_reproducing(phi: BFormula, n: int) -> None:
    if not eval_bformula(STANDARD, phi, [1] * n):
        raise PreconditionError("formula is not 1-reproducing")


@dataclass(frozen=True)
class Transformed:
    formula: BFormula          # over STANDARD
    num_vars: int              # original variables first, then the new ones
    original_vars: int
    suffix: str                # appended to solutions of the original formula
    forall: tuple[int, ...] = ()  # universally quantified variables (quantified transform only)

    def lift(self, s: int | str) -> str:
        if isinstance(s, int):
            s = vec_to_str(s, self.original_vars)
        return s + self.suffix

    def function(self) -> BoolFunction:
        return formula_function(STANDARD, self.formula, self.num_vars, "T")

    def relation(self) -> Relation:
        """Solutions, with universally quantified variables removed."""
        rel = Relation.from_table(self.num_vars, formula_table(STANDARD, self.formula, self.num_vars))
        from .relation import forall_restrict
        for v in sorted(self.forall, reverse=True):
            rel = forall_restrict(rel, v + 1)
        return rel


def transform_s12(psi: BFormula, n: int) -> Transformed:
    """``psi AND y``."""
    _require_one_reproducing(psi, n)
    return Transformed(_and(psi, Var(n)), n + 1, n, "1")


def _negated_inputs(psi: BFormula, n: int) -> BFormula:
    return substitute(psi, {i: _not(Var(i)) for i in range(n)})


def transform_d1(psi: BFormula, n: int) -> Transformed:
    """Self-dual stitching with three new variables ``y1 y2 y3``."""
    _require_one_reproducing(psi, n)
    x = list(range(n))
    y = [n, n + 1, n + 2]
    one_hot = _or(_equals(y, (1, 0, 0)), _equals(y, (0, 1, 0)), _equals(y, (0, 0, 1)))
    phi = _or(
        _and(psi, _equals(y, (1, 1, 1))),
        _and(_not(_negated_inputs(psi, n)), _equals(y, (0, 0, 0))),
        _and(one_hot, _not(_and(_equals(x, [0] * n), _equals(y, (0, 0, 1))))),
        _and(_equals(x, [1] * n), _equals(y, (1, 1, 0))),
    )
    return Transformed(phi, n + 3, n, "111")


def _weight_above_one(z: Sequence[int]) -> BFormula:
    return _or(*[_and(Var(a), Var(b)) for a, b in itertools.combinations(z, 2)])


def transform_s02k(psi: BFormula, n: int, k: int) -> Transformed:
    """Stitching for degree-``k`` 0-separation with ``y`` and ``z1..z(k+1)``."""
    if k < 2:
        raise InputError("degree k must be at least 2")
    _require_one_reproducing(psi, n)
    y = n
    z = list(range(n + 1, n + k + 2))
    phi = _or(
        _and(psi, Var(y), _equals(z, [0] * (k + 1))),
        _weight_above_one(z),
        _and(_equals(list(range(n)), [1] * n), Var(y), _equals(z, [1] + [0] * k)),
    )
    return Transformed(phi, n + k + 2, n, "1" + "0" * (k + 1))


def transform_s02_quantified(psi: BFormula, n: int) -> Transformed:
    """``forall z ((psi AND y) OR z)``; any ``psi`` is accepted."""
    return Transformed(_or(_and(psi, Var(n)), Var(n + 1)), n + 2, n, "1", forall=(n + 1,))


TRANSFORMS = {"s12": transform_s12, "d1": transform_d1, "s02k": transform_s02k, "s02q": transform_s02_quantified}


def transform_class(kind: str, k: int | None = None) -> CloneLabel:
    return {"s12": CloneLabel("S12"), "d1": CloneLabel("D1"),
            "s02k": CloneLabel("S02^n", k) if k else None, "s02q": CloneLabel("S02")}[kind]


def _apply_transform(kind: str, psi: BFormula, n: int, k: int | None) -> Transformed:
    if kind == "s02k":
        return transform_s02k(psi, n, k)
    return TRANSFORMS[kind](psi, n)


# ---------------------------------------------------------------------------
# balanced assembly


def _is_standard_basis(B: Mapping[str, BoolFunction]) -> bool:
    return all(name in B and B[name].bits == f.bits and B[name].arity == f.arity
               for name, f in STANDARD.items() if name in ("AND", "OR", "NOT", "ZERO", "ONE"))


def search_representation(B: Mapping[str, BoolFunction], target: BoolFunction,
                          max_nodes: int | None = None) -> BFormula:
    """Smallest B-formula (by node count, bottom-up) computing ``target`` over its variables."""
    cap = limits().representation_nodes if max_nodes is None else max_nodes
    states = limits().expression_states
    n = target.arity
    size = 1 << n
    xs = _vars_table(n)
    by_size: dict[int, list[tuple[bytes, BFormula, np.ndarray]]] = {1: []}
    seen: dict[bytes, BFormula] = {}

    def add(s: int, phi: BFormula, tab: np.ndarray) -> bool:
        key = tab.astype(np.int8).tobytes()
        if key in seen:
            return False
        seen[key] = phi
        by_size.setdefault(s, []).append((key, phi, tab))
        if len(seen) > states:
            raise CapExceeded("representation states", len(seen), states)
        return np.array_equal(tab.astype(bool), target.table)

    for i in range(n):
        if add(1, Var(i), xs[i]):
            return Var(i)
    funcs = sorted(B.values(), key=lambda f: (f.arity, f.name))
    for f in funcs:
        if f.arity == 0:
            tab = np.full(size, f.bits & 1, dtype=np.int64)
            if add(1, Node(f.name), tab):
                return Node(f.name)
    for s in range(2, cap + 1):
        for f in funcs:
            k = f.arity
            if k == 0:
                continue
            # split s-1 nodes among k children
            for parts in _compositions(s - 1, k):
                pools = [by_size.get(p, []) for p in parts]
                if any(not pool for pool in pools):
                    continue
                for combo in itertools.product(*pools):
                    tab = _apply(f, [c[2] for c in combo], size)
                    phi = Node(f.name, tuple(c[1] for c in combo))
                    if add(s, phi, tab):
                        return phi
    raise CapExceeded("representation nodes", cap + 1, cap)


def _compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class Assembly:
    formula: BFormula
    num_vars: int
    transform: Transformed   # the direct transform of the whole formula, for comparison
    depth: int


def tr_assemble(clauses: Sequence[Sequence[int]], n: int, B: Mapping[str, BoolFunction],
                transform: str = "s12", k: int | None = None) -> Assembly:
    """Balanced composition of per-clause and per-conjunction transforms into one B-formula."""
    if not clauses:
        raise InputError("at least one clause is required")
    if transform not in TRANSFORMS:
        raise InputError(f"unknown transform {transform!r}")
    direct = _apply_transform(transform, cnf_to_bformula(clauses, n), n, k)
    # the composed transforms only see variables that occur in some clause; a tautology
    # (v | -v) brings every other input into scope without changing the formula
    used = {abs(lit) for c in clauses for lit in c}
    clauses = list(clauses) + [[v, -v] for v in range(1, n + 1) if v not in used]
    extra = direct.num_vars - n
    aux = list(range(n, n + extra))
    standard = _is_standard_basis(B)

    @functools.lru_cache(maxsize=None)
    def rep(local: BFormula, m: int) -> BFormula:
        t = _apply_transform(transform, local, m, k)
        if standard:
            return t.formula
        return search_representation(B, formula_function(STANDARD, t.formula, t.num_vars))

    def clause_rep(c: Sequence[int]) -> BFormula:
        vs = sorted({abs(l) - 1 for l in c})
        local = cnf_to_bformula([[(vs.index(abs(l) - 1) + 1) * (1 if l > 0 else -1) for l in c]], len(vs))
        r = rep(local, len(vs))
        mapping = {i: Var(v) for i, v in enumerate(vs)}
        mapping.update({len(vs) + j: Var(a) for j, a in enumerate(aux)})
        return substitute(r, mapping)

    and_rep = rep(Node("AND", (Var(0), Var(1))), 2)

    def combine(left: BFormula, right: BFormula) -> BFormula:
        mapping = {0: left, 1: right}
        mapping.update({2 + j: Var(a) for j, a in enumerate(aux)})
        return substitute(and_rep, mapping)

    def tr(lo: int, hi: int) -> tuple[BFormula, int]:
        if hi - lo == 1:
            return clause_rep(clauses[lo]), 0
        mid = lo + (hi - lo) // 2
        left, dl = tr(lo, mid)
        right, dr = tr(mid, hi)
        return combine(left, right), 1 + max(dl, dr)

    phi, depth = tr(0, len(clauses))
    return Assembly(phi, direct.num_vars, direct, depth)


# ---------------------------------------------------------------------------
# file formats


def parse_functions(text: str, source: str = "<functions>") -> dict[str, BoolFunction]:
    out: dict[str, BoolFunction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"function\s+(\S+)\s+arity=(\d+)\s+table=([01]*)", line)
        if not m:
            raise InputError(f"{source}:{lineno}: expected 'function NAME arity=K table=BITS'", lineno, source)
        name, arity, table = m.group(1), int(m.group(2)), m.group(3)
        if name in out:
            raise InputError(f"{source}:{lineno}: duplicate function {name}", lineno, source)
        try:
            out[name] = BoolFunction.from_table(name, arity, table)
        except InputError as exc:
            raise InputError(f"{source}:{lineno}: {exc}", lineno, source) from None
    if not out:
        raise InputError(f"{source}: no functions", None, source)
    return out


def format_functions(B: Mapping[str, BoolFunction]) -> str:
    return "".join(str(f) + "\n" for f in B.values())


def clone_report(B: Mapping[str, BoolFunction]) -> dict:
    fs = list(B.values())
    c = clone_of(fs)
    return {
        "clone": str(c),
        "verdict_bf": verdict_bf(fs),
        "verdict_qbf": verdict_qbf(fs),
        "functions": {f.name: {
            "arity": f.arity, "table": f.table_string(),
            "properties": {p: function_property(f, p) for p in PROPERTIES if "degree" not in p},
            "separation_degree": {str(c_): (None if (d := separation_degree(f, c_)) == INF else int(d))
                                  for c_ in (0, 1)},
        } for f in fs},
    }
