"""Boolean relations stored as membership bitsets over {0,1}^n.

Assignments are encoded as integers with variable 1 as the most significant
bit, so for arity 3 the vector ``100`` is the integer 4.  Every module and
file format uses this convention.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InputError
from .limits import require

# ---------------------------------------------------------------------------
# vectors


def vec_to_str(value: int, n: int) -> str:
    return format(value, f"0{n}b") if n else ""


def str_to_vec(text: str) -> int:
    if any(ch not in "01" for ch in text):
        raise InputError(f"not a 0/1 string: {text!r}")
    return int(text, 2) if text else 0


def bit_of(value: int, var: int, n: int) -> int:
    """Value of 0-based coordinate ``var`` in an ``n``-bit vector."""
    return (value >> (n - 1 - var)) & 1


def hamming(a: int, b: int) -> int:
    return (a ^ b).bit_count()


# ---------------------------------------------------------------------------
# terms used when pulling a relation back along an argument map


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self) -> None:
        if self.value not in (0, 1):
            raise ValueError("constant must be 0 or 1")

    def __repr__(self) -> str:
        return f"Const({self.value})"


ZERO = Const(0)
ONE = Const(1)

Term = Union[int, Const]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """An ``arity``-ary Boolean relation; bit ``a`` of ``bits`` is set iff vector ``a`` is a member."""

    arity: int
    bits: int
    _table: np.ndarray | None = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise InputError("arity must be non-negative")
        require("relation arity", self.arity, "enumeration")
        if self.bits < 0 or self.bits >> (1 << self.arity):
            raise InputError(f"bitset does not fit arity {self.arity}")

    # -- construction -----------------------------------------------------
    @classmethod
    def from_table(cls, arity: int, table: np.ndarray) -> "Relation":
        table = np.asarray(table, dtype=bool)
        if table.shape != (1 << arity,):
            raise InputError("table length must be 2^arity")
        packed = np.packbits(table, bitorder="little").tobytes()
        rel = cls(arity, int.from_bytes(packed, "little"))
        object.__setattr__(rel, "_table", table.copy())
        rel._table.flags.writeable = False
        return rel

    @classmethod
    def from_members(cls, arity: int, members: Iterable[int]) -> "Relation":
        bits = 0
        for m in members:
            if not 0 <= m < (1 << arity):
                raise InputError(f"member {m} out of range for arity {arity}")
            bits |= 1 << m
        return cls(arity, bits)

    @classmethod
    def from_strings(cls, strings: Iterable[str], arity: int | None = None) -> "Relation":
        strings = list(strings)
        if arity is None:
            if not strings:
                raise InputError("cannot infer the arity of an empty member list")
            arity = len(strings[0])
        seen: set[str] = set()
        for s in strings:
            if len(s) != arity:
                raise InputError(f"member {s!r} does not have length {arity}")
            if s in seen:
                raise InputError(f"duplicate member {s!r}")
            seen.add(s)
        return cls.from_members(arity, (str_to_vec(s) for s in strings))

    @classmethod
    def full(cls, arity: int) -> "Relation":
        return cls(arity, (1 << (1 << arity)) - 1)

    @classmethod
    def empty(cls, arity: int) -> "Relation":
        return cls(arity, 0)

    @classmethod
    def from_predicate(cls, arity: int, pred) -> "Relation":
        """Relation of all vectors (as bit tuples) satisfying ``pred``."""
        members = [v for v in range(1 << arity)
                   if pred(tuple(bit_of(v, i, arity) for i in range(arity)))]
        return cls.from_members(arity, members)

    # -- views ------------------------------------------------------------
    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            size = 1 << self.arity
            nbytes = max(1, (size + 7) // 8)
            raw = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
            table = np.unpackbits(raw, bitorder="little")[:size].astype(bool)
            table.flags.writeable = False
            object.__setattr__(self, "_table", table)
        return self._table

    @cached_property
    def members(self) -> np.ndarray:
        """Members as sorted int64 array."""
        return np.flatnonzero(self.table).astype(np.int64)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, vector: int | str) -> bool:
        if isinstance(vector, str):
            if len(vector) != self.arity:
                return False
            vector = str_to_vec(vector)
        return 0 <= vector < (1 << self.arity) and bool((self.bits >> vector) & 1)

    def __iter__(self):
        return iter(int(m) for m in self.members)

    def is_empty(self) -> bool:
        return self.bits == 0

    def to_strings(self) -> list[str]:
        return [vec_to_str(int(m), self.arity) for m in self.members]

    def __str__(self) -> str:
        return "{" + " ".join(self.to_strings()) + "}"

    # -- set algebra --------------------------------------------------------
    def _same_arity(self, other: "Relation") -> None:
        if self.arity != other.arity:
            raise InputError("relations have different arities")

    def __or__(self, other: "Relation") -> "Relation":
        self._same_arity(other)
        return Relation(self.arity, self.bits | other.bits)

    def __and__(self, other: "Relation") -> "Relation":
        self._same_arity(other)
        return Relation(self.arity, self.bits & other.bits)

    def complement(self) -> "Relation":
        return Relation(self.arity, ((1 << (1 << self.arity)) - 1) ^ self.bits)

    def flip(self, mask: int | None = None) -> "Relation":
        """Relation ``{a xor mask : a in R}``; default mask flips every coordinate."""
        if mask is None:
            mask = (1 << self.arity) - 1
        idx = np.arange(1 << self.arity, dtype=np.int64) ^ mask
        return Relation.from_table(self.arity, self.table[idx])

    def permute(self, order: Sequence[int]) -> "Relation":
        """New relation whose coordinate ``k`` is old coordinate ``order[k]`` (0-based)."""
        if sorted(order) != list(range(self.arity)):
            raise InputError("not a permutation")
        inverse = [0] * self.arity
        for new, old in enumerate(order):
            inverse[old] = new
        return pullback(self, inverse, self.arity)

    def product(self, other: "Relation") -> "Relation":
        """Cartesian product; coordinates of ``self`` come first."""
        table = np.logical_and.outer(self.table, other.table).reshape(-1)
        return Relation.from_table(self.arity + other.arity, table)


# ---------------------------------------------------------------------------
# minors


def pullback(rel: Relation, terms: Sequence[Term], new_arity: int) -> Relation:
    """The ``new_arity``-ary relation ``{b : (t_1(b), ..., t_k(b)) in rel}``.

    Each term is a 0-based coordinate of ``b`` or a constant.  Identification,
    substitution, permutation and constraint application are all special
    cases.
    """
    if len(terms) != rel.arity:
        raise InputError(f"expected {rel.arity} terms, got {len(terms)}")
    require("relation arity", new_arity, "enumeration")
    k = rel.arity
    b = np.arange(1 << new_arity, dtype=np.int64)
    idx = np.zeros_like(b)
    for pos, term in enumerate(terms):
        shift = k - 1 - pos
        if isinstance(term, Const):
            if term.value:
                idx |= 1 << shift
        else:
            if not 0 <= term < new_arity:
                raise InputError(f"term {term} out of range")
            idx |= ((b >> (new_arity - 1 - term)) & 1) << shift
    return Relation.from_table(new_arity, rel.table[idx])


def _check_index(rel: Relation, i: int) -> None:
    if not 1 <= i <= rel.arity:
        raise InputError(f"variable index {i} out of range 1..{rel.arity}")


def identify(rel: Relation, i: int, j: int) -> Relation:
    """Keep members with ``a_i = a_j`` and drop coordinate ``j`` (1-based, ``i < j``)."""
    _check_index(rel, i)
    _check_index(rel, j)
    if not i < j:
        raise InputError("identify requires i < j")
    terms = []
    for c in range(rel.arity):
        if c < j - 1:
            terms.append(c)
        elif c == j - 1:
            terms.append(i - 1)
        else:
            terms.append(c - 1)
    return pullback(rel, terms, rel.arity - 1)


def substitute(rel: Relation, i: int, value: int) -> Relation:
    """Fix coordinate ``i`` (1-based) to ``value`` and drop it."""
    _check_index(rel, i)
    if value not in (0, 1):
        raise InputError("constant must be 0 or 1")
    terms: list[Term] = []
    for c in range(rel.arity):
        if c < i - 1:
            terms.append(c)
        elif c == i - 1:
            terms.append(Const(value))
        else:
            terms.append(c - 1)
    return pullback(rel, terms, rel.arity - 1)


def exists_project(rel: Relation, i: int) -> Relation:
    return substitute(rel, i, 0) | substitute(rel, i, 1)


def forall_restrict(rel: Relation, i: int) -> Relation:
    return substitute(rel, i, 0) & substitute(rel, i, 1)


def project(rel: Relation, coords: Sequence[int]) -> Relation:
    """Projection onto the given 0-based coordinates, in the given order."""
    m = len(coords)
    out = np.zeros(1 << m, dtype=bool)
    members = rel.members
    idx = np.zeros_like(members)
    for pos, c in enumerate(coords):
        idx |= ((members >> (rel.arity - 1 - c)) & 1) << (m - 1 - pos)
    out[idx] = True
    return Relation.from_table(m, out)


# ---------------------------------------------------------------------------
# operations and closure


@dataclass(frozen=True)
class BooleanOp:
    """A ``k``-ary Boolean function given by its truth table (first input is the MSB of the index)."""

    name: str
    arity: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != 1 << self.arity or any(v not in (0, 1) for v in self.table):
            raise InputError("operation table must be 2^k bits")

    def __call__(self, *bits: int) -> int:
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return self.table[idx]

    def apply_words(self, words: Sequence[np.ndarray], mask: int) -> np.ndarray:
        """Coordinate-wise application to integer-encoded vectors (numpy broadcasting)."""
        out = None
        for pattern, value in enumerate(self.table):
            if not value:
                continue
            term = None
            for pos in range(self.arity):
                w = words[pos] if (pattern >> (self.arity - 1 - pos)) & 1 else (~words[pos] & mask)
                term = w if term is None else (term & w)
            out = term if out is None else (out | term)
        if out is None:
            return np.zeros(np.broadcast_shapes(*(np.shape(w) for w in words)), dtype=np.int64)
        return out


def _op(name: str, arity: int, fn) -> BooleanOp:
    return BooleanOp(name, arity, tuple(int(fn(*bits)) for bits in itertools.product((0, 1), repeat=arity)))


AND = _op("and", 2, lambda x, y: x & y)
OR = _op("or", 2, lambda x, y: x | y)
MAJORITY = _op("majority", 3, lambda x, y, z: (x & y) | (y & z) | (x & z))
MINORITY = _op("xor3", 3, lambda x, y, z: x ^ y ^ z)
AND_OR = _op("x_and_(y_or_z)", 3, lambda x, y, z: x & (y | z))
OR_AND = _op("x_or_(y_and_z)", 3, lambda x, y, z: x | (y & z))

# Budget (number of member tuples) for the direct closure test.
_CLOSURE_BUDGET = 1 << 26


def closed_under(rel: Relation, op: BooleanOp, budget: int = _CLOSURE_BUDGET) -> bool:
    """True iff every coordinate-wise image of a ``k``-tuple of members is a member."""
    members = rel.members
    r = len(members)
    if r == 0:
        return True
    k = op.arity
    if r ** k > budget:
        raise OverflowError("closure test over budget")
    mask = (1 << rel.arity) - 1
    table = rel.table
    chunk = max(1, budget // max(1, r ** (k - 1)) // 64) if k > 1 else r
    for start in range(0, r, chunk):
        first = members[start:start + chunk]
        words = [first.reshape((-1,) + (1,) * (k - 1))]
        for pos in range(1, k):
            shape = [1] * k
            shape[pos] = r
            words.append(members.reshape(shape))
        image = op.apply_words(words, mask)
        if not table[image].all():
            return False
    return True


# ---------------------------------------------------------------------------
# a few named relations that are handy everywhere


def relation(*strings: str) -> Relation:
    """Shorthand: ``relation("01", "10")``."""
    return Relation.from_strings(strings)


OR2 = relation("01", "10", "11")
NAND2 = relation("00", "01", "10")
NAE3 = Relation.full(3) & Relation.from_members(3, [0, 7]).complement()
M_REL = relation("000", "001", "010", "101", "111")
