"""Constraint formulas over a named relation set, with optional quantifier prefix.

Variables are 0-based internally; the text format writes them as ``x1..xn``.
Assignments are integers over the free variables (in ascending index order),
first free variable as most significant bit.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

import networkx as nx
import numpy as np

from . import gf2, implicates
from .errors import CapExceeded, InputError, MethodInapplicable
from .implicates import Clause
from .limits import limits, require
from .properties import Prop, check_property
from .relation import Const, Relation, Term, exists_project, forall_restrict, pullback, vec_to_str

METHODS = ("two-sat", "horn", "dual-horn", "affine", "brute")


# ---------------------------------------------------------------------------
# data model


@dataclass(frozen=True)
class RelationSet:
    entries: tuple[tuple[str, Relation], ...] = ()

    def __post_init__(self) -> None:
        names = [n for n, _ in self.entries]
        if len(set(names)) != len(names):
            raise InputError("duplicate relation name")

    @classmethod
    def of(cls, mapping: Mapping[str, Relation] | Iterable[tuple[str, Relation]]) -> "RelationSet":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        return cls(tuple(items))

    @cached_property
    def _map(self) -> dict[str, Relation]:
        return dict(self.entries)

    def __getitem__(self, name: str) -> Relation:
        try:
            return self._map[name]
        except KeyError:
            raise InputError(f"unknown relation name {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._map

    def __len__(self) -> int:
        return len(self.entries)

    def names(self) -> list[str]:
        return [n for n, _ in self.entries]

    def relations(self) -> list[Relation]:
        return [r for _, r in self.entries]

    def items(self) -> list[tuple[str, Relation]]:
        return list(self.entries)

    def merged(self, other: "RelationSet") -> "RelationSet":
        out = dict(self.entries)
        for name, rel in other.entries:
            if name in out and out[name] != rel:
                raise InputError(f"conflicting definitions of relation {name!r}")
            out[name] = rel
        return RelationSet(tuple(out.items()))


@dataclass(frozen=True)
class Constraint:
    name: str
    args: tuple[Term, ...]

    def variables(self) -> tuple[int, ...]:
        return tuple(sorted({a for a in self.args if not isinstance(a, Const)}))

    def has_constants(self) -> bool:
        return any(isinstance(a, Const) for a in self.args)

    def __str__(self) -> str:
        return self.name + "(" + ",".join(_term_text(a) for a in self.args) + ")"


def _term_text(t: Term) -> str:
    return str(t.value) if isinstance(t, Const) else f"x{t + 1}"


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    relations: RelationSet
    constraints: tuple[Constraint, ...]
    constants: bool = False
    prefix: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if self.num_vars < 0:
            raise InputError("negative variable count")
        for c in self.constraints:
            rel = self.relations[c.name]
            if len(c.args) != rel.arity:
                raise InputError(f"constraint {c}: relation {c.name} has arity {rel.arity}")
            for a in c.args:
                if isinstance(a, Const):
                    if not self.constants:
                        raise InputError("constant in CNF(S) formula")
                elif not 0 <= a < self.num_vars:
                    raise InputError(f"variable x{a + 1} out of range")
        bound = [v for _, v in self.prefix]
        if len(set(bound)) != len(bound):
            raise InputError("bound variables must be distinct")
        for q, v in self.prefix:
            if q not in ("exists", "forall"):
                raise InputError(f"unknown quantifier {q!r}")
            if not 0 <= v < self.num_vars:
                raise InputError(f"bound variable x{v + 1} out of range")

    @classmethod
    def build(cls, num_vars: int, relations: RelationSet | Mapping[str, Relation],
              constraints: Iterable[tuple[str, Sequence[Term]]], constants: bool = False,
              prefix: Iterable[tuple[str, int]] = ()) -> "CnfFormula":
        if not isinstance(relations, RelationSet):
            relations = RelationSet.of(relations)
        cons = tuple(Constraint(name, tuple(args)) for name, args in constraints)
        return cls(num_vars, relations, cons, constants, tuple(prefix))

    @property
    def bound_vars(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.prefix)

    @property
    def free_vars(self) -> tuple[int, ...]:
        bound = set(self.bound_vars)
        return tuple(v for v in range(self.num_vars) if v not in bound)

    @property
    def is_quantified(self) -> bool:
        return bool(self.prefix)

    def uses_constants(self) -> bool:
        return any(c.has_constants() for c in self.constraints)

    def matrix(self) -> "CnfFormula":
        return replace(self, prefix=())

    def used_relations(self) -> RelationSet:
        names = []
        for c in self.constraints:
            if c.name not in names:
                names.append(c.name)
        return RelationSet(tuple((n, self.relations[n]) for n in self.relations.names() if n in names))

    def with_constraints(self, extra: Iterable[tuple[str, Sequence[Term]]],
                         relations: RelationSet | None = None, num_vars: int | None = None) -> "CnfFormula":
        rels = self.relations if relations is None else self.relations.merged(relations)
        cons = self.constraints + tuple(Constraint(n, tuple(a)) for n, a in extra)
        return CnfFormula(self.num_vars if num_vars is None else num_vars, rels, cons,
                          self.constants, self.prefix)

    def __str__(self) -> str:
        body = " & ".join(str(c) for c in self.constraints) or "true"
        quant = " ".join(f"{'E' if q == 'exists' else 'A'}x{v + 1}" for q, v in self.prefix)
        return f"{quant} {body}".strip()


# ---------------------------------------------------------------------------
# text formats

_REL_HEADER = re.compile(r"^relation\s+(\S+)\s+arity=(\d+)$")
_FORMULA_HEADER = re.compile(r"^formula\s+vars=(\d+)\s+constants=(true|false)$")
_VAR = re.compile(r"^x([1-9]\d*)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_relation_set(text: str, source: str = "<text>") -> RelationSet:
    """Parse one or more ``relation NAME arity=n`` blocks."""
    entries: list[tuple[str, Relation]] = []
    name: str | None = None
    arity = 0
    members: list[str] = []
    start_line = 0

    def flush() -> None:
        if name is None:
            return
        entries.append((name, _make_relation(name, arity, members, start_line, source)))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        m = _REL_HEADER.match(line)
        if m:
            flush()
            name, arity = m.group(1), int(m.group(2))
            if arity < 1:
                raise InputError("arity must be at least 1", lineno, source)
            require("relation arity", arity, "enumeration")
            members, start_line = [], lineno
            continue
        if name is None:
            raise InputError(f"expected a relation header, got {line!r}", lineno, source)
        if len(line) != arity or any(ch not in "01" for ch in line):
            raise InputError(f"member {line!r} is not a 0/1 string of length {arity}", lineno, source)
        if line in members:
            raise InputError(f"duplicate member {line}", lineno, source)
        members.append(line)
    flush()
    if not entries:
        raise InputError("no relation defined", None, source)
    try:
        return RelationSet(tuple(entries))
    except InputError as exc:
        raise InputError(str(exc), None, source) from None


def _make_relation(name: str, arity: int, members: list[str], line: int, source: str) -> Relation:
    return Relation.from_members(arity, (int(s, 2) for s in members))


def format_relation_set(rels: RelationSet) -> str:
    out = []
    for name, rel in rels.entries:
        out.append(f"relation {name} arity={rel.arity}")
        out.extend(rel.to_strings())
    return "\n".join(out) + "\n"


def parse_formula(text: str, relations: RelationSet | None = None, source: str = "<text>",
                  base_dir: str | Path | None = None,
                  loader: Callable[[str], str] | None = None) -> CnfFormula:
    """Parse the ``.cnfs`` format.

    ``use FILE`` lines are resolved relative to ``base_dir`` (or through
    ``loader``, which maps the name to file text).
    """
    rels = relations if relations is not None else RelationSet()
    header = None
    prefix: list[tuple[str, int]] = []
    raw_constraints: list[tuple[int, str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        words = line.split()
        if header is None:
            m = _FORMULA_HEADER.match(" ".join(words))
            if not m:
                raise InputError("expected 'formula vars=<n> constants=<true|false>'", lineno, source)
            header = (int(m.group(1)), m.group(2) == "true")
            continue
        kw = words[0]
        if kw == "use":
            if len(words) != 2:
                raise InputError("use takes one file name", lineno, source)
            if loader is not None:
                rel_text = loader(words[1])
            else:
                path = Path(base_dir or ".") / words[1]
                try:
                    rel_text = path.read_text()
                except OSError as exc:
                    raise InputError(f"cannot read {words[1]}: {exc.strerror}", lineno, source) from None
            rels = rels.merged(parse_relation_set(rel_text, words[1]))
        elif kw in ("exists", "forall"):
            if raw_constraints:
                raise InputError("quantifier after constraints", lineno, source)
            for w in words[1:]:
                prefix.append((kw, _parse_var(w, lineno, source)))
            if len(words) < 2:
                raise InputError(f"{kw} needs a variable", lineno, source)
        elif kw == "constraint":
            if len(words) < 2:
                raise InputError("constraint needs a relation name", lineno, source)
            raw_constraints.append((lineno, words[1], words[2:]))
        else:
            raise InputError(f"unknown directive {kw!r}", lineno, source)
    if header is None:
        raise InputError("missing formula header", None, source)
    n, consts = header
    constraints = []
    for lineno, name, args in raw_constraints:
        if name not in rels:
            raise InputError(f"unknown relation name {name!r}", lineno, source)
        terms: list[Term] = []
        for a in args:
            if a in ("0", "1"):
                if not consts:
                    raise InputError("constant in CNF(S) formula", lineno, source)
                terms.append(Const(int(a)))
            else:
                terms.append(_parse_var(a, lineno, source))
        if len(terms) != rels[name].arity:
            raise InputError(f"relation {name} has arity {rels[name].arity}, got {len(terms)} arguments",
                             lineno, source)
        for t in terms:
            if not isinstance(t, Const) and t >= n:
                raise InputError(f"variable x{t + 1} out of range 1..{n}", lineno, source)
        constraints.append(Constraint(name, tuple(terms)))
    try:
        return CnfFormula(n, rels, tuple(constraints), consts, tuple(prefix))
    except InputError as exc:
        raise InputError(str(exc), None, source) from None


def _parse_var(word: str, lineno: int, source: str) -> int:
    m = _VAR.match(word)
    if not m:
        raise InputError(f"bad variable {word!r}", lineno, source)
    return int(m.group(1)) - 1


def format_formula(phi: CnfFormula, use: Sequence[str] = ()) -> str:
    lines = [f"formula vars={phi.num_vars} constants={'true' if phi.constants else 'false'}"]
    lines += [f"use {u}" for u in use]
    lines += [f"{q} x{v + 1}" for q, v in phi.prefix]
    for c in phi.constraints:
        lines.append("constraint " + " ".join([c.name] + [_term_text(a) for a in c.args]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# evaluation


def _matrix_eval(phi: CnfFormula, assignments: np.ndarray) -> np.ndarray:
    """Evaluate the quantifier-free matrix on full assignments (ints over all variables)."""
    n = phi.num_vars
    ok = np.ones(len(assignments), dtype=bool)
    for c in phi.constraints:
        rel = phi.relations[c.name]
        k = rel.arity
        idx = np.zeros(len(assignments), dtype=np.int64)
        for pos, t in enumerate(c.args):
            shift = k - 1 - pos
            if isinstance(t, Const):
                if t.value:
                    idx |= 1 << shift
            else:
                idx |= ((assignments >> (n - 1 - t)) & 1) << shift
        ok &= rel.table[idx]
    return ok


def _embed(free_values: np.ndarray, free: Sequence[int], n: int) -> np.ndarray:
    """Spread integers over the free variables into full-assignment integers."""
    m = len(free)
    full = np.zeros_like(free_values)
    for pos, v in enumerate(free):
        full |= ((free_values >> (m - 1 - pos)) & 1) << (n - 1 - v)
    return full


def _parse_assignment(a: int | str | Sequence[int], length: int) -> int:
    if isinstance(a, str):
        if len(a) != length or any(ch not in "01" for ch in a):
            raise InputError(f"assignment must be a 0/1 string of length {length}")
        return int(a, 2) if a else 0
    if isinstance(a, (int, np.integer)):
        if not 0 <= a < (1 << length):
            raise InputError("assignment out of range")
        return int(a)
    bits = list(a)
    if len(bits) != length:
        raise InputError(f"assignment must have length {length}")
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def evaluate(phi: CnfFormula, a: int | str | Sequence[int]) -> bool:
    free = phi.free_vars
    value = _parse_assignment(a, len(free))
    n = phi.num_vars
    full = _embed(np.array([value], dtype=np.int64), free, n)[0]
    if not phi.prefix:
        return bool(_matrix_eval(phi, np.array([full], dtype=np.int64))[0])
    bound = phi.bound_vars
    require("quantified variables", len(bound), "shannon")
    combos = _embed(np.arange(1 << len(bound), dtype=np.int64), bound, n) | full
    values = _matrix_eval(phi, combos).reshape((2,) * len(bound))
    for q, _ in reversed(phi.prefix):
        values = values.any(axis=-1) if q == "exists" else values.all(axis=-1)
    return bool(values)


def formula_to_relation(phi: CnfFormula) -> Relation:
    """Satisfying assignments of the free variables, quantifiers expanded innermost first."""
    n = phi.num_vars
    free = phi.free_vars
    require("free variables", len(free), "enumeration")
    if not phi.prefix:
        table = _matrix_eval(phi, np.arange(1 << n, dtype=np.int64))
        return Relation.from_table(n, table)
    require("quantified variables", len(phi.bound_vars), "shannon")
    require("total variables", n, "enumeration")
    rel = Relation.from_table(n, _matrix_eval(phi, np.arange(1 << n, dtype=np.int64)))
    order = list(range(n))   # coordinate -> variable
    for q, v in reversed(phi.prefix):
        pos = order.index(v)
        rel = exists_project(rel, pos + 1) if q == "exists" else forall_restrict(rel, pos + 1)
        order.pop(pos)
    return rel


def constraint_relation(phi: CnfFormula, index: int) -> Relation:
    """Relation of one constraint over its distinct variables, constants substituted."""
    if not 0 <= index < len(phi.constraints):
        raise InputError("constraint index out of range")
    c = phi.constraints[index]
    return _constraint_relation(phi.relations[c.name], c)


def _constraint_relation(rel: Relation, c: Constraint) -> Relation:
    variables = c.variables()
    where = {v: k for k, v in enumerate(variables)}
    terms = [a if isinstance(a, Const) else where[a] for a in c.args]
    return pullback(rel, terms, len(variables))


# ---------------------------------------------------------------------------
# satisfiability


class _Solver:
    """A constraint system compiled once for repeated solving under fixed literals."""

    def __init__(self, phi: CnfFormula, method: str):
        if phi.prefix:
            raise InputError("satisfiability expects a quantifier-free formula")
        if method not in METHODS:
            raise InputError(f"unknown sat method {method!r}")
        self.phi = phi
        self.method = method
        self.n = phi.num_vars
        self.unsat = False
        if method == "brute":
            require("variables", self.n, "enumeration")
            self.table = _matrix_eval(phi, np.arange(1 << self.n, dtype=np.int64))
        elif method == "affine":
            self._compile_affine()
        else:
            flag, family = {"two-sat": (Prop.BIJUNCTIVE, "bijunctive"),
                            "horn": (Prop.HORN, "horn"),
                            "dual-horn": (Prop.DUAL_HORN, "dual-horn")}[method]
            self.clauses: list[Clause] = []
            for c in phi.constraints:
                cr = _constraint_relation(phi.relations[c.name], c)
                if not check_property(cr, flag):
                    raise MethodInapplicable(f"method inapplicable: constraint {c} is not {flag.value}")
                variables = c.variables()
                for cl in implicates.prime_implicates(cr, family):
                    self.clauses.append(Clause(frozenset(variables[i] for i in cl.pos),
                                               frozenset(variables[i] for i in cl.neg)))

    def _compile_affine(self) -> None:
        self.rows: list[int] = []
        self.rhs: list[int] = []
        n = self.n
        for c in self.phi.constraints:
            cr = _constraint_relation(self.phi.relations[c.name], c)
            if not check_property(cr, Prop.AFFINE):
                raise MethodInapplicable(f"method inapplicable: constraint {c} is not Affine")
            system = gf2.affine_hull(cr)
            variables = c.variables()
            m = len(variables)
            if not system.consistent:
                self.unsat = True
                continue
            for row, b in zip(system.rows, system.rhs):
                full = 0
                for k, v in enumerate(variables):
                    if (row >> (m - 1 - k)) & 1:
                        full |= 1 << (n - 1 - v)
                self.rows.append(full)
                self.rhs.append(b)

    def solve(self, fixed: Mapping[int, int] | None = None) -> int | None:
        fixed = dict(fixed or {})
        if self.unsat:
            return None
        if self.method == "brute":
            return self._solve_brute(fixed)
        if self.method == "affine":
            rows = self.rows + [1 << (self.n - 1 - v) for v in fixed]
            rhs = self.rhs + [fixed[v] for v in fixed]
            return gf2.eliminate(self.n, rows, rhs).particular()
        units = [Clause(frozenset({v}), frozenset()) if b else Clause(frozenset(), frozenset({v}))
                 for v, b in fixed.items()]
        clauses = self.clauses + units
        if self.method == "two-sat":
            return two_sat(self.n, clauses)
        if self.method == "horn":
            return horn_minimal_model(self.n, clauses)
        flipped = [Clause(c.neg, c.pos) for c in clauses]
        model = horn_minimal_model(self.n, flipped)
        return None if model is None else model ^ ((1 << self.n) - 1)

    def _solve_brute(self, fixed: Mapping[int, int]) -> int | None:
        ok = self.table
        if fixed:
            vectors = np.arange(1 << self.n, dtype=np.int64)
            ok = ok.copy()
            for v, b in fixed.items():
                ok &= ((vectors >> (self.n - 1 - v)) & 1) == b
        hits = np.flatnonzero(ok)
        return int(hits[0]) if len(hits) else None


def two_sat(n: int, clauses: Iterable[Clause]) -> int | None:
    """2-SAT through strongly connected components of the implication graph."""
    graph = nx.DiGraph()
    lit = lambda v, val: (v, val)  # noqa: E731
    for v in range(n):
        graph.add_node(lit(v, 1))
        graph.add_node(lit(v, 0))
    for c in clauses:
        lits = [(v, 1) for v in c.pos] + [(v, 0) for v in c.neg]
        if not lits:
            return None
        if len(lits) == 1:
            (v, val), = lits
            graph.add_edge((v, 1 - val), (v, val))
        elif len(lits) == 2:
            (a, av), (b, bv) = lits
            graph.add_edge((a, 1 - av), (b, bv))
            graph.add_edge((b, 1 - bv), (a, av))
        else:
            raise MethodInapplicable("clause with more than two literals")
    cond = nx.condensation(graph)
    comp = cond.graph["mapping"]
    order = {c: k for k, c in enumerate(nx.topological_sort(cond))}
    value = 0
    for v in range(n):
        pos, neg = comp[(v, 1)], comp[(v, 0)]
        if pos == neg:
            return None
        if order[pos] > order[neg]:
            value |= 1 << (n - 1 - v)
    return value


def horn_minimal_model(n: int, clauses: Iterable[Clause]) -> int | None:
    """Minimal model of a Horn clause set by counter-based unit propagation."""
    clauses = list(clauses)
    missing = []
    watchers: dict[int, list[int]] = {}
    true: set[int] = set()
    queue: list[int] = []
    for k, c in enumerate(clauses):
        if len(c.pos) > 1:
            raise MethodInapplicable("clause with more than one positive literal")
        missing.append(len(c.neg))
        for v in c.neg:
            watchers.setdefault(v, []).append(k)
        if not c.neg:
            if not c.pos:
                return None
            queue.extend(c.pos)
    while queue:
        v = queue.pop()
        if v in true:
            continue
        true.add(v)
        for k in watchers.get(v, ()):
            missing[k] -= 1
            if missing[k] == 0:
                if not clauses[k].pos:
                    return None
                queue.extend(clauses[k].pos)
    value = 0
    for v in true:
        value |= 1 << (n - 1 - v)
    return value


def satisfiable(phi: CnfFormula, method: str = "brute", fixed: Mapping[int, int] | None = None) -> int | None:
    """A satisfying assignment (int over all variables) or None."""
    return _Solver(phi, method).solve(fixed)


def project_to_vars(phi: CnfFormula, variables: Sequence[int], method: str = "brute") -> Relation:
    """Projection onto ``variables`` (in the given order) via one SAT call per assignment."""
    m = len(variables)
    require("projection variables", m, "projection")
    if len(set(variables)) != m or any(not 0 <= v < phi.num_vars for v in variables):
        raise InputError("projection variables must be distinct and in range")
    solver = _Solver(phi, method)
    if method == "brute":
        full = np.flatnonzero(solver.table).astype(np.int64)
        out = np.zeros(1 << m, dtype=bool)
        idx = np.zeros_like(full)
        for pos, v in enumerate(variables):
            idx |= ((full >> (phi.num_vars - 1 - v)) & 1) << (m - 1 - pos)
        out[idx] = True
        return Relation.from_table(m, out)
    members = []
    for a in range(1 << m):
        fixed = {v: (a >> (m - 1 - pos)) & 1 for pos, v in enumerate(variables)}
        if solver.solve(fixed) is not None:
            members.append(a)
    return Relation.from_members(m, members)


def assignment_str(value: int, n: int) -> str:
    return vec_to_str(value, n)
