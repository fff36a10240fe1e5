"""Horn formulas as units, implication clauses and restraint clauses.

Implication closure here is forward chaining (positive units plus
implication clauses whose bodies are already derived).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import implicates
from .errors import InputError, PreconditionError
from .formula import CnfFormula, RelationSet, _constraint_relation
from .implicates import Clause
from .limits import require
from .properties import Prop, check_property
from .relation import Relation


@dataclass(frozen=True)
class HornStructure:
    num_vars: int
    units: frozenset[int] = frozenset()
    implications: tuple[tuple[int, frozenset[int]], ...] = ()
    restraints: tuple[frozenset[int], ...] = ()

    def __post_init__(self) -> None:
        for head, body in self.implications:
            if not body:
                raise InputError("implication clause with empty body")
            if head in body:
                raise InputError("tautological implication clause")

    @classmethod
    def from_clauses(cls, num_vars: int, clauses: Iterable[Clause]) -> "HornStructure":
        units: list[int] = []
        impls: list[tuple[int, frozenset[int]]] = []
        restraints: list[frozenset[int]] = []
        for c in clauses:
            if len(c.pos) > 1:
                raise PreconditionError(f"clause {c} is not Horn")
            if c.pos & c.neg:
                continue  # tautology
            if not c.pos:
                if c.neg not in restraints:
                    restraints.append(frozenset(c.neg))
            elif not c.neg:
                (v,) = c.pos
                if v not in units:
                    units.append(v)
            else:
                (v,) = c.pos
                item = (v, frozenset(c.neg))
                if item not in impls:
                    impls.append(item)
        return cls(num_vars, frozenset(units), tuple(impls), tuple(restraints))

    @classmethod
    def from_formula(cls, phi: CnfFormula) -> "HornStructure":
        """Clause form of a quantifier-free Horn formula; constants are substituted away."""
        clauses: list[Clause] = []
        for c in phi.constraints:
            cr = _constraint_relation(phi.relations[c.name], c)
            if not check_property(cr, Prop.HORN):
                raise PreconditionError(f"constraint {c} is not Horn")
            variables = c.variables()
            for cl in implicates.prime_implicates(cr, "horn"):
                clauses.append(Clause(frozenset(variables[i] for i in cl.pos),
                                      frozenset(variables[i] for i in cl.neg)))
        return cls.from_clauses(phi.num_vars, clauses)

    def clauses(self) -> list[Clause]:
        out = [Clause(frozenset({u}), frozenset()) for u in sorted(self.units)]
        out += [Clause(frozenset({h}), b) for h, b in self.implications]
        out += [Clause(frozenset(), r) for r in self.restraints]
        return out

    def to_relation(self) -> Relation:
        require("variables", self.num_vars, "enumeration")
        return implicates.clauses_relation(self.num_vars, self.clauses())

    def to_formula(self, name_prefix: str = "H") -> CnfFormula:
        """A constant-free formula with one relation per clause shape."""
        rels: dict[str, Relation] = {}
        cons: list[tuple[str, list[int]]] = []
        for c in self.clauses():
            variables = sorted(c.variables())
            local = Clause(frozenset(variables.index(v) for v in c.pos),
                           frozenset(variables.index(v) for v in c.neg))
            rel = implicates.clauses_relation(len(variables), [local])
            name = f"{name_prefix}{len(local.pos)}_{len(variables)}_" + "".join(
                "p" if k in local.pos else "n" for k in range(len(variables)))
            rels[name] = rel
            cons.append((name, variables))
        return CnfFormula.build(self.num_vars, RelationSet.of(rels), cons)

    def without_vars_forced(self) -> tuple["HornStructure", frozenset[int]]:
        """Assign every variable forced by unit propagation to 1 and drop it.

        Returns the reduced structure and the forced set.  Restraints that
        become empty stay as empty restraints (the formula is unsatisfiable).
        """
        forced = imp(self, frozenset())
        impls = []
        for head, body in self.implications:
            if head in forced:
                continue
            rest = body - forced
            impls.append((head, rest))
        restraints = tuple(r - forced for r in self.restraints)
        return HornStructure(self.num_vars, frozenset(), tuple(impls), restraints), forced


def imp(h: HornStructure, start: Iterable[int],
        skip: int | None = None) -> frozenset[int]:
    """Forward-chaining closure of ``start`` plus the units.

    ``skip`` omits the implication clause at that index (used by rule (c)).
    """
    known = set(start) | set(h.units)
    pending = [k for k in range(len(h.implications)) if k != skip]
    changed = True
    while changed:
        changed = False
        still = []
        for k in pending:
            head, body = h.implications[k]
            if head in known:
                continue
            if body <= known:
                known.add(head)
                changed = True
            else:
                still.append(k)
        pending = still
    return frozenset(known)


def contains_restraint(h: HornStructure, u: frozenset[int]) -> bool:
    return any(r <= u for r in h.restraints)


def nu_normal_form(h: HornStructure) -> HornStructure:
    """Apply simplification rules (c), (d), (e) to a fixpoint.

    Rules (a) and (b) (constants and repeated literals) are already handled by
    the clause representation.  Rules are tried in order, clauses in input
    order, restarting after each change.
    """
    units = h.units
    impls = list(h.implications)
    restraints = list(h.restraints)
    while True:
        cur = HornStructure(h.num_vars, units, tuple(impls), tuple(restraints))
        changed = False
        # (c) redundant implication clause
        for k, (head, body) in enumerate(impls):
            if head in imp(cur, body, skip=k):
                impls.pop(k)
                changed = True
                break
        if changed:
            continue
        # (d) body reaches a restraint set: the clause collapses to its negative part
        for k, (head, body) in enumerate(impls):
            if contains_restraint(cur, imp(cur, body | {head})):
                impls.pop(k)
                if body not in restraints:
                    restraints.append(body)
                changed = True
                break
        if changed:
            continue
        # (e) drop a negated variable implied by the rest of the body
        for k, (head, body) in enumerate(impls):
            if len(body) < 2:
                continue
            for y in sorted(body):
                if y in imp(cur, body - {y}):
                    impls[k] = (head, body - {y})
                    changed = True
                    break
            if changed:
                break
        if changed:
            continue
        for k, body in enumerate(restraints):
            for y in sorted(body):
                if y in imp(cur, body - {y}):
                    restraints[k] = body - {y}
                    changed = True
                    break
            if changed:
                break
        if not changed:
            break
    # duplicates may appear after (e)
    dedup_impls: list[tuple[int, frozenset[int]]] = []
    for item in impls:
        if item not in dedup_impls:
            dedup_impls.append(item)
    dedup_res: list[frozenset[int]] = []
    for r in restraints:
        if r not in dedup_res:
            dedup_res.append(r)
    return HornStructure(h.num_vars, units, tuple(dedup_impls), tuple(dedup_res))


def largest_self_implicating_set(h: HornStructure) -> frozenset[int]:
    """Union of all self-implicating sets, by repeatedly removing unsupported variables."""
    u = set(range(h.num_vars))
    changed = True
    while changed:
        changed = False
        for x in sorted(u):
            if x in h.units:
                continue
            if not any(head == x and body <= u for head, body in h.implications):
                u.discard(x)
                changed = True
    return frozenset(u)


def is_self_implicating(h: HornStructure, u: Iterable[int]) -> bool:
    u = frozenset(u)
    return all(x in imp(h, u - {x}) for x in u)


def maximal_self_implicating_sets(h: HornStructure) -> list[frozenset[int]]:
    """Nonempty sets ``U`` that are self-implicating and closed (``U = Imp(U)``), ordered by bitmask."""
    n = h.num_vars
    require("self-implicating-set variables", n, "self_implicating_vars")
    masks = np.arange(1 << n, dtype=np.int64)
    closed = np.ones(1 << n, dtype=bool)
    supported = np.zeros((n, 1 << n), dtype=bool)
    bit = lambda v: np.int64(1) << (n - 1 - v)  # noqa: E731
    for u in h.units:
        closed &= (masks & bit(u)) != 0
        supported[u] = True
    for head, body in h.implications:
        bm = np.int64(0)
        for v in body:
            bm |= bit(v)
        inside = (masks & bm) == bm
        closed &= ~inside | ((masks & bit(head)) != 0)
        supported[head] |= inside
    self_imp = np.ones(1 << n, dtype=bool)
    for v in range(n):
        self_imp &= ((masks & bit(v)) == 0) | supported[v]
    hits = np.flatnonzero(closed & self_imp)
    out = []
    for m in hits:
        if m == 0:
            continue
        out.append(frozenset(v for v in range(n) if (int(m) >> (n - 1 - v)) & 1))
    return out


def set_to_vector(u: Iterable[int], n: int) -> int:
    value = 0
    for v in u:
        value |= 1 << (n - 1 - v)
    return value


def horn_disconnected(h: HornStructure) -> bool:
    """Whether a unit-free Horn formula has a disconnected solution graph."""
    if h.units:
        raise PreconditionError("assign positive units before testing connectivity")
    if any(not r for r in h.restraints):
        return False   # unsatisfiable
    if not h.restraints:
        return bool(largest_self_implicating_set(h))
    return any(not contains_restraint(h, u) for u in maximal_self_implicating_sets(h))


def _flip_formula(phi: CnfFormula) -> CnfFormula:
    from .relation import Const
    rels = RelationSet(tuple((n, r.flip()) for n, r in phi.relations.entries))
    cons = tuple(type(c)(c.name, tuple(Const(1 - a.value) if isinstance(a, Const) else a for a in c.args))
                 for c in phi.constraints)
    return CnfFormula(phi.num_vars, rels, cons, phi.constants, phi.prefix)


def flip_formula(phi: CnfFormula) -> CnfFormula:
    """Formula whose solutions are the complements of ``phi``'s solutions."""
    return _flip_formula(phi)


def implicative_polarity(phi: CnfFormula) -> str | None:
    """'horn' if every constraint relation is Horn and 1-valid, 'dual' for dual Horn and 0-valid."""
    crs = [_constraint_relation(phi.relations[c.name], c) for c in phi.constraints]
    if all(check_property(r, Prop.HORN) and check_property(r, Prop.ONE_VALID) for r in crs):
        return "horn"
    if all(check_property(r, Prop.DUAL_HORN) and check_property(r, Prop.ZERO_VALID) for r in crs):
        return "dual"
    return None


def implicative_conn(phi: CnfFormula) -> bool:
    """Connectivity for Horn 1-valid (or dual Horn 0-valid) constraints in polynomial time."""
    if phi.prefix:
        raise PreconditionError("implicative connectivity expects a quantifier-free formula")
    polarity = implicative_polarity(phi)
    if polarity is None:
        raise PreconditionError("constraints are neither all Horn and 1-valid nor all dual Horn and 0-valid")
    if polarity == "dual":
        phi = _flip_formula(phi)
    h = HornStructure.from_formula(phi)
    if h.restraints:
        raise PreconditionError("1-valid Horn relations cannot yield restraint clauses")
    reduced, _ = h.without_vars_forced()
    return not largest_self_implicating_set(reduced)


def ihsb_minus_qconn_condition(h: HornStructure, free_vars: Iterable[int]) -> bool:
    """True (disconnected) iff free x != y imply each other and Imp(x) has no restraint set."""
    free = sorted(set(free_vars))
    free_set = set(free)
    closures = {x: imp(h, {x}) for x in free}
    for x in free:
        ix = closures[x]
        if contains_restraint(h, ix):
            continue
        for y in sorted(ix & free_set):
            if y != x and x in closures[y]:
                return True
    return False


def _is_ihsb_minus_set(phi: CnfFormula) -> bool:
    return all(check_property(_constraint_relation(phi.relations[c.name], c), Prop.IHSB_MINUS)
               for c in phi.constraints)


def existential_ihsb_conn(phi: CnfFormula) -> bool:
    """Connectivity of an existentially quantified IHSB- (or, by flipping, IHSB+) formula.

    Positive units are assigned first; the condition is then checked on the
    matrix with every variable (bound ones included) taking part in Imp.
    """
    if any(q != "exists" for q, _ in phi.prefix):
        raise PreconditionError("only existential prefixes are supported")
    if not _is_ihsb_minus_set(phi):
        flipped = _flip_formula(phi)
        if not _is_ihsb_minus_set(flipped):
            raise PreconditionError("constraints are neither IHSB- nor IHSB+")
        phi = flipped
    h = HornStructure.from_formula(phi.matrix())
    if any(not r for r in h.restraints):
        return True
    forced = imp(h, frozenset())
    if contains_restraint(h, forced):
        return True   # unsatisfiable
    reduced, _ = h.without_vars_forced()
    free = [v for v in phi.free_vars if v not in forced]
    return not ihsb_minus_qconn_condition(reduced, free)


def horn_synthesis(rel: Relation) -> HornStructure:
    """Horn prime implicates of a Horn relation, as a structure over its coordinates."""
    if not check_property(rel, Prop.HORN):
        raise PreconditionError("relation is not Horn")
    return HornStructure.from_clauses(rel.arity, implicates.prime_implicates(rel, "horn"))


def to_dot(h: HornStructure, names: Sequence[str] | None = None) -> str:
    """Directed hypergraph drawing: hyperedges pass through a small junction node."""
    names = list(names) if names is not None else [f"x{v + 1}" for v in range(h.num_vars)]
    lines = ["digraph horn {", "  rankdir=LR;", '  top [label="⊤", shape=plaintext];',
             '  bottom [label="⊥", shape=plaintext];']
    for v in range(h.num_vars):
        lines.append(f'  v{v} [label="{names[v]}"];')
    for u in sorted(h.units):
        lines.append(f"  top -> v{u};")
    for k, (head, body) in enumerate(h.implications):
        lines.append(f"  i{k} [shape=point];")
        for b in sorted(body):
            lines.append(f"  v{b} -> i{k} [arrowhead=none];")
        lines.append(f"  i{k} -> v{head};")
    for k, body in enumerate(h.restraints):
        lines.append(f"  r{k} [shape=point];")
        for b in sorted(body):
            lines.append(f"  v{b} -> r{k} [arrowhead=none];")
        lines.append(f"  r{k} -> bottom;")
    lines.append("}")
    return "\n".join(lines) + "\n"
