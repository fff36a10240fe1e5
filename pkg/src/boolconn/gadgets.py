"""Reductions, expressions and witness constructions built from relation sets."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .errors import InputError, PreconditionError
from .formula import (CnfFormula, Constraint, RelationSet, _matrix_eval, evaluate, formula_to_relation)
from .graph import components, is_connected
from .isolating_table import RECIPES
from .limits import limits, require
from .properties import Prop, check_property, check_safely, identification_minors_with_args
from .relation import ONE, ZERO, Const, Relation, Term, pullback, relation, vec_to_str

# the four 3-clause shapes, negative literals last
S3 = RelationSet.of({
    "S3_0": Relation.from_predicate(3, lambda v: bool(v[0] or v[1] or v[2])),
    "S3_1": Relation.from_predicate(3, lambda v: bool(v[0] or v[1] or not v[2])),
    "S3_2": Relation.from_predicate(3, lambda v: bool(v[0] or not v[1] or not v[2])),
    "S3_3": Relation.from_predicate(3, lambda v: bool(not v[0] or not v[1] or not v[2])),
})

# Protected OR: (x1 | x2 | x3) & (-x1 | -x3)
PROTECTED_OR = Relation.from_predicate(3, lambda v: bool((v[0] or v[1] or v[2]) and not (v[0] and v[2])))


def isolated_vectors(rel: Relation) -> list[int]:
    """Members with no member at Hamming distance one."""
    out = []
    n = rel.arity
    for m in rel:
        if not any((m ^ (1 << b)) in rel for b in range(n)):
            out.append(m)
    return out


def is_one_isolating(rel: Relation) -> bool:
    return any(v != 0 for v in isolated_vectors(rel))


def is_zero_isolating(rel: Relation) -> bool:
    full = (1 << rel.arity) - 1
    return any(v != full for v in isolated_vectors(rel))


# ---------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class ExpressionWitness:
    """``target(x) = exists y formula(x, y)``; the target coordinates are variables 1..k."""

    formula: CnfFormula
    target: Relation
    note: str = ""

    def __post_init__(self) -> None:
        k = self.target.arity
        f = self.formula
        if f.free_vars != tuple(range(k)):
            raise InputError("expression: free variables must be the first k variables")
        if any(q != "exists" for q, _ in f.prefix):
            raise InputError("expression: only existential auxiliaries are allowed")
        if f.uses_constants() and not f.constants:
            raise InputError("expression uses constants in a constant-free formula")

    @property
    def arity(self) -> int:
        return self.target.arity

    @property
    def num_aux(self) -> int:
        return self.formula.num_vars - self.target.arity


def make_expression(relations: RelationSet | Mapping[str, Relation], target: Relation, num_aux: int,
                    constraints: Sequence[tuple[str, Sequence[Term]]], constants: bool = True,
                    note: str = "") -> ExpressionWitness:
    k = target.arity
    n = k + num_aux
    phi = CnfFormula.build(n, relations, constraints, constants=constants,
                           prefix=[("exists", v) for v in range(k, n)])
    return ExpressionWitness(phi, target, note)


@dataclass(frozen=True)
class VerificationRecord:
    projection: bool
    witness_connected: bool
    shared_witness: bool
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.projection and self.witness_connected and self.shared_witness

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict:
        return {"projection": self.projection, "witness_connected": self.witness_connected,
                "shared_witness": self.shared_witness, "ok": self.ok, "failures": list(self.failures)}


def _witness_matrix(w: ExpressionWitness) -> np.ndarray:
    n = w.formula.num_vars
    require("expression variables", n, "diameter")
    k = w.arity
    table = _matrix_eval(w.formula.matrix(), np.arange(1 << n, dtype=np.int64))
    return table.reshape(1 << k, 1 << (n - k))


def verify_structural_expressibility(w: ExpressionWitness) -> VerificationRecord:
    """Check projection equality, per-solution witness connectivity and shared witnesses."""
    k, m = w.arity, w.num_aux
    table = _witness_matrix(w)
    failures = []
    projection = bool(np.array_equal(table.any(axis=1), w.target.table))
    if not projection:
        failures.append("projection differs from target")
    connected = True
    for a in w.target:
        space = Relation.from_table(m, table[a])
        if space.is_empty() or not is_connected(space):
            connected = False
            failures.append(f"witnesses of {vec_to_str(a, k)} are not connected")
    shared = True
    for a in w.target:
        for b in range(k):
            other = a ^ (1 << b)
            if other > a and other in w.target and not (table[a] & table[other]).any():
                shared = False
                failures.append(f"no shared witness for {vec_to_str(a, k)} and {vec_to_str(other, k)}")
    return VerificationRecord(projection, connected, shared, tuple(failures))


def witness_table(w: ExpressionWitness) -> dict[str, list[str]]:
    """For each target member, the list of its witnesses (auxiliary assignments)."""
    k, m = w.arity, w.num_aux
    table = _witness_matrix(w)
    return {vec_to_str(a, k): [vec_to_str(int(y), m) for y in np.flatnonzero(table[a])]
            for a in w.target}


def _project_first(bits_table: np.ndarray, k: int) -> np.ndarray:
    return bits_table.reshape(1 << k, -1).any(axis=1)


def search_expression(relations: RelationSet, target: Relation, max_aux: int = 4,
                      max_constraints: int = 6, constants: bool = True) -> ExpressionWitness | None:
    """Breadth-first search for a small formula over ``relations`` whose projection is ``target``.

    Auxiliary counts are tried in increasing order; for each count,
    conjunctions of up to ``max_constraints`` atoms are explored, keeping only
    those whose projection still contains the target.
    """
    k = target.arity
    goal = target.table
    for aux in range(max_aux + 1):
        n = k + aux
        if n > limits().enumeration:
            break
        atoms = _atoms(relations, n, constants)
        if aux == 0:
            hit = _intersect_search(atoms, target)
            if hit is not None:
                return make_expression(relations, target, 0, hit, constants, note="no auxiliaries")
            continue
        useful = []
        for args, name, tab in atoms:
            if np.all(_project_first(tab, k) | ~goal):
                useful.append((args, name, tab))
        hit = _bfs_search(useful, k, aux, goal, max_constraints)
        if hit is not None:
            return make_expression(relations, target, aux, hit, constants, note=f"{aux} auxiliaries")
    return None


def _atoms(relations: RelationSet, n: int, constants: bool):
    """Distinct constraint applications over ``n`` variables: (args, name, table)."""
    seen: dict[bytes, tuple] = {}
    choices: list[Term] = list(range(n)) + ([ZERO, ONE] if constants else [])
    for name, rel in relations.items():
        for args in itertools.product(choices, repeat=rel.arity):
            tab = pullback(rel, list(args), n).table
            key = tab.tobytes()
            if key not in seen:
                seen[key] = (tuple(args), name, tab)
    return list(seen.values())


def _intersect_search(atoms, target: Relation) -> list[tuple[str, tuple]] | None:
    goal = target.table
    supersets = [(args, name, tab) for args, name, tab in atoms if np.all(tab | ~goal)]
    for args, name, tab in supersets:
        if np.array_equal(tab, goal):
            return [(name, args)]
    cur = np.ones_like(goal)
    for args, name, tab in supersets:
        cur &= tab
    if not np.array_equal(cur, goal):
        return None
    supersets.sort(key=lambda t: int(t[2].sum()))
    chosen = []
    cur = np.ones_like(goal)
    for item in supersets:
        if not np.array_equal(cur & item[2], cur):
            cur = cur & item[2]
            chosen.append(item)
            if np.array_equal(cur, goal):
                break
    # drop redundant atoms
    k = 0
    while k < len(chosen):
        rest = np.ones_like(goal)
        for j, item in enumerate(chosen):
            if j != k:
                rest &= item[2]
        if np.array_equal(rest, goal):
            chosen.pop(k)
        else:
            k += 1
    return [(name, args) for args, name, _ in chosen]


def _bfs_search(atoms, k: int, aux: int, goal: np.ndarray, max_constraints: int):
    cap = limits().expression_states
    frontier: dict[bytes, tuple[np.ndarray, list[int]]] = {}
    seen: set[bytes] = set()
    full = np.ones(1 << (k + aux), dtype=bool)
    frontier[full.tobytes()] = (full, [])
    for _ in range(max_constraints):
        nxt: dict[bytes, tuple[np.ndarray, list[int]]] = {}
        for tab, chosen in frontier.values():
            start = chosen[-1] + 1 if chosen else 0
            for idx in range(start, len(atoms)):
                new = tab & atoms[idx][2]
                key = new.tobytes()
                if key in seen or key in nxt:
                    continue
                proj = _project_first(new, k)
                if not np.all(proj | ~goal):
                    continue
                path = chosen + [idx]
                if np.array_equal(proj, goal):
                    return [(atoms[i][1], atoms[i][0]) for i in path]
                nxt[key] = (new, path)
                if len(seen) + len(nxt) > cap:
                    return None
        seen.update(nxt.keys())
        frontier = nxt
        if not frontier:
            break
    return None


def compose_structural_expressions(psi: CnfFormula, exprs: Mapping[str, ExpressionWitness]) -> CnfFormula:
    """Replace every constraint of ``psi`` by its expression with fresh auxiliaries.

    Returns a formula whose first ``psi.num_vars`` variables are ``psi``'s and
    whose auxiliaries are existentially quantified.
    """
    if psi.prefix:
        raise PreconditionError("composition expects a quantifier-free formula")
    if psi.uses_constants():
        raise PreconditionError("composition requires a constant-free formula")
    for c in psi.constraints:
        if len(set(c.args)) != len(c.args):
            raise PreconditionError(
                f"constraint {c} uses a variable more than once; structural expressions only compose "
                "when no variable is used more than once in any constraint")
        if c.name not in exprs:
            raise InputError(f"no expression for relation {c.name}")
        if exprs[c.name].target != psi.relations[c.name]:
            raise InputError(f"expression for {c.name} has a different target")
    rels = RelationSet()
    for name in dict.fromkeys(c.name for c in psi.constraints):
        rels = rels.merged(exprs[name].formula.relations)
    n = psi.num_vars
    cons: list[Constraint] = []
    constants = False
    for c in psi.constraints:
        e = exprs[c.name]
        k, m = e.arity, e.num_aux
        mapping = {i: c.args[i] for i in range(k)}
        for j in range(m):
            mapping[k + j] = n + j
        n += m
        constants = constants or e.formula.uses_constants()
        for ec in e.formula.constraints:
            cons.append(Constraint(ec.name, tuple(a if isinstance(a, Const) else mapping[a] for a in ec.args)))
    return CnfFormula(n, rels, tuple(cons), constants,
                      tuple(("exists", v) for v in range(psi.num_vars, n)))


# ---------------------------------------------------------------------------
# isolating relations


def _parse_members(text: str) -> list[str]:
    return text.strip().strip("{}").split()


_RECIPE_LINE = re.compile(r"^\{([01 ]+)\}:\s*(.*)$")


@dataclass(frozen=True)
class Recipe:
    members: tuple[str, ...]
    text: str
    num_vars: int
    constraints: tuple[tuple[int, ...], ...]   # each maps the 3 coordinates to formula variables
    claimed: tuple[str, ...] | None            # result stated in the table


def _recipe_from_text(members: tuple[str, ...], text: str) -> Recipe:
    if text.startswith("already"):
        return Recipe(members, text, 3, ((0, 1, 2),), None)
    m = re.match(r"^R\(x1,x2,x3\) AND R\((x\d),(x\d),(x\d)\) = \{([01 ]+)\}$", text)
    if m:
        perm = tuple(int(v[1]) - 1 for v in m.groups()[:3])
        return Recipe(members, text, 3, ((0, 1, 2), perm), tuple(_parse_members(m.group(4))))
    m = re.match(r"^identify x1,(x\d) -> \{([01 ]+)\}(?:, then R\(x1,x2\) AND R\(x2,x1\) = \{([01 ]+)\})?$", text)
    if m:
        other = int(m.group(1)[1]) - 1
        # 2-ary relation S(u, v) = R(...) with x1 and the named variable both u
        pattern = [None, None, None]
        pattern[0] = 0
        pattern[other] = 0
        rest = [i for i in range(3) if pattern[i] is None][0]
        pattern[rest] = 1
        first = tuple(pattern)
        if m.group(3) is None:
            return Recipe(members, text, 2, (first,), tuple(_parse_members(m.group(2))))
        swapped = tuple(1 - p for p in first)
        return Recipe(members, text, 2, (first, swapped), tuple(_parse_members(m.group(3))))
    raise ValueError(f"unparsed recipe: {text}")


def _apply_recipe(rel3: Relation, recipe: Recipe) -> Relation:
    out = Relation.full(recipe.num_vars)
    for tau in recipe.constraints:
        out = out & pullback(rel3, list(tau), recipe.num_vars)
    return out


@lru_cache(maxsize=1)
def isolating_recipes() -> dict[Relation, Recipe]:
    """The 64-entry recipe table, each entry re-verified on load."""
    table: dict[Relation, Recipe] = {}
    for line in RECIPES.strip().splitlines():
        m = _RECIPE_LINE.match(line.strip())
        if not m:
            raise ValueError(f"bad recipe line: {line}")
        members = tuple(m.group(1).split())
        rel3 = Relation.from_strings(members, 3)
        recipe = _recipe_from_text(members, m.group(2).strip())
        result = _apply_recipe(rel3, recipe)
        if recipe.claimed is not None and result != Relation.from_strings(recipe.claimed, recipe.num_vars):
            raise ValueError(f"recipe for {members} does not produce the stated relation")
        if not is_one_isolating(result):
            raise ValueError(f"recipe for {members} is not 1-isolating")
        table[rel3] = recipe
    if len(table) != 64:
        raise ValueError("recipe table must have 64 entries")
    return table


@dataclass(frozen=True)
class IsolatingResult:
    formula: CnfFormula      # constant-free formula over the single relation
    relation: Relation       # its solution set
    isolated: int            # an isolated vector (not all-0 for polarity 1, not all-1 for polarity 0)
    recipe: tuple[str, ...]


def _find_or_minor(rel: Relation, row: tuple[bool, ...]):
    for minor, args in identification_minors_with_args(rel).items():
        m = minor.arity
        if m < 2:
            continue
        cube = minor.table.reshape((2,) * m)
        for i in range(m):
            for j in range(i + 1, m):
                others = [c for c in range(m) if c not in (i, j)]
                for consts in itertools.product((0, 1), repeat=m - 2):
                    idx: list = [slice(None)] * m
                    for c, v in zip(others, consts):
                        idx[c] = v
                    sub = cube[tuple(idx)].reshape(-1)
                    if tuple(bool(x) for x in sub) == row:
                        return minor, args, (i, j), dict(zip(others, consts))
    return None


def find_isolating_relation(rel: Relation, polarity: int = 1, name: str = "R") -> IsolatingResult:
    """A 1-isolating (polarity 1) or 0-isolating (polarity 0) formula over ``{rel}`` without constants."""
    if polarity == 0:
        if check_safely(rel, Prop.NAND_FREE):
            raise PreconditionError("relation is safely NAND-free; no 0-isolating formula is guaranteed")
        flipped = find_isolating_relation(rel.flip(), 1, name)
        f = flipped.formula
        phi = CnfFormula(f.num_vars, RelationSet.of({name: rel}), f.constraints, False, ())
        full = (1 << f.num_vars) - 1
        return IsolatingResult(phi, flipped.relation.flip(), flipped.isolated ^ full,
                               flipped.recipe + ("complemented for polarity 0",))
    if polarity != 1:
        raise InputError("polarity must be 0 or 1")
    if check_safely(rel, Prop.OR_FREE):
        raise PreconditionError("relation is safely OR-free; no isolating formula is guaranteed")
    found = _find_or_minor(rel, (False, True, True, True))
    assert found is not None
    minor, args, (i, j), consts = found
    m = minor.arity
    fixed = ",".join(f"x{c + 1}={v}" for c, v in sorted(consts.items()))
    steps = [f"minor of arity {m} via argument map {list(args)}",
             f"OR on coordinates {i + 1},{j + 1}" + (f" with {fixed}" if fixed else "")]
    ones = [c for c, v in consts.items() if v == 1]
    zeros = [c for c, v in consts.items() if v == 0]
    if m == 2:
        group = {i: 0, j: 0}
        constraints: list[tuple[int, ...]] = [(0,)]
        num_vars = 1
        steps.append("identify the pair")
    elif not zeros or not ones:
        group = {i: 0, j: 0, **{c: 1 for c in consts}}
        small = pullback(minor, [group[c] for c in range(m)], 2)
        s = set(small.to_strings())
        if not zeros:
            if s == {"11", "00", "10"}:
                constraints, num_vars = [(0, 1), (1, 0)], 2
                steps.append("R''(x1,x2) AND R''(x2,x1)")
            elif s in ({"11", "00"}, {"11"}):
                constraints, num_vars = [(0, 1)], 2
                steps.append("already 1-isolating")
            elif s == {"11", "10"}:
                constraints, num_vars = [(0, 0)], 1
                steps.append("R''(x1,x1)")
            else:
                raise AssertionError(f"unexpected relation {s}")
        else:
            if s in ({"10", "01"}, {"10"}):
                constraints, num_vars = [(0, 1)], 2
                steps.append("already 1-isolating")
            elif s in ({"10", "01", "11"}, {"10", "11"}):
                constraints, num_vars = [(0, 0)], 1
                steps.append("R''(x1,x1)")
            else:
                raise AssertionError(f"unexpected relation {s}")
        steps.insert(2, f"R'' = {small}")
    else:
        group = {i: 0, j: 0, **{c: 1 for c in ones}, **{c: 2 for c in zeros}}
        small = pullback(minor, [group[c] for c in range(m)], 3)
        recipe = isolating_recipes()[small]
        constraints, num_vars = list(recipe.constraints), recipe.num_vars
        steps.append(f"R'' = {small}")
        steps.append(recipe.text)
    cons = []
    for tau in constraints:
        cons.append(Constraint(name, tuple(tau[group[args[c]]] for c in range(rel.arity))))
    phi = CnfFormula(num_vars, RelationSet.of({name: rel}), tuple(cons), False, ())
    result = formula_to_relation(phi)
    iso = [v for v in isolated_vectors(result) if v != 0]
    if not iso:
        raise AssertionError("construction did not produce a 1-isolating formula")
    return IsolatingResult(phi, result, iso[0], tuple(steps))


# ---------------------------------------------------------------------------
# constant elimination


@dataclass(frozen=True)
class ConstantReplacement:
    formula: CnfFormula
    original_vars: int
    block: int              # values of the appended variables in the intended solutions
    block_vars: int

    def lift(self, s: int | str) -> int:
        if isinstance(s, str):
            s = int(s, 2) if s else 0
        return (s << self.block_vars) | self.block


def _as_formula(x: CnfFormula | Relation, name: str) -> CnfFormula:
    if isinstance(x, Relation):
        return CnfFormula.build(x.arity, {name: x}, [(name, list(range(x.arity)))])
    if x.prefix or x.uses_constants():
        raise PreconditionError("auxiliary formulas must be quantifier- and constant-free")
    return x


def _substitute_constants(phi: CnfFormula, zero_var: int, one_var: int, extra_vars: int,
                          block: Sequence[tuple[CnfFormula, Mapping[int, int]]]) -> CnfFormula:
    rels = phi.relations
    cons: list[Constraint] = []
    for c in phi.constraints:
        cons.append(Constraint(c.name, tuple(
            (zero_var if a.value == 0 else one_var) if isinstance(a, Const) else a for a in c.args)))
    for f, mapping in block:
        rels = rels.merged(f.relations)
        for c in f.constraints:
            cons.append(Constraint(c.name, tuple(mapping[a] for a in c.args)))
    return CnfFormula(phi.num_vars + extra_vars, rels, tuple(cons), False, ())


def replace_constants(phi: CnfFormula, zero_iso: CnfFormula | Relation,
                      one_iso: CnfFormula | Relation) -> ConstantReplacement:
    """Simulate 0 and 1 with isolated solutions of two auxiliary formulas."""
    if phi.prefix:
        raise PreconditionError("constant replacement expects a quantifier-free formula")
    f0 = _as_formula(zero_iso, "R0")
    f1 = _as_formula(one_iso, "R1")
    r0, r1 = formula_to_relation(f0), formula_to_relation(f1)
    m0, m1 = f0.num_vars, f1.num_vars
    iso0 = [v for v in isolated_vectors(r0) if v != (1 << m0) - 1]
    iso1 = [v for v in isolated_vectors(r1) if v != 0]
    if not iso0:
        raise PreconditionError("first auxiliary formula is not 0-isolating")
    if not iso1:
        raise PreconditionError("second auxiliary formula is not 1-isolating")
    a, b = iso0[0], iso1[0]
    p = next(i for i in range(m0) if not (a >> (m0 - 1 - i)) & 1)
    q = next(i for i in range(m1) if (b >> (m1 - 1 - i)) & 1)
    n = phi.num_vars
    map0 = {i: n + i for i in range(m0)}
    map1 = {i: n + m0 + i for i in range(m1)}
    out = _substitute_constants(phi, n + p, n + m0 + q, m0 + m1, [(f0, map0), (f1, map1)])
    return ConstantReplacement(out, n, (a << m1) | b, m0 + m1)


def unique_non_constant_solution(rel: Relation, excluded: int) -> int | None:
    others = [v for v in rel if v != excluded]
    return others[0] if len(others) == 1 else None


def reduce_conn_c_to_conn(phi: CnfFormula, u0: CnfFormula | Relation, u1: CnfFormula | Relation) -> ConstantReplacement:
    """Replace constants using a 0-unique and a 1-unique formula; component counts are preserved."""
    if phi.prefix:
        raise PreconditionError("expects a quantifier-free formula")
    f0 = _as_formula(u0, "U0")
    f1 = _as_formula(u1, "U1")
    r0, r1 = formula_to_relation(f0), formula_to_relation(f1)
    m0, m1 = f0.num_vars, f1.num_vars
    full0 = (1 << m0) - 1
    a = unique_non_constant_solution(r0, full0)
    b = unique_non_constant_solution(r1, 0)
    if a is None:
        raise PreconditionError("first formula is not 0-unique")
    if b is None:
        raise PreconditionError("second formula is not 1-unique")
    bit = lambda v, i, m: (v >> (m - 1 - i)) & 1  # noqa: E731
    p = next(i for i in range(m0) if not bit(a, i, m0))
    q = next(i for i in range(m1) if bit(b, i, m1))
    n = phi.num_vars
    map0 = {i: n + i for i in range(m0)}
    map1 = {i: n + m0 + i for i in range(m1)}
    # an extra all-ones solution of u0 or all-zeros solution of u1 is cut off by sharing a variable
    if full0 in r0:
        j = next((i for i in range(m1) if not bit(b, i, m1)), None)
        if j is None:
            raise PreconditionError("cannot exclude the all-ones solution of the 0-unique formula")
        map1[j] = map0[p]
    if 0 in r1:
        i1 = next((i for i in range(m0) if bit(a, i, m0)), None)
        if i1 is None:
            raise PreconditionError("cannot exclude the all-zeros solution of the 1-unique formula")
        map1[q] = map0[i1]
    used = sorted(set(map0.values()) | set(map1.values()))
    renumber = {old: n + k for k, old in enumerate(used)}
    map0 = {i: renumber[v] for i, v in map0.items()}
    map1 = {i: renumber[v] for i, v in map1.items()}
    extra = len(used)
    out = _substitute_constants(phi, map0[p], map1[q], extra, [(f0, map0), (f1, map1)])
    block_values = {}
    for i in range(m0):
        block_values[map0[i]] = bit(a, i, m0)
    for i in range(m1):
        block_values[map1[i]] = bit(b, i, m1)
    block = 0
    for v in range(n, n + extra):
        block = (block << 1) | block_values[v]
    # the appended block must have exactly one solution
    block_formula = CnfFormula(extra, out.relations,
                               tuple(Constraint(c.name, tuple(x - n for x in c.args))
                                     for c in out.constraints[len(phi.constraints):]))
    if len(formula_to_relation(block_formula)) != 1:
        raise PreconditionError("auxiliary block does not have a unique solution")
    return ConstantReplacement(out, n, block, extra)


# ---------------------------------------------------------------------------
# hardness instance from satisfiability of positive 3-clauses and negative 2-clauses

P_CLAUSE = relation("001", "010", "011", "100", "101", "110", "111")
N_CLAUSE = relation("00", "01", "10")


def build_conn_hardness_instance(psi: CnfFormula) -> CnfFormula:
    """Formula over the Horn relation M whose graph is disconnected iff ``psi`` is satisfiable."""
    if psi.prefix or psi.uses_constants():
        raise PreconditionError("expects a plain formula without constants")
    positives: list[list[int]] = []
    negatives: list[tuple[int, int]] = []
    for c in psi.constraints:
        rel = psi.relations[c.name]
        if rel == P_CLAUSE:
            distinct = list(dict.fromkeys(c.args))
            positives.append(distinct)
        elif rel == N_CLAUSE:
            negatives.append((c.args[0], c.args[1]))
        else:
            raise PreconditionError(f"constraint {c} is neither x|y|z nor -x|-y")
    if not positives:
        raise PreconditionError("at least one positive 3-clause is required")
    n = psi.num_vars
    next_var = n
    q = []
    ab: list[dict[int, tuple[int, int]]] = []
    for clause in positives:
        q.append(next_var)
        next_var += 1
        pairs = {}
        for lit in clause:
            pairs[lit] = (next_var, next_var + 1)
            next_var += 2
        ab.append(pairs)
    cons: list[tuple[str, tuple[Term, ...]]] = []
    for i, j in negatives:
        cons.append(("M", (ZERO, i, j)))
    m = len(positives)
    for p, clause in enumerate(positives):
        for lit in clause:
            a, b = ab[p][lit]
            cons.append(("M", (q[p], ZERO, a)))           # -q_p | a
            cons.append(("M", (b, a, lit)))               # (b | -a | -x) & (-b | x)
            cons.append(("M", (b, ZERO, q[(p + 1) % m])))  # -b | q_next
    from .relation import M_REL
    return CnfFormula.build(next_var, {"M": M_REL}, cons, constants=True)


def build_another_sat_reduction(phi: CnfFormula, s: int | str, neq: ExpressionWitness) -> CnfFormula:
    """``phi(x) & AND_i x_i != y_i``: connected iff ``s`` is the only solution of ``phi``."""
    if phi.prefix:
        raise PreconditionError("expects a quantifier-free formula")
    n = phi.num_vars
    if isinstance(s, str):
        if len(s) != n:
            raise InputError("assignment length mismatch")
        s = int(s, 2) if s else 0
    if not evaluate(phi, s):
        raise PreconditionError("s not a solution")
    if neq.target != relation("01", "10"):
        raise InputError("expression must define x != y")
    record = verify_structural_expressibility(neq)
    if not record.ok:
        raise PreconditionError("inequality expression fails verification: " + "; ".join(record.failures))
    rels = phi.relations.merged(neq.formula.relations)
    cons = list(phi.constraints)
    next_var = 2 * n
    for i in range(n):
        mapping = {0: i, 1: n + i}
        for j in range(neq.num_aux):
            mapping[2 + j] = next_var + j
        next_var += neq.num_aux
        for c in neq.formula.constraints:
            cons.append(Constraint(c.name, tuple(a if isinstance(a, Const) else mapping[a] for a in c.args)))
    constants = phi.constants or neq.formula.uses_constants()
    return CnfFormula(next_var, rels, tuple(cons), constants, ())


# ---------------------------------------------------------------------------
# long induced paths


def _lit_clause(lits: list[tuple[int, bool]]) -> tuple[str, tuple[int, ...]]:
    """A clause of 2 or 3 literals as an S3 constraint (positives first, repeated to width 3)."""
    pos = [v for v, sign in lits if sign]
    neg = [v for v, sign in lits if not sign]
    if len(lits) == 2:
        if pos:
            pos = [pos[0]] + pos  # repeat a positive literal
        else:
            neg = neg + [neg[-1]]
    args = tuple(pos + neg)
    return f"S3_{len(neg)}", args


def diameter_witness(n: int) -> CnfFormula:
    """3-CNF formula over ``n`` variables whose solution graph is one induced path.

    Starts from the 3-vertex path of ``x1 | -x2`` and repeatedly doubles it
    with two fresh variables (a, b): ``(a | -b)`` plus ``(-a | b | [x = t])``
    where ``t`` is the current far endpoint.  The path length becomes
    ``2^(n/2+1) - 2``.
    """
    if n % 2 or n < 2:
        raise InputError("n must be an even integer >= 2")
    clauses: list[list[tuple[int, bool]]] = [[(0, True), (1, False)]]
    s_end, t_end = [0, 0], [1, 1]
    m = 2
    while m < n:
        a, b = m, m + 1
        clauses.append([(a, True), (b, False)])
        for i in range(m):
            clauses.append([(a, False), (b, True), (i, bool(t_end[i]))])
        s_end, t_end = s_end + [0, 0], s_end + [1, 1]
        m += 2
    cons = [_lit_clause(c) for c in clauses]
    return CnfFormula.build(n, S3, cons)


def diameter_witness_endpoints(n: int) -> tuple[int, int]:
    s_end, t_end = [0, 0], [1, 1]
    m = 2
    while m < n:
        s_end, t_end = s_end + [0, 0], s_end + [1, 1]
        m += 2
    to_int = lambda bits: int("".join(map(str, bits)), 2)  # noqa: E731
    return to_int(s_end), to_int(t_end)
