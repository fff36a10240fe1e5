"""Polynomial connectivity procedures for the tractable classes, plus the dispatcher."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import gf2
from .classify import SetClassification, TightMode, classify_set
from .errors import InputError, MethodInapplicable, PreconditionError
from .formula import (CnfFormula, Constraint, RelationSet, _constraint_relation, _embed, evaluate,
                      formula_to_relation, project_to_vars, satisfiable)
from .graph import components, is_connected
from .horn import existential_ihsb_conn, implicative_conn, implicative_polarity
from .properties import Prop, check_property
from .relation import Const, Relation, vec_to_str


# ---------------------------------------------------------------------------
# constraint projections


def sat_method_for(c: SetClassification) -> str:
    """Fastest exact SAT method available for the whole set."""
    for t in c.schaefer_types:
        return {"bijunctive": "two-sat", "horn": "horn", "dual-horn": "dual-horn", "affine": "affine"}[t]
    return "brute"


def find_disconnected_projection(phi: CnfFormula, sat_method: str = "brute") -> tuple[int, Relation] | None:
    """First constraint whose projection has a disconnected solution graph."""
    if phi.prefix:
        raise PreconditionError("constraint projections need a quantifier-free formula")
    seen: set[tuple[int, ...]] = set()
    for k, c in enumerate(phi.constraints):
        variables = c.variables()
        if not variables or variables in seen:
            continue
        seen.add(variables)
        proj = project_to_vars(phi, list(variables), sat_method)
        if not is_connected(proj):
            return k, proj
    return None


def conn_cpss(phi: CnfFormula, sat_method: str = "brute") -> bool:
    """Connected iff no constraint projection is disconnected (valid for CPSS-type sets)."""
    return find_disconnected_projection(phi, sat_method) is None


# ---------------------------------------------------------------------------
# affine


def _affine_system(phi: CnfFormula) -> gf2.AffineSystem:
    """Linear system over the free variables (in order)."""
    free = phi.free_vars
    m = len(free)
    if phi.prefix:
        rel = formula_to_relation(phi)
        if not check_property(rel, Prop.AFFINE):
            raise PreconditionError("quantified formula is not affine")
        return gf2.affine_hull(rel)
    rows: list[int] = []
    rhs: list[int] = []
    for c in phi.constraints:
        cr = _constraint_relation(phi.relations[c.name], c)
        if not check_property(cr, Prop.AFFINE):
            raise PreconditionError(f"constraint {c} is not affine")
        system = gf2.affine_hull(cr)
        if not system.consistent:
            return gf2.AffineSystem(m, (0,), (1,), (), False)
        variables = c.variables()
        k = len(variables)
        for row, b in zip(system.rows, system.rhs):
            full = 0
            for pos, v in enumerate(variables):
                if (row >> (k - 1 - pos)) & 1:
                    full |= 1 << (m - 1 - v)
            rows.append(full)
            rhs.append(b)
    return gf2.eliminate(m, rows, rhs)


def _zero_columns(system: gf2.AffineSystem) -> int:
    """Free-variable mask of coordinates whose unit vector lies in the direction space."""
    return ((1 << system.n) - 1) & ~system.support()


def conn_affine(phi: CnfFormula) -> bool:
    system = _affine_system(phi)
    if not system.consistent:
        return True
    dim = system.n - system.rank
    return dim == _zero_columns(system).bit_count()


def st_conn_affine(phi: CnfFormula, s: int | str, t: int | str) -> int | None:
    """Distance between solutions ``s`` and ``t``, or None if disconnected."""
    system = _affine_system(phi)
    m = system.n
    s, t = _vec(s, m), _vec(t, m)
    if not (system.satisfies(s) and system.satisfies(t)):
        raise InputError("endpoint not a solution")
    diff = s ^ t
    if diff & ~_zero_columns(system):
        return None
    return diff.bit_count()


def _vec(v: int | str, m: int) -> int:
    if isinstance(v, str):
        if len(v) != m or any(ch not in "01" for ch in v):
            raise InputError(f"expected a 0/1 string of length {m}")
        return int(v, 2) if v else 0
    return int(v)


# ---------------------------------------------------------------------------
# safely tight st-connectivity


def _member_fn(phi: CnfFormula):
    return lambda a: evaluate(phi, a)


def _check_mode(phi: CnfFormula, mode: TightMode) -> None:
    c = classify_set(phi.used_relations())
    if mode not in c.tight_modes:
        raise PreconditionError(f"relation set is not safely tight in mode {mode.value}")


def _walk(member, n: int, a: int, towards_one: bool) -> int:
    changed = True
    while changed:
        changed = False
        for var in range(n):
            bit = 1 << (n - 1 - var)
            if bool(a & bit) != towards_one and member(a ^ bit):
                a ^= bit
                changed = True
                break
    return a


def st_conn_safely_tight(phi: CnfFormula, s: int | str, t: int | str, mode: TightMode,
                         check_mode: bool = True) -> bool:
    if phi.prefix:
        raise PreconditionError("st-connectivity for tight sets expects a quantifier-free formula")
    if check_mode:
        _check_mode(phi, mode)
    n = phi.num_vars
    s, t = _vec(s, n), _vec(t, n)
    member = _member_fn(phi)
    if not (member(s) and member(t)):
        raise InputError("endpoint not a solution")
    if mode is TightMode.OR_FREE:
        return _walk(member, n, s, False) == _walk(member, n, t, False)
    if mode is TightMode.NAND_FREE:
        return _walk(member, n, s, True) == _walk(member, n, t, True)
    cur = s
    while cur != t:
        diff = cur ^ t
        for var in range(n):
            bit = 1 << (n - 1 - var)
            if diff & bit and member(cur ^ bit):
                cur ^= bit
                break
        else:
            return False
    return True


def verify_disconnection(phi: CnfFormula, s: int | str, t: int | str, mode: TightMode) -> tuple[bool, str]:
    """Check a certificate (s, t) that the solution graph is disconnected."""
    n = phi.num_vars
    try:
        s, t = _vec(s, n), _vec(t, n)
    except InputError:
        return False, "endpoint"
    if not (0 <= s < (1 << n) and 0 <= t < (1 << n)):
        return False, "endpoint"
    if not (evaluate(phi, s) and evaluate(phi, t)):
        return False, "endpoint"
    if st_conn_safely_tight(phi, s, t, mode):
        return False, "connected"
    return True, "separated"


# ---------------------------------------------------------------------------
# bijunctive renaming


def rename_to_horn(phi: CnfFormula) -> tuple[CnfFormula, int]:
    """Flip variables along a solution so the formula becomes 0-valid (hence Horn, 2-clause)."""
    if phi.prefix:
        raise PreconditionError("renaming expects the quantifier-free matrix")
    solution = satisfiable(phi, "two-sat")
    if solution is None:
        raise PreconditionError("formula is unsatisfiable")
    return flip_by_mask(phi, solution), solution


def flip_by_mask(phi: CnfFormula, mask: int) -> CnfFormula:
    """Formula ``psi(x) = phi(x xor mask)`` with per-constraint rewritten relations."""
    n = phi.num_vars
    rels: dict[str, Relation] = {}
    cons: list[Constraint] = []
    for c in phi.constraints:
        rel = phi.relations[c.name]
        k = rel.arity
        cmask = 0
        for pos, a in enumerate(c.args):
            if not isinstance(a, Const) and (mask >> (n - 1 - a)) & 1:
                cmask |= 1 << (k - 1 - pos)
        name = c.name if cmask == 0 else f"{c.name}^{vec_to_str(cmask, k)}"
        rels[name] = rel if cmask == 0 else rel.flip(cmask)
        cons.append(Constraint(name, c.args))
    return CnfFormula(n, RelationSet.of(rels), tuple(cons), phi.constants, phi.prefix)


# ---------------------------------------------------------------------------
# dispatcher


@dataclass
class ConnResult:
    connected: bool
    method: str
    witness: dict[str, Any] | None = None

    def as_dict(self) -> dict[str, Any]:
        return {"problem": "conn", "verdict": "connected" if self.connected else "disconnected",
                "method": self.method, "witness": self.witness}


def _brute(phi: CnfFormula) -> ConnResult:
    rel = formula_to_relation(phi)
    part = components(rel)
    witness = None
    if part.count > 1:
        mins = part.minima()
        witness = {"kind": "separated-solutions", "s": vec_to_str(mins[0], rel.arity),
                   "t": vec_to_str(mins[1], rel.arity), "components": part.count}
    return ConnResult(part.count <= 1, "brute", witness)


CONN_METHODS = ("brute", "affine", "constraint-projection", "self-implication", "ihsb-condition")


def _applicable(phi: CnfFormula, cls: SetClassification) -> list[str]:
    """Exact methods valid for ``phi``, cheapest first."""
    out = []
    if phi.prefix:
        if cls.plain_types and all(q == "exists" for q, _ in phi.prefix):
            if {"ihsb-minus", "ihsb-plus", "bijunctive"} & set(cls.plain_types):
                out.append("ihsb-condition")
        if "affine" in cls.plain_types:
            out.append("affine")
        return out + ["brute"]
    if "affine" in cls.schaefer_types:
        out.append("affine")
    constant_free = not phi.uses_constants()
    if cls.cpss or (constant_free and not cls.has_empty and (cls.nc_cpss or cls.quasi_disconnecting)):
        width = max((len(c.variables()) for c in phi.constraints), default=0)
        from .limits import limits
        if width <= limits().projection:
            out.append("constraint-projection")
    if implicative_polarity(phi) is not None:
        out.append("self-implication")
    return out + ["brute"]


def _run(phi: CnfFormula, cls: SetClassification, method: str) -> ConnResult:
    if method == "brute":
        return _brute(phi)
    if method == "affine":
        return ConnResult(conn_affine(phi), "affine")
    if method == "self-implication":
        return ConnResult(implicative_conn(phi), "self-implication")
    if method == "ihsb-condition":
        if {"ihsb-minus", "ihsb-plus"} & set(cls.plain_types):
            return ConnResult(existential_ihsb_conn(phi), "ihsb-condition")
        matrix_solution = satisfiable(phi.matrix(), "two-sat")
        if matrix_solution is None:
            return ConnResult(True, "ihsb-condition")
        return ConnResult(existential_ihsb_conn(flip_by_mask(phi, matrix_solution)), "ihsb-condition")
    # constraint projections
    hit = find_disconnected_projection(phi, sat_method_for(cls))
    witness = None
    if hit is not None:
        k, proj = hit
        witness = {"kind": "disconnected-projection", "constraint": k,
                   "variables": [f"x{v + 1}" for v in phi.constraints[k].variables()],
                   "projection": proj.to_strings()}
    return ConnResult(hit is None, "constraint-projection", witness)


def dispatch_conn(phi: CnfFormula, brute: bool = False, method: str | None = None) -> ConnResult:
    """Decide connectivity by the cheapest exact method the classification allows.

    ``method`` pins one procedure; it must be applicable to the formula.
    """
    if brute:
        return _brute(phi)
    cls = classify_set(phi.used_relations())
    options = _applicable(phi, cls)
    if method is not None:
        if method not in CONN_METHODS:
            raise InputError(f"unknown method {method!r}")
        if method not in options:
            raise MethodInapplicable(f"method inapplicable: {method} does not apply to this formula")
        return _run(phi, cls, method)
    return _run(phi, cls, options[0])


@dataclass
class StConnResult:
    connected: bool
    method: str
    distance: int | None = None

    def as_dict(self) -> dict[str, Any]:
        return {"problem": "stconn", "verdict": "connected" if self.connected else "disconnected",
                "method": self.method, "distance": self.distance}


def dispatch_st_conn(phi: CnfFormula, s: int | str, t: int | str, brute: bool = False) -> StConnResult:
    """st-connectivity by the affine solver, the safely tight procedures, or BFS."""
    from .graph import distance
    if not brute and not phi.prefix:
        cls = classify_set(phi.used_relations())
        if "affine" in cls.schaefer_types:
            d = st_conn_affine(phi, s, t)
            return StConnResult(d is not None, "affine", d)
        if cls.tight_modes:
            mode = cls.tight_modes[0]
            return StConnResult(st_conn_safely_tight(phi, s, t, mode, check_mode=False),
                                f"safely-tight-{mode.value}")
    rel = formula_to_relation(phi)
    m = rel.arity
    d = distance(rel, _vec(s, m), _vec(t, m))
    return StConnResult(d != float("inf"), "brute", None if d == float("inf") else int(d))
