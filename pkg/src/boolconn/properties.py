"""Relation property predicates: validity, closure classes, OR/NAND-freeness, and the safely/componentwise modifiers."""
from __future__ import annotations

from enum import Enum
from functools import lru_cache

import numpy as np

from . import gf2, implicates
from .errors import InputError
from .graph import components
from .limits import require
from .relation import (AND, AND_OR, MAJORITY, MINORITY, OR, OR_AND, BooleanOp, Relation,
                       closed_under, identify)


class Prop(Enum):
    ZERO_VALID = "ZeroValid"
    ONE_VALID = "OneValid"
    COMPLEMENTIVE = "Complementive"
    BIJUNCTIVE = "Bijunctive"
    HORN = "Horn"
    DUAL_HORN = "DualHorn"
    AFFINE = "Affine"
    IHSB_MINUS = "IhsbMinus"
    IHSB_PLUS = "IhsbPlus"
    OR_FREE = "OrFree"
    NAND_FREE = "NandFree"


class Modifier(Enum):
    PLAIN = "Plain"
    COMPONENTWISE = "Componentwise"
    SAFELY = "Safely"
    SAFELY_COMPONENTWISE = "SafelyComponentwise"


CLOSURE_OPS: dict[Prop, BooleanOp] = {
    Prop.BIJUNCTIVE: MAJORITY,
    Prop.HORN: AND,
    Prop.DUAL_HORN: OR,
    Prop.AFFINE: MINORITY,
    Prop.IHSB_MINUS: AND_OR,
    Prop.IHSB_PLUS: OR_AND,
}

# clause family equivalent to each closure property, used past the enumeration budget
_CLAUSE_FAMILY = {
    Prop.BIJUNCTIVE: "bijunctive",
    Prop.HORN: "horn",
    Prop.DUAL_HORN: "dual-horn",
    Prop.IHSB_MINUS: "ihsb-minus",
    Prop.IHSB_PLUS: "ihsb-plus",
}

_COMPONENTWISE_OK = {Prop.BIJUNCTIVE, Prop.IHSB_MINUS, Prop.IHSB_PLUS}
_SAFELY_OK = {Prop.OR_FREE, Prop.NAND_FREE}

_OR_ROW = np.array([False, True, True, True])
_NAND_ROW = np.array([True, True, True, False])


def _contains_pattern(rel: Relation, row: np.ndarray) -> bool:
    """Does some constant substitution onto all but two coordinates give the 2-ary relation ``row``?"""
    n = rel.arity
    if n < 2:
        return False
    require("OR-check arity", n, "or_check")
    cube = rel.table.reshape((2,) * n)
    for i in range(n):
        for j in range(i + 1, n):
            rows = np.moveaxis(cube, (i, j), (-2, -1)).reshape(-1, 4)
            if (rows == row).all(axis=1).any():
                return True
    return False


def _closure(rel: Relation, prop: Prop) -> bool:
    if prop is Prop.AFFINE:
        return gf2.is_coset(rel) if len(rel) > 64 else closed_under(rel, MINORITY)
    try:
        return closed_under(rel, CLOSURE_OPS[prop])
    except OverflowError:
        # too many member tuples; use the equivalent clause characterisation
        return implicates.representable(rel, _CLAUSE_FAMILY[prop])


@lru_cache(maxsize=1 << 16)
def check_property(rel: Relation, prop: Prop) -> bool:
    n = rel.arity
    if prop is Prop.ZERO_VALID:
        return 0 in rel
    if prop is Prop.ONE_VALID:
        return ((1 << n) - 1) in rel
    if prop is Prop.COMPLEMENTIVE:
        return rel.flip() == rel
    if prop is Prop.OR_FREE:
        return not _contains_pattern(rel, _OR_ROW)
    if prop is Prop.NAND_FREE:
        return not _contains_pattern(rel, _NAND_ROW)
    return _closure(rel, prop)


def check_componentwise(rel: Relation, prop: Prop) -> bool:
    if prop not in _COMPONENTWISE_OK:
        raise InputError(f"componentwise is not defined for {prop.value}")
    return all(check_property(c, prop) for c in components(rel).components())


def identification_minors(rel: Relation) -> tuple[Relation, ...]:
    """``rel`` and everything reachable from it by repeated identification of two coordinates."""
    return tuple(identification_minors_with_args(rel))


@lru_cache(maxsize=4096)
def identification_minors_with_args(rel: Relation) -> dict[Relation, tuple[int, ...]]:
    """Each minor with one argument map realising it: ``minor = pullback(rel, args)``.

    ``args[c]`` is the minor coordinate that original coordinate ``c`` maps to.
    Order is breadth-first, so ``rel`` itself comes first.
    """
    require("identification-minor arity", rel.arity, "minors")
    found: dict[Relation, tuple[int, ...]] = {rel: tuple(range(rel.arity))}
    frontier = [rel]
    while frontier:
        nxt = []
        for current in frontier:
            args = found[current]
            m = current.arity
            for i in range(1, m + 1):
                for j in range(i + 1, m + 1):
                    minor = identify(current, i, j)
                    if minor in found:
                        continue
                    new_args = tuple(
                        a if a < j - 1 else (i - 1 if a == j - 1 else a - 1) for a in args)
                    found[minor] = new_args
                    nxt.append(minor)
        frontier = nxt
    return found


@lru_cache(maxsize=1 << 15)
def check_safely(rel: Relation, prop: Prop, componentwise: bool = False) -> bool:
    """Property over every identification minor.

    ``componentwise`` must be True for the closure flags and False for
    OR-/NAND-freeness, those being the only combinations that are defined.
    """
    if componentwise:
        if prop not in _COMPONENTWISE_OK:
            raise InputError(f"safely componentwise is not defined for {prop.value}")
        test = lambda r: check_componentwise(r, prop)  # noqa: E731
    else:
        if prop not in _SAFELY_OK:
            raise InputError(f"safely is not defined for {prop.value}")
        test = lambda r: check_property(r, prop)  # noqa: E731
    if not test(rel):
        return False
    return all(test(m) for m in identification_minors(rel))


def check(rel: Relation, prop: Prop, modifier: Modifier = Modifier.PLAIN) -> bool:
    if modifier is Modifier.PLAIN:
        return check_property(rel, prop)
    if modifier is Modifier.COMPONENTWISE:
        return check_componentwise(rel, prop)
    if modifier is Modifier.SAFELY:
        return check_safely(rel, prop)
    return check_safely(rel, prop, componentwise=True)


def parse_property(name: str) -> tuple[Prop, Modifier]:
    """Parse ``Horn``, ``SafelyComponentwiseBijunctive``, ``SafelyOrFree`` and similar names."""
    for mod in (Modifier.SAFELY_COMPONENTWISE, Modifier.COMPONENTWISE, Modifier.SAFELY):
        if name.startswith(mod.value):
            rest = name[len(mod.value):]
            prop = Prop(rest)
            if mod is Modifier.SAFELY and prop not in _SAFELY_OK:
                raise InputError(f"{name}: illegal modifier")
            if mod is not Modifier.SAFELY and prop not in _COMPONENTWISE_OK:
                raise InputError(f"{name}: illegal modifier")
            return prop, mod
    try:
        return Prop(name), Modifier.PLAIN
    except ValueError:
        raise InputError(f"unknown property {name!r}") from None
