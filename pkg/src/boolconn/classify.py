"""Classification of relation sets and the resulting complexity verdicts."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable

from .formula import RelationSet
from .graph import components
from .properties import Prop, check_property, check_safely, identification_minors
from .relation import Relation


class Verdict(Enum):
    IN_P = "InP"
    CONP_COMPLETE = "CoNPComplete"
    PSPACE_COMPLETE = "PSPACEComplete"
    IN_CONP_OPEN = "InCoNPOpen"
    IN_PSPACE_OPEN = "InPSPACEOpen"


class TightMode(Enum):
    CW_BIJUNCTIVE = "CwBijunctive"
    OR_FREE = "OrFree"
    NAND_FREE = "NandFree"


SCHAEFER_TYPES = ("bijunctive", "horn", "dual-horn", "affine")
QUASI_VARIANTS = ("bijunctive", "ihsb-minus", "ihsb-plus", "affine")


@dataclass(frozen=True)
class RelationProperties:
    arity: int
    size: int
    empty: bool
    zero_valid: bool
    one_valid: bool
    complementive: bool
    bijunctive: bool
    horn: bool
    dual_horn: bool
    affine: bool
    ihsb_minus: bool
    ihsb_plus: bool
    or_free: bool
    nand_free: bool
    safely_or_free: bool
    safely_nand_free: bool
    safely_cw_bijunctive: bool
    safely_cw_ihsb_minus: bool
    safely_cw_ihsb_plus: bool
    quasi: tuple[str, ...]     # quasi-disconnecting variants this relation satisfies

    def as_dict(self) -> dict:
        d = asdict(self)
        d["quasi"] = list(self.quasi)
        return d

    def has(self, variant: str) -> bool:
        """Plain closure flag by clause-family name."""
        return {"bijunctive": self.bijunctive, "horn": self.horn, "dual-horn": self.dual_horn,
                "affine": self.affine, "ihsb-minus": self.ihsb_minus, "ihsb-plus": self.ihsb_plus}[variant]

    def safely_cw(self, variant: str) -> bool:
        return {"bijunctive": self.safely_cw_bijunctive, "ihsb-minus": self.safely_cw_ihsb_minus,
                "ihsb-plus": self.safely_cw_ihsb_plus, "affine": self.affine}[variant]


_VARIANT_PROP = {"bijunctive": Prop.BIJUNCTIVE, "ihsb-minus": Prop.IHSB_MINUS, "ihsb-plus": Prop.IHSB_PLUS}


def _variant_holds(rel: Relation, variant: str) -> bool:
    if variant == "affine":
        return check_property(rel, Prop.AFFINE)
    return check_safely(rel, _VARIANT_PROP[variant], componentwise=True)


def quasi_disconnecting_relation(rel: Relation, variant: str) -> bool:
    """The per-relation condition for quasi-disconnecting sets of the given variant."""
    n = rel.arity
    if not (check_property(rel, Prop.ZERO_VALID) and check_property(rel, Prop.ONE_VALID)):
        return False
    if _variant_holds(rel, variant):
        return True
    part = components(rel)
    if part.label_of(0) == part.label_of((1 << n) - 1):
        return False
    return all(_variant_holds(m, variant) for m in identification_minors(rel) if m != rel)


@lru_cache(maxsize=1 << 14)
def classify_relation(rel: Relation) -> RelationProperties:
    empty = rel.is_empty()
    return RelationProperties(
        arity=rel.arity,
        size=len(rel),
        empty=empty,
        zero_valid=check_property(rel, Prop.ZERO_VALID),
        one_valid=check_property(rel, Prop.ONE_VALID),
        complementive=check_property(rel, Prop.COMPLEMENTIVE),
        bijunctive=check_property(rel, Prop.BIJUNCTIVE),
        horn=check_property(rel, Prop.HORN),
        dual_horn=check_property(rel, Prop.DUAL_HORN),
        affine=check_property(rel, Prop.AFFINE),
        ihsb_minus=check_property(rel, Prop.IHSB_MINUS),
        ihsb_plus=check_property(rel, Prop.IHSB_PLUS),
        or_free=check_property(rel, Prop.OR_FREE),
        nand_free=check_property(rel, Prop.NAND_FREE),
        safely_or_free=check_safely(rel, Prop.OR_FREE),
        safely_nand_free=check_safely(rel, Prop.NAND_FREE),
        safely_cw_bijunctive=check_safely(rel, Prop.BIJUNCTIVE, componentwise=True),
        safely_cw_ihsb_minus=check_safely(rel, Prop.IHSB_MINUS, componentwise=True),
        safely_cw_ihsb_plus=check_safely(rel, Prop.IHSB_PLUS, componentwise=True),
        quasi=() if empty else tuple(v for v in QUASI_VARIANTS if quasi_disconnecting_relation(rel, v)),
    )


@dataclass(frozen=True)
class SetClassification:
    relations: tuple[tuple[str, RelationProperties], ...]
    schaefer_types: tuple[str, ...]
    cpss_types: tuple[str, ...]
    tight_modes: tuple[TightMode, ...]
    nc_cpss: bool | None
    quasi_types: tuple[str, ...] | None
    implicative_types: tuple[str, ...] | None
    zero_valid: bool
    one_valid: bool
    complementive: bool
    has_empty: bool
    plain_types: tuple[str, ...]   # bijunctive / ihsb-minus / ihsb-plus / affine of the whole set

    @property
    def schaefer(self) -> bool:
        return bool(self.schaefer_types)

    @property
    def cpss(self) -> bool:
        return bool(self.cpss_types)

    @property
    def safely_tight(self) -> bool:
        return bool(self.tight_modes)

    @property
    def quasi_disconnecting(self) -> bool | None:
        return None if self.quasi_types is None else bool(self.quasi_types)

    @property
    def implicative(self) -> bool | None:
        return None if self.implicative_types is None else bool(self.implicative_types)

    def as_dict(self) -> dict:
        return {
            "relations": {name: props.as_dict() for name, props in self.relations},
            "set": {
                "schaefer": self.schaefer,
                "schaefer_types": list(self.schaefer_types),
                "cpss": self.cpss,
                "cpss_types": list(self.cpss_types),
                "safely_tight": self.safely_tight,
                "tight_modes": [m.value for m in self.tight_modes],
                "nc_cpss": self.nc_cpss,
                "quasi_disconnecting": self.quasi_disconnecting,
                "quasi_types": None if self.quasi_types is None else list(self.quasi_types),
                "implicative": self.implicative,
                "implicative_types": None if self.implicative_types is None else list(self.implicative_types),
                "zero_valid": self.zero_valid,
                "one_valid": self.one_valid,
                "complementive": self.complementive,
                "has_empty": self.has_empty,
            },
            "verdicts": {k: (v.value if v is not None else None) for k, v in all_verdicts(self).items()},
        }


def classify_set(rels: RelationSet | Iterable[tuple[str, Relation]]) -> SetClassification:
    if not isinstance(rels, RelationSet):
        rels = RelationSet(tuple(rels))
    props = [(name, classify_relation(rel)) for name, rel in rels.entries]
    ps = [p for _, p in props]
    every = lambda f: all(f(p) for p in ps)  # noqa: E731
    schaefer = tuple(t for t in SCHAEFER_TYPES if every(lambda p, t=t: p.has(t)))
    cpss = []
    if every(lambda p: p.bijunctive):
        cpss.append("bijunctive")
    if every(lambda p: p.horn and p.safely_cw_ihsb_minus):
        cpss.append("horn")
    if every(lambda p: p.dual_horn and p.safely_cw_ihsb_plus):
        cpss.append("dual-horn")
    if every(lambda p: p.affine):
        cpss.append("affine")
    tight = []
    if every(lambda p: p.safely_cw_bijunctive):
        tight.append(TightMode.CW_BIJUNCTIVE)
    if every(lambda p: p.safely_or_free):
        tight.append(TightMode.OR_FREE)
    if every(lambda p: p.safely_nand_free):
        tight.append(TightMode.NAND_FREE)
    zero_valid = every(lambda p: p.zero_valid)
    one_valid = every(lambda p: p.one_valid)
    complementive = every(lambda p: p.complementive)
    has_empty = any(p.empty for p in ps)
    if has_empty:
        nc_cpss = None
        quasi = None
        implicative = None
    else:
        sub = any(every(lambda p, v=v: p.safely_cw(v)) for v in QUASI_VARIANTS)
        nc_cpss = sub and (zero_valid or one_valid or bool(schaefer))
        quasi = tuple(v for v in QUASI_VARIANTS if every(lambda p, v=v: v in p.quasi))
        imp_types = []
        if every(lambda p: p.horn and p.one_valid):
            imp_types.append("horn")
        if every(lambda p: p.dual_horn and p.zero_valid):
            imp_types.append("dual-horn")
        implicative = tuple(imp_types)
    plain = tuple(v for v in QUASI_VARIANTS if every(lambda p, v=v: p.has(v)))
    return SetClassification(
        relations=tuple(props), schaefer_types=schaefer, cpss_types=tuple(cpss),
        tight_modes=tuple(tight), nc_cpss=nc_cpss, quasi_types=quasi,
        implicative_types=implicative, zero_valid=zero_valid, one_valid=one_valid,
        complementive=complementive, has_empty=has_empty, plain_types=plain)


# ---------------------------------------------------------------------------
# verdicts


def verdict_st_conn_c(c: SetClassification) -> Verdict:
    return Verdict.IN_P if c.safely_tight else Verdict.PSPACE_COMPLETE


def verdict_conn_c(c: SetClassification) -> Verdict:
    if c.cpss:
        return Verdict.IN_P
    if c.safely_tight:
        return Verdict.CONP_COMPLETE
    return Verdict.PSPACE_COMPLETE


def _require_nonempty(c: SetClassification) -> None:
    if c.has_empty:
        from .errors import PreconditionError
        raise PreconditionError("no-constants verdicts require a set without empty relations")


def verdict_st_conn(c: SetClassification) -> Verdict:
    _require_nonempty(c)
    return Verdict.IN_P if c.safely_tight else Verdict.PSPACE_COMPLETE


def verdict_conn(c: SetClassification) -> Verdict:
    _require_nonempty(c)
    trivial_sides = not c.zero_valid and not c.one_valid and not c.complementive
    if c.nc_cpss or c.quasi_disconnecting or c.implicative:
        return Verdict.IN_P
    if c.schaefer or (c.safely_tight and trivial_sides):
        return Verdict.CONP_COMPLETE
    if c.safely_tight:
        return Verdict.IN_CONP_OPEN
    if trivial_sides:
        return Verdict.PSPACE_COMPLETE
    return Verdict.IN_PSPACE_OPEN


def verdict_q_st_conn(c: SetClassification) -> Verdict:
    return Verdict.IN_P if c.schaefer else Verdict.PSPACE_COMPLETE


def verdict_q_conn(c: SetClassification) -> Verdict:
    if c.plain_types:
        return Verdict.IN_P
    if c.schaefer:
        return Verdict.CONP_COMPLETE
    return Verdict.PSPACE_COMPLETE


def all_verdicts(c: SetClassification) -> dict[str, Verdict | None]:
    out: dict[str, Verdict | None] = {
        "st_conn_c": verdict_st_conn_c(c),
        "conn_c": verdict_conn_c(c),
        "q_st_conn_c": verdict_q_st_conn(c),
        "q_conn_c": verdict_q_conn(c),
    }
    if c.has_empty:
        out["st_conn"] = None
        out["conn"] = None
    else:
        out["st_conn"] = verdict_st_conn(c)
        out["conn"] = verdict_conn(c)
    return dict(sorted(out.items()))
