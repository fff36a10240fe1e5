"""Connectivity of Boolean satisfiability solution spaces.

Relations and formulas live in :mod:`boolconn.relation` and
:mod:`boolconn.formula`; classification in :mod:`boolconn.classify`;
polynomial procedures in :mod:`boolconn.solvers` and :mod:`boolconn.horn`;
constructions in :mod:`boolconn.gadgets`; Boolean functions and clones in
:mod:`boolconn.clones`.
"""
from .classify import Verdict, classify_set
from .errors import BoolConnError, CapExceeded, InputError, MethodInapplicable, PreconditionError
from .formula import CnfFormula, RelationSet, formula_to_relation, parse_formula, parse_relation_set
from .graph import components, diameter, distance, is_connected
from .limits import Limits, limits, override
from .relation import Relation, relation
from .solvers import dispatch_conn, dispatch_st_conn

__all__ = [
    "BoolConnError", "CapExceeded", "CnfFormula", "InputError", "Limits", "MethodInapplicable",
    "PreconditionError", "Relation", "RelationSet", "Verdict", "classify_set", "components", "diameter",
    "dispatch_conn", "dispatch_st_conn", "distance", "formula_to_relation", "is_connected", "limits",
    "override", "parse_formula", "parse_relation_set", "relation",
]
