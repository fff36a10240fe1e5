"""Size caps for the exponential parts of the library.

The active limits live in a context variable so callers (and the CLI) can
raise or lower them for a block of code without threading arguments around.
"""
from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace
from typing import Iterator

from .errors import CapExceeded


@dataclass(frozen=True)
class Limits:
    enumeration: int = 24      # max variables for explicit solution enumeration
    diameter: int = 20         # max variables for all-pairs diameter
    projection: int = 16       # max variables of a single constraint projection
    shannon: int = 20          # max quantified variables expanded
    or_check: int = 16         # max arity for OR-free / NAND-free checks
    minors: int = 10           # max arity for iterated identification minors
    horn_synthesis: int = 12   # max arity for clause synthesis from a relation
    representation_nodes: int = 12
    self_implicating_vars: int = 20
    expression_states: int = 20000


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("boolconn_limits", default=Limits())


def limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def override(**changes: int) -> Iterator[Limits]:
    """Temporarily replace some caps: ``with override(enumeration=16): ...``."""
    new = replace(_current.get(), **changes)
    token = _current.set(new)
    try:
        yield new
    finally:
        _current.reset(token)


def require(what: str, value: int, cap_name: str) -> None:
    cap = getattr(limits(), cap_name)
    if value > cap:
        raise CapExceeded(what, value, cap)
