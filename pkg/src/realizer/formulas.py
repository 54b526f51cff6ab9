"""Formulas of the set-theoretic language.

Bounded quantifiers (``BAll``/``BEx``) and unbounded ones (``UAll``/``UEx``)
are distinct node types.  Atoms hold tree terms: a variable name (``str``),
a tree, or an HF set.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Mem:
    left: object
    right: object


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class BAll:
    var: str
    bound: object
    body: "Formula"


@dataclass(frozen=True)
class BEx:
    var: str
    bound: object
    body: "Formula"


@dataclass(frozen=True)
class UAll:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class UEx:
    var: str
    body: "Formula"


Formula = Union[Bot, Mem, Eq, And, Or, Imp, BAll, BEx, UAll, UEx]


def neg(phi: Formula) -> Formula:
    return Imp(phi, Bot())


def iff(phi: Formula, psi: Formula) -> Formula:
    return And(Imp(phi, psi), Imp(psi, phi))


def _sub_term(t, x, s):
    return s if isinstance(t, str) and t == x else t


def substitute(phi: Formula, x: str, s) -> Formula:
    """phi[x := s].  Stops at binders of x; s is closed, so nothing is captured."""
    if isinstance(phi, Bot):
        return phi
    if isinstance(phi, (Mem, Eq)):
        return type(phi)(_sub_term(phi.left, x, s), _sub_term(phi.right, x, s))
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(substitute(phi.left, x, s), substitute(phi.right, x, s))
    if isinstance(phi, (BAll, BEx)):
        bound = _sub_term(phi.bound, x, s)
        body = phi.body if phi.var == x else substitute(phi.body, x, s)
        return type(phi)(phi.var, bound, body)
    if isinstance(phi, (UAll, UEx)):
        if phi.var == x:
            return phi
        return type(phi)(phi.var, substitute(phi.body, x, s))
    raise TypeError(f"not a formula: {phi!r}")


def free_vars(phi: Formula) -> set:
    if isinstance(phi, Bot):
        return set()
    if isinstance(phi, (Mem, Eq)):
        return {t for t in (phi.left, phi.right) if isinstance(t, str)}
    if isinstance(phi, (And, Or, Imp)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (BAll, BEx)):
        out = free_vars(phi.body) - {phi.var}
        if isinstance(phi.bound, str):
            out.add(phi.bound)
        return out
    if isinstance(phi, (UAll, UEx)):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


def is_bounded(phi: Formula) -> bool:
    if isinstance(phi, (UAll, UEx)):
        return False
    if isinstance(phi, (And, Or, Imp)):
        return is_bounded(phi.left) and is_bounded(phi.right)
    if isinstance(phi, (BAll, BEx)):
        return is_bounded(phi.body)
    return True


def is_implication_free(phi: Formula) -> bool:
    if isinstance(phi, Imp):
        return False
    if isinstance(phi, (And, Or)):
        return is_implication_free(phi.left) and is_implication_free(phi.right)
    if isinstance(phi, (BAll, BEx, UAll, UEx)):
        return is_implication_free(phi.body)
    return True


def size(phi: Formula) -> int:
    if isinstance(phi, (And, Or, Imp)):
        return 1 + size(phi.left) + size(phi.right)
    if isinstance(phi, (BAll, BEx, UAll, UEx)):
        return 1 + size(phi.body)
    return 1


# ---------------------------------------------------------------------------
# Kuratowski pairs, spelled out with bounded quantifiers
# ---------------------------------------------------------------------------

def is_singleton_of(w, x) -> Formula:
    """w = {x}"""
    return And(BAll("%v", w, Eq("%v", x)), BEx("%v", w, Eq("%v", x)))


def is_doubleton_of(w, x, y) -> Formula:
    """w = {x, y}"""
    return And(BAll("%v", w, Or(Eq("%v", x), Eq("%v", y))),
               And(BEx("%v", w, Eq("%v", x)), BEx("%v", w, Eq("%v", y))))


def is_kpair(z, x, y) -> Formula:
    """z = {{x}, {x, y}}"""
    return And(BAll("%w", z, Or(is_singleton_of("%w", x), is_doubleton_of("%w", x, y))),
               And(BEx("%w", z, is_singleton_of("%w", x)),
                   BEx("%w", z, is_doubleton_of("%w", x, y))))


def pair_in(x, y, r) -> Formula:
    """<x, y> ∈ r"""
    return BEx("%z", r, is_kpair("%z", x, y))


def subimage(a, b, r) -> Formula:
    """r relates a and b both ways: every x in a has an r-image in b and vice versa."""
    return And(BAll("%x", a, BEx("%y", b, pair_in("%x", "%y", r))),
               BAll("%y", b, BEx("%x", a, pair_in("%x", "%y", r))))
