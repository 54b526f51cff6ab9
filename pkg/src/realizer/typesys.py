"""Gödel-coded types over the applicative structure, their extensions, and V.

Type codes are tuples: ``(0)`` is N, ``(1,n)`` is N_n, ``(2,A,B)`` is A+B,
``(3,A,F)`` is Π_{x:A}Fx, ``(4,A,F)`` is Σ_{x:A}Fx.  Set codes are
``sup(A,f) = (5,A,f)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import pca
from .pca import (DEFAULT_FUEL, Num, OutOfFuelError, Pair, Prim, StuckError,
                  Table, Value, tup)
from .verdict import (FUEL, UNBOUNDED, Realized, Refuted, Unknown, Verdict, conj)

DEFAULT_CUTOFF = 8
ENUM_LIMIT = 200_000
MAX_DEPTH = 400


class TypeCodeError(ValueError):
    """A value that is not a well-formed type code."""


class UnboundedError(ValueError):
    """Enumeration of an infinite (or too large) extension without a usable cutoff."""


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

NAT_TYPE = Num(0)


def fin(n: int) -> Value:
    return tup(1, Num(n))


def sum_type(a: Value, b: Value) -> Value:
    return tup(2, a, b)


def pi(a: Value, fam: Value) -> Value:
    return tup(3, a, fam)


def sigma(a: Value, fam: Value) -> Value:
    return tup(4, a, fam)


def arrow(a: Value, b: Value) -> Value:
    return pi(a, Prim("k", (b,)))


def times(a: Value, b: Value) -> Value:
    return sigma(a, Prim("k", (b,)))


def sup(a: Value, f: Value) -> Value:
    return tup(5, a, f)


def type_parts(a: Value):
    """Split a type code into (kind, *components)."""
    if a == NAT_TYPE:
        return ("N",)
    if isinstance(a, Pair) and isinstance(a.fst, Num):
        tag, rest = a.fst.n, a.snd
        if tag == 1 and isinstance(rest, Num):
            return ("fin", rest.n)
        if tag in (2, 3, 4) and isinstance(rest, Pair):
            return ({2: "sum", 3: "pi", 4: "sigma"}[tag], rest.fst, rest.snd)
    raise TypeCodeError(f"not a type code: {a!r}")


def sup_parts(v: Value):
    """(A, f) for a sup code, else None."""
    if (isinstance(v, Pair) and v.fst == Num(5) and isinstance(v.snd, Pair)):
        return v.snd.fst, v.snd.snd
    return None


def _family(fam: Value, x: Value, fuel: int) -> Value:
    try:
        return pca.call(fam, x, fuel=fuel)
    except StuckError as e:
        raise TypeCodeError(f"type family stuck at {x!r}: {e.site}") from None


# ---------------------------------------------------------------------------
# Extensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Enumeration:
    items: tuple
    # False when the list was truncated at a cutoff.
    complete: bool


@lru_cache(maxsize=65536)
def ext_enumerate(a: Value, cutoff: int | None = None, fuel: int = DEFAULT_FUEL) -> Enumeration:
    """Members of ext(a).

    Π over a finite domain yields one finite table per choice function; Π over
    the empty domain yields the single empty table.  N needs a cutoff.
    """
    parts = type_parts(a)
    kind = parts[0]
    if kind == "N":
        if cutoff is None:
            raise UnboundedError("ext(N) is infinite; supply a cutoff")
        return Enumeration(tuple(Num(i) for i in range(cutoff)), False)
    if kind == "fin":
        return Enumeration(tuple(Num(i) for i in range(parts[1])), True)
    if kind == "sum":
        left = ext_enumerate(parts[1], cutoff, fuel)
        right = ext_enumerate(parts[2], cutoff, fuel)
        items = tuple(Pair(Num(0), x) for x in left.items) + \
            tuple(Pair(Num(1), y) for y in right.items)
        return Enumeration(items, left.complete and right.complete)
    dom = ext_enumerate(parts[1], cutoff, fuel)
    fibres = []
    complete = dom.complete
    for x in dom.items:
        try:
            fib = ext_enumerate(_family(parts[2], x, fuel), cutoff, fuel)
        except OutOfFuelError:
            raise UnboundedError("type family ran out of fuel") from None
        fibres.append(fib)
        complete = complete and fib.complete
    if kind == "sigma":
        items = tuple(Pair(x, u) for x, fib in zip(dom.items, fibres) for u in fib.items)
        if len(items) > ENUM_LIMIT:
            raise UnboundedError("extension too large to enumerate")
        return Enumeration(items, complete)
    # pi
    if not dom.complete:
        raise UnboundedError("Π over an infinite domain cannot be enumerated")
    size = 1
    for fib in fibres:
        size *= len(fib.items)
        if size > ENUM_LIMIT:
            raise UnboundedError("extension too large to enumerate")
    items = tuple(Table(tuple(zip(dom.items, choice)))
                  for choice in itertools.product(*(fib.items for fib in fibres)))
    return Enumeration(items, complete)


def ext_member(a: Value, v: Value, fuel: int = DEFAULT_FUEL,
               cutoff: int = DEFAULT_CUTOFF) -> Verdict:
    """Decide v ∈ ext(a); Π over N is only checked below the cutoff."""
    try:
        return _member(a, v, fuel, cutoff)
    except OutOfFuelError:
        return Unknown(FUEL)


@lru_cache(maxsize=262144)
def _member(a, v, fuel, cutoff) -> Verdict:
    parts = type_parts(a)
    kind = parts[0]
    if kind == "N":
        return Realized if isinstance(v, Num) else Refuted("not a numeral")
    if kind == "fin":
        if isinstance(v, Num) and v.n < parts[1]:
            return Realized
        return Refuted(f"not below {parts[1]}")
    if not isinstance(v, Pair) and kind != "pi":
        return Refuted("not a pair")
    if kind == "sum":
        if v.fst == Num(0):
            return _member(parts[1], v.snd, fuel, cutoff)
        if v.fst == Num(1):
            return _member(parts[2], v.snd, fuel, cutoff)
        return Refuted("sum tag is neither 0 nor 1")
    if kind == "sigma":
        def fibre():
            yield _member(parts[1], v.fst, fuel, cutoff)
            yield _member(_family(parts[2], v.fst, fuel), v.snd, fuel, cutoff)
        return conj(fibre())
    # pi
    dom = ext_enumerate(parts[1], cutoff, fuel)

    def pointwise():
        for x in dom.items:
            try:
                y = pca.call(v, x, fuel=fuel)
            except StuckError as e:
                yield Refuted(f"application stuck: {e.site}")
                return
            except OutOfFuelError:
                yield Unknown(FUEL)
                continue
            yield _member(_family(parts[2], x, fuel), y, fuel, cutoff)
        if not dom.complete:
            yield Unknown(UNBOUNDED)
    return conj(pointwise())


def is_type_code(a: Value, fuel: int = DEFAULT_FUEL, cutoff: int = DEFAULT_CUTOFF,
                 depth: int = 0) -> Verdict:
    """Hereditary well-formedness of a type code."""
    if depth > MAX_DEPTH:
        return Unknown(FUEL)
    try:
        parts = type_parts(a)
    except TypeCodeError as e:
        return Refuted(str(e))
    kind = parts[0]
    if kind in ("N", "fin"):
        return Realized
    if kind == "sum":
        return conj(is_type_code(c, fuel, cutoff, depth + 1) for c in parts[1:])

    def fibres():
        yield is_type_code(parts[1], fuel, cutoff, depth + 1)
        dom = ext_enumerate(parts[1], cutoff, fuel)
        for x in dom.items:
            try:
                b = pca.call(parts[2], x, fuel=fuel)
            except StuckError as e:
                yield Refuted(f"family stuck: {e.site}")
                return
            except OutOfFuelError:
                yield Unknown(FUEL)
                continue
            yield is_type_code(b, fuel, cutoff, depth + 1)
        if not dom.complete:
            yield Unknown(UNBOUNDED)
    try:
        return conj(fibres())
    except UnboundedError:
        return Unknown(UNBOUNDED)


def is_v_code(v: Value, fuel: int = DEFAULT_FUEL, cutoff: int = DEFAULT_CUTOFF) -> Verdict:
    """Membership in V, checked hereditarily (infinite index types up to the cutoff)."""
    return _is_v(v, fuel, cutoff, 0)


@lru_cache(maxsize=65536)
def _is_v(v, fuel, cutoff, depth) -> Verdict:
    if depth > MAX_DEPTH:
        return Unknown(FUEL)
    parts = sup_parts(v)
    if parts is None:
        return Refuted("not a sup code")
    a, f = parts
    head = is_type_code(a, fuel, cutoff, depth)
    if head.refuted:
        return head

    def children():
        yield head
        try:
            dom = ext_enumerate(a, cutoff, fuel)
        except UnboundedError:
            yield Unknown(UNBOUNDED)
            return
        for x in dom.items:
            try:
                child = pca.call(f, x, fuel=fuel)
            except StuckError as e:
                yield Refuted(f"child stuck: {e.site}")
                return
            except OutOfFuelError:
                yield Unknown(FUEL)
                continue
            sub = _is_v(child, fuel, cutoff, depth + 1)
            if sub.refuted:
                yield Refuted(f"child is not a V-code ({sub.reason})")
                return
            yield sub
        if not dom.complete:
            yield Unknown(UNBOUNDED)
    return conj(children())


# ---------------------------------------------------------------------------
# Set constructors
# ---------------------------------------------------------------------------

def _build_nat() -> Value:
    from .syntax import parse_term
    body = parse_term("(lam g n (p 5 (p (p 1 n) g)))")
    return pca.fix(pca.compile_term(body))


NAT = _build_nat()


def mk_nat(n: int) -> Value:
    """nat n = sup(N_n, nat)."""
    return pca.call(NAT, Num(n))


def mk_omega() -> Value:
    return sup(NAT_TYPE, NAT)


def mk_set(children) -> Value:
    """sup(N_m, table i -> child_i)."""
    children = tuple(children)
    return sup(fin(len(children)), Table(tuple((Num(i), c) for i, c in enumerate(children))))


def mk_pair_set(a: Value, b: Value) -> Value:
    """Kuratowski pair {{a},{a,b}}."""
    return mk_set([mk_set([a]), mk_set([a, b])])


EMPTY = mk_set([])


def _compile(src: str) -> Value:
    from .syntax import parse_term
    return pca.compile_term(parse_term(src))


# The constructors as applicable values, for use inside realizers.
SIGMA = _compile("(lam a f (p 4 (p a f)))")
PI = _compile("(lam a f (p 3 (p a f)))")
SUM = _compile("(lam a b (p 2 (p a b)))")
SUP = _compile("(lam a f (p 5 (p a f)))")
TIMES = _compile("(lam a b (p 4 (p a (k b))))")
ARROW = _compile("(lam a b (p 3 (p a (k b))))")
TYPE_CONSTS = {"sigma": SIGMA, "pi": PI, "sumT": SUM, "sup": SUP,
               "times": TIMES, "arrow": ARROW, "nat": NAT, "Nfin0": fin(0)}
