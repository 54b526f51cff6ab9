"""S-expression surface syntax for terms, type/set codes, trees and formulas.

Terms::

    (app f a b)     left-nested application; (f a b) means the same
    (lam x y t)     λx.λy.t
    (table (k v) ...)  finite function
    k s p proj0 proj1 q1 q2 r ifz succ pred, numerals

Codes::

    (N) (Nfin n) (sum A B) (pi A F) (sigma A F) (sup A F) (nat n) omega

Tree terms (inside formulas)::

    x               a variable
    M  omega  (nat n)  (sup ...)  (set ...)  (tree (0) (1) (1 0) ...)

Formulas::

    (bot) (mem s t) (eq s t) (and f g) (or f g) (imp f g) (not f)
    (ball x t f) (bex x t f) (uall x f) (uex x f)
"""
from __future__ import annotations

import sexpdata
from sexpdata import Symbol

from . import pca
from .pca import (App, ARITY, Closure, Const, Lam, Lit, Num, Pair, Prim, Table,
                  Var, app, lam, tup)


class ParseError(ValueError):
    pass


def read(text: str) -> list:
    """All top-level forms in ``text``."""
    try:
        return sexpdata.parse(text)
    except Exception as e:  # sexpdata raises several unrelated types
        raise ParseError(f"malformed s-expression: {e}") from e


def read_one(text: str):
    forms = read(text)
    if len(forms) != 1:
        raise ParseError(f"expected one form, found {len(forms)}")
    return forms[0]


def _sym(x) -> str | None:
    return x.value() if isinstance(x, Symbol) else None


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

def parse_term(src, consts: dict | None = None) -> pca.Term:
    """Parse a term; names in ``consts`` denote literal values."""
    if isinstance(src, str):
        src = read_one(src)
    return _term(src, consts or {})


def _term(x, consts):
    if isinstance(x, bool):
        raise ParseError("booleans are not terms")
    if isinstance(x, int):
        if x < 0:
            raise ParseError("numerals are natural numbers")
        return Lit(Num(x))
    name = _sym(x)
    if name is not None:
        if name in consts:
            return Lit(consts[name])
        if name in ARITY:
            return Const(name)
        return Var(name)
    if not isinstance(x, list) or not x:
        raise ParseError(f"not a term: {x!r}")
    head = _sym(x[0])
    if head == "app":
        if len(x) < 3:
            raise ParseError("app needs a function and at least one argument")
        return app(*(_term(y, consts) for y in x[1:]))
    if head == "lam":
        if len(x) < 3:
            raise ParseError("lam needs a variable and a body")
        names = [_sym(v) for v in x[1:-1]]
        if any(n is None for n in names):
            raise ParseError("lam binders must be symbols")
        # binders shadow named constants
        inner = {k: v for k, v in consts.items() if k not in names}
        return lam(*names, _term(x[-1], inner))
    if head == "table":
        entries = []
        for entry in x[1:]:
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError("table entries are (key value)")
            key = pca.compile_term(_term(entry[0], consts))
            val = pca.compile_term(_term(entry[1], consts))
            entries.append((key, val))
        return Lit(Table(tuple(entries)))
    if len(x) == 1:
        return _term(x[0], consts)
    return app(*(_term(y, consts) for y in x))


def show_term(t: pca.Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Lit):
        return show(t.value)
    if isinstance(t, Lam):
        names = [t.var]
        body = t.body
        while isinstance(body, Lam):
            names.append(body.var)
            body = body.body
        return f"(lam {' '.join(names)} {show_term(body)})"
    spine = []
    while isinstance(t, App):
        spine.append(t.arg)
        t = t.fun
    spine.append(t)
    return "(" + " ".join(show_term(u) for u in reversed(spine)) + ")"


def show(v: pca.Value) -> str:
    """A closed term denoting ``v`` (re-parseable by parse_term)."""
    if isinstance(v, Num):
        return str(v.n)
    if isinstance(v, Pair):
        return f"(p {show(v.fst)} {show(v.snd)})"
    if isinstance(v, Prim):
        if not v.args:
            return v.name
        return "(" + " ".join([v.name] + [show(a) for a in v.args]) + ")"
    if isinstance(v, Closure):
        body = v.body
        for name, val in v.env:
            body = pca.subst(body, name, Lit(val))
        return show_term(Lam(v.var, body))
    if isinstance(v, Table):
        return "(table" + "".join(f" ({show(k)} {show(x)})" for k, x in v.entries) + ")"
    raise TypeError(f"not a value: {v!r}")


# ---------------------------------------------------------------------------
# Type and set codes
# ---------------------------------------------------------------------------

def parse_code(src, consts: dict | None = None) -> pca.Value:
    """Parse a type code or V-code to its tuple value."""
    if isinstance(src, str):
        src = read_one(src)
    return _code(src, consts or {})


def _code(x, consts):
    from . import typesys
    name = _sym(x)
    if name == "omega":
        return typesys.mk_omega()
    if name is not None and name in consts:
        return consts[name]
    if not isinstance(x, list) or not x or _sym(x[0]) is None:
        raise ParseError(f"not a code: {x!r}")
    head, args = _sym(x[0]), x[1:]

    def arity(n):
        if len(args) != n:
            raise ParseError(f"({head} ...) takes {n} arguments")

    if head == "N":
        arity(0)
        return typesys.NAT_TYPE
    if head == "Nfin":
        arity(1)
        if not isinstance(args[0], int) or args[0] < 0:
            raise ParseError("Nfin takes a natural number")
        return typesys.fin(args[0])
    if head == "nat":
        arity(1)
        if not isinstance(args[0], int) or args[0] < 0:
            raise ParseError("nat takes a natural number")
        return typesys.mk_nat(args[0])
    if head == "sum":
        arity(2)
        return typesys.sum_type(_code(args[0], consts), _code(args[1], consts))
    if head in ("pi", "sigma", "sup"):
        arity(2)
        fam = pca.compile_term(_term(args[1], consts))
        tag = {"pi": 3, "sigma": 4, "sup": 5}[head]
        return tup(tag, _code(args[0], consts), fam)
    if head == "code":
        arity(1)
        return pca.compile_term(_term(args[0], consts))
    raise ParseError(f"unknown code constructor {head!r}")


def show_code(v: pca.Value) -> str:
    """Type/V-code syntax where the tag is recognised, term syntax otherwise."""
    if v == Num(0):
        return "(N)"
    if isinstance(v, Pair) and isinstance(v.fst, Num):
        tag, rest = v.fst.n, v.snd
        if tag == 1 and isinstance(rest, Num):
            return f"(Nfin {rest.n})"
        if isinstance(rest, Pair):
            if tag == 2:
                return f"(sum {show_code(rest.fst)} {show_code(rest.snd)})"
            name = {3: "pi", 4: "sigma", 5: "sup"}.get(tag)
            if name:
                return f"({name} {show_code(rest.fst)} {show(rest.snd)})"
    return f"(code {show(v)})"


# ---------------------------------------------------------------------------
# Trees, HF sets and formulas
# ---------------------------------------------------------------------------

def parse_tree(src, consts: dict | None = None):
    """A closed tree term: M, omega, (nat n), (sup ...), (set ...), (tree ...)."""
    if isinstance(src, str):
        src = read_one(src)
    t = _tree_term(src, consts or {}, allow_vars=False)
    return t


def _tree_term(x, consts, allow_vars=True):
    from . import trees
    name = _sym(x)
    if name is not None:
        if name == "M":
            return trees.M
        if name in ("omega", "empty") or name in consts:
            if name == "empty":
                return trees.Explicit.from_nodes([()])
            return trees.Intensional(_code(x, consts))
        if allow_vars:
            return name
        raise ParseError(f"free variable {name!r} where a closed tree was expected")
    if isinstance(x, list) and x and _sym(x[0]) in ("set", "hf"):
        return parse_hf(x)
    if isinstance(x, list) and x and _sym(x[0]) == "tree":
        nodes = set()
        for node in x[1:]:
            if not isinstance(node, list):
                raise ParseError("tree nodes are lists of labels")
            nodes.add(tuple(pca.compile_term(_term(lbl, consts)) for lbl in node))
        nodes.add(())
        return trees.Explicit.from_nodes(nodes)
    return trees.Intensional(_code(x, consts))


def parse_hf(src):
    """(set a b ...) with (set) the empty set; (nat n) for von Neumann numerals."""
    from . import hf
    if isinstance(src, str):
        src = read_one(src)
    if isinstance(src, list) and src and _sym(src[0]) in ("set", "hf"):
        return hf.HFSet(parse_hf(y) for y in src[1:])
    if isinstance(src, list) and len(src) == 2 and _sym(src[0]) == "nat":
        return hf.vn(src[1])
    if isinstance(src, int):
        return hf.vn(src)
    raise ParseError(f"not a hereditarily finite set: {src!r}")


def parse_formula(src, consts: dict | None = None):
    if isinstance(src, str):
        src = read_one(src)
    return _formula(src, consts or {})


def _formula(x, consts):
    from . import formulas as F
    if not isinstance(x, list) or not x or _sym(x[0]) is None:
        raise ParseError(f"not a formula: {x!r}")
    head, args = _sym(x[0]), x[1:]

    def arity(n):
        if len(args) != n:
            raise ParseError(f"({head} ...) takes {n} arguments")

    if head == "bot":
        arity(0)
        return F.Bot()
    if head in ("mem", "eq"):
        arity(2)
        s, t = (_tree_term(a, consts) for a in args)
        return F.Mem(s, t) if head == "mem" else F.Eq(s, t)
    if head in ("and", "or", "imp", "iff"):
        arity(2)
        a, b = (_formula(y, consts) for y in args)
        return {"and": F.And, "or": F.Or, "imp": F.Imp, "iff": F.iff}[head](a, b)
    if head == "not":
        arity(1)
        return F.neg(_formula(args[0], consts))
    if head in ("ball", "bex"):
        arity(3)
        var = _sym(args[0])
        if var is None:
            raise ParseError("quantified variable must be a symbol")
        bound = _tree_term(args[1], consts)
        body = _formula(args[2], consts)
        return F.BAll(var, bound, body) if head == "ball" else F.BEx(var, bound, body)
    if head in ("uall", "uex"):
        arity(2)
        var = _sym(args[0])
        if var is None:
            raise ParseError("quantified variable must be a symbol")
        body = _formula(args[1], consts)
        return F.UAll(var, body) if head == "uall" else F.UEx(var, body)
    raise ParseError(f"unknown formula constructor {head!r}")


def show_tree_term(t) -> str:
    from . import hf, trees
    if isinstance(t, str):
        return t
    if isinstance(t, hf.HFSet):
        return t.sexp()
    if t is trees.M or isinstance(t, trees.MTree):
        return "M"
    if isinstance(t, trees.Intensional):
        return show_code(t.code)
    if isinstance(t, trees.Explicit):
        nodes = sorted(t.nodes, key=lambda n: (len(n), [show(v) for v in n]))
        return "(tree" + "".join(" (" + " ".join(show(v) for v in n) + ")"
                                 for n in nodes if n) + ")"
    raise TypeError(f"not a tree term: {t!r}")


def show_formula(phi) -> str:
    from . import formulas as F
    if isinstance(phi, F.Bot):
        return "(bot)"
    if isinstance(phi, (F.Mem, F.Eq)):
        head = "mem" if isinstance(phi, F.Mem) else "eq"
        return f"({head} {show_tree_term(phi.left)} {show_tree_term(phi.right)})"
    if isinstance(phi, (F.And, F.Or, F.Imp)):
        head = {F.And: "and", F.Or: "or", F.Imp: "imp"}[type(phi)]
        return f"({head} {show_formula(phi.left)} {show_formula(phi.right)})"
    if isinstance(phi, (F.BAll, F.BEx)):
        head = "ball" if isinstance(phi, F.BAll) else "bex"
        return f"({head} {phi.var} {show_tree_term(phi.bound)} {show_formula(phi.body)})"
    if isinstance(phi, (F.UAll, F.UEx)):
        head = "uall" if isinstance(phi, F.UAll) else "uex"
        return f"({head} {phi.var} {show_formula(phi.body)})"
    raise TypeError(f"not a formula: {phi!r}")
