"""Applicative structure: values, fuel-bounded application, bracket abstraction.

The carrier is a small structured universe: numerals, pairs, closures,
partially applied primitive combinators and finite tables.  Application is
run by an explicit-stack machine, so divergence shows up as ``OutOfFuel``
rather than as a Python recursion error.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

DEFAULT_FUEL = 1_000_000


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("numerals are natural numbers")


@dataclass(frozen=True)
class Pair:
    fst: "Value"
    snd: "Value"


@dataclass(frozen=True)
class Prim:
    """A primitive combinator together with the arguments it has received."""
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Closure:
    var: str
    body: "Term"
    env: tuple  # ((name, Value), ...) restricted to the free variables of the body


@dataclass(frozen=True)
class Table:
    """A finite function; application outside its keys is stuck."""
    entries: tuple  # ((key, value), ...)

    def lookup(self, key):
        for k, v in self.entries:
            if k == key:
                return v
        return None


Value = Union[Num, Pair, Prim, Closure, Table]

ARITY = {
    "k": 2, "s": 3, "p": 2, "proj0": 1, "proj1": 1, "q1": 1, "q2": 1,
    "r": 2, "ifz": 3, "succ": 1, "pred": 1,
}

K = Prim("k")
S = Prim("s")
P = Prim("p")
PROJ0 = Prim("proj0")
PROJ1 = Prim("proj1")
Q1 = Prim("q1")
Q2 = Prim("q2")
R = Prim("r")


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str

    def __post_init__(self):
        if self.name not in ARITY:
            raise ValueError(f"unknown constant {self.name!r}")


@dataclass(frozen=True)
class Lit:
    """A value embedded in a term (numerals, previously built realizers)."""
    value: Value


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lam:
    var: str
    body: "Term"
    fv: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "fv", tuple(sorted(free_vars(self.body) - {self.var})))


Term = Union[Var, Const, Lit, App, Lam]


def free_vars(t: Term) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, Lam):
        return set(t.fv)
    return set()


def app(*ts: Term) -> Term:
    """Left-nested juxtaposition: app(a, b, c) is ((a b) c)."""
    out = ts[0]
    for t in ts[1:]:
        out = App(out, t)
    return out


def lam(*args) -> Term:
    """lam('x', 'y', body) is λx.λy.body."""
    *names, body = args
    for name in reversed(names):
        body = Lam(name, body)
    return body


def num(n: int) -> Lit:
    return Lit(Num(n))


def subst(t: Term, x: str, u: Term) -> Term:
    """t[x := u] for a closed u (no capture can occur)."""
    if isinstance(t, Var):
        return u if t.name == x else t
    if isinstance(t, App):
        return App(subst(t.fun, x, u), subst(t.arg, x, u))
    if isinstance(t, Lam):
        if t.var == x or x not in t.fv:
            return t
        return Lam(t.var, subst(t.body, x, u))
    return t


# ---------------------------------------------------------------------------
# Evaluation results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Converged:
    value: Value


@dataclass(frozen=True)
class Stuck:
    site: str


@dataclass(frozen=True)
class OutOfFuel:
    pass


EvalResult = Union[Converged, Stuck, OutOfFuel]


class EvalError(Exception):
    pass


class StuckError(EvalError):
    def __init__(self, site: str):
        super().__init__(site)
        self.site = site


class OutOfFuelError(EvalError):
    pass


# ---------------------------------------------------------------------------
# Machine
# ---------------------------------------------------------------------------

# Bodies of saturated primitives whose reduct is itself an application.
_S_BODY = App(App(Var("x"), Var("z")), App(Var("y"), Var("z")))
_R_BODY = App(App(Var("x"), Var("rx")), Var("y"))

_ARG = 0
_FUN = 1


def _delta(f: Prim, a: Value):
    """Apply a primitive.  Returns a value, or a (term, env) pair to continue with."""
    args = f.args + (a,)
    name = f.name
    if len(args) < ARITY[name]:
        return Prim(name, args), None
    if name == "k":
        return args[0], None
    if name == "s":
        return _S_BODY, {"x": args[0], "y": args[1], "z": args[2]}
    if name == "p":
        return Pair(args[0], args[1]), None
    if name == "r":
        return _R_BODY, {"x": args[0], "rx": Prim("r", (args[0],)), "y": args[1]}
    if name in ("proj0", "proj1"):
        if not isinstance(a, Pair):
            raise StuckError(f"{name} of non-pair")
        return (a.fst if name == "proj0" else a.snd), None
    if name in ("q1", "q2"):
        if not (isinstance(a, Pair) and isinstance(a.fst, Num) and isinstance(a.snd, Pair)):
            raise StuckError(f"{name} of non-triple")
        return (a.snd.fst if name == "q1" else a.snd.snd), None
    if name == "ifz":
        n = args[0]
        if not isinstance(n, Num):
            raise StuckError("ifz on non-numeral")
        return (args[1] if n.n == 0 else args[2]), None
    if name == "succ":
        if not isinstance(a, Num):
            raise StuckError("succ of non-numeral")
        return Num(a.n + 1), None
    if name == "pred":
        if not isinstance(a, Num):
            raise StuckError("pred of non-numeral")
        return Num(max(a.n - 1, 0)), None
    raise AssertionError(name)


def run(term: Term, env: Optional[dict] = None, fuel: int = DEFAULT_FUEL,
        trace: Optional[Callable[[Value, Value], None]] = None) -> Value:
    """Evaluate ``term`` call-by-value.  Raises StuckError / OutOfFuelError.

    Every application (beta or primitive) costs one unit of fuel.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    env = env if env is not None else {}
    stack: list = []
    steps = 0
    ctrl = term
    value = None
    while True:
        if ctrl is not None:
            t = ctrl
            if isinstance(t, App):
                stack.append((_ARG, t.arg, env))
                ctrl = t.fun
                continue
            if isinstance(t, Var):
                try:
                    value = env[t.name]
                except KeyError:
                    raise StuckError(f"unbound variable {t.name}") from None
            elif isinstance(t, Lit):
                value = t.value
            elif isinstance(t, Const):
                value = Prim(t.name)
            elif isinstance(t, Lam):
                value = Closure(t.var, t.body, tuple((v, env[v]) for v in t.fv))
            else:
                raise TypeError(f"not a term: {t!r}")
            ctrl = None
        if not stack:
            return value
        frame = stack.pop()
        if frame[0] == _ARG:
            stack.append((_FUN, value))
            ctrl, env = frame[1], frame[2]
            continue
        f, a = frame[1], value
        steps += 1
        if steps > fuel:
            raise OutOfFuelError()
        if trace is not None:
            trace(f, a)
        if isinstance(f, Closure):
            env = dict(f.env)
            env[f.var] = a
            ctrl = f.body
        elif isinstance(f, Prim):
            out, new_env = _delta(f, a)
            if new_env is None:
                value = out
            else:
                ctrl, env = out, new_env
        elif isinstance(f, Table):
            out = f.lookup(a)
            if out is None:
                raise StuckError("table applied outside its domain")
            value = out
        elif isinstance(f, Num):
            raise StuckError("numeral applied")
        elif isinstance(f, Pair):
            raise StuckError("pair applied")
        else:
            raise TypeError(f"not a value: {f!r}")


def evaluate(term: Term, fuel: int = DEFAULT_FUEL, env: Optional[dict] = None,
             trace=None) -> EvalResult:
    try:
        return Converged(run(term, env, fuel, trace))
    except StuckError as e:
        return Stuck(e.site)
    except OutOfFuelError:
        return OutOfFuel()


def apply(f: Value, a: Value, fuel: int = DEFAULT_FUEL, trace=None) -> EvalResult:
    return evaluate(App(Lit(f), Lit(a)), fuel, trace=trace)


def call(f: Value, *args: Value, fuel: int = DEFAULT_FUEL) -> Value:
    """f a1 ... an, raising on failure."""
    return run(app(Lit(f), *(Lit(a) for a in args)), fuel=fuel)


def compile_term(term: Term, fuel: int = DEFAULT_FUEL) -> Value:
    """The value of a closed term; raises EvalError if it has none."""
    missing = free_vars(term)
    if missing:
        raise EvalError(f"term has free variables {sorted(missing)}")
    return run(term, fuel=fuel)


# ---------------------------------------------------------------------------
# Bracket abstraction
# ---------------------------------------------------------------------------

_I = App(App(Const("s"), Const("k")), Const("k"))


def bracket_abstract(t: Term, x: str) -> Term:
    """λ*x.t built from s and k only.

    Atoms other than x go under k; applications always split with s, so the
    result is a value even when t itself is undefined.
    """
    t = eliminate_lambdas(t)
    return _abstract(t, x)


def _abstract(t: Term, x: str) -> Term:
    if isinstance(t, Var) and t.name == x:
        return _I
    if isinstance(t, App):
        return app(Const("s"), _abstract(t.fun, x), _abstract(t.arg, x))
    return App(Const("k"), t)


def eliminate_lambdas(t: Term) -> Term:
    if isinstance(t, Lam):
        return _abstract(eliminate_lambdas(t.body), t.var)
    if isinstance(t, App):
        return App(eliminate_lambdas(t.fun), eliminate_lambdas(t.arg))
    return t


# ---------------------------------------------------------------------------
# Derived combinators
# ---------------------------------------------------------------------------

def fix(x: Value) -> Value:
    """r x, so that fix(x) y ≃ x (fix(x)) y."""
    return Prim("r", (x,))


def pair(a: Value, b: Value) -> Pair:
    return Pair(a, b)


def tup(tag: int, *rest: Value) -> Value:
    """(tag, a1, ..., an) as right-nested pairs headed by a numeral."""
    if not rest:
        return Num(tag)
    tail = rest[-1]
    for v in reversed(rest[:-1]):
        tail = Pair(v, tail)
    return Pair(Num(tag), tail)


def proj0(v: Value) -> Value:
    if not isinstance(v, Pair):
        raise StuckError("proj0 of non-pair")
    return v.fst


def proj1(v: Value) -> Value:
    if not isinstance(v, Pair):
        raise StuckError("proj1 of non-pair")
    return v.snd


def q1(v: Value) -> Value:
    """Second component of a triple."""
    return _delta(Q1, v)[0]


def q2(v: Value) -> Value:
    """Third component of a triple."""
    return _delta(Q2, v)[0]


def _build_ir() -> Value:
    # G a = p a (p G G), hence (i_r)_0 a = (i_r)_1 a = p a i_r with i_r = p G G.
    g = compile_term(Lam("g", Lam("a", app(Const("p"), Var("a"),
                                           app(Const("p"), Var("g"), Var("g"))))))
    G = fix(g)
    return Pair(G, G)


IR = _build_ir()


def mk_ir() -> Value:
    """The self-equality realizer."""
    return IR
