"""The realizability relation e ⊩ φ over trees, and its type-theoretic mirror.

``check`` walks the clauses directly.  ``build_formula_type`` compiles a
bounded formula over V-code parameters into a type code whose extension is
meant to be exactly its realizers; the two are compared in the test-suite.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from . import formulas as F
from . import hf, pca, trees, typesys
from .pca import (DEFAULT_FUEL, IR, K, Lam, Lit, Num, OutOfFuelError, Pair,
                  StuckError, Table, Value, App, Var, app)
from .trees import Explicit, Intensional, MTree, TreeError
from .typesys import DEFAULT_CUTOFF, UnboundedError
from .verdict import (FUEL, SAMPLING, UNBOUNDED, Realized, Refuted, Unknown,
                      Verdict, conj, disj)


# ---------------------------------------------------------------------------
# Realizer pool
# ---------------------------------------------------------------------------

def realizer_pool(size: int = 100, seed: int = 0) -> tuple:
    """Reproducible candidate realizers built from numerals, i_r, k and s."""
    atoms = [Num(0), Num(1), Num(2), Num(3), IR, K, pca.S]
    level1 = list(atoms)
    for a, b in itertools.product(atoms, repeat=2):
        level1.append(Pair(a, b))
        res = pca.apply(a, b, fuel=1000)
        if isinstance(res, pca.Converged):
            level1.append(res.value)
    level1 += [IR.fst, IR.snd]
    seen, uniq = set(), []
    for v in level1:
        if v not in seen:
            seen.add(v)
            uniq.append(v)
    rng = random.Random(seed)
    deeper = []
    for _ in range(4 * size):
        a, b = rng.choice(uniq), rng.choice(uniq)
        if rng.random() < 0.5:
            deeper.append(Pair(a, b))
        else:
            res = pca.apply(a, b, fuel=1000)
            if isinstance(res, pca.Converged):
                deeper.append(res.value)
    pool = list(atoms) + [Pair(Num(0), IR), Pair(Num(1), IR), Pair(IR, IR)]
    rest = [v for v in uniq + deeper if v not in set(pool)]
    rng.shuffle(rest)
    for v in rest:
        if len(pool) >= size:
            break
        if v not in pool:
            pool.append(v)
    return tuple(pool)


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

@dataclass
class _Ctx:
    fuel: int
    cutoff: int
    universe: Optional[tuple]
    pool: Optional[tuple]
    trace: Optional[list]
    synth_memo: dict = field(default_factory=dict)

    def candidates(self):
        if self.pool is None:
            self.pool = realizer_pool()
        return self.pool


def as_tree(t):
    """Coerce a closed tree term (tree or HF set) to a tree."""
    if isinstance(t, (Explicit, Intensional, MTree)):
        return t
    if isinstance(t, frozenset):
        return Explicit(hf.hf_tree_nodes(hf.HFSet(t)))
    if isinstance(t, str):
        raise ValueError(f"formula is not closed: free variable {t!r}")
    raise TypeError(f"not a tree: {t!r}")


def check(e: Value, phi: F.Formula, fuel: int = DEFAULT_FUEL, cutoff: int = DEFAULT_CUTOFF,
          universe=None, pool=None, trace: Optional[list] = None) -> Verdict:
    """Decide e ⊩ phi as far as it is decidable.

    Implications are falsified by sampling realizers of the antecedent;
    unbounded quantifiers range over ``universe`` (a finite list of trees) and
    the verdict is marked universe-relative.
    """
    if F.free_vars(phi):
        raise ValueError(f"formula has free variables {sorted(F.free_vars(phi))}")
    ctx = _Ctx(fuel, cutoff, None if universe is None else tuple(as_tree(t) for t in universe),
               None if pool is None else tuple(pool), trace)
    return _check(e, phi, ctx, 0)


def _check(e, phi, ctx: _Ctx, depth: int) -> Verdict:
    if ctx.trace is None:
        return _clause(e, phi, ctx, depth)
    from .syntax import show, show_formula
    slot = len(ctx.trace)
    ctx.trace.append("")
    out = _clause(e, phi, ctx, depth)
    ctx.trace[slot] = f"{'  ' * depth}{out}: {_clip(show(e))} ⊩ {_clip(show_formula(phi))}"
    return out


def _clip(s: str, n: int = 70) -> str:
    return s if len(s) <= n else s[: n - 3] + "..."


def _guard(thunk) -> Verdict:
    try:
        return thunk()
    except StuckError as err:
        return Refuted(f"stuck: {err.site}")
    except OutOfFuelError:
        return Unknown(FUEL)
    except (TreeError, UnboundedError):
        return Unknown(UNBOUNDED)


def _forall(tree, each, ctx: _Ctx):
    """Yield a verdict for every immediate successor, plus Unknown if truncated."""
    try:
        en = trees.immd_enumerate(tree, ctx.cutoff, ctx.fuel)
    except UnboundedError:
        yield Unknown(UNBOUNDED)
        return
    for a in en.items:
        yield _guard(lambda: each(a))
    if not en.complete:
        yield Unknown(UNBOUNDED)


def _sub(tree, a, ctx):
    return trees.subtree(tree, a, ctx.fuel, check=False)


def _call(f, a, ctx):
    return pca.call(f, a, fuel=ctx.fuel)


def _clause(e, phi, ctx: _Ctx, depth: int) -> Verdict:
    d = depth + 1
    if isinstance(phi, F.Bot):
        return Refuted("nothing realizes ⊥")

    if isinstance(phi, F.Mem):
        s, t = as_tree(phi.left), as_tree(phi.right)
        if not isinstance(e, Pair):
            return Refuted("membership realizer is not a pair")

        def parts():
            yield trees.immd_contains(t, e.fst, ctx.fuel, ctx.cutoff)
            yield _guard(lambda: _check(e.snd, F.Eq(s, _sub(t, e.fst, ctx)), ctx, d))
        return conj(parts())

    if isinstance(phi, F.Eq):
        s, t = as_tree(phi.left), as_tree(phi.right)
        if not isinstance(e, Pair):
            return Refuted("equality realizer is not a pair")

        def parts():
            yield from _forall(s, lambda a: _check(_call(e.fst, a, ctx),
                                                   F.Mem(_sub(s, a, ctx), t), ctx, d), ctx)
            yield from _forall(t, lambda b: _check(_call(e.snd, b, ctx),
                                                   F.Mem(_sub(t, b, ctx), s), ctx, d), ctx)
        return conj(parts())

    if isinstance(phi, F.And):
        if not isinstance(e, Pair):
            return Refuted("conjunction realizer is not a pair")
        return conj(_check(x, p, ctx, d) for x, p in ((e.fst, phi.left), (e.snd, phi.right)))

    if isinstance(phi, F.Or):
        if not isinstance(e, Pair):
            return Refuted("disjunction realizer is not a pair")
        if e.fst == Num(0):
            return _check(e.snd, phi.left, ctx, d)
        if e.fst == Num(1):
            return _check(e.snd, phi.right, ctx, d)
        return Refuted("disjunction tag is neither 0 nor 1")

    if isinstance(phi, F.BAll):
        bound = as_tree(phi.bound)
        return conj(_forall(bound, lambda a: _check(
            _call(e, a, ctx), F.substitute(phi.body, phi.var, _sub(bound, a, ctx)), ctx, d), ctx))

    if isinstance(phi, F.BEx):
        bound = as_tree(phi.bound)
        if not isinstance(e, Pair):
            return Refuted("existential realizer is not a pair")

        def parts():
            yield trees.immd_contains(bound, e.fst, ctx.fuel, ctx.cutoff)
            yield _guard(lambda: _check(
                e.snd, F.substitute(phi.body, phi.var, _sub(bound, e.fst, ctx)), ctx, d))
        return conj(parts())

    if isinstance(phi, F.Imp):
        return _check_implication(e, phi, ctx, d)

    if isinstance(phi, (F.UAll, F.UEx)):
        if ctx.universe is None:
            return Unknown(UNBOUNDED)
        results = [_check(e, F.substitute(phi.body, phi.var, x), ctx, d) for x in ctx.universe]
        if isinstance(phi, F.UAll):
            out = conj(results)
            # a counterexample inside the universe is a genuine one
            return out if out.refuted else Verdict(out.status, out.reason, relative=True)
        out = disj(results)
        return out if out.realized else Verdict(out.status, out.reason, relative=True)

    raise TypeError(f"not a formula: {phi!r}")


def _check_implication(e, phi: F.Imp, ctx: _Ctx, depth: int) -> Verdict:
    try:
        canonical = _synth(phi.left, ctx)
        decided = True
    except (UnboundedError, ValueError, OutOfFuelError):
        canonical, decided = None, False
    if decided and canonical is None:
        # the antecedent has no realizers at all
        return Realized
    candidates = ([canonical] if canonical is not None else []) + list(ctx.candidates())
    verdicts = []
    quiet = _Ctx(ctx.fuel, ctx.cutoff, ctx.universe, ctx.pool, None, ctx.synth_memo)
    for f in candidates:
        if not _check(f, phi.left, quiet, depth).realized:
            continue
        v = _guard(lambda: _check(_call(e, f, ctx), phi.right, ctx, depth))
        if v.refuted:
            return v
        verdicts.append(v)
    pending = conj(verdicts)
    if pending.unknown:
        return pending
    return Unknown(SAMPLING)


# ---------------------------------------------------------------------------
# Synthesis
# ---------------------------------------------------------------------------

def synth_realizer(phi: F.Formula, fuel: int = DEFAULT_FUEL,
                   cutoff: int = DEFAULT_CUTOFF) -> Optional[Value]:
    """A realizer of a closed bounded formula over finitely branching trees, or None.

    Built clause by clause: witness pairs for ∈, ∃ and ∨, finite tables for
    = and ∀, and a constant function for → when the consequent is realizable.
    """
    if not F.is_bounded(phi):
        raise ValueError("synthesis needs a bounded formula")
    ctx = _Ctx(fuel, cutoff, None, None, None)
    return _synth(phi, ctx)


def _complete_immd(tree, ctx):
    en = trees.immd_enumerate(tree, None, ctx.fuel)
    if not en.complete:
        raise UnboundedError("infinite branching")
    return en.items


def _synth(phi, ctx: _Ctx):
    key = phi
    if key in ctx.synth_memo:
        return ctx.synth_memo[key]
    out = _synth_clause(phi, ctx)
    ctx.synth_memo[key] = out
    return out


def _synth_clause(phi, ctx):
    if isinstance(phi, F.Bot):
        return None
    if isinstance(phi, F.Eq):
        s, t = as_tree(phi.left), as_tree(phi.right)
        left, right = [], []
        for a in _complete_immd(s, ctx):
            hit = _witness(_sub(s, a, ctx), t, ctx)
            if hit is None:
                return None
            left.append((a, hit))
        for b in _complete_immd(t, ctx):
            hit = _witness(_sub(t, b, ctx), s, ctx)
            if hit is None:
                return None
            right.append((b, hit))
        return Pair(Table(tuple(left)), Table(tuple(right)))
    if isinstance(phi, F.Mem):
        return _witness(as_tree(phi.left), as_tree(phi.right), ctx)
    if isinstance(phi, F.And):
        a = _synth(phi.left, ctx)
        if a is None:
            return None
        b = _synth(phi.right, ctx)
        return None if b is None else Pair(a, b)
    if isinstance(phi, F.Or):
        a = _synth(phi.left, ctx)
        if a is not None:
            return Pair(Num(0), a)
        b = _synth(phi.right, ctx)
        return None if b is None else Pair(Num(1), b)
    if isinstance(phi, F.Imp):
        b = _synth(phi.right, ctx)
        if b is not None:
            return pca.Prim("k", (b,))
        if _synth(phi.left, ctx) is None:
            return pca.Prim("k", (Num(0),))
        return None
    if isinstance(phi, F.BAll):
        bound = as_tree(phi.bound)
        table = []
        for a in _complete_immd(bound, ctx):
            r = _synth(F.substitute(phi.body, phi.var, _sub(bound, a, ctx)), ctx)
            if r is None:
                return None
            table.append((a, r))
        return Table(tuple(table))
    if isinstance(phi, F.BEx):
        bound = as_tree(phi.bound)
        for a in _complete_immd(bound, ctx):
            r = _synth(F.substitute(phi.body, phi.var, _sub(bound, a, ctx)), ctx)
            if r is not None:
                return Pair(a, r)
        return None
    raise ValueError(f"cannot synthesize for {type(phi).__name__}")


def _witness(s, t, ctx):
    """A realizer of s ∈ t: some b ∈ immd(t) with s = t↓b."""
    for b in _complete_immd(t, ctx):
        r = _synth(F.Eq(s, _sub(t, b, ctx)), ctx)
        if r is not None:
            return Pair(b, r)
    return None


# ---------------------------------------------------------------------------
# Formula types
# ---------------------------------------------------------------------------

def _compile(src: str) -> Value:
    from .syntax import parse_term
    return pca.compile_term(parse_term(src, typesys.TYPE_CONSTS))


# eq a b = Π_{x:q1 a} Σ_{y:q1 b} eq(a_x, b_y) × Π_{y:q1 b} Σ_{x:q1 a} eq(b_y, a_x)
EQ = pca.fix(_compile("""
    (lam e a b
      (times (pi (q1 a) (lam x (sigma (q1 b) (lam y (e (q2 a x) (q2 b y))))))
             (pi (q1 b) (lam y (sigma (q1 a) (lam x (e (q2 b y) (q2 a x))))))))
"""))

# mem x y = Σ_{u:q1 y} eq(x, y_u)
MEM = pca.compile_term(App(Lit(_compile("(lam eq x y (sigma (q1 y) (lam u (eq x (q2 y u)))))")),
                           Lit(EQ)))


def build_eq_type(x: Value, y: Value, fuel: int = DEFAULT_FUEL) -> Value:
    """‖x = y‖ for V-codes x, y."""
    return pca.call(EQ, x, y, fuel=fuel)


def build_mem_type(x: Value, y: Value, fuel: int = DEFAULT_FUEL) -> Value:
    """‖x ∈ y‖ for V-codes x, y."""
    return pca.call(MEM, x, y, fuel=fuel)


_C = {name: Lit(v) for name, v in typesys.TYPE_CONSTS.items()}
_Q1 = pca.Const("q1")
_Q2 = pca.Const("q2")


def _code_term(t, env):
    if isinstance(t, str):
        try:
            return env[t]
        except KeyError:
            raise ValueError(f"unbound set variable {t!r}") from None
    if isinstance(t, Intensional):
        return Lit(t.code)
    if isinstance(t, frozenset):
        return Lit(hf.to_vcode(hf.HFSet(t)))
    raise ValueError(f"formula types need V-code parameters, got {t!r}")


def type_term(phi: F.Formula, env: dict, counter=None) -> pca.Term:
    """A term computing ‖phi‖, with set variables bound to terms in ``env``."""
    counter = counter if counter is not None else itertools.count()
    if isinstance(phi, F.Bot):
        return Lit(typesys.fin(0))
    if isinstance(phi, F.Eq):
        return app(Lit(EQ), _code_term(phi.left, env), _code_term(phi.right, env))
    if isinstance(phi, F.Mem):
        return app(Lit(MEM), _code_term(phi.left, env), _code_term(phi.right, env))
    if isinstance(phi, (F.And, F.Or, F.Imp)):
        head = {F.And: "times", F.Or: "sumT", F.Imp: "arrow"}[type(phi)]
        return app(_C[head], type_term(phi.left, env, counter), type_term(phi.right, env, counter))
    if isinstance(phi, (F.BAll, F.BEx)):
        bound = _code_term(phi.bound, env)
        z = f"%t{next(counter)}"
        inner = dict(env)
        inner[phi.var] = app(_Q2, bound, Var(z))
        head = _C["pi"] if isinstance(phi, F.BAll) else _C["sigma"]
        return app(head, App(_Q1, bound), Lam(z, type_term(phi.body, inner, counter)))
    raise ValueError("‖φ‖ is only defined for bounded formulas")


def build_formula_type(phi: F.Formula, params: dict | None = None,
                       fuel: int = DEFAULT_FUEL) -> Value:
    """‖phi(params)‖; literal V-code trees inside phi are allowed too."""
    env = {name: Lit(code) for name, code in (params or {}).items()}
    return pca.run(type_term(phi, env), fuel=fuel)


def formula_type_function(phi: F.Formula, variables: list) -> Value:
    """λv1...vn. ‖phi(v1, ..., vn)‖ as an applicable value."""
    body = type_term(phi, {v: Var(v) for v in variables})
    return pca.compile_term(pca.lam(*variables, body))
