import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realizer import pca
from realizer.pca import (IR, K, S, App, Const, Converged, Lam, Lit, Num, OutOfFuel, Pair,
                          Prim, Stuck, Table, Var, app, evaluate, lam)
from realizer.syntax import parse_term

from strategies import open_terms, values


def ev(src, fuel=pca.DEFAULT_FUEL):
    return evaluate(parse_term(src), fuel)


def test_k_example():
    assert ev("(app (app k 1) 2)") == Converged(Num(1))


def test_skk_is_identity():
    assert ev("(s k k 7)") == Converged(Num(7))


def test_pairing_and_projections():
    assert ev("(proj0 (p 3 4))") == Converged(Num(3))
    assert ev("(proj1 (p 3 4))") == Converged(Num(4))
    assert ev("(q1 (p 5 (p 1 2)))") == Converged(Num(1))
    assert ev("(q2 (p 5 (p 1 2)))") == Converged(Num(2))


def test_stuck_sites():
    assert isinstance(ev("(1 2)"), Stuck)
    assert isinstance(ev("(proj0 3)"), Stuck)
    assert isinstance(ev("(q1 (p 1 2))"), Stuck)
    assert isinstance(ev("((table (0 1)) 1)"), Stuck)


def test_table_lookup():
    assert ev("((table (0 5) (1 6)) 1)") == Converged(Num(6))


def test_partial_application_is_a_value():
    assert ev("(s k)") == Converged(Prim("s", (K,)))
    assert ev("(p 1)") == Converged(Prim("p", (Num(1),)))


def test_lambda_closure_keeps_only_free_vars():
    v = ev("((lam x y x) 3)").value
    assert v.env == (("x", Num(3)),)


def test_omega_runs_out_of_fuel():
    assert ev("((lam x (x x)) (lam x (x x)))", fuel=10_000) == OutOfFuel()


def test_compile_term_rejects_free_variables():
    with pytest.raises(pca.EvalError):
        pca.compile_term(App(Var("free"), Lit(Num(0))))


def test_ir_self_reproduces():
    assert pca.call(IR.fst, Num(4)) == Pair(Num(4), IR)
    assert pca.call(IR.snd, IR) == Pair(IR, IR)
    assert pca.mk_ir() == IR


def test_tuples():
    assert pca.tup(0) == Num(0)
    assert pca.tup(1, Num(3)) == Pair(Num(1), Num(3))
    assert pca.tup(5, Num(1), Num(2)) == Pair(Num(5), Pair(Num(1), Num(2)))
    t = pca.tup(4, Num(7), K)
    assert pca.q1(t) == Num(7) and pca.q2(t) == K


COUNT = parse_term("(lam g n ((ifz n (lam d 0) (lam d (succ (g (pred n))))) 0))")


@pytest.mark.parametrize("n", range(6))
def test_fix_recursion_counts_down(n):
    f = pca.fix(pca.compile_term(COUNT))
    assert pca.apply(f, Num(n)) == Converged(Num(n))


@pytest.mark.parametrize("n", range(6))
def test_fix_countdown_reaches_zero(n):
    down = parse_term("(lam g y ((ifz y (lam d 0) (lam d (g (pred y)))) 0))")
    assert pca.apply(pca.fix(pca.compile_term(down)), Num(n)) == Converged(Num(0))


def test_fix_of_constant_functional():
    const = pca.compile_term(parse_term("(lam g y 7)"))
    assert pca.apply(pca.fix(const), IR) == Converged(Num(7))


def test_fix_divergence_is_out_of_fuel():
    loop = pca.fix(pca.compile_term(parse_term("(lam g n (g n))")))
    assert pca.apply(loop, Num(0), fuel=5_000) == OutOfFuel()


# ---------------------------------------------------------------------------
# Bracket abstraction
# ---------------------------------------------------------------------------

def test_bracket_abstraction_uses_only_s_and_k():
    t = pca.bracket_abstract(app(Var("x"), Var("y"), Var("x")), "x")

    def names(u):
        if isinstance(u, App):
            return names(u.fun) | names(u.arg)
        return {u.name} if isinstance(u, (Const, Var)) else set()

    assert names(t) <= {"s", "k", "y"}


@given(values)
def test_bracket_abstraction_beta(v):
    body = app(Const("p"), Var("x"), app(Const("k"), Var("x"), Lit(Num(1))))
    abstracted = pca.compile_term(pca.bracket_abstract(body, "x"))
    assert pca.apply(abstracted, v) == evaluate(pca.subst(body, "x", Lit(v)))


# ---------------------------------------------------------------------------
# Laws
# ---------------------------------------------------------------------------

def _apps(*vs):
    return app(*(Lit(v) for v in vs))


@given(values, values)
def test_k_law(x, y):
    assert evaluate(_apps(K, x, y)) == Converged(x)


@settings(max_examples=200)
@given(values, values, values)
def test_s_law(x, y, z):
    # s x y z spends exactly three more applications than x z (y z)
    rhs = evaluate(App(_apps(x, z), _apps(y, z)), fuel=2_000)
    lhs = evaluate(_apps(S, x, y, z), fuel=2_003)
    assert lhs == rhs


@given(values, values)
def test_pairing_law(a, b):
    assert evaluate(app(Const("proj0"), _apps(pca.P, a, b))) == Converged(a)
    assert evaluate(app(Const("proj1"), _apps(pca.P, a, b))) == Converged(b)


@settings(max_examples=200)
@given(open_terms, values)
def test_beta_law(body, v):
    lhs = evaluate(App(Lam("x", body), Lit(v)), fuel=2_001)
    rhs = evaluate(pca.subst(body, "x", Lit(v)), fuel=2_000)
    assert lhs == rhs


@settings(max_examples=100)
@given(values, values)
def test_fix_law(f, a):
    # r f a reaches f (r f) a after two applications
    lhs = evaluate(_apps(pca.R, f, a), fuel=2_002)
    rhs = evaluate(_apps(f, pca.fix(f), a), fuel=2_000)
    assert lhs == rhs


@given(open_terms, values)
def test_determinism(body, v):
    t = pca.subst(body, "x", Lit(v))
    assert evaluate(t, fuel=500) == evaluate(t, fuel=500)


@given(open_terms, values, st.integers(min_value=1, max_value=50))
def test_fuel_monotonicity(body, v, fuel):
    t = pca.subst(body, "x", Lit(v))
    small = evaluate(t, fuel=fuel)
    if not isinstance(small, OutOfFuel):
        assert evaluate(t, fuel=fuel * 4) == small


def test_lam_helper_curries():
    t = lam("a", "b", Var("a"))
    assert pca.call(pca.compile_term(t), Num(1), Num(2)) == Num(1)


def test_table_is_stuck_outside_domain():
    assert isinstance(pca.apply(Table(((Num(0), Num(1)),)), Num(3)), Stuck)
