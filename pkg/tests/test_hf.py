import pytest
from hypothesis import given
from hypothesis import strategies as st

from realizer import formulas as F
from realizer import hf
from realizer.hf import EMPTY, HFSet
from realizer.trees import Explicit, Intensional
from realizer.typesys import mk_nat, mk_set

ALL3 = hf.all_hf(3)
hf_sets = st.sampled_from(ALL3)


def test_all_hf_counts():
    # 1, 2, 4, 16 sets of rank at most 0, 1, 2, 3
    assert [len(hf.all_hf(r)) for r in range(4)] == [1, 2, 4, 16]


def test_von_neumann():
    assert hf.vn(0) == EMPTY
    assert hf.vn(2) == HFSet({EMPTY, HFSet({EMPTY})})
    assert hf.rank(hf.vn(4)) == 4


def test_kpair_degenerate():
    a = hf.vn(1)
    assert hf.kpair(a, a) == HFSet({HFSet({a})})


def test_union():
    assert hf.union(hf.vn(3)) == hf.vn(2)
    assert hf.union(HFSet({hf.vn(1)})) == hf.vn(1)


def test_repr_is_canonical():
    assert repr(hf.vn(2)) == "{{}, {{}}}"
    assert hf.vn(1).sexp() == "(set (set))"


@pytest.mark.parametrize("n", range(5))
def test_decode_numeral(n):
    assert hf.decode(Intensional(mk_nat(n))) == hf.vn(n)


def test_decode_collapses_duplicates():
    e = mk_set([])
    assert hf.decode(Intensional(mk_set([e, e, e]))) == hf.vn(1)


@given(hf_sets)
def test_vcode_round_trip(s):
    assert hf.decode(Intensional(hf.to_vcode(s))) == s


@given(hf_sets)
def test_explicit_tree_round_trip(s):
    assert hf.decode(Explicit(hf.hf_tree_nodes(s))) == s


def test_truth_atoms():
    env = {"x": hf.vn(1), "y": hf.vn(2)}
    assert hf.truth(F.Mem("x", "y"), env)
    assert not hf.truth(F.Mem("y", "x"), env)
    assert not hf.truth(F.Eq("x", "y"), env)


def test_truth_quantifiers():
    two = Intensional(mk_nat(2))
    assert hf.truth(F.BAll("x", two, F.BAll("y", "x", F.Eq("y", hf.vn(0)))))
    assert hf.truth(F.BEx("x", two, F.Mem(hf.vn(0), "x")))
    assert not hf.truth(F.BEx("x", hf.vn(0), F.Eq("x", "x")))


def test_truth_connectives():
    t, f = F.Eq(EMPTY, EMPTY), F.Bot()
    assert hf.truth(F.Or(f, t)) and not hf.truth(F.And(t, f))
    assert hf.truth(F.Imp(f, f)) and not hf.truth(F.Imp(t, f))


@given(hf_sets, hf_sets)
def test_pair_membership_formula(a, b):
    r = HFSet({hf.kpair(a, b)})
    assert hf.truth(F.pair_in(a, b, r))
    assert hf.truth(F.pair_in(b, a, r)) == (a == b)


def test_truth_trace():
    trace = []
    hf.truth(F.BEx("x", hf.vn(2), F.Eq("x", hf.vn(1))), {}, trace)
    assert any("witness x = {{}}" in line for line in trace)


def test_truth_rejects_unbounded():
    with pytest.raises(ValueError):
        hf.truth(F.UAll("x", F.Eq("x", "x")))
