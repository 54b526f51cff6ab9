import pytest

from realizer import formulas as F
from realizer import hf, model, pca, typesys
from realizer.pca import Num
from realizer.realizability import check
from realizer.trees import M, Intensional, materialize, subtree
from realizer.typesys import ext_enumerate, mk_nat, mk_set


def t(code):
    return Intensional(code)


def decode(code):
    return hf.decode(t(code))


def assert_clean(rep):
    c = rep.counts()
    assert c["refuted"] == 0 and c["oracle_mismatch"] == 0, rep.instances


# ---------------------------------------------------------------------------
# Transitivity
# ---------------------------------------------------------------------------

def test_transitivity_example():
    v = pca.call(model.TRANSITIVITY.value, mk_nat(3))
    assert check(v, model.transitivity_instance(mk_nat(3))).realized


def test_transitivity_driver():
    rep = model.verify_transitivity([(f"nat{n}", mk_nat(n)) for n in range(5)])
    assert rep.counts()["realized"] == 5


# ---------------------------------------------------------------------------
# Separation
# ---------------------------------------------------------------------------

def separate(phi, a, u):
    ax = model.separation_realizer(phi)
    v = pca.call(ax.value, a, u)
    verdict = check(v, F.BEx("b", M, model.separation_body(phi, t(a), t(u), "b")))
    return decode(v.fst), verdict


@pytest.mark.parametrize("phi,expected", [
    (F.Mem("x", "u"), hf.vn(2)),
    (F.Bot(), hf.EMPTY),
    (F.Eq("x", "x"), hf.vn(3)),
])
def test_separation_examples(phi, expected):
    b, verdict = separate(phi, mk_nat(3), mk_nat(2))
    assert b == expected
    assert not verdict.refuted


def test_separation_witness_must_come_from_the_index():
    # taking the membership witness from the formula realizer is wrong in general
    wrong_src = model.SEPARATION_SRC.replace("(p (p (proj0 x) ir) (proj1 x))",
                                             "(p (p (proj0 (proj1 x)) ir) (proj1 x))")
    phi = F.Mem("x", "u")
    ax = model.build_realizer("wrong", wrong_src, "",
                              phi=model.formula_type_function(phi, ["x", "u"]))
    a = mk_set([mk_nat(1), mk_nat(2)])
    v = pca.call(ax.value, a, mk_nat(3))
    assert check(v, F.BEx("b", M, model.separation_body(phi, t(a), t(mk_nat(3)), "b"))).refuted


def test_separation_driver():
    rep = model.verify_separation()
    assert_clean(rep)
    assert {i.verdict.reason for i in rep.instances if i.verdict.unknown} <= {"implication-sampling"}


# ---------------------------------------------------------------------------
# Union
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("a,expected", [
    (mk_set([mk_nat(1)]), hf.vn(1)),
    (mk_nat(1), hf.EMPTY),
    (mk_nat(3), hf.vn(2)),
])
def test_union_examples(a, expected):
    v = pca.call(model.UNION.value, a)
    assert decode(v.fst) == expected
    assert check(v, F.BEx("b", M, model.union_body(t(a), "b"))).realized


def test_union_driver():
    assert_clean(model.verify_union([(f"nat{n}", mk_nat(n)) for n in range(5)]))


# ---------------------------------------------------------------------------
# Infinity
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(7))
def test_omega_children_are_numerals(n):
    child = subtree(t(typesys.mk_omega()), Num(n))
    assert materialize(child).nodes == hf.numeral_tree(n)


def test_infinity_driver():
    rep = model.verify_infinity(cutoff=6)
    assert_clean(rep)
    assert all(i.verdict.realized for i in rep.instances if i.label != "ω is a V-code")


# ---------------------------------------------------------------------------
# Strong collection
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("label,a,r,expected", [
    (*model.STRONG_COLLECTION_CASES[0], hf.vn(2)),
    (*model.STRONG_COLLECTION_CASES[1], hf.EMPTY),
    (*model.STRONG_COLLECTION_CASES[2], hf.vn(1)),
])
def test_strong_collection_examples(label, a, r, expected):
    f = model.collection_realizer_for(a, r)
    rt = model.relation_tree(r)
    assert check(f, model.collection_hypothesis(t(a), rt)).realized
    v = pca.call(model.STRONG_COLLECTION.value, a, f)
    assert decode(v.fst) == expected
    assert check(v, F.BEx("b", M, F.subimage(t(a), "b", rt))).realized


def test_strong_collection_applies_f_to_the_index():
    wrong = model.build_realizer("wrong", """
        (lam a f (p (sup (q1 a) (lam x (proj0 (f (q2 a x)))))
                    (p (lam x (p x (proj1 (f x)))) (lam x (p x (proj1 (f x)))))))""", "")
    label, a, r = model.STRONG_COLLECTION_CASES[0]
    f = model.collection_realizer_for(a, r)
    v = pca.call(wrong.value, a, f)
    assert check(v, F.BEx("b", M, F.subimage(t(a), "b", model.relation_tree(r)))).refuted


def test_strong_collection_driver():
    assert_clean(model.verify_strong_collection())


# ---------------------------------------------------------------------------
# Subset collection
# ---------------------------------------------------------------------------

def test_subset_collection_c_has_one_child_per_function():
    v = pca.call(model.SUBSET_COLLECTION.value, mk_nat(2), mk_nat(2))
    idx, _ = typesys.sup_parts(v.fst)
    assert len(ext_enumerate(idx).items) == 4
    assert typesys.is_v_code(v.fst).realized


def test_subset_collection_witness_is_the_index_function():
    wrong = model.build_realizer("wrong", """
        (lam a b
          (p (sup (arrow (q1 a) (q1 b)) (lam z (sup (q1 a) (lam x (q2 b (z x))))))
             (lam f (p f (p (lam x (p x (proj1 (f x)))) (lam x (p x (proj1 (f x)))))))))""", "")
    a = b = mk_nat(2)
    r = hf.HFSet({hf.kpair(hf.vn(0), hf.vn(1)), hf.kpair(hf.vn(1), hf.vn(0))})
    f = model.subset_realizer_for(a, b, r)
    rt = model.relation_tree(r)
    c, g = pca.call(wrong.value, a, b).fst, pca.call(wrong.value, a, b).snd
    w = pca.call(g, f)
    assert check(w, F.BEx("d", t(c), F.subimage(t(a), "d", rt))).refuted


def test_subset_collection_driver_small():
    pairs = [("nat1", mk_nat(1), "nat2", mk_nat(2)), ("nat2", mk_nat(2), "nat0", mk_nat(0))]
    rep = model.verify_subset_collection(pairs)
    assert_clean(rep)
    # 3 total relations from 1 to 2, none from 2 to 0
    assert len(rep.instances) == 2 + 3


def test_report_counts():
    rep = model.Report("x")
    assert rep.ok and rep.counts()["realized"] == 0
