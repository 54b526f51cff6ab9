import pytest

from realizer import formulas as F
from realizer import hf, pca, typesys
from realizer.corpus import formula_corpus, small_codes
from realizer.pca import IR, K, Num, Pair, Prim
from realizer.realizability import (build_eq_type, build_formula_type, build_mem_type, check,
                                    realizer_pool, synth_realizer)
from realizer.syntax import parse_term
from realizer.trees import Explicit, Intensional
from realizer.typesys import ext_enumerate, ext_member, mk_nat, mk_set
from realizer.verdict import FUEL, SAMPLING, UNBOUNDED

CODES = dict(small_codes())


def nat(n):
    return Intensional(mk_nat(n))


def tree(name):
    return Intensional(CODES[name])


def test_ir_realizes_self_equality():
    assert check(IR, F.Eq(nat(2), nat(2))).realized


def test_ir_fails_for_different_presentations():
    phi = F.Eq(nat(1), tree("dup1"))
    assert check(IR, phi).refuted
    assert check(synth_realizer(phi), phi).realized


def test_membership_examples():
    assert check(Pair(Num(0), IR), F.Mem(nat(0), nat(1))).realized
    assert check(Pair(Num(5), IR), F.Mem(nat(0), nat(1))).refuted
    assert check(Pair(Num(1), IR), F.Mem(nat(0), nat(2))).refuted
    assert synth_realizer(F.Mem(nat(1), nat(1))) is None


def test_synthesized_membership_passes():
    phi = F.Mem(nat(1), nat(2))
    assert check(synth_realizer(phi), phi).realized


def test_equality_needs_a_pair_even_for_empty_sets():
    assert check(IR, F.Eq(nat(0), nat(0))).realized
    assert check(Num(0), F.Eq(nat(0), nat(0))).refuted


def test_bottom_has_no_realizers():
    for e in realizer_pool(20):
        assert check(e, F.Bot()).refuted


def test_disjunction_tags():
    phi = F.Or(F.Bot(), F.Eq(nat(1), nat(1)))
    assert check(Pair(Num(1), IR), phi).realized
    assert check(Pair(Num(0), IR), phi).refuted
    assert check(Pair(Num(2), IR), phi).refuted


def test_bounded_quantifiers():
    assert check(pca.compile_term(parse_term("(lam x (p x ir))", {"ir": IR})),
                 F.BAll("x", nat(3), F.Mem("x", nat(3)))).realized
    assert check(Pair(Num(1), Pair(Num(0), IR)),
                 F.BEx("x", nat(3), F.Mem(nat(0), "x"))).realized
    assert check(Pair(Num(0), IR), F.BEx("x", nat(3), F.Mem(nat(0), "x"))).refuted


def test_explicit_and_hf_trees():
    t = Explicit(hf.hf_tree_nodes(hf.vn(2)))
    assert check(IR, F.Eq(t, t)).realized
    phi = F.Eq(hf.vn(2), nat(2))
    assert check(synth_realizer(phi), phi).realized


def test_implication_vacuous():
    assert check(K, F.Imp(F.Mem(nat(1), nat(1)), F.Bot())).realized


def test_implication_refuted_by_counterexample():
    phi = F.Imp(F.Eq(nat(0), nat(0)), F.Mem(nat(0), nat(0)))
    v = check(Prim("k", (Num(0),)), phi)
    assert v.refuted


def test_implication_unknown_when_only_sampled():
    phi = F.Imp(F.Eq(nat(1), nat(1)), F.Eq(nat(1), nat(1)))
    identity = pca.compile_term(parse_term("(lam x x)"))
    v = check(identity, phi)
    assert v.unknown and v.reason == SAMPLING


def test_divergent_realizer_is_out_of_fuel():
    loop = pca.fix(pca.compile_term(parse_term("(lam g n (g n))")))
    v = check(loop, F.BAll("x", nat(1), F.Eq("x", "x")), fuel=2_000)
    assert v.unknown and v.reason == FUEL


def test_unbounded_quantifier_needs_universe():
    # unbounded quantifiers are uniform: one realizer for every instance
    phi = F.UAll("x", F.Eq("x", "x"))
    assert check(IR, phi).unknown
    v = check(IR, phi, universe=[nat(0), nat(1), nat(2)])
    assert v.realized and v.relative
    assert str(v) == "Realized [universe-relative]"


def test_existential_over_universe():
    phi = F.UEx("x", F.Mem(nat(0), "x"))
    assert check(Pair(Num(0), IR), phi, universe=[nat(0), nat(1)]).realized
    assert check(Pair(Num(0), IR), phi, universe=[nat(0)]).refuted


def test_omega_self_equality_is_unbounded():
    omega = Intensional(typesys.mk_omega())
    v = check(IR, F.Eq(omega, omega))
    assert v.unknown and v.reason == UNBOUNDED


def test_free_variables_rejected():
    with pytest.raises(ValueError):
        check(IR, F.Eq("x", nat(0)))


def test_trace_is_preorder():
    trace = []
    check(Pair(IR, IR), F.And(F.Eq(nat(1), nat(1)), F.Eq(nat(0), nat(0))), trace=trace)
    assert trace[0].startswith("Realized")
    assert trace[1].startswith("  Realized")


# ---------------------------------------------------------------------------
# Types of formulas
# ---------------------------------------------------------------------------

def test_eq_type_sizes():
    # counted by hand: duplicated children multiply the matchings
    assert len(ext_enumerate(build_eq_type(mk_nat(1), mk_nat(1))).items) == 1
    assert len(ext_enumerate(build_eq_type(mk_nat(2), mk_nat(2))).items) == 1
    dup = mk_set([mk_nat(0), mk_nat(0)])
    assert len(ext_enumerate(build_eq_type(dup, dup)).items) == 16
    assert ext_enumerate(build_eq_type(mk_nat(1), mk_nat(2))).items == ()


def test_ir_is_in_eq_type():
    assert ext_member(build_eq_type(mk_nat(2), mk_nat(2)), IR).realized
    assert ext_member(build_eq_type(mk_nat(0), mk_nat(1)), IR).refuted


def test_mem_type():
    assert ext_member(build_mem_type(mk_nat(0), mk_nat(1)), Pair(Num(0), IR)).realized
    assert ext_enumerate(build_mem_type(mk_nat(1), mk_nat(1))).items == ()


@pytest.mark.parametrize("phi", formula_corpus()[:20])
def test_check_agrees_with_type(phi):
    t = build_formula_type(phi)
    cands = list(realizer_pool(40)) + list(ext_enumerate(t).items[:5])
    for e in cands:
        assert check(e, phi).status == ext_member(t, e).status


@pytest.mark.parametrize("phi", formula_corpus())
def test_synth_decides_truth(phi):
    r = synth_realizer(phi)
    assert (r is not None) == hf.truth(phi)
    if r is not None:
        assert check(r, phi).realized


def test_synth_implication():
    phi = F.Imp(F.Mem(nat(0), nat(1)), F.Mem(nat(0), nat(2)))
    r = synth_realizer(phi)
    # a constant function; the checker can only sample antecedent realizers
    assert r is not None and not check(r, phi).refuted
    assert check(r, phi).reason == SAMPLING
    assert synth_realizer(F.Imp(F.Eq(nat(0), nat(0)), F.Bot())) is None


def test_synth_rejects_unbounded():
    with pytest.raises(ValueError):
        synth_realizer(F.UAll("x", F.Bot()))


def test_pool_is_reproducible():
    assert realizer_pool(seed=3) == realizer_pool(seed=3)
    assert len(realizer_pool()) == 100
