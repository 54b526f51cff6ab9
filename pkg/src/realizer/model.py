"""Realizers for the set-existence axioms in the V-code model, with drivers.

Each ``AxiomRealizer`` carries the realizer as a term and as a compiled value.
A driver instantiates the axiom over a finite corpus, checks the realizer
against the instance with ``realizability.check`` and compares the set it
builds with the hereditarily finite oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import formulas as F
from . import hf, pca, typesys
from .corpus import small_codes, total_relations
from .pca import DEFAULT_FUEL, IR, OutOfFuelError, Pair, StuckError, Table, Value
from .realizability import check, formula_type_function, synth_realizer
from .syntax import parse_term
from .trees import M, Intensional, materialize, subtree
from .typesys import DEFAULT_CUTOFF, is_v_code, mk_nat, mk_omega
from .verdict import FUEL, Refuted, Unknown, Verdict


@dataclass(frozen=True)
class AxiomRealizer:
    name: str
    term: pca.Term
    value: Value
    statement: str


@dataclass(frozen=True)
class Instance:
    """One checked instance: the verdict plus whether the oracle agreed."""
    label: str
    verdict: Verdict
    oracle_ok: Optional[bool]
    detail: str = ""


@dataclass
class Report:
    axiom: str
    instances: list = field(default_factory=list)

    def counts(self) -> dict:
        out = {"realized": 0, "refuted": 0, "unknown": 0, "oracle_mismatch": 0}
        for inst in self.instances:
            out[inst.verdict.status] += 1
            if inst.oracle_ok is False:
                out["oracle_mismatch"] += 1
        return out

    @property
    def ok(self) -> bool:
        c = self.counts()
        return c["refuted"] == 0 and c["oracle_mismatch"] == 0


def _consts(**extra) -> dict:
    out = dict(typesys.TYPE_CONSTS)
    out["ir"] = IR
    out.update(extra)
    return out


def build_realizer(name: str, src: str, statement: str, **extra) -> AxiomRealizer:
    """Parse and compile a realizer; ``ir``, type constructors and ``extra`` are in scope."""
    term = parse_term(src, _consts(**extra))
    return AxiomRealizer(name, term, pca.compile_term(term), statement)


def _t(code: Value) -> Intensional:
    return Intensional(code)


def _run(thunk) -> tuple[Optional[Value], Optional[Verdict]]:
    try:
        return thunk(), None
    except StuckError as e:
        return None, Refuted(f"stuck at {e.site}")
    except OutOfFuelError:
        return None, Unknown(FUEL)


# ---------------------------------------------------------------------------
# Transitivity: every member of a set in M is in M
# ---------------------------------------------------------------------------

TRANSITIVITY = build_realizer(
    "transitivity",
    "(lam x y (p (q2 x y) ir))",
    "∀S∈M ∀T∈S (T ∈ M)",
)


def transitivity_instance(a: Value) -> F.Formula:
    return F.BAll("T", _t(a), F.Mem("T", M))


def verify_transitivity(corpus, fuel: int = DEFAULT_FUEL,
                        cutoff: int = DEFAULT_CUTOFF) -> Report:
    rep = Report("transitivity")
    for label, a in corpus:
        v, err = _run(lambda: pca.call(TRANSITIVITY.value, a, fuel=fuel))
        verdict = err or check(v, transitivity_instance(a), fuel, cutoff)
        rep.instances.append(Instance(label, verdict, None))
    return rep


# ---------------------------------------------------------------------------
# Bounded separation
# ---------------------------------------------------------------------------

SEPARATION_SRC = """
(lam a q
  (p (sup (sigma (q1 a) (lam x (phi (q2 a x) q)))
          (lam x (q2 a (proj0 x))))
     (p (lam x (p (p (proj0 x) ir) (proj1 x)))
        (lam x f (p (p x f) ir)))))
"""


def separation_realizer(phi: F.Formula, var: str = "x", param: str = "u") -> AxiomRealizer:
    """Realizer of ∀a∈M ∀u∈M ∃b∈M (b = {x ∈ a | phi(x, u)}) for a bounded phi."""
    fam = formula_type_function(phi, [var, param])
    return build_realizer("separation", SEPARATION_SRC,
                  "∀a∈M ∀u∈M ∃b∈M (∀x∈b (x∈a ∧ φ) ∧ ∀x∈a (φ → x∈b))", phi=fam)


def separation_body(phi: F.Formula, a, u, b, var: str = "x", param: str = "u") -> F.Formula:
    inst = F.substitute(phi, param, u)
    return F.And(F.BAll(var, b, F.And(F.Mem(var, a), inst)),
                 F.BAll(var, a, F.Imp(inst, F.Mem(var, b))))


SEPARATION_FORMULAS = [
    ("x∈u", F.Mem("x", "u")),
    ("⊥", F.Bot()),
    ("x=x", F.Eq("x", "x")),
    ("u∈x", F.Mem("u", "x")),
    ("∃y∈x y=u", F.BEx("y", "x", F.Eq("y", "u"))),
]


def verify_separation(corpus=None, params=None, formulas=None, fuel: int = DEFAULT_FUEL,
                      cutoff: int = DEFAULT_CUTOFF) -> Report:
    corpus = corpus if corpus is not None else small_codes()[:6]
    params = params if params is not None else [(f"nat{n}", mk_nat(n)) for n in range(3)]
    formulas = formulas if formulas is not None else SEPARATION_FORMULAS
    rep = Report("separation")
    for fname, phi in formulas:
        ax = separation_realizer(phi)
        for alabel, a in corpus:
            for plabel, q in params:
                label = f"{fname} a={alabel} u={plabel}"
                v, err = _run(lambda: pca.call(ax.value, a, q, fuel=fuel))
                if err:
                    rep.instances.append(Instance(label, err, False))
                    continue
                b = v.fst
                body = separation_body(phi, _t(a), _t(q), "b")
                verdict = check(v, F.BEx("b", M, body), fuel, cutoff)
                want = hf.HFSet(x for x in hf.decode(_t(a))
                                if hf.truth(phi, {"x": x, "u": hf.decode(_t(q))}))
                got = _decode_code(b, fuel)
                rep.instances.append(Instance(label, verdict, got == want,
                                              f"b = {got!r}, expected {want!r}"))
    return rep


def _decode_code(code: Value, fuel: int) -> Optional[hf.HFSet]:
    if not is_v_code(code, fuel).realized:
        return None
    return hf.decode(_t(code))


# ---------------------------------------------------------------------------
# Union
# ---------------------------------------------------------------------------

UNION = build_realizer(
    "union",
    """
    (lam a
      (p (sup (sigma (q1 a) (lam x (q1 (q2 a x))))
              (lam z (q2 (q2 a (proj0 z)) (proj1 z))))
         (p (lam x y (p (p x y) ir))
            (lam y (p (proj0 y) (p (proj1 y) ir))))))
    """,
    "∀a∈M ∃b∈M (∀x∈a ∀y∈x (y∈b) ∧ ∀y∈b ∃x∈a (y∈x))",
)


def union_body(a, b) -> F.Formula:
    return F.And(F.BAll("x", a, F.BAll("y", "x", F.Mem("y", b))),
                 F.BAll("y", b, F.BEx("x", a, F.Mem("y", "x"))))


def verify_union(corpus, fuel: int = DEFAULT_FUEL, cutoff: int = DEFAULT_CUTOFF) -> Report:
    rep = Report("union")
    for label, a in corpus:
        v, err = _run(lambda: pca.call(UNION.value, a, fuel=fuel))
        if err:
            rep.instances.append(Instance(label, err, False))
            continue
        verdict = check(v, F.BEx("b", M, union_body(_t(a), "b")), fuel, cutoff)
        want = hf.union(hf.decode(_t(a)))
        got = _decode_code(v.fst, fuel)
        rep.instances.append(Instance(label, verdict, got == want,
                                      f"b = {got!r}, expected {want!r}"))
    return rep


# ---------------------------------------------------------------------------
# Infinity
# ---------------------------------------------------------------------------

INFINITY = AxiomRealizer(
    "infinity",
    parse_term("(p omega ir)", _consts(omega=mk_omega())),
    Pair(mk_omega(), IR),
    "ω ∈ M, with 𝔱(ω)↓n = 𝔱(n) for every numeral n",
)


def verify_infinity(cutoff: int = 6, fuel: int = DEFAULT_FUEL) -> Report:
    """Check ω up to ``cutoff`` numerals: its children are the finite ordinals."""
    rep = Report("infinity")
    omega = _t(mk_omega())
    rep.instances.append(Instance("ω is a V-code", is_v_code(mk_omega(), fuel, cutoff), None))
    for n in range(cutoff + 1):
        num = pca.Num(n)
        child = subtree(omega, num, fuel)
        nat_tree = _t(mk_nat(n))
        verdict = check(IR, F.Eq(child, nat_tree), fuel, cutoff)
        same = (materialize(child, fuel).nodes == hf.numeral_tree(n)
                and hf.decode(child) == hf.vn(n))
        rep.instances.append(Instance(f"ω↓{n} = {n}", verdict, same))
        rep.instances.append(Instance(f"{n} ∈ ω", check(Pair(num, IR), F.Mem(nat_tree, omega),
                                                        fuel, cutoff), None))
    return rep


# ---------------------------------------------------------------------------
# Strong collection
# ---------------------------------------------------------------------------

STRONG_COLLECTION = build_realizer(
    "strong-collection",
    """
    (lam a f
      (p (sup (q1 a) (lam x (proj0 (f x))))
         (p (lam x (p x (proj1 (f x))))
            (lam x (p x (proj1 (f x)))))))
    """,
    "∀a∈M (∀x∈a ∃y∈M ⟨x,y⟩∈R → ∃b∈M (R: a ⇄ b))",
)


def relation_tree(r: hf.HFSet) -> Intensional:
    return _t(hf.to_vcode(r))


def _images(r: hf.HFSet, u: hf.HFSet) -> list:
    """Every v with ⟨u, v⟩ ∈ r, in canonical order."""
    return sorted({v for p in r for v in _second(p, u)}, key=hf._key)


def _second(p: hf.HFSet, u: hf.HFSet):
    """v when p = ⟨u, v⟩."""
    singles = [w for w in p if len(w) == 1]
    if not singles or next(iter(singles[0])) != u:
        return []
    doubles = [w for w in p if len(w) == 2]
    if not doubles:
        return [u]
    return [next(iter(doubles[0] - {u}))]


def collection_hypothesis(a, r_tree) -> F.Formula:
    return F.BAll("x", a, F.BEx("y", M, F.pair_in("x", "y", r_tree)))


def collection_realizer_for(a: Value, r: hf.HFSet, fuel: int = DEFAULT_FUEL) -> Optional[Value]:
    """A table realizing ∀x∈𝔱(a) ∃y∈M ⟨x,y⟩∈R, or None if R is not total on a."""
    rt = relation_tree(r)
    ta = _t(a)
    rows = []
    for x in typesys.ext_enumerate(typesys.sup_parts(a)[0], None, fuel).items:
        child = subtree(ta, x, fuel, check=False)
        ys = _images(r, hf.decode(child))
        if not ys:
            return None
        y = hf.to_vcode(ys[0])
        w = synth_realizer(F.pair_in(child, _t(y), rt), fuel)
        if w is None:
            return None
        rows.append((x, Pair(y, w)))
    return Table(tuple(rows))


def _subimage_oracle(a: hf.HFSet, b: hf.HFSet, r: hf.HFSet) -> bool:
    return (all(any(hf.kpair(x, y) in r for y in b) for x in a)
            and all(any(hf.kpair(x, y) in r for x in a) for y in b))


STRONG_COLLECTION_CASES = [
    ("nat2 swap", mk_nat(2), hf.HFSet({hf.kpair(hf.vn(0), hf.vn(1)), hf.kpair(hf.vn(1), hf.vn(0))})),
    ("empty", mk_nat(0), hf.EMPTY),
    ("nat1 loop", mk_nat(1), hf.HFSet({hf.kpair(hf.vn(0), hf.vn(0))})),
]


def strong_collection_cases(corpus=None) -> list:
    """The fixed examples plus, for each corpus set, the successor map and a
    relation sending everything to both 0 and 1."""
    out = list(STRONG_COLLECTION_CASES)
    corpus = corpus if corpus is not None else small_codes()
    for label, a in corpus:
        s = hf.decode(_t(a))
        succ = hf.HFSet(hf.kpair(x, hf.HFSet(x | {x})) for x in s)
        both = hf.HFSet(hf.kpair(x, hf.vn(k)) for x in s for k in (0, 1))
        out.append((f"{label} succ", a, succ))
        out.append((f"{label} 0/1", a, both))
    return out


def verify_strong_collection(cases=None, fuel: int = DEFAULT_FUEL,
                             cutoff: int = DEFAULT_CUTOFF) -> Report:
    rep = Report("strong-collection")
    for label, a, r in (cases if cases is not None else strong_collection_cases()):
        ta, rt = _t(a), relation_tree(r)
        f = collection_realizer_for(a, r, fuel)
        if f is None:
            rep.instances.append(Instance(label, Refuted("relation not total"), None))
            continue
        hyp = check(f, collection_hypothesis(ta, rt), fuel, cutoff)
        if not hyp.realized:
            rep.instances.append(Instance(label + " (hypothesis)", hyp, None))
            continue
        v, err = _run(lambda: pca.call(STRONG_COLLECTION.value, a, f, fuel=fuel))
        if err:
            rep.instances.append(Instance(label, err, False))
            continue
        verdict = check(v, F.BEx("b", M, F.subimage(ta, "b", rt)), fuel, cutoff)
        got = _decode_code(v.fst, fuel)
        ok = got is not None and _subimage_oracle(hf.decode(ta), got, r)
        rep.instances.append(Instance(label, verdict, ok, f"b = {got!r}"))
    return rep


# ---------------------------------------------------------------------------
# Subset collection
# ---------------------------------------------------------------------------

SUBSET_COLLECTION = build_realizer(
    "subset-collection",
    """
    (lam a b
      (p (sup (arrow (q1 a) (q1 b)) (lam z (sup (q1 a) (lam x (q2 b (z x))))))
         (lam f (p (lam x (proj0 (f x)))
                   (p (lam x (p x (proj1 (f x))))
                      (lam x (p x (proj1 (f x)))))))))
    """,
    "∀a∈M ∀b∈M ∃c∈M ∀R (R: a ⇉ b → ∃d∈c (R: a ⇄ d))",
)


def subset_hypothesis(a, b, r_tree) -> F.Formula:
    return F.BAll("x", a, F.BEx("y", b, F.pair_in("x", "y", r_tree)))


def subset_realizer_for(a: Value, b: Value, r: hf.HFSet,
                        fuel: int = DEFAULT_FUEL) -> Optional[Value]:
    """A table realizing ∀x∈𝔱(a) ∃y∈𝔱(b) ⟨x,y⟩∈R, or None."""
    ta, tb, rt = _t(a), _t(b), relation_tree(r)
    rows = []
    for x in typesys.ext_enumerate(typesys.sup_parts(a)[0], None, fuel).items:
        child = subtree(ta, x, fuel, check=False)
        w = synth_realizer(F.BEx("y", tb, F.pair_in(child, "y", rt)), fuel)
        if w is None:
            return None
        rows.append((x, w))
    return Table(tuple(rows))


def subset_collection_pairs() -> list:
    """(a, b) with index types N_0..N_3, including a non-injective presentation."""
    e = typesys.mk_set([])
    codes = [(f"nat{n}", mk_nat(n)) for n in range(4)]
    codes.append(("dup2", typesys.mk_set([e, e])))
    return [(la, a, lb, b) for la, a in codes for lb, b in codes]


def verify_subset_collection(pairs=None, limit: int | None = None, fuel: int = DEFAULT_FUEL,
                             cutoff: int = DEFAULT_CUTOFF, seed: int = 0) -> Report:
    """For each (a, b) and every total relation R from a to b (at most ``limit``)."""
    rep = Report("subset-collection")
    for la, a, lb, b in (pairs if pairs is not None else subset_collection_pairs()):
        v, err = _run(lambda: pca.call(SUBSET_COLLECTION.value, a, b, fuel=fuel))
        if err:
            rep.instances.append(Instance(f"a={la} b={lb}", err, False))
            continue
        c, g = v.fst, v.snd
        cv = is_v_code(c, fuel, cutoff)
        rep.instances.append(Instance(f"a={la} b={lb}: c ∈ M", cv, None))
        if not cv.realized:
            continue
        ta, tb, tc = _t(a), _t(b), _t(c)
        for i, r in enumerate(total_relations(hf.decode(ta), hf.decode(tb), limit, seed)):
            label = f"a={la} b={lb} R#{i}"
            rt = relation_tree(r)
            f = subset_realizer_for(a, b, r, fuel)
            hyp = check(f, subset_hypothesis(ta, tb, rt), fuel, cutoff) if f is not None \
                else Refuted("relation not total")
            if not hyp.realized:
                rep.instances.append(Instance(label + " (hypothesis)", hyp, False))
                continue
            w, err = _run(lambda: pca.call(g, f, fuel=fuel))
            if err:
                rep.instances.append(Instance(label, err, False))
                continue
            verdict = check(w, F.BEx("d", tc, F.subimage(ta, "d", rt)), fuel, cutoff)
            d = subtree(tc, w.fst, fuel, check=False) if verdict.realized else None
            ok = d is not None and _subimage_oracle(hf.decode(ta), hf.decode(d), r)
            rep.instances.append(Instance(label, verdict, ok))
    return rep


AXIOMS = {
    "transitivity": TRANSITIVITY,
    "union": UNION,
    "infinity": INFINITY,
    "strong-collection": STRONG_COLLECTION,
    "subset-collection": SUBSET_COLLECTION,
}

DRIVERS: dict[str, Callable] = {
    "transitivity": verify_transitivity,
    "separation": verify_separation,
    "union": verify_union,
    "infinity": verify_infinity,
    "strong-collection": verify_strong_collection,
    "subset-collection": verify_subset_collection,
}
