"""Reproducible corpora of V-codes, formulas and relations used by drivers and tests."""
from __future__ import annotations

import itertools
import random

from . import formulas as F
from . import hf
from .pca import Num, Pair, Table
from .trees import Intensional
from .typesys import fin, mk_nat, mk_pair_set, mk_set, sigma, sum_type, sup


def _multisets(items, max_size):
    for size in range(max_size + 1):
        yield from itertools.combinations_with_replacement(items, size)


def standard_codes(seed: int = 0) -> list:
    """About 200 (name, V-code) pairs: hereditarily finite codes up to depth 3
    over N_0..N_3 (including non-injective presentations), the HF sets of rank
    at most 3, sum- and Σ-indexed codes, Kuratowski pairs and nat 0..4."""
    out = []
    seen = set()

    def add(name, code):
        if code not in seen:
            seen.add(code)
            out.append((name, code))

    for n in range(5):
        add(f"nat{n}", mk_nat(n))
    for i, s in enumerate(hf.all_hf(3)):
        add(f"hf{i}", hf.to_vcode(s))

    depth1 = [mk_set([mk_set([])] * m) for m in range(4)]
    depth1[0] = mk_set([])
    depth2 = [mk_set(ms) for ms in _multisets(depth1, 3)]
    for i, code in enumerate(depth2):
        add(f"d2_{i}", code)
    rng = random.Random(seed)
    depth3 = [ms for ms in _multisets(range(len(depth2)), 2) if ms]
    rng.shuffle(depth3)
    for i, ms in enumerate(depth3[:138]):
        add(f"d3_{i}", mk_set([depth2[j] for j in ms]))

    # index types other than N_n
    e, one, two = mk_nat(0), mk_nat(1), mk_nat(2)
    add("sum_1_2", sup(sum_type(fin(1), fin(2)),
                       Table(((Pair(Num(0), Num(0)), e), (Pair(Num(1), Num(0)), one),
                              (Pair(Num(1), Num(1)), two)))))
    add("sum_0_1", sup(sum_type(fin(0), fin(1)), Table(((Pair(Num(1), Num(0)), two),))))
    sig_fam = Table(((Num(0), fin(0)), (Num(1), fin(1)), (Num(2), fin(2))))
    add("sigma_3", sup(sigma(fin(3), sig_fam),
                       Table(((Pair(Num(1), Num(0)), e), (Pair(Num(2), Num(0)), one),
                              (Pair(Num(2), Num(1)), two)))))
    for a, b in itertools.product(range(3), repeat=2):
        add(f"pair_{a}_{b}", mk_pair_set(mk_nat(a), mk_nat(b)))
    return out


def small_codes() -> list:
    """A compact parameter corpus for formula and driver instances."""
    e = mk_set([])
    return [
        ("nat0", mk_nat(0)), ("nat1", mk_nat(1)), ("nat2", mk_nat(2)), ("nat3", mk_nat(3)),
        ("dup1", mk_set([e, e])),
        ("one_two", mk_set([mk_nat(1), mk_nat(2)])),
        ("pair_0_1", mk_pair_set(mk_nat(0), mk_nat(1))),
        ("sum_1_2", dict(standard_codes())["sum_1_2"]),
    ]


def formula_corpus() -> list:
    """Bounded, implication-free closed formulas over small V-code parameters."""
    codes = dict(small_codes())
    T = {k: Intensional(v) for k, v in codes.items()}
    names = ["nat0", "nat1", "nat2", "nat3", "dup1", "one_two", "pair_0_1", "sum_1_2"]
    out = []
    for a, b in [("nat0", "nat0"), ("nat1", "dup1"), ("nat2", "nat2"), ("nat1", "nat2"),
                 ("nat3", "nat3"), ("one_two", "nat2"), ("pair_0_1", "nat2"),
                 ("sum_1_2", "nat3"), ("dup1", "nat1")]:
        out.append(F.Eq(T[a], T[b]))
    for a, b in [("nat0", "nat1"), ("nat1", "nat1"), ("nat1", "nat2"), ("nat2", "nat3"),
                 ("dup1", "nat2"), ("nat2", "one_two"), ("nat0", "pair_0_1"),
                 ("nat1", "sum_1_2"), ("nat3", "nat2")]:
        out.append(F.Mem(T[a], T[b]))
    for a in names[:6]:
        out.append(F.BAll("x", T[a], F.Mem("x", T["nat3"])))
        out.append(F.BEx("x", T[a], F.Eq("x", T["nat1"])))
        out.append(F.BAll("x", T[a], F.BEx("y", T["nat3"], F.Mem("x", "y"))))
    out += [
        F.And(F.Eq(T["nat1"], T["dup1"]), F.Mem(T["nat0"], T["nat2"])),
        F.And(F.Mem(T["nat2"], T["nat2"]), F.Eq(T["nat0"], T["nat0"])),
        F.Or(F.Mem(T["nat2"], T["nat1"]), F.Mem(T["nat1"], T["nat2"])),
        F.Or(F.Eq(T["nat1"], T["nat1"]), F.Bot()),
        F.Or(F.Bot(), F.Eq(T["nat2"], T["one_two"])),
        F.Bot(),
        F.BAll("x", T["nat3"], F.Or(F.Eq("x", T["nat0"]), F.BEx("y", "x", F.Eq("y", T["nat0"])))),
        F.BAll("x", T["pair_0_1"], F.BAll("y", "x", F.Eq("y", T["nat0"]))),
        F.BEx("x", T["pair_0_1"], F.BAll("y", "x", F.Eq("y", T["nat0"]))),
        F.BAll("x", T["one_two"], F.BAll("y", "x", F.Mem("y", T["nat2"]))),
        F.BEx("x", T["sum_1_2"], F.Mem(T["nat1"], "x")),
        F.BAll("x", T["nat2"], F.BAll("y", T["nat2"], F.Or(F.Mem("x", "y"), F.Or(F.Eq("x", "y"), F.Mem("y", "x"))))),
        F.BEx("x", T["nat3"], F.And(F.Mem(T["nat1"], "x"), F.BAll("y", "x", F.Mem("y", T["nat2"])))),
        F.BAll("x", T["nat0"], F.Bot()),
        F.BEx("x", T["nat0"], F.Eq("x", "x")),
        F.pair_in(T["nat0"], T["nat1"], Intensional(hf.to_vcode(hf.HFSet({hf.kpair(hf.vn(0), hf.vn(1))})))),
        F.pair_in(T["nat1"], T["nat0"], Intensional(hf.to_vcode(hf.HFSet({hf.kpair(hf.vn(0), hf.vn(1))})))),
    ]
    return out


def total_relations(dom: hf.HFSet, cod: hf.HFSet, limit: int | None = None, seed: int = 0) -> list:
    """Relations R ⊆ dom × cod with every element of dom related to something.

    With a ``limit``, a reproducible sample of that size (the full list if smaller).
    """
    dom_l, cod_l = hf.canonical(dom), hf.canonical(cod)
    if dom_l and not cod_l:
        return []
    images = [[frozenset(c) for r in range(1, len(cod_l) + 1)
               for c in itertools.combinations(cod_l, r)] for _ in dom_l]
    combos = list(itertools.product(*images))
    if limit is not None and len(combos) > limit:
        combos = random.Random(seed).sample(combos, limit)
    out = []
    for choice in combos:
        out.append(hf.HFSet(hf.kpair(u, v) for u, img in zip(dom_l, choice) for v in img))
    return out
