"""Classical semantics over hereditarily finite sets.

This is the brute-force oracle: trees are collapsed extensionally to HF sets
and bounded formulas are evaluated by exhaustion.  It never calls into the
applicative structure except to expand intensional trees.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from . import formulas as F


class HFSet(frozenset):
    """A hereditarily finite set; printing uses the canonical order."""

    def __repr__(self):
        if not self:
            return "{}"
        return "{" + ", ".join(repr(x) for x in canonical(self)) + "}"

    def sexp(self) -> str:
        return "(set" + "".join(" " + x.sexp() for x in canonical(self)) + ")"


EMPTY = HFSet()


@lru_cache(maxsize=None)
def rank(s: HFSet) -> int:
    return 0 if not s else 1 + max(rank(x) for x in s)


@lru_cache(maxsize=None)
def _key(s: HFSet):
    return (rank(s), tuple(_key(x) for x in canonical(s)))


def canonical(s: HFSet) -> list:
    """Elements ordered by rank, then recursively by their own canonical form."""
    return sorted(s, key=_key)


def vn(n: int) -> HFSet:
    """Von Neumann numeral n = {0, ..., n-1}."""
    out = EMPTY
    for _ in range(n):
        out = HFSet(out | {out})
    return out


def kpair(a: HFSet, b: HFSet) -> HFSet:
    return HFSet({HFSet({a}), HFSet({a, b})})


def union(s: HFSet) -> HFSet:
    return HFSet(y for x in s for y in x)


def all_hf(max_rank: int) -> list:
    """Every HF set of rank at most ``max_rank``, in canonical order."""
    level = [EMPTY]
    for _ in range(max_rank):
        level = [HFSet(c) for r in range(len(level) + 1) for c in combinations(level, r)]
    return sorted(level, key=_key)


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------

def decode(tree) -> HFSet:
    """Extensional collapse: decode(S) = {decode(S↓a) | a ∈ immd(S)}."""
    from . import trees
    tree = trees.materialize(tree)
    return _decode_nodes(tree.nodes, ())


def _decode_nodes(nodes, prefix) -> HFSet:
    n = len(prefix)
    labels = {node[n] for node in nodes if len(node) == n + 1 and node[:n] == prefix}
    return HFSet(_decode_nodes(nodes, prefix + (a,)) for a in labels)


def numeral_tree(n: int) -> frozenset:
    """Node set of the von Neumann tree of n, labelling child k by the numeral k."""
    from .pca import Num
    nodes = {()}
    for k in range(n):
        nodes |= {(Num(k),) + sub for sub in numeral_tree(k)}
    return frozenset(nodes)


def hf_tree_nodes(s: HFSet) -> frozenset:
    """Node set presenting s, child i being the i-th element in canonical order."""
    from .pca import Num
    nodes = {()}
    for i, x in enumerate(canonical(s)):
        nodes |= {(Num(i),) + sub for sub in hf_tree_nodes(x)}
    return frozenset(nodes)


def to_vcode(s: HFSet):
    """A V-code presenting s injectively: sup(N_m, i -> code of the i-th element)."""
    from .typesys import mk_set
    return mk_set(to_vcode(x) for x in canonical(s))


# ---------------------------------------------------------------------------
# Bounded truth
# ---------------------------------------------------------------------------

def _value(term, env) -> HFSet:
    if isinstance(term, str):
        try:
            return env[term]
        except KeyError:
            raise ValueError(f"unbound variable {term!r}") from None
    if isinstance(term, HFSet):
        return term
    if isinstance(term, frozenset):
        return HFSet(term)
    return decode(term)


def truth(phi, env: dict | None = None, trace: list | None = None, depth: int = 0) -> bool:
    """Classical truth of a bounded formula; unbounded quantifiers are rejected."""
    env = env or {}
    pad = "  " * depth

    def note(msg):
        if trace is not None:
            trace.append(pad + msg)

    if isinstance(phi, F.Bot):
        return False
    if isinstance(phi, F.Mem):
        out = _value(phi.left, env) in _value(phi.right, env)
        note(f"{'true' if out else 'false'}: member")
        return out
    if isinstance(phi, F.Eq):
        out = _value(phi.left, env) == _value(phi.right, env)
        note(f"{'true' if out else 'false'}: equal")
        return out
    if isinstance(phi, F.And):
        return truth(phi.left, env, trace, depth + 1) and truth(phi.right, env, trace, depth + 1)
    if isinstance(phi, F.Or):
        return truth(phi.left, env, trace, depth + 1) or truth(phi.right, env, trace, depth + 1)
    if isinstance(phi, F.Imp):
        return (not truth(phi.left, env, None, depth + 1)) or truth(phi.right, env, trace, depth + 1)
    if isinstance(phi, (F.BAll, F.BEx)):
        bound = _value(phi.bound, env)
        want = isinstance(phi, F.BEx)
        for x in canonical(bound):
            if truth(phi.body, {**env, phi.var: x}, None, depth + 1) == want:
                note(f"{'witness' if want else 'counterexample'} {phi.var} = {x!r}")
                return want
        return not want
    raise ValueError(f"oracle only evaluates bounded formulas, got {type(phi).__name__}")
