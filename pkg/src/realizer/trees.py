"""Well-founded trees presenting sets.

A tree is either an explicit finite node set, the tree 𝔱(x) of a V-code x,
or the tree M whose immediate successors are all V-codes.  Node labels are
values, so finite sequences are plain tuples of values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import pca, typesys
from .pca import DEFAULT_FUEL, StuckError, Value
from .typesys import DEFAULT_CUTOFF, Enumeration, UnboundedError
from .verdict import Realized, Refuted, Verdict


class TreeError(ValueError):
    """Malformed node set, or a label outside immd."""


# ---------------------------------------------------------------------------
# Finite sequences
# ---------------------------------------------------------------------------

def restrict(seq: tuple, k: int) -> tuple:
    return seq[:k]


def concat(a: tuple, b: tuple) -> tuple:
    return a + b


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Explicit:
    nodes: frozenset

    @classmethod
    def from_nodes(cls, nodes) -> "Explicit":
        tree = cls(frozenset(tuple(n) for n in nodes))
        wf_check(tree)
        return tree

    @cached_property
    def children(self) -> dict:
        index: dict = {}
        for node in self.nodes:
            if node:
                index.setdefault(node[0], set()).add(node[1:])
        return {a: frozenset(rest) for a, rest in index.items()}

    def __len__(self):
        return len(self.nodes)


@dataclass(frozen=True)
class Intensional:
    """𝔱(code) for a V-code."""
    code: Value


@dataclass(frozen=True)
class MTree:
    def __repr__(self):
        return "M"


M = MTree()
Tree = Explicit | Intensional | MTree


def wf_check(tree: Explicit) -> bool:
    """Validate an explicit node set; finite valid trees are well-founded."""
    nodes = tree.nodes if isinstance(tree, Explicit) else frozenset(tree)
    if () not in nodes:
        raise TreeError("node set lacks the root <>")
    for node in nodes:
        for k in range(len(node)):
            if node[:k] not in nodes:
                raise TreeError(f"node set not closed under restriction at {node!r}")
    return True


def _vcode_parts(tree: Intensional):
    parts = typesys.sup_parts(tree.code)
    if parts is None:
        raise TreeError("intensional tree over a non-sup code")
    return parts


def immd_contains(tree: Tree, a: Value, fuel: int = DEFAULT_FUEL,
                  cutoff: int = DEFAULT_CUTOFF) -> Verdict:
    """Decide a ∈ immd(tree)."""
    if isinstance(tree, Explicit):
        return Realized if a in tree.children else Refuted("not an immediate successor")
    if isinstance(tree, Intensional):
        idx, _ = _vcode_parts(tree)
        return typesys.ext_member(idx, a, fuel, cutoff)
    return typesys.is_v_code(a, fuel, cutoff)


def immd_enumerate(tree: Tree, cutoff: int | None = None,
                   fuel: int = DEFAULT_FUEL) -> Enumeration:
    if isinstance(tree, Explicit):
        from .syntax import show
        return Enumeration(tuple(sorted(tree.children, key=show)), True)
    if isinstance(tree, Intensional):
        idx, _ = _vcode_parts(tree)
        return typesys.ext_enumerate(idx, cutoff, fuel)
    raise UnboundedError("immd(M) = V cannot be enumerated")


def subtree(tree: Tree, a: Value, fuel: int = DEFAULT_FUEL, check: bool = True) -> Tree:
    """tree↓a.  With ``check`` the label is first tested against immd."""
    if isinstance(tree, Explicit):
        try:
            return Explicit(tree.children[a])
        except KeyError:
            raise TreeError("label is not an immediate successor") from None
    if check and not immd_contains(tree, a, fuel).realized:
        raise TreeError("label is not an immediate successor")
    if isinstance(tree, Intensional):
        return _intensional_child(tree.code, a, fuel)
    return Intensional(a)


@lru_cache(maxsize=262144)
def _intensional_child(code: Value, a: Value, fuel: int) -> Intensional:
    _, f = typesys.sup_parts(code)
    try:
        return Intensional(pca.call(f, a, fuel=fuel))
    except StuckError as e:
        raise TreeError(f"child function stuck: {e.site}") from None


def materialize(tree: Tree, fuel: int = DEFAULT_FUEL, max_nodes: int = 1_000_000) -> Explicit:
    """Expand a finitely branching tree into its node set."""
    if isinstance(tree, Explicit):
        return tree
    if isinstance(tree, MTree):
        raise UnboundedError("M is infinitely branching")
    nodes = set()

    def walk(t: Intensional, prefix: tuple):
        nodes.add(prefix)
        if len(nodes) > max_nodes:
            raise UnboundedError("tree too large to materialize")
        en = immd_enumerate(t, None, fuel)
        for a in en.items:
            walk(subtree(t, a, fuel, check=False), prefix + (a,))

    walk(tree, ())
    return Explicit(frozenset(nodes))


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------

def to_json_obj(tree: Tree, cutoff: int | None = None, fuel: int = DEFAULT_FUEL,
                label=None) -> dict:
    """{"node": label, "children": [...]} (the root's label is null)."""
    from .syntax import show

    def walk(t, lbl, depth):
        out = {"node": None if lbl is None else show(lbl), "children": []}
        if depth > typesys.MAX_DEPTH:
            out["truncated"] = True
            return out
        en = immd_enumerate(t, cutoff, fuel)
        for a in en.items:
            out["children"].append(walk(subtree(t, a, fuel, check=False), a, depth + 1))
        if not en.complete:
            out["truncated"] = True
        return out

    return walk(tree, label, 0)


def to_json(tree: Tree, cutoff: int | None = None, fuel: int = DEFAULT_FUEL) -> str:
    return json.dumps(to_json_obj(tree, cutoff, fuel), indent=2)


def to_dot(tree: Tree, cutoff: int | None = None, fuel: int = DEFAULT_FUEL) -> str:
    obj = to_json_obj(tree, cutoff, fuel)
    lines = ["digraph tree {", '  n0 [label="<>"];']
    counter = [0]

    def walk(node, ident):
        for child in node["children"]:
            counter[0] += 1
            cid = f"n{counter[0]}"
            label = json.dumps(child["node"])
            lines.append(f"  {cid} [label={label}];")
            lines.append(f"  {ident} -> {cid};")
            walk(child, cid)

    walk(obj, "n0")
    lines.append("}")
    return "\n".join(lines)
