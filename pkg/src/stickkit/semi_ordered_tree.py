"""Semi-ordered trees: rooted trees where each node fixes the relative order
of some children (the ordered ones) and lets the rest float.

A permutation of the leaf labels is *expressed* by a tree if some way of
interleaving every node's unordered children into its ordered ones yields
that permutation as the pre-order leaf sequence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .core import StickError


class LabelMismatch(StickError, ValueError):
    pass


class TooLarge(StickError, ValueError):
    pass


class InvalidChoice(StickError, ValueError):
    pass


@dataclass
class SemiOrderedNode:
    ordered: list = field(default_factory=list)
    unordered: list = field(default_factory=list)
    label: object = None
    dead: bool = False
    parent: int | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.ordered and not self.unordered

    @property
    def children(self) -> list:
        return self.ordered + self.unordered


class SemiOrderedForest:
    """Node pool plus an ordered list of tree roots.

    Nodes are addressed by integer ids; ``parent`` links allow bottom-up walks.
    """

    def __init__(self):
        self.nodes: dict[int, SemiOrderedNode] = {}
        self.roots: list[int] = []
        self.leaf_of: dict = {}
        self._next = 0

    # construction -----------------------------------------------------
    def leaf(self, label) -> int:
        if label in self.leaf_of:
            raise LabelMismatch(f"duplicate leaf label {label!r}")
        nid = self._alloc(SemiOrderedNode(label=label))
        self.leaf_of[label] = nid
        return nid

    def node(self, ordered: Iterable[int] = (), unordered: Iterable[int] = ()) -> int:
        nid = self._alloc(SemiOrderedNode(ordered=list(ordered), unordered=list(unordered)))
        for c in self.nodes[nid].children:
            self.nodes[c].parent = nid
        return nid

    def _alloc(self, node: SemiOrderedNode) -> int:
        nid = self._next
        self._next += 1
        self.nodes[nid] = node
        return nid

    def set_children(self, nid: int, ordered: Iterable[int], unordered: Iterable[int]) -> None:
        node = self.nodes[nid]
        node.ordered = list(ordered)
        node.unordered = list(unordered)
        for c in node.children:
            self.nodes[c].parent = nid

    def discard(self, nid: int) -> None:
        del self.nodes[nid]

    # queries ------------------------------------------------------------
    def leaves(self, nid: int) -> list:
        """Leaf labels below ``nid`` in canonical order."""
        out = []
        stack = [nid]
        while stack:
            v = self.nodes[stack.pop()]
            if v.is_leaf:
                out.append(v.label)
            else:
                stack.extend(reversed(v.children))
        return out

    def subtree(self, nid: int) -> list[int]:
        out, stack = [], [nid]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(self.nodes[v].children)
        return out

    def _bottom_up(self, nid: int) -> list[int]:
        """Node ids of the subtree with every child before its parent.

        Trees can be as deep as they have leaves, so the walks below avoid
        recursion.
        """
        return self.subtree(nid)[::-1]

    def size(self) -> int:
        return len(self.nodes)

    def expresses(self, nid: int, pi: Sequence) -> bool:
        """Contiguity test: every child's leaves form a block of ``pi`` and the
        ordered children's blocks appear in their fixed order."""
        pi = list(pi)
        pos = {x: k for k, x in enumerate(pi)}
        if len(pos) != len(pi) or set(pos) != set(self.leaves(nid)):
            raise LabelMismatch("pi is not a permutation of the tree's leaf labels")
        return self._block(nid, pos) is not None

    def _block(self, nid: int, pos: Mapping):
        """Return ``(lo, hi)`` of the leaf block of ``nid`` or None if some
        constraint inside the subtree fails."""
        spans = {}
        for v in self._bottom_up(nid):
            node = self.nodes[v]
            if node.is_leaf:
                p = pos[node.label]
                spans[v] = (p, p)
                continue
            ordered_spans = sorted(spans[c] for c in node.children)
            for (_, hi), (lo, _) in zip(ordered_spans, ordered_spans[1:]):
                if lo != hi + 1:
                    return None
            starts = [spans[c][0] for c in node.ordered]
            if starts != sorted(starts):
                return None
            spans[v] = (ordered_spans[0][0], ordered_spans[-1][1])
        return spans[nid]

    def enumerate_expressed(self, nid: int, bound: int = 8) -> set[tuple]:
        if len(self.leaves(nid)) > bound:
            raise TooLarge(f"more than {bound} leaves")
        return set(self._expressed(nid))

    def _expressed(self, nid: int) -> list[tuple]:
        node = self.nodes[nid]
        if node.is_leaf:
            return [(node.label,)]
        sub = {c: self._expressed(c) for c in node.children}
        out = []
        for arrangement in _interleavings(node.ordered, node.unordered):
            for parts in itertools.product(*(sub[c] for c in arrangement)):
                out.append(tuple(x for part in parts for x in part))
        return out

    def obtain_ordered(self, nid: int, choices: Mapping[int, Sequence[int]] | None = None):
        """Fix an order of the children at every node.

        ``choices`` maps node ids to a full child sequence that keeps the
        ordered children in their fixed order; nodes without a choice put
        their unordered children last.  Returns nested tuples with leaf labels
        at the bottom.
        """
        choices = choices or {}
        built = {}
        for v in self._bottom_up(nid):
            node = self.nodes[v]
            if node.is_leaf:
                built[v] = node.label
                continue
            seq = list(choices.get(v, node.ordered + node.unordered))
            if sorted(seq) != sorted(node.children):
                raise InvalidChoice(f"choice for node {v} is not a permutation of its children")
            if [c for c in seq if c in set(node.ordered)] != node.ordered:
                raise InvalidChoice(f"choice for node {v} breaks the fixed order")
            built[v] = tuple(built[c] for c in seq)
        return built[nid]

    def canonical_permutation(self, nid: int) -> list:
        # the default choice lists ordered children first, like leaves()
        return self.leaves(nid)

    # forest-level helpers -------------------------------------------------
    def forest_expressed(self, bound: int = 8) -> set[tuple]:
        total = sum(len(self.leaves(r)) for r in self.roots)
        if total > bound:
            raise TooLarge(f"more than {bound} leaves")
        out = {()}
        for r in self.roots:
            out = {p + q for p in out for q in self._expressed(r)}
        return out

    def forest_canonical(self) -> list:
        return [x for r in self.roots for x in self.canonical_permutation(r)]

    def normalize(self, nid: int) -> int:
        """Splice out internal nodes with one child and no leaf children.

        Returns the (possibly new) id standing for ``nid``.  The expressed set
        is unchanged.
        """
        stand_in = {}
        for v in self._bottom_up(nid):
            node = self.nodes[v]
            if node.is_leaf:
                stand_in[v] = v
                continue
            self.set_children(v, [stand_in[c] for c in node.ordered], [stand_in[c] for c in node.unordered])
            if len(node.children) == 1 and not self.nodes[node.children[0]].is_leaf:
                child = node.children[0]
                self.nodes[child].parent = node.parent
                self.discard(v)
                stand_in[v] = child
            else:
                stand_in[v] = v
        return stand_in[nid]

    def to_text(self, nid: int) -> str:
        text = {}
        for v in self._bottom_up(nid):
            node = self.nodes[v]
            if node.is_leaf:
                text[v] = str(node.label)
                continue
            parts = []
            if node.ordered:
                parts.append("ord: [" + ", ".join(text[c] for c in node.ordered) + "]")
            if node.unordered:
                parts.append("unord: {" + ", ".join(text[c] for c in node.unordered) + "}")
            text[v] = "(" + ", ".join(parts) + ")"
        return text[nid]

    def forest_text(self) -> str:
        return "[" + ", ".join(self.to_text(r) for r in self.roots) + "]"


def _interleavings(ordered: list, unordered: list):
    """All child sequences keeping ``ordered`` as a subsequence."""
    n = len(ordered) + len(unordered)
    for slots in itertools.combinations(range(n), len(ordered)):
        slot_set = set(slots)
        free = [k for k in range(n) if k not in slot_set]
        for perm in itertools.permutations(unordered):
            seq = [None] * n
            for k, c in zip(slots, ordered):
                seq[k] = c
            for k, c in zip(free, perm):
                seq[k] = c
            yield seq
