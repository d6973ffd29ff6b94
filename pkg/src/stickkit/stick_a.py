"""Recognition when only the order of the vertical sticks is given.

A sweep over ``sigma_a`` keeps a forest of semi-ordered trees whose expressed
permutations are exactly the horizontal-stick orders that can still be
completed.  Each tree stands for one connected component of the part of the
graph seen so far; components are kept left to right.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import Infeasible, Instance, MalformedInstance, Representation, components
from .semi_ordered_tree import SemiOrderedForest
from .sweep_ab import solve_stick_ab

MARKED, UNMARKED, HALF, NEUTRAL = "marked", "unmarked", "half", "neutral"


@dataclass
class StickASweepState:
    forest: SemiOrderedForest = field(default_factory=SemiOrderedForest)
    seen_b: set = field(default_factory=set)
    dead_b: set = field(default_factory=set)
    work: int = 0

    def active(self, b) -> bool:
        return b in self.seen_b and b not in self.dead_b


class StickASweep:
    """Event-by-event driver for a connected instance (or any instance whose
    A-sticks all have neighbours; isolated A-sticks simply leave the state
    untouched)."""

    def __init__(self, inst: Instance):
        if inst.sigma_a is None:
            raise MalformedInstance("sigma_a is required")
        self.inst = inst
        self.nbrs = inst.neighbors()
        a_index = {a: i for i, a in enumerate(inst.sigma_a)}
        self.last_nbr = {b: max(a_index[a] for a in self.nbrs[b]) for b in inst.b_vertices if self.nbrs[b]}
        self.b_rank = {b: j for j, b in enumerate(inst.b_vertices)}
        self.state = StickASweepState()

    def run(self, *, check=None) -> StickASweepState:
        for i, a in enumerate(self.inst.sigma_a):
            self.enter_event(i, a)
            if check is not None:
                check("enter", i, self.state)
            self.exit_event(i, a)
            if check is not None:
                check("exit", i, self.state)
        return self.state

    # statuses -------------------------------------------------------------
    def _counts(self, root: int, nbrs: set) -> dict:
        """Per node: (#active neighbour leaves, #active non-neighbour leaves)."""
        forest, st = self.state.forest, self.state
        counts = {}
        order = forest.subtree(root)
        for nid in reversed(order):
            st.work += 1
            node = forest.nodes[nid]
            if node.is_leaf:
                b = node.label
                if b in st.dead_b:
                    counts[nid] = (0, 0)
                elif b in nbrs:
                    counts[nid] = (1, 0)
                else:
                    counts[nid] = (0, 1)
            else:
                m = u = 0
                for c in node.children:
                    cm, cu = counts[c]
                    m += cm
                    u += cu
                counts[nid] = (m, u)
        return counts

    @staticmethod
    def _status(count) -> str:
        m, u = count
        if m and u:
            return HALF
        if m:
            return MARKED
        if u:
            return UNMARKED
        return NEUTRAL

    # events ---------------------------------------------------------------
    def enter_event(self, i: int, a) -> None:
        st, forest = self.state, self.state.forest
        nbrs = self.nbrs[a]
        st.work += 1 + len(nbrs)
        if not nbrs:
            return
        entering = sorted((b for b in nbrs if b not in st.seen_b), key=self.b_rank.__getitem__)

        roots = forest.roots
        counts = {}
        for r in roots:
            counts.update(self._counts(r, nbrs))
        last_unmarked = max((k for k, r in enumerate(roots) if counts[r][1]), default=-1)
        for k in range(last_unmarked):
            if counts[roots[k]][0]:
                raise Infeasible(
                    f"neighbours of {a!r} cannot form a suffix: an earlier component is adjacent", at=a
                )

        split_tree = None
        if last_unmarked >= 0 and counts[roots[last_unmarked]][0]:
            split_tree = self._split(roots[last_unmarked], counts, a)
            keep = roots[:last_unmarked]
        else:
            keep = roots[: last_unmarked + 1]
        hang = roots[last_unmarked + 1:]

        leaves = [forest.leaf(b) for b in entering]
        st.seen_b.update(entering)
        z = forest.node(ordered=hang, unordered=leaves)
        z = forest.normalize(z) if forest.nodes[z].children else z
        if split_tree is not None:
            if forest.nodes[z].children:
                new_root = forest.normalize(forest.node(ordered=[split_tree, z]))
            else:
                forest.discard(z)
                new_root = split_tree
        else:
            new_root = z
        forest.nodes[new_root].parent = None
        forest.roots = keep + [new_root]

    def _split(self, root: int, counts: dict, a) -> int:
        """Restrict the tree at ``root`` to orders where the active neighbours
        of ``a`` come last among the active leaves."""
        forest, st = self.state.forest, self.state
        status = {nid: self._status(c) for nid, c in counts.items() if nid in forest.nodes}

        path = []
        x = root
        while x is not None:
            path.append(x)
            node = forest.nodes[x]
            inner = [c for c in node.ordered if not forest.nodes[c].is_leaf]
            if len(inner) != len(node.ordered):
                raise AssertionError("leaf among ordered children")
            halves = [c for c in inner if status[c] == HALF]
            if len(halves) > 1:
                raise Infeasible(f"half-marked nodes for {a!r} do not form a path", at=a)
            seen_after = False  # past the half-marked child or the first marked child
            for c in inner:
                s = status[c]
                st.work += 1
                if s == HALF and seen_after:
                    raise Infeasible(f"a marked child precedes the half-marked child for {a!r}", at=a)
                if s == HALF or s == MARKED:
                    seen_after = True
                elif s == UNMARKED and seen_after:
                    raise Infeasible(f"marked children of a half-marked node are not a suffix for {a!r}", at=a)
            x = halves[0] if halves else None

        for depth in range(len(path) - 1, -1, -1):
            x = path[depth]
            y = path[depth + 1] if depth + 1 < len(path) else None
            node = forest.nodes[x]
            kids = list(node.ordered)
            if y is not None:
                cut = kids.index(y)
                prefix, suffix = kids[:cut], kids[cut + 1:]
            else:
                first_marked = next((k for k, c in enumerate(kids) if status[c] == MARKED), len(kids))
                prefix, suffix = kids[:first_marked], kids[first_marked:]
            marked_leaves, unmarked_leaves, dead_leaves = [], [], []
            for c in node.unordered:
                st.work += 1
                s = status[c]
                (marked_leaves if s == MARKED else unmarked_leaves if s == UNMARKED else dead_leaves).append(c)
            new_ordered = []
            if prefix or unmarked_leaves:
                new_ordered.append(forest.normalize(forest.node(ordered=prefix, unordered=unmarked_leaves)))
            if y is not None:
                new_ordered.append(y)
            if suffix or marked_leaves:
                new_ordered.append(forest.normalize(forest.node(ordered=suffix, unordered=marked_leaves)))
            st.work += len(kids) + 2
            forest.set_children(x, new_ordered, dead_leaves)
        root = forest.normalize(root)
        forest.nodes[root].parent = None
        return root

    def exit_event(self, i: int, a) -> None:
        st, forest = self.state, self.state.forest
        for b in self.nbrs[a]:
            st.work += 1
            if self.last_nbr[b] != i:
                continue
            st.dead_b.add(b)
            nid = forest.leaf_of[b]
            forest.nodes[nid].dead = True
            parent = forest.nodes[nid].parent
            while parent is not None:
                pnode = forest.nodes[parent]
                st.work += 1
                if pnode.dead or not all(forest.nodes[c].dead for c in pnode.children):
                    break
                pnode.dead = True
                parent = pnode.parent


def run_sweep(inst: Instance, *, check=None) -> StickASweepState:
    return StickASweep(inst).run(check=check)


def find_alternation(word: list):
    """Positions ``(i, j, k, l)`` with word[i] == word[k] != word[j] == word[l]
    and i < j < k < l, or None when the word avoids the pattern."""
    last = {}
    for pos, c in enumerate(word):
        last[c] = pos
    first = {}
    for pos, c in enumerate(word):
        first.setdefault(c, pos)
    stack = []  # (label, position of latest occurrence)
    on_stack = set()
    for pos, c in enumerate(word):
        if c in on_stack:
            while stack[-1][0] != c:
                x, xpos = stack.pop()
                on_stack.discard(x)
                if last[x] > pos:
                    return first[c], xpos, pos, next(q for q in range(pos + 1, len(word)) if word[q] == x)
            stack[-1] = (c, pos)
        else:
            stack.append((c, pos))
            on_stack.add(c)
    return None


def nest_ground_order(inst: Instance, comp_orders: list[list]) -> list:
    """Combine per-component ground orders into one for the whole instance.

    Each component's block goes right after the A-stick preceding its first
    A-stick in ``sigma_a``; components without A-sticks go to the front.
    """
    a_pos = {a: k for k, a in enumerate(inst.sigma_a)}
    front, with_a = [], []
    for order in comp_orders:
        a_in = [v for v in order if v in a_pos]
        if a_in:
            with_a.append((min(a_pos[v] for v in a_in), order))
        else:
            front.extend(order)
    with_a.sort(key=lambda t: t[0])
    seq: list = []
    for first, order in with_a:
        if first == 0:
            seq[0:0] = order
        else:
            anchor = inst.sigma_a[first - 1]
            k = seq.index(anchor)
            seq[k + 1:k + 1] = order
    return front + seq


@dataclass
class StickAResult:
    sigma_b: list
    representation: Representation
    forests: list  # one SemiOrderedForest per component with A-sticks and edges

    def __iter__(self):
        return iter((self.sigma_b, self.representation))


def solve_stick_a(inst: Instance, *, with_work: bool = False):
    """Find an order of the horizontal sticks and a representation, or raise
    :class:`Infeasible`.  The result unpacks as ``(sigma_b, rep)``."""
    if inst.sigma_a is None:
        raise MalformedInstance("sigma_a is required")
    comps = components(inst)
    label = {}
    for k, comp in enumerate(comps):
        for v in comp:
            label[v] = k
    witness = find_alternation([label[a] for a in inst.sigma_a])
    if witness is not None:
        raise Infeasible(
            "two components alternate along sigma_a",
            at=[inst.sigma_a[p] for p in witness],
            certificate={"positions": list(witness)},
        )

    work = 0
    comp_orders, forests = [], []
    for comp in comps:
        sub = inst.induced(comp)
        if sub.edges:
            sweep = StickASweep(sub)
            state = sweep.run()
            work += state.work
            forests.append(state.forest)
            sub_b = state.forest.forest_canonical()
            comp_orders.append(solve_stick_ab(sub.replace(sigma_b=sub_b)).ground_order())
        else:
            comp_orders.append(list(comp))
    ground = nest_ground_order(inst, comp_orders)
    b_set = set(inst.b_vertices)
    sigma_b = [v for v in ground if v in b_set]
    rep, ab_work = solve_stick_ab(inst.replace(sigma_b=sigma_b), with_work=True)
    result = StickAResult(sigma_b, rep, forests)
    return (result, work + ab_work) if with_work else result
