"""Exponential reference solvers for small instances.

Everything here enumerates total ground orders.  For variable lengths an
order is realizable iff the *minimal* lengths work: each vertical stick
reaches exactly its leftmost neighbour and each horizontal stick exactly its
rightmost neighbour.  Longer sticks only add intersections.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .core import Instance, Representation, StickError

HALF = Fraction(1, 2)


class TooLarge(StickError, ValueError):
    pass


class OrderEnumerator:
    """Total orders of A ∪ B that contain the given orders as subsequences.

    Orders come out lexicographically with respect to ``inst.vertices``.
    """

    def __init__(self, inst: Instance, *, use_sigma_a: bool = True, use_sigma_b: bool = True):
        self.inst = inst
        self.sigma_a = inst.sigma_a if use_sigma_a else None
        self.sigma_b = inst.sigma_b if use_sigma_b else None

    def __iter__(self) -> Iterator[tuple]:
        inst = self.inst
        rank = {v: k for k, v in enumerate(inst.vertices)}
        chains = []
        free = []
        if self.sigma_a is not None:
            chains.append(list(self.sigma_a))
        else:
            free += list(inst.a_vertices)
        if self.sigma_b is not None:
            chains.append(list(self.sigma_b))
        else:
            free += list(inst.b_vertices)
        n = inst.n
        heads = [0] * len(chains)
        used = set()
        prefix: list = []

        def rec():
            if len(prefix) == n:
                yield tuple(prefix)
                return
            options = [chain[h] for chain, h in zip(chains, heads) if h < len(chain)]
            options += [v for v in free if v not in used]
            for v in sorted(options, key=rank.__getitem__):
                chain_id = next((c for c, chain in enumerate(chains) if heads[c] < len(chain) and chain[heads[c]] == v), None)
                if chain_id is not None:
                    heads[chain_id] += 1
                used.add(v)
                prefix.append(v)
                yield from rec()
                prefix.pop()
                used.discard(v)
                if chain_id is not None:
                    heads[chain_id] -= 1

        yield from rec()


def order_realizable_variable(inst: Instance, order: Sequence) -> bool:
    pos = {v: k for k, v in enumerate(order)}
    nbrs = inst.neighbors()
    leftmost = {a: min((pos[b] for b in nbrs[a]), default=None) for a in inst.a_vertices}
    rightmost = {b: max((pos[a] for a in nbrs[b]), default=None) for b in inst.b_vertices}
    for a, b in inst.edges:
        if pos[b] > pos[a]:
            return False
    for a in inst.a_vertices:
        for b in inst.b_vertices:
            if (a, b) in inst.edges or pos[b] > pos[a]:
                continue
            # both minimal sticks reach past each other
            if leftmost[a] is not None and rightmost[b] is not None and leftmost[a] < pos[b] and rightmost[b] > pos[a]:
                return False
    return True


def order_witness(inst: Instance, order: Sequence) -> Representation:
    """Feet on consecutive integers, minimal lengths (1/2 for isolated sticks)."""
    pos = {v: Fraction(k) for k, v in enumerate(order)}
    nbrs = inst.neighbors()
    length = {}
    for a in inst.a_vertices:
        length[a] = pos[a] - min(pos[b] for b in nbrs[a]) if nbrs[a] else HALF
    for b in inst.b_vertices:
        length[b] = max(pos[a] for a in nbrs[b]) - pos[b] if nbrs[b] else HALF
    length = {v: (x if x > 0 else HALF) for v, x in length.items()}
    return Representation(pos, length)


def realizable_mask(inst: Instance, orders: np.ndarray) -> np.ndarray:
    """Vectorised :func:`order_realizable_variable` over rows of vertex indices
    (indices into ``inst.vertices``)."""
    n_a, n_b = len(inst.a_vertices), len(inst.b_vertices)
    orders = np.asarray(orders)
    if orders.ndim != 2 or orders.shape[1] != n_a + n_b:
        raise ValueError("orders must be a (k, n) array")
    k = orders.shape[0]
    pos = np.empty_like(orders)
    pos[np.arange(k)[:, None], orders] = np.arange(n_a + n_b)[None, :]
    pa, pb = pos[:, :n_a], pos[:, n_a:]
    a_idx = {a: i for i, a in enumerate(inst.a_vertices)}
    b_idx = {b: j for j, b in enumerate(inst.b_vertices)}
    adj = np.zeros((n_a, n_b), dtype=bool)
    for a, b in inst.edges:
        adj[a_idx[a], b_idx[b]] = True
    big = n_a + n_b + 1
    b_left = pb[:, None, :] < pa[:, :, None]  # (k, nA, nB)
    ok = np.all(b_left | ~adj[None], axis=(1, 2))
    leftmost = np.where(adj[None], pb[:, None, :], big).min(axis=2)  # (k, nA)
    rightmost = np.where(adj[None], pa[:, :, None], -big).max(axis=1)  # (k, nB)
    blocked = b_left & ~adj[None]
    bad = blocked & (leftmost[:, :, None] < pb[:, None, :]) & (rightmost[:, None, :] > pa[:, :, None])
    return ok & ~bad.any(axis=(1, 2))


def _orders_array(inst: Instance, enum: OrderEnumerator) -> tuple[list, np.ndarray]:
    idx = {v: k for k, v in enumerate(inst.vertices)}
    orders = list(enum)
    arr = np.array([[idx[v] for v in o] for o in orders], dtype=np.int64).reshape(len(orders), inst.n)
    return orders, arr


def _check_size(inst: Instance, max_size: int) -> None:
    if inst.n > max_size:
        raise TooLarge(f"{inst.n} sticks exceeds the oracle bound {max_size}")


def _first_realizable(inst: Instance, enum: OrderEnumerator):
    orders, arr = _orders_array(inst, enum)
    if not orders:
        return False, None
    mask = realizable_mask(inst, arr)
    hits = np.flatnonzero(mask)
    if hits.size == 0:
        return False, None
    return True, list(orders[hits[0]])


def oracle_stick(inst: Instance, max_size: int = 10):
    """``(realizable, witness_order)`` ignoring any given orders."""
    _check_size(inst, max_size)
    return _first_realizable(inst, OrderEnumerator(inst, use_sigma_a=False, use_sigma_b=False))


def oracle_stick_a(inst: Instance, max_size: int = 10):
    _check_size(inst, max_size)
    return _first_realizable(inst, OrderEnumerator(inst, use_sigma_b=False))


def oracle_stick_ab(inst: Instance, max_size: int = 10):
    _check_size(inst, max_size)
    return _first_realizable(inst, OrderEnumerator(inst))


SENTINEL = "__closing_stick__"


def with_closing_stick(inst: Instance) -> Instance:
    """Append a vertical stick adjacent to every horizontal stick at the end
    of ``sigma_a``.  Orders of B realizable for this graph are the ones a
    left-to-right sweep can still extend to the right."""
    return Instance(
        a_vertices=list(inst.a_vertices) + [SENTINEL],
        b_vertices=inst.b_vertices,
        edges=list(inst.edges) + [(SENTINEL, b) for b in inst.b_vertices],
        sigma_a=None if inst.sigma_a is None else list(inst.sigma_a) + [SENTINEL],
    )


def realizable_sigma_b(inst: Instance, max_size: int = 10, *, closed: bool = False) -> set[tuple]:
    """All horizontal-stick orders occurring in some representation that
    respects ``sigma_a``.

    With ``closed=True`` the representation must also admit a closing stick
    (see :func:`with_closing_stick`), i.e. every horizontal stick stays
    extendable to the right.
    """
    if closed:
        inst = with_closing_stick(inst)
    _check_size(inst, max_size)
    orders, arr = _orders_array(inst, OrderEnumerator(inst, use_sigma_b=False))
    if not orders:
        return set()
    mask = realizable_mask(inst, arr)
    b_set = set(inst.b_vertices)
    return {tuple(v for v in orders[k] if v in b_set) for k in np.flatnonzero(mask)}


def oracle_fixed(inst: Instance, max_size: int = 8):
    """``(feasible, witness)`` for prescribed lengths, searching all orders
    consistent with whatever orders the instance carries.

    Each order is decided on the dense constraint system by an all-pairs
    shortest-path negative-cycle test.
    """
    from .fixed_length import build_dense_system, floyd_warshall_solve

    if inst.lengths is None:
        raise ValueError("oracle_fixed needs lengths")
    _check_size(inst, max_size)
    from .fixed_length import instantiate

    for order in OrderEnumerator(inst):
        system = build_dense_system(inst, order)
        sol = floyd_warshall_solve(system)
        if sol is not None:
            return True, instantiate(inst, sol, system)
    return False, None


def min_extent_fixed(inst: Instance, max_size: int = 8, *, orders=None):
    """Smallest bounding-box width over all orders, assuming fixed lengths.

    Per order the componentwise-minimal solution of the difference system is
    taken relative to the leftmost foot; the infimum over strict inequalities
    is returned as an :class:`~stickkit.fixed_length.EpsilonValue` (an exact
    standard part plus an infinitesimal coefficient).
    """
    from .fixed_length import build_dense_system, floyd_warshall_distances

    if inst.lengths is None:
        raise ValueError("min_extent_fixed needs lengths")
    _check_size(inst, max_size)
    best = None
    best_order = None
    if orders is None:
        # an order feasible with fixed lengths is feasible with free lengths
        orders, arr = _orders_array(inst, OrderEnumerator(inst))
        orders = [orders[k] for k in np.flatnonzero(realizable_mask(inst, arr))] if orders else []
    for order in orders:
        system = build_dense_system(inst, order)
        dist = floyd_warshall_distances(system)
        if dist is None:
            continue
        width = _min_width(inst, order, system.variables, dist)
        if best is None or width < best:
            best, best_order = width, list(order)
    return best, best_order


def _min_width(inst, order, variables, dist):
    """Minimal bounding-box width for a fixed order.

    With the leftmost stick ``v0`` pinned, the width is the largest of
    ``x_v - x_v0`` over verticals and ``x_v + len_v - x_v0`` over horizontals.
    Each term is minimised independently by the longest-path lower bound
    ``x_v - x_v0 >= -dist(v, v0)``, and a single solution attains all bounds
    at once (shortest paths *to* v0, negated).
    """
    from .fixed_length import EpsilonValue

    idx = {v: k for k, v in enumerate(variables)}
    v0 = idx[order[0]]
    width = EpsilonValue(0)
    for v in inst.vertices:
        lower = -dist[idx[v]][v0]
        if not inst.is_a(v):
            lower = lower + EpsilonValue(inst.lengths[v])
        if lower > width:
            width = lower
    return width


def all_interleavings(seq_a: Sequence, seq_b: Sequence) -> Iterator[tuple]:
    n = len(seq_a) + len(seq_b)
    for slots in itertools.combinations(range(n), len(seq_a)):
        out, ia, ib = [], 0, 0
        slot_set = set(slots)
        for k in range(n):
            if k in slot_set:
                out.append(seq_a[ia])
                ia += 1
            else:
                out.append(seq_b[ib])
                ib += 1
        yield tuple(out)
