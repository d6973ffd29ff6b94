"""Prescribed stick lengths with a prescribed ground order.

The order turns every stick pair into one linear inequality on foot
positions, so feasibility is a difference-constraint problem.  Strict
inequalities use a symbolic infinitesimal: a constant is a pair
``standard + coefficient * eps`` compared lexicographically, so no concrete
"small enough" value is needed until a representation is printed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Sequence

from .core import Infeasible, Instance, IsolatedVertexPresent, MalformedInstance, Representation, as_fraction
from .sweep_ab import ground_order


@total_ordering
class EpsilonValue:
    """``standard + eps * infinitesimal`` with exact parts."""

    __slots__ = ("standard", "infinitesimal")

    def __init__(self, standard=0, infinitesimal: int = 0):
        self.standard = as_fraction(standard)
        self.infinitesimal = int(infinitesimal)

    def _key(self):
        return self.standard, self.infinitesimal

    def __add__(self, other):
        other = _lift(other)
        return EpsilonValue(self.standard + other.standard, self.infinitesimal + other.infinitesimal)

    __radd__ = __add__

    def __neg__(self):
        return EpsilonValue(-self.standard, -self.infinitesimal)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __eq__(self, other):
        try:
            return self._key() == _lift(other)._key()
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self._key() < _lift(other)._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"EpsilonValue({self.standard}, {self.infinitesimal})"

    def __str__(self):
        if not self.infinitesimal:
            return str(self.standard)
        sign = "+" if self.infinitesimal > 0 else "-"
        return f"{self.standard}{sign}{abs(self.infinitesimal)}eps"

    def at(self, eps: Fraction) -> Fraction:
        return self.standard + self.infinitesimal * eps


def _lift(x) -> EpsilonValue:
    if isinstance(x, EpsilonValue):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return EpsilonValue(x)
    raise TypeError(f"cannot combine EpsilonValue with {type(x).__name__}")


EPS = EpsilonValue(0, 1)


@dataclass(frozen=True)
class Constraint:
    """``x[head] - x[tail] <= bound``."""

    head: object
    tail: object
    bound: EpsilonValue
    kind: str = ""

    def __str__(self):
        return f"x[{self.head}] - x[{self.tail}] <= {self.bound}"

    def to_json(self) -> dict:
        return {"head": str(self.head), "tail": str(self.tail), "bound": str(self.bound), "kind": self.kind}


@dataclass
class ConstraintSystem:
    variables: list
    constraints: list

    def __len__(self):
        return len(self.constraints)


@dataclass
class NegativeCycle:
    constraints: list

    def to_json(self) -> list:
        return [c.to_json() for c in self.constraints]

    def chain(self) -> str:
        return " ; ".join(str(c) for c in self.constraints)


def _check_order(inst: Instance, order: Sequence) -> list:
    if inst.lengths is None:
        raise MalformedInstance("lengths are required")
    order = list(order)
    if len(order) != inst.n or set(order) != set(inst.vertices):
        raise MalformedInstance("order is not a total order of all sticks")
    return order


def _separations(order) -> list:
    return [Constraint(u, v, -EPS, "order") for u, v in zip(order, order[1:])]


def build_system(inst: Instance, order: Sequence) -> ConstraintSystem:
    """Sparse system with at most ``3n - 1`` constraints.

    A pair (vertical a, horizontal b) is handled by the stick with the shorter
    length (ties go to a).  Each stick only needs its farthest qualifying
    neighbour and its nearest qualifying non-neighbour on its reaching side,
    since the order constraints propagate the rest.  An edge drawn on the
    wrong side of the order gets ``x_b - x_a <= -eps`` instead, which
    contradicts the order constraints.
    """
    order = _check_order(inst, order)
    lengths = inst.lengths
    pos = {v: k for k, v in enumerate(order)}
    nbrs = inst.neighbors()
    out = _separations(order)

    for a in inst.a_vertices:
        la = lengths[a]
        cand = [b for b in inst.b_vertices if lengths[b] >= la]
        out += _owner_constraints(a, la, cand, nbrs[a], pos, vertical=True)
    for b in inst.b_vertices:
        lb = lengths[b]
        cand = [a for a in inst.a_vertices if lengths[a] > lb]
        out += _owner_constraints(b, lb, cand, nbrs[b], pos, vertical=False)
    return ConstraintSystem(order, out)


def _owner_constraints(v, lv, cand, nbrs, pos, *, vertical: bool) -> list:
    """Up to two constraints for stick ``v`` against the partners in ``cand``.

    For a vertical stick the partners of interest lie to its left; for a
    horizontal stick, to its right.  ``side(u) > 0`` means u lies on the
    reaching side.
    """
    out = []
    sign = -1 if vertical else 1
    pv = pos[v]

    def side(u):
        return sign * (pos[u] - pv)

    edge_cand = [u for u in cand if u in nbrs]
    wrong = [u for u in edge_cand if side(u) < 0]
    if wrong:
        u = min(wrong, key=side)
        a, b = (v, u) if vertical else (u, v)
        out.append(Constraint(b, a, -EPS, "edge-order"))
    elif edge_cand:
        u = max(edge_cand, key=side)
        a, b = (v, u) if vertical else (u, v)
        out.append(Constraint(a, b, EpsilonValue(lv), "edge"))
    non_cand = [u for u in cand if u not in nbrs and side(u) > 0]
    if non_cand:
        u = min(non_cand, key=side)
        a, b = (v, u) if vertical else (u, v)
        out.append(Constraint(b, a, EpsilonValue(-lv, -1), "non-edge"))
    return out


def build_dense_system(inst: Instance, order: Sequence) -> ConstraintSystem:
    """One constraint per relevant pair; quadratic size, no selection logic."""
    order = _check_order(inst, order)
    lengths = inst.lengths
    pos = {v: k for k, v in enumerate(order)}
    out = _separations(order)
    for a in inst.a_vertices:
        for b in inst.b_vertices:
            m = min(lengths[a], lengths[b])
            if (a, b) in inst.edges:
                out.append(Constraint(a, b, EpsilonValue(m), "edge"))
                out.append(Constraint(b, a, -EPS, "edge-order"))
            elif pos[b] < pos[a]:
                out.append(Constraint(b, a, EpsilonValue(-m, -1), "non-edge"))
    return ConstraintSystem(order, out)


def _scaled(system: ConstraintSystem):
    """Integer-encoded weights ``(standard * scale, coefficient)``.

    Tuples compare lexicographically, matching :class:`EpsilonValue`.
    """
    den = 1
    for c in system.constraints:
        den = math.lcm(den, c.bound.standard.denominator)
    weights = [(int(c.bound.standard * den), c.bound.infinitesimal) for c in system.constraints]
    return den, weights


def solve_system(system: ConstraintSystem):
    """Bellman-Ford from a virtual source joined to every variable by a zero edge.

    Returns ``{variable: EpsilonValue}`` or a :class:`NegativeCycle`.
    """
    variables = system.variables
    n = len(variables)
    idx = {v: k for k, v in enumerate(variables)}
    den, weights = _scaled(system)
    edges = [(idx[c.tail], idx[c.head], w, k) for k, (c, w) in enumerate(zip(system.constraints, weights))]
    dist = [(0, 0)] * n
    pred = [None] * n
    changed_at = None
    for _ in range(n + 1):
        changed_at = None
        for u, v, (ws, we), k in edges:
            ds, de = dist[u]
            cand = (ds + ws, de + we)
            if cand < dist[v]:
                dist[v] = cand
                pred[v] = k
                changed_at = v
        if changed_at is None:
            break
    if changed_at is not None:
        return NegativeCycle(_extract_cycle(system, edges, pred, changed_at, n))
    return {variables[k]: EpsilonValue(Fraction(ds, den), de) for k, (ds, de) in enumerate(dist)}


def _extract_cycle(system, edges, pred, start, n) -> list:
    v = start
    for _ in range(n):
        v = edges[pred[v]][0]
    cycle, u = [], v
    while True:
        k = pred[u]
        cycle.append(system.constraints[k])
        u = edges[k][0]
        if u == v:
            break
    cycle.reverse()
    return cycle


def floyd_warshall_distances(system: ConstraintSystem):
    """All-pairs shortest paths over the constraint graph, or None on a
    negative cycle.  ``dist[i][j]`` bounds ``x_j - x_i``."""
    variables = system.variables
    n = len(variables)
    idx = {v: k for k, v in enumerate(variables)}
    den, weights = _scaled(system)
    inf = None
    dist = [[inf] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = (0, 0)
    for c, w in zip(system.constraints, weights):
        i, j = idx[c.tail], idx[c.head]
        if dist[i][j] is None or w < dist[i][j]:
            dist[i][j] = w
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik is None:
                continue
            di = dist[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                cand = (dik[0] + dkj[0], dik[1] + dkj[1])
                if di[j] is None or cand < di[j]:
                    di[j] = cand
    if any(dist[i][i] < (0, 0) for i in range(n)):
        return None
    return [[None if d is None else EpsilonValue(Fraction(d[0], den), d[1]) for d in row] for row in dist]


def floyd_warshall_solve(system: ConstraintSystem):
    """Feasible assignment from all-pairs distances, or None."""
    dist = floyd_warshall_distances(system)
    if dist is None:
        return None
    n = len(system.variables)
    sol = {}
    for j, v in enumerate(system.variables):
        sol[v] = min(dist[i][j] for i in range(n) if dist[i][j] is not None)
    return sol


def choose_epsilon(system: ConstraintSystem, sol: dict) -> Fraction:
    """A concrete eps that keeps every constraint satisfied after substitution."""
    eps = Fraction(1)
    for c in system.constraints:
        diff = sol[c.head] - sol[c.tail]
        slack = c.bound.standard - diff.standard
        deficit = diff.infinitesimal - c.bound.infinitesimal
        if slack > 0 and deficit > 0:
            eps = min(eps, slack / (2 * deficit))
    return eps


def instantiate(inst: Instance, sol: dict, system: ConstraintSystem | None = None) -> Representation:
    if system is None:
        system = build_dense_system(inst, sorted(sol, key=lambda v: sol[v]))
    eps = choose_epsilon(system, sol)
    feet = {v: x.at(eps) for v, x in sol.items()}
    base = min(feet.values())
    return Representation({v: p - base for v, p in feet.items()}, dict(inst.lengths))


def solve_fixed_with_order(inst: Instance, order: Sequence) -> Representation:
    system = build_system(inst, order)
    sol = solve_system(system)
    if isinstance(sol, NegativeCycle):
        raise Infeasible("the constraint system has a negative cycle", certificate=sol.to_json())
    return instantiate(inst, sol, system)


def solve_stick_fix_ab(inst: Instance) -> Representation:
    """Both orders and lengths given, no isolated sticks: the ground order is
    forced, so one constraint system decides the instance."""
    if inst.lengths is None:
        raise MalformedInstance("lengths are required")
    iso = inst.isolated()
    if iso:
        raise IsolatedVertexPresent(f"isolated vertices: {iso}")
    order = ground_order(inst)
    return solve_fixed_with_order(inst, order)
