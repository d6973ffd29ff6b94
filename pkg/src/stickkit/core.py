"""Instances, representations and the geometric ground truth for stick graphs.

Feet live on the ground line of slope -1.  A foot is a single rational ``p``
that grows left to right; the plane point is ``(p, -p)``.  Vertical sticks
(set A) grow upward from their foot, horizontal sticks (set B) grow to the
right.
"""
from __future__ import annotations

import bisect
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

Vertex = Hashable


class StickError(Exception):
    """Base class for library errors."""


class MalformedInstance(StickError, ValueError):
    pass


class MissingVertex(StickError, KeyError):
    pass


class Infeasible(StickError):
    """Raised when a solver proves that no representation exists.

    ``at`` names the vertex or event that exposed the contradiction and
    ``certificate`` carries solver-specific evidence (a negative cycle, an
    alternation witness, ...).
    """

    def __init__(self, message: str, at=None, certificate=None):
        super().__init__(message)
        self.at = at
        self.certificate = certificate

    def to_json(self) -> dict:
        out = {"feasible": False, "reason": str(self)}
        if self.at is not None:
            out["at"] = self.at
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


class IsolatedVertexPresent(StickError, ValueError):
    pass


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"num/den"`` string exactly.  Floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


@dataclass(frozen=True)
class Instance:
    a_vertices: tuple
    b_vertices: tuple
    edges: frozenset
    sigma_a: tuple | None = None
    sigma_b: tuple | None = None
    lengths: Mapping | None = None

    def __post_init__(self):
        object.__setattr__(self, "a_vertices", tuple(self.a_vertices))
        object.__setattr__(self, "b_vertices", tuple(self.b_vertices))
        edges = list(self.edges)
        object.__setattr__(self, "edges", frozenset(edges))
        if len(set(edges)) != len(edges):
            raise MalformedInstance("duplicate edges")
        a_set, b_set = set(self.a_vertices), set(self.b_vertices)
        if len(a_set) != len(self.a_vertices) or len(b_set) != len(self.b_vertices):
            raise MalformedInstance("duplicate vertex ids")
        if a_set & b_set:
            raise MalformedInstance(f"vertices in both sides: {sorted(map(str, a_set & b_set))}")
        for a, b in self.edges:
            if a not in a_set or b not in b_set:
                raise MalformedInstance(f"edge ({a!r}, {b!r}) is not an A-B pair of declared vertices")
        if self.sigma_a is not None:
            object.__setattr__(self, "sigma_a", tuple(self.sigma_a))
            if len(self.sigma_a) != len(a_set) or set(self.sigma_a) != a_set:
                raise MalformedInstance("sigma_a is not a permutation of A")
        if self.sigma_b is not None:
            object.__setattr__(self, "sigma_b", tuple(self.sigma_b))
            if len(self.sigma_b) != len(b_set) or set(self.sigma_b) != b_set:
                raise MalformedInstance("sigma_b is not a permutation of B")
        if self.lengths is not None:
            lengths = {v: as_fraction(x) for v, x in dict(self.lengths).items()}
            missing = (a_set | b_set) - set(lengths)
            if missing:
                raise MalformedInstance(f"lengths missing for {sorted(map(str, missing))}")
            extra = set(lengths) - (a_set | b_set)
            if extra:
                raise MalformedInstance(f"lengths for unknown vertices {sorted(map(str, extra))}")
            if any(x <= 0 for x in lengths.values()):
                raise MalformedInstance("lengths must be strictly positive")
            object.__setattr__(self, "lengths", lengths)

    def __hash__(self):
        lengths = None if self.lengths is None else frozenset(self.lengths.items())
        return hash((self.a_vertices, self.b_vertices, self.edges, self.sigma_a, self.sigma_b, lengths))

    @property
    def vertices(self) -> tuple:
        return self.a_vertices + self.b_vertices

    @property
    def n(self) -> int:
        return len(self.a_vertices) + len(self.b_vertices)

    def neighbors(self) -> dict:
        nbrs = {v: set() for v in self.vertices}
        for a, b in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        return nbrs

    def is_a(self, v) -> bool:
        return v in self._a_set

    @property
    def _a_set(self) -> frozenset:
        cached = self.__dict__.get("_a_cache")
        if cached is None:
            cached = frozenset(self.a_vertices)
            object.__setattr__(self, "_a_cache", cached)
        return cached

    def isolated(self) -> list:
        touched = {v for e in self.edges for v in e}
        return [v for v in self.vertices if v not in touched]

    def replace(self, **changes) -> "Instance":
        fields = dict(
            a_vertices=self.a_vertices,
            b_vertices=self.b_vertices,
            edges=self.edges,
            sigma_a=self.sigma_a,
            sigma_b=self.sigma_b,
            lengths=self.lengths,
        )
        fields.update(changes)
        return Instance(**fields)

    def induced(self, keep: Iterable) -> "Instance":
        """Sub-instance on ``keep``; orders and lengths are restricted, not dropped."""
        keep = set(keep)
        return Instance(
            a_vertices=[a for a in self.a_vertices if a in keep],
            b_vertices=[b for b in self.b_vertices if b in keep],
            edges=[(a, b) for a, b in self.edges if a in keep and b in keep],
            sigma_a=None if self.sigma_a is None else [a for a in self.sigma_a if a in keep],
            sigma_b=None if self.sigma_b is None else [b for b in self.sigma_b if b in keep],
            lengths=None if self.lengths is None else {v: x for v, x in self.lengths.items() if v in keep},
        )


@dataclass(frozen=True)
class Representation:
    foot: Mapping
    length: Mapping

    def __post_init__(self):
        object.__setattr__(self, "foot", {v: as_fraction(x) for v, x in dict(self.foot).items()})
        object.__setattr__(self, "length", {v: as_fraction(x) for v, x in dict(self.length).items()})
        if set(self.foot) != set(self.length):
            raise MalformedInstance("foot and length must cover the same sticks")
        if any(x <= 0 for x in self.length.values()):
            raise MalformedInstance("stick lengths must be positive")

    def ground_order(self) -> list:
        return sorted(self.foot, key=lambda v: self.foot[v])

    def shifted(self, offset) -> "Representation":
        offset = as_fraction(offset)
        return Representation({v: p + offset for v, p in self.foot.items()}, dict(self.length))

    def bounding_box(self, inst: Instance) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """``(xmin, xmax, ymin, ymax)`` of the drawn sticks."""
        xs, ys = [], []
        for v, p in self.foot.items():
            ln = self.length[v]
            if inst.is_a(v):
                xs += [p]
                ys += [-p, -p + ln]
            else:
                xs += [p, p + ln]
                ys += [-p]
        return min(xs), max(xs), min(ys), max(ys)

    def extent(self, inst: Instance) -> tuple[Fraction, Fraction]:
        """Width and height of the bounding box."""
        xmin, xmax, ymin, ymax = self.bounding_box(inst)
        return xmax - xmin, ymax - ymin


def intersects(a_foot, a_len, b_foot, b_len) -> bool:
    """Whether vertical stick ``a`` and horizontal stick ``b`` share a point.

    The sticks meet at ``(p_a, -p_b)``, which lies on both closed segments iff
    ``0 <= p_a - p_b <= min(a_len, b_len)``.  Distance 0 means a shared foot.
    """
    d = a_foot - b_foot
    return 0 <= d <= min(a_len, b_len)


@dataclass
class VerifyReport:
    missing: list = field(default_factory=list)
    spurious: list = field(default_factory=list)
    foot_collisions: list = field(default_factory=list)
    order_violations: list = field(default_factory=list)
    length_mismatches: list = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not (
            self.missing or self.spurious or self.foot_collisions or self.order_violations or self.length_mismatches
        )

    def __bool__(self) -> bool:
        return not self.is_empty

    def lines(self) -> list[str]:
        out = [f"missing intersection {a}-{b}" for a, b in self.missing]
        out += [f"spurious intersection {a}-{b}" for a, b in self.spurious]
        out += [f"foot collision {group}" for group in self.foot_collisions]
        out += [f"order violation {kind}: {u} not left of {v}" for kind, u, v in self.order_violations]
        out += [f"length mismatch {v}: {got} != {want}" for v, got, want in self.length_mismatches]
        return out

    def to_json(self) -> dict:
        return {
            "valid": self.is_empty,
            "missing": [list(map(str, p)) for p in self.missing],
            "spurious": [list(map(str, p)) for p in self.spurious],
            "foot_collisions": [list(map(str, g)) for g in self.foot_collisions],
            "order_violations": [[k, str(u), str(v)] for k, u, v in self.order_violations],
            "length_mismatches": [[str(v), str(g), str(w)] for v, g, w in self.length_mismatches],
        }


def verify_representation(inst: Instance, rep: Representation) -> VerifyReport:
    """Compare the drawn intersection graph of ``rep`` with ``inst``.

    Horizontal sticks are sorted by foot, so each vertical stick only visits
    the horizontal sticks whose foot lies within its own length.  Two sticks
    may share a foot only if one is vertical and the other horizontal.
    """
    for v in inst.vertices:
        if v not in rep.foot:
            raise MissingVertex(v)
    report = VerifyReport()
    foot, length = rep.foot, rep.length
    b_sorted = sorted(inst.b_vertices, key=foot.__getitem__)
    b_feet = [foot[b] for b in b_sorted]
    drawn = set()
    for a in inst.a_vertices:
        pa, la = foot[a], length[a]
        lo = bisect.bisect_left(b_feet, pa - la)
        hi = bisect.bisect_right(b_feet, pa)
        for k in range(lo, hi):
            b = b_sorted[k]
            if pa - b_feet[k] <= length[b]:
                drawn.add((a, b))
    rank = {v: k for k, v in enumerate(inst.vertices)}
    report.missing = sorted(inst.edges - drawn, key=lambda e: (rank[e[0]], rank[e[1]]))
    report.spurious = sorted(drawn - inst.edges, key=lambda e: (rank[e[0]], rank[e[1]]))

    by_point = defaultdict(list)
    for v in inst.vertices:
        by_point[foot[v]].append(v)
    for p in sorted(by_point):
        group = by_point[p]
        if len(group) > 1:
            n_a = sum(1 for v in group if inst.is_a(v))
            if len(group) > 2 or n_a != 1:
                report.foot_collisions.append(tuple(group))

    for kind, sigma in (("sigma_A", inst.sigma_a), ("sigma_B", inst.sigma_b)):
        if sigma is None:
            continue
        for u, v in zip(sigma, sigma[1:]):
            if not foot[u] < foot[v]:
                report.order_violations.append((kind, u, v))

    if inst.lengths is not None:
        for v in inst.vertices:
            if length[v] != inst.lengths[v]:
                report.length_mismatches.append((v, length[v], inst.lengths[v]))
    return report


def intersection_edges(inst: Instance, rep: Representation) -> frozenset:
    return frozenset(
        (a, b)
        for a in inst.a_vertices
        for b in inst.b_vertices
        if intersects(rep.foot[a], rep.length[a], rep.foot[b], rep.length[b])
    )


def components(inst: Instance) -> list[set]:
    """Connected components, ordered by their first vertex in sigma_A (else input order).

    Components without A-vertices (isolated B-sticks) follow in input order.
    """
    parent = {v: v for v in inst.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in inst.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    order = list(inst.sigma_a if inst.sigma_a is not None else inst.a_vertices) + list(inst.b_vertices)
    groups: dict = {}
    for v in order:
        groups.setdefault(find(v), set()).add(v)
    return list(groups.values())


def ordered_subsequence(seq: Sequence, keep) -> list:
    return [v for v in seq if v in keep]
