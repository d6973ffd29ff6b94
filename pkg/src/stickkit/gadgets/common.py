"""Shared parameter types, errors and a small builder for gadget generators."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..core import Instance, Representation, StickError, as_fraction


class BadParams(StickError, ValueError):
    pass


class InvalidInput(StickError, ValueError):
    pass


class InvalidParams(StickError, ValueError):
    pass


class InvalidFormula(StickError, ValueError):
    pass


@dataclass(frozen=True)
class GadgetParams:
    """``epsilon`` is the short-stick length, ``delta`` the compression slack.

    ``delta`` defaults to ``epsilon / 8``.
    """

    epsilon: Fraction = Fraction(1, 64)
    delta: Fraction | None = None

    def __post_init__(self):
        eps = as_fraction(self.epsilon)
        delta = eps / 8 if self.delta is None else as_fraction(self.delta)
        if eps <= 0 or delta <= 0:
            raise BadParams("epsilon and delta must be positive")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "delta", delta)


@dataclass
class GadgetInstance:
    instance: Instance
    witness: Representation | None = None
    meta: dict = field(default_factory=dict)


class Builder:
    """Collects sticks, their intended adjacencies and (optionally) positions.

    Edges are declared explicitly from the construction, never read off the
    geometry, so that verifying the witness is a genuine check.
    """

    def __init__(self):
        self.a: list = []
        self.b: list = []
        self.edges: set = set()
        self.length: dict = {}
        self.foot: dict = {}

    def vertical(self, name, length, foot=None):
        return self._add(self.a, name, length, foot)

    def horizontal(self, name, length, foot=None):
        return self._add(self.b, name, length, foot)

    def _add(self, side, name, length, foot):
        if name in self.length:
            raise ValueError(f"duplicate stick {name!r}")
        side.append(name)
        self.length[name] = as_fraction(length)
        if foot is not None:
            self.foot[name] = as_fraction(foot)
        return name

    def place(self, name, foot):
        self.foot[name] = as_fraction(foot)

    def edge(self, a, b):
        self.edges.add((a, b))

    def is_vertical(self, name) -> bool:
        return name in self._a_set()

    def _a_set(self):
        if getattr(self, "_cache_n", -1) != len(self.a):
            self._cache = set(self.a)
            self._cache_n = len(self.a)
        return self._cache

    def instance(self, *, sigma_a=None, sigma_b=None, with_lengths: bool = True) -> Instance:
        return Instance(
            a_vertices=self.a,
            b_vertices=self.b,
            edges=self.edges,
            sigma_a=sigma_a,
            sigma_b=sigma_b,
            lengths=dict(self.length) if with_lengths else None,
        )

    def representation(self) -> Representation:
        missing = [v for v in self.length if v not in self.foot]
        if missing:
            raise ValueError(f"no position for {missing[:5]}")
        return Representation(self.foot, self.length)

    def ground_order(self, names) -> list:
        return sorted(names, key=self.foot.__getitem__)
