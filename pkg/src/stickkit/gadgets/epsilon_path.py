"""Alternating paths of short sticks and their two extremal layouts.

The path ``s1 - s2 - ... - s2n`` alternates vertical (odd) and horizontal
(even) sticks of length epsilon.  Stretched, it spans ``n * epsilon``;
compressed, it spans ``(n + 2) / 3 * epsilon + delta``.
"""
from __future__ import annotations

from fractions import Fraction

from ..core import Instance, Representation
from .common import BadParams, GadgetParams


def path_names(n: int, prefix: str = "s") -> list[str]:
    return [f"{prefix}{k}" for k in range(1, 2 * n + 1)]


def gen_epsilon_path(n: int, params: GadgetParams | None = None, prefix: str = "s") -> Instance:
    if not isinstance(n, int) or n < 3:
        raise BadParams(f"an epsilon-path needs n >= 3, got {n!r}")
    params = params or GadgetParams()
    names = path_names(n, prefix)
    return Instance(
        a_vertices=names[0::2],
        b_vertices=names[1::2],
        edges=[(names[k], names[k + 1]) if k % 2 == 0 else (names[k + 1], names[k]) for k in range(2 * n - 1)],
        lengths={v: params.epsilon for v in names},
    )


def _n_of(inst: Instance) -> int:
    return inst.n // 2


def layout_stretched(inst: Instance, params: GadgetParams | None = None) -> Representation:
    """Each vertical shares its foot with the following horizontal; the
    horizontal ends exactly at the next vertical."""
    params = params or GadgetParams()
    eps = params.epsilon
    names = _path_order(inst)
    foot = {v: (k // 2) * eps for k, v in enumerate(names)}
    return Representation(foot, {v: eps for v in names})


def layout_compressed(inst: Instance, params: GadgetParams | None = None) -> Representation:
    """Foot heights follow a fixed schedule (height ``y`` means foot ``-y``).

    The first vertical sits at height 0 and the second at epsilon/3.  For
    ``i = 2 .. n-1`` horizontal ``2i-2`` and vertical ``2i+1`` sit at
    ``i*eps/3`` plus ``i-2`` resp. ``i-1`` shares of ``delta/(n-2)``.  The
    last two horizontals close the path at ``n*eps/3 + delta`` and
    ``(n+1)*eps/3 + delta``.
    """
    params = params or GadgetParams()
    eps, delta = params.epsilon, params.delta
    names = _path_order(inst)
    n = len(names) // 2
    third = eps / 3
    share = delta / (n - 2)
    height = {1: Fraction(0), 3: third}
    for i in range(2, n):
        height[2 * i - 2] = i * third + (i - 2) * share
        height[2 * i + 1] = i * third + (i - 1) * share
    height[2 * n - 2] = n * third + delta
    height[2 * n] = (n + 1) * third + delta
    foot = {names[k - 1]: -y for k, y in height.items()}
    return Representation(foot, {v: eps for v in names})


def _path_order(inst: Instance) -> list:
    """Recover ``s1 .. s2n`` from the graph: start at the vertical end."""
    nbrs = inst.neighbors()
    ends = [a for a in inst.a_vertices if len(nbrs[a]) == 1]
    if len(inst.a_vertices) != len(inst.b_vertices) or not ends:
        raise BadParams("not an alternating path starting with a vertical stick")
    order, prev = [ends[0]], None
    while len(order) < inst.n:
        nxt = [u for u in nbrs[order[-1]] if u != prev]
        if len(nxt) != 1:
            raise BadParams("not a path")
        prev = order[-1]
        order.append(nxt[0])
    return order
