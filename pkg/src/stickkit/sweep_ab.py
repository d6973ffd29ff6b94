"""Linear-time recognition when both stick orders are given.

The sweep visits the vertical sticks in ``sigma_a`` order.  Horizontal sticks
are placed lazily, just before the first vertical stick that needs them, so
every foot lands on a distinct integer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Infeasible, Instance, IsolatedVertexPresent, MalformedInstance, Representation

HALF = Fraction(1, 2)


@dataclass
class SweepState:
    beta: int = 0
    active_b: list = field(default_factory=list)
    foot: dict = field(default_factory=dict)
    length: dict = field(default_factory=dict)
    work: int = 0


def _require_orders(inst: Instance) -> None:
    if inst.sigma_a is None or inst.sigma_b is None:
        raise MalformedInstance("both sigma_a and sigma_b are required")


def sweep(inst: Instance, *, trace=None) -> SweepState:
    """Run the enter/exit sweep and return the final state.

    ``trace`` (if given) is called after every event with ``(event, i, state)``
    where event is ``"enter"`` or ``"exit"``; tests use it to check the
    invariants on partial drawings.
    """
    _require_orders(inst)
    sigma_a, sigma_b = inst.sigma_a, inst.sigma_b
    b_index = {b: j for j, b in enumerate(sigma_b, start=1)}
    a_index = {a: i for i, a in enumerate(sigma_a, start=1)}
    nbrs = inst.neighbors()
    last_nbr = {}
    for b in sigma_b:
        if nbrs[b]:
            last_nbr[b] = max(a_index[a] for a in nbrs[b])

    st = SweepState()
    for i, a in enumerate(sigma_a, start=1):
        # enter event
        nb = nbrs[a]
        beta_prev = st.beta
        if nb:
            st.beta = max(st.beta, max(b_index[b] for b in nb))
        st.work += 1 + len(nb)
        for j in range(beta_prev + 1, st.beta + 1):
            b = sigma_b[j - 1]
            st.foot[b] = Fraction(j + i - 1)
            st.work += 1
            if b in last_nbr:
                st.active_b.append(b)
            else:
                st.length[b] = HALF
        p = Fraction(st.beta + i)
        st.foot[a] = p
        k = len(nb)
        suffix = st.active_b[len(st.active_b) - k:] if k else []
        st.work += k
        if len(suffix) != k or set(suffix) != nb:
            raise Infeasible(f"neighbours of {a!r} are not a suffix of the active horizontal sticks", at=a)
        st.length[a] = (p - st.foot[suffix[0]] + HALF) if k else HALF
        if trace is not None:
            trace("enter", i, st)

        # exit event: finished sticks are all inside the suffix just checked
        if k:
            del st.active_b[len(st.active_b) - k:]
            right = Fraction(st.beta + i) + HALF
            for b in suffix:
                st.work += 1
                if last_nbr[b] == i:
                    st.length[b] = right - st.foot[b]
                else:
                    st.active_b.append(b)
        if trace is not None:
            trace("exit", i, st)

    # trailing sticks with a larger index than any used neighbour are isolated
    n_a = len(sigma_a)
    for j in range(st.beta + 1, len(sigma_b) + 1):
        b = sigma_b[j - 1]
        st.foot[b] = Fraction(j + n_a)
        st.length[b] = HALF
        st.work += 1
    return st


def solve_stick_ab(inst: Instance, *, with_work: bool = False):
    """Representation respecting both orders, or raise :class:`Infeasible`.

    With ``with_work=True`` returns ``(rep, work)`` where work counts the
    elementary steps of the sweep.
    """
    st = sweep(inst)
    rep = Representation(st.foot, st.length)
    return (rep, st.work) if with_work else rep


def ground_order(inst: Instance) -> list:
    """The left-to-right foot order shared by every representation.

    Only defined without isolated vertices; with them, the order of the
    remaining sticks is still unique but isolated sticks float.
    """
    _require_orders(inst)
    iso = inst.isolated()
    if iso:
        raise IsolatedVertexPresent(f"isolated vertices: {iso}")
    return solve_stick_ab(inst).ground_order()
