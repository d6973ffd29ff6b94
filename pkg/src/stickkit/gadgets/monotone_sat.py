"""Fixed-length instances with prescribed vertical order built from
MONOTONE-3-SAT formulas.

Layout, left to right along the ground line: the variable cages (cage ``n``
leftmost, cage 1 next to the clauses), one stripe per clause, and finally
the pairs ``(y_i, z_i)`` whose position records the truth value of ``x_i``.

Inside cage ``i`` the long horizontal ``g_i`` starts either left of the
isolated vertical ``r_i`` (true) or right of it (false).  That shift of
about one unit is carried by ``g_i`` to ``y_i`` and from there by the orange
sticks into the clause stripes, where it opens or closes room for the
isolated blue stick of length 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core import Infeasible
from ..fixed_length import solve_fixed_with_order
from .common import Builder, GadgetInstance, GadgetParams, InvalidFormula, InvalidInput

VARIANTS = ("with_isolated_A_order_only", "with_both_orders", "no_isolated")


@dataclass(frozen=True)
class MonotoneCnf:
    """Clauses are triples of nonzero ints, DIMACS style: ``(1, 2, 3)`` or ``(-1, -2, -3)``."""

    n_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if not isinstance(self.n_vars, int) or self.n_vars < 1:
            raise InvalidFormula("need at least one variable")
        for c in clauses:
            if len(c) != 3 or len({abs(v) for v in c}) != 3:
                raise InvalidFormula(f"clause {c} needs three distinct variables")
            if any(not isinstance(v, int) or v == 0 or abs(v) > self.n_vars for v in c):
                raise InvalidFormula(f"clause {c} has a literal outside 1..{self.n_vars}")
            if len({v > 0 for v in c}) != 1:
                raise InvalidFormula(f"clause {c} mixes polarities")

    def satisfied_by(self, assignment) -> bool:
        val = _assignment(self, assignment)
        return all(any(val[abs(v)] == (v > 0) for v in c) for c in self.clauses)


def _assignment(phi: MonotoneCnf, assignment) -> dict:
    if isinstance(assignment, dict):
        val = {int(k): bool(v) for k, v in assignment.items()}
    else:
        val = {i: bool(v) for i, v in enumerate(assignment, start=1)}
    if set(val) != set(range(1, phi.n_vars + 1)):
        raise InvalidInput(f"assignment must cover variables 1..{phi.n_vars}")
    return val


def _layout(phi: MonotoneCnf, params: GadgetParams, variant: str, val: dict):
    """Declare every stick and place it for the truth values ``val``.

    Returns the builder and, per clause, the foot of its blue stick (None
    when the clause is not satisfied).
    """
    eps = params.epsilon
    n, m = phi.n_vars, len(phi.clauses)
    unit = 1 + 3 * eps / 2  # cage pitch
    stripe = 4 + 2 * eps
    sub = stripe / 4
    # orange feet sit mu_top below a sub-stripe's top (true) or mu_bottom
    # above its bottom (false); mu_top clears a_1, mu_bottom keeps every
    # orange left of the floor tie s_j, and mu_top + mu_bottom < 3eps/4 keeps
    # the orange end between y_i and z_i in both cases
    mu_top, mu_bottom = 7 * eps / 16, eps / 4
    floor_off = 3 * eps / 16
    reach = 15 * eps / 32  # orange end beyond y_i when x_i is true
    bld = Builder()

    cage = {i: -(i - 1) * unit for i in range(0, n + 1)}
    # cage i is bounded by h_i below-left and v_i to the right; v_{i+1}, a_{i+1}
    # close the neighbouring cage and v_1, a_1 face the first stripe
    for i in range(1, n + 2):
        base = cage[i - 1]
        bld.vertical(f"v{i}", 1 + 2 * eps, base + eps / 4)
        bld.vertical(f"a{i}", eps, base + eps / 2)
    g_foot = {}
    for i in range(1, n + 1):
        c = cage[i]
        bld.horizontal(f"h{i}", 1 + 2 * eps, c)
        for a in (f"v{i + 1}", f"a{i + 1}", f"v{i}"):
            bld.edge(a, f"h{i}")
        bld.vertical(f"r{i}", 1, c + 1 + 3 * eps / 4)
        if variant == "no_isolated":
            bld.horizontal(f"w{i}", eps, c + 1 + eps / 2)
            bld.edge(f"r{i}", f"w{i}")
        g_foot[i] = (c + 5 * eps / 8) if val[i] else (c + 1 + 7 * eps / 8)

    top = {1: cage[0] + eps / 8}
    bottom = {}
    for j in range(1, m + 1):
        bottom[j] = top[j] + stripe
        top[j + 1] = bottom[j] + 3 * eps / 4
    right_edge = bottom[m] + eps if m else cage[0] + eps
    # y_1 must land well right of every clause stripe whatever g_1 does
    lengths = {1: right_edge - cage[1] + 3}
    for i in range(2, n + 1):
        lengths[i] = lengths[i - 1] + unit + 2 + eps / 4

    y_true = {}
    for i in range(1, n + 1):
        ln = lengths[i]
        g = f"g{i}"
        bld.horizontal(g, ln, g_foot[i])
        bld.edge(f"v{i}", g)
        end = g_foot[i] + ln
        bld.vertical(f"y{i}", ln, end - eps / 4)
        bld.vertical(f"z{i}", ln, end + eps / 4)
        bld.horizontal(f"u{i}", eps, end - eps / 2)
        bld.edge(f"y{i}", g)
        bld.edge(f"y{i}", f"u{i}")
        bld.edge(f"z{i}", f"u{i}")
        y_true[i] = cage[i] + 5 * eps / 8 + ln - eps / 4

    blue_at = {}
    for j, clause in enumerate(phi.clauses, start=1):
        t, b = top[j], bottom[j]
        bt, bb, k, k2, s = f"Bt{j}", f"Bb{j}", f"k{j}", f"kk{j}", f"s{j}"
        bld.horizontal(bt, b + 3 * eps / 16 - t, t)
        bld.horizontal(bb, 3 * eps / 16, b)
        bld.vertical(k, stripe + 3 * eps / 16, b + eps / 8)
        bld.vertical(k2, stripe + 3 * eps / 16, b + eps / 4)
        bld.horizontal(s, eps, b - floor_off)
        bld.edge(k, bt)
        bld.edge(k, bb)
        bld.edge(k, s)
        bld.edge(k2, s)
        if j == 1:
            bld.edge("a1", bt)
            bld.edge("v1", bt)
        else:
            bld.edge(f"e{j - 1}", bt)
        if j < m:
            bld.vertical(f"e{j}", eps, b + 7 * eps / 8)

        positive = clause[0] > 0
        obstacles = [t, b - floor_off]
        for slot, lit in enumerate(clause, start=1 if positive else 2):
            i = abs(lit)
            o = f"o{j}_{i}"
            foot_true = t + (slot - 1) * sub + mu_top
            foot = foot_true if val[i] else t + slot * sub - mu_bottom
            bld.horizontal(o, y_true[i] + reach - foot_true, foot)
            obstacles.append(foot)
            for a in (k, k2, f"y{i}"):
                bld.edge(a, o)
            for lower in range(1, i):
                bld.edge(f"y{lower}", o)
                bld.edge(f"z{lower}", o)
        obstacles.sort()
        blue_at[j] = None
        for lo, hi in zip(obstacles, obstacles[1:]):
            if hi - lo > 2:
                # hugging the upper obstacle keeps a companion stick clear of k_j
                blue_at[j] = lo + 2 + eps / 16
                break
        blue = f"blue{j}"
        # a nominal spot keeps the vertical order defined for unsatisfied clauses
        bld.vertical(blue, 2, blue_at[j] if blue_at[j] is not None else t + stripe / 2)
        if variant == "no_isolated":
            bld.horizontal(f"ww{j}", eps, bld.foot[blue] - eps / 2)
            bld.edge(blue, f"ww{j}")

    return bld, blue_at


def gen_monotone3sat(
    phi: MonotoneCnf,
    params: GadgetParams | None = None,
    variant: str = "with_isolated_A_order_only",
    assignment=None,
) -> GadgetInstance:
    """Build the instance; with a satisfying ``assignment`` also a witness.

    ``sigma_A`` (and for ``with_both_orders`` also ``sigma_B``) is the ground
    order of the layout, which does not depend on the truth values.
    """
    if variant not in VARIANTS:
        raise InvalidInput(f"unknown variant {variant!r}; choose from {VARIANTS}")
    params = params or GadgetParams()
    if params.epsilon > Fraction(1, 8):
        raise InvalidInput("epsilon must be at most 1/8")
    nominal = {i: True for i in range(1, phi.n_vars + 1)}
    val = nominal if assignment is None else _assignment(phi, assignment)
    bld, blue_at = _layout(phi, params, variant, val)
    sigma_a = bld.ground_order(bld.a)
    sigma_b = bld.ground_order(bld.b) if variant == "with_both_orders" else None
    inst = bld.instance(sigma_a=sigma_a, sigma_b=sigma_b)

    witness = None
    if assignment is not None:
        if not phi.satisfied_by(val):
            raise InvalidInput("the assignment does not satisfy the formula")
        witness = bld.representation()
    meta = {"variant": variant, "blue_feet": blue_at}
    return GadgetInstance(inst, witness, meta)


def blue_placeable(phi: MonotoneCnf, assignment, params: GadgetParams | None = None) -> bool:
    """Whether the blue stick of the first clause fits when everything else
    is laid out for ``assignment``.

    The other sticks keep the ground order of that layout; the blue stick is
    tried at every position its vertical neighbours allow, and each complete
    order is decided by the fixed-length constraint system.
    """
    params = params or GadgetParams()
    val = _assignment(phi, assignment)
    bld, _ = _layout(phi, params, "with_isolated_A_order_only", val)
    inst = bld.instance(sigma_a=bld.ground_order(bld.a))
    blue = "blue1"
    rest = bld.ground_order([v for v in inst.vertices if v != blue])
    pos_a = inst.sigma_a.index(blue)
    left = inst.sigma_a[pos_a - 1] if pos_a > 0 else None
    right = inst.sigma_a[pos_a + 1] if pos_a + 1 < len(inst.sigma_a) else None
    lo = rest.index(left) + 1 if left is not None else 0
    hi = rest.index(right) if right is not None else len(rest)
    for slot in range(lo, hi + 1):
        order = rest[:slot] + [blue] + rest[slot:]
        try:
            solve_fixed_with_order(inst, order)
        except Infeasible:
            continue
        return True
    return False


def clause_gadget(polarity: str) -> MonotoneCnf:
    """A lone clause on ``x1, x2, x3``; ``polarity`` is ``"positive"`` or ``"negative"``."""
    sign = {"positive": 1, "negative": -1}[polarity]
    return MonotoneCnf(3, ((sign, 2 * sign, 3 * sign),))


__all__ = [
    "VARIANTS",
    "MonotoneCnf",
    "gen_monotone3sat",
    "blue_placeable",
    "clause_gadget",
]
