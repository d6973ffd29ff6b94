"""Fixed-length instances built from 3-PARTITION inputs.

Coordinates are foot positions on the ground line (larger is further right).
A frame of long sticks carves ``m`` pockets out of the region left of the
frame; every number becomes a gadget whose height equals the number, and
a gadget fits in a pocket only next to gadgets whose numbers fill it
exactly.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .common import Builder, GadgetInstance, GadgetParams, InvalidInput, InvalidParams
from .epsilon_path import layout_compressed, gen_epsilon_path


@dataclass(frozen=True)
class ThreePartitionInstance:
    numbers: tuple

    def __post_init__(self):
        nums = tuple(self.numbers)
        object.__setattr__(self, "numbers", nums)
        if not nums or len(nums) % 3:
            raise InvalidInput("need 3m numbers for some m >= 1")
        if any(not isinstance(s, int) or isinstance(s, bool) or s <= 0 for s in nums):
            raise InvalidInput("numbers must be positive integers")
        if sum(nums) % self.m:
            raise InvalidInput(f"sum {sum(nums)} is not divisible by m={self.m}")
        c = self.C
        bad = [s for s in nums if not (Fraction(c, 4) < s < Fraction(c, 2))]
        if bad:
            raise InvalidInput(f"numbers {bad} violate C/4 < s < C/2 with C={c}")

    @property
    def m(self) -> int:
        return len(self.numbers) // 3

    @property
    def C(self) -> int:
        return sum(self.numbers) // self.m

    def assign(self, partition) -> list[list[int]]:
        """Turn triples of values into triples of indices into ``numbers``."""
        partition = [list(t) for t in partition]
        if len(partition) != self.m or any(len(t) != 3 for t in partition):
            raise InvalidInput(f"a partition needs {self.m} triples")
        if Counter(v for t in partition for v in t) != Counter(self.numbers):
            raise InvalidInput("partition does not use the numbers exactly once")
        if any(sum(t) != self.C for t in partition):
            raise InvalidInput(f"every triple must sum to C={self.C}")
        free = {}
        for i, s in enumerate(self.numbers):
            free.setdefault(s, []).append(i)
        return [[free[v].pop(0) for v in t] for t in partition]


def _check_eps(tp: ThreePartitionInstance, params: GadgetParams) -> None:
    if params.epsilon > Fraction(1, 4):
        raise InvalidParams("epsilon must be at most 1/4")


def gen_3partition(tp: ThreePartitionInstance, params: GadgetParams | None = None, partition=None) -> GadgetInstance:
    """Frame plus one gadget per number.

    Frame: verticals ``x`` (length 1), ``y`` and ``z`` (length ``mC+1+2eps``)
    tied by the short horizontal ``w``; separators ``p1 .. p(m+1)`` all end
    between ``y`` and ``z``, and their feet leave pockets of width
    ``C + eps/m``.  ``p1`` touches ``x``, ``o`` pins ``p(m+1)``.
    Gadget ``i``: vertical ``r_i`` of length ``s_i``, long horizontal ``b_i``
    reaching ``y`` and ``z``, and the short pair ``h_i``/``v_i``.
    """
    params = params or GadgetParams()
    _check_eps(tp, params)
    eps = params.epsilon
    m, C, nums = tp.m, tp.C, tp.numbers
    eta = eps / m
    gap = eta / 4
    long_len = m * C + 1 + 2 * eps
    bld = Builder()

    bld.vertical("x", 1, -eps / 4)
    bld.vertical("y", long_len, 0)
    bld.vertical("z", long_len, eps / 4)
    bld.horizontal("w", eps, -eps / 2)
    for a in ("x", "y", "z"):
        bld.edge(a, "w")
    q = [None, -1 - eps / 8]
    for j in range(1, m + 1):
        q.append(q[j] - (C + eta))
    for j in range(1, m + 2):
        bld.horizontal(f"p{j}", eps / 8 - q[j], q[j])
        bld.edge("y", f"p{j}")
    bld.edge("x", "p1")
    bld.vertical("o", 2 * C, q[m + 1] + gap / 2)
    bld.edge("o", f"p{m + 1}")

    for i, s in enumerate(nums, start=1):
        r, b, h, v = f"r{i}", f"b{i}", f"h{i}", f"v{i}"
        bld.vertical(r, s)
        bld.horizontal(b, m * C + 2)
        bld.horizontal(h, eps)
        bld.vertical(v, eps)
        for a in (r, "y", "z", v):
            bld.edge(a, b)
        bld.edge(r, h)
        bld.edge(v, h)

    witness = None
    if partition is not None:
        triples = tp.assign(partition)
        for j, triple in enumerate(triples, start=1):
            start = q[j + 1]
            for idx in triple:
                i = idx + 1
                foot = start + gap + nums[idx]
                bld.place(f"r{i}", foot)
                bld.place(f"b{i}", foot - eps / 2)
                bld.place(f"h{i}", foot - eps / 4)
                bld.place(f"v{i}", foot - eps / 8)
                start = foot
        witness = bld.representation()
    meta = {"m": m, "C": C, "pockets": [(q[j + 1], q[j]) for j in range(1, m + 1)]}
    return GadgetInstance(bld.instance(), witness, meta)


def gen_3partition_three_lengths(
    tp: ThreePartitionInstance, params: GadgetParams | None = None, partition=None
) -> GadgetInstance:
    """Same reduction using only the lengths ``eps``, ``Cm`` and ``3Cm``.

    Pairs ``(y_j, z_j)`` of long verticals sit left to right from ``j = m+1``
    to ``j = 1``; each pair is tied by ``w_j`` and consecutive ties are joined
    by a short-stick path of ``2C/eps`` sticks (counting the tie it leaves),
    which stretches to about ``C``.  Separator ``p_j`` ends between ``y_j``
    and ``z_j``.  Number ``s_i`` becomes a short-stick path of
    ``6 s_i / eps - 4`` sticks hanging off the long horizontal ``b_i``.
    """
    params = params or GadgetParams()
    _check_eps(tp, params)
    eps = params.epsilon
    m, C, nums = tp.m, tp.C, tp.numbers
    if (C / eps).denominator != 1:
        raise InvalidParams(f"C/eps = {C / eps} is not an integer")
    for s in nums:
        if (6 * s / eps).denominator != 1:
            raise InvalidParams(f"6*{s}/eps is not an integer")
    k = int(C / eps)
    # the pocket holds three compressed gadgets only if 3*delta < eps/6
    inner = GadgetParams(eps, min(params.delta, eps / 64))
    nu = eps / 64
    kappa = eps / 6
    tau = kappa / k
    step = eps - tau
    mid, big = C * m, 3 * C * m
    bld = Builder()

    g = {j: (m + 1 - j) * k * step for j in range(1, m + 2)}
    right = {}
    for j in range(1, m + 2):
        y, z, w = f"y{j}", f"z{j}", f"w{j}"
        bld.vertical(y, big, g[j] + 2 * tau)
        bld.vertical(z, big, g[j] + 4 * tau)
        bld.horizontal(w, eps, g[j])
        bld.edge(y, w)
        bld.edge(z, w)
        right[j] = g[j] + 3 * tau
    connectors = {}
    for j in range(1, m + 1):
        base = g[j + 1]
        chain = [f"w{j + 1}"]
        for i in range(1, k + 1):
            vname = f"c{j}v{i}"
            bld.vertical(vname, eps, base + i * step)
            bld.edge(vname, chain[-1])
            chain.append(vname)
            if i < k:
                hname = f"c{j}h{i}"
                bld.horizontal(hname, eps, base + i * step)
                bld.edge(vname, hname)
                chain.append(hname)
        bld.edge(chain[-1], f"w{j}")
        connectors[j] = chain
    q = {}
    for j in range(1, m + 2):
        q[j] = right[j] - mid
        bld.horizontal(f"p{j}", mid, q[j])
        bld.edge(f"y{j}", f"p{j}")
        for kk in range(j + 1, m + 2):
            bld.edge(f"y{kk}", f"p{j}")
            bld.edge(f"z{kk}", f"p{j}")
    bld.vertical("o", big, q[m + 1] + nu)
    bld.edge("o", f"p{m + 1}")

    paths = {}
    layouts = {}
    for i, s in enumerate(nums, start=1):
        n_half = int(3 * s / eps) - 2
        path = gen_epsilon_path(n_half, inner, prefix=f"g{i}_")
        rep = layout_compressed(path, inner)
        names = [f"g{i}_{t}" for t in range(1, 2 * n_half + 1)]
        for t, name in enumerate(names):
            (bld.vertical if t % 2 == 0 else bld.horizontal)(name, eps)
        for t in range(len(names) - 1):
            a, b = (names[t], names[t + 1]) if t % 2 == 0 else (names[t + 1], names[t])
            bld.edge(a, b)
        b = f"b{i}"
        bld.horizontal(b, big)
        bld.edge(names[0], b)
        for j in range(1, m + 2):
            bld.edge(f"y{j}", b)
            bld.edge(f"z{j}", b)
        paths[i] = names
        layouts[i] = rep

    witness = None
    if partition is not None:
        triples = tp.assign(partition)
        top_y = g[m + 1] + 2 * tau
        for j, triple in enumerate(triples, start=1):
            # verticals of gadgets stay strictly inside (q[j+1] + eps, q[j])
            floor = q[j + 1] + eps + nu
            for idx in triple:
                i = idx + 1
                rep = layouts[i]
                low = min(rep.foot[v] for v in paths[i][0::2])
                shift = floor - low
                for v in paths[i]:
                    bld.place(v, rep.foot[v] + shift)
                head = rep.foot[paths[i][0]] + shift
                # b_i sits just right of the path's second vertical (at head - eps/3)
                bld.place(f"b{i}", head - eps / 3 + nu)
                # the next gadget's verticals must clear b_i, and its lowest
                # horizontal (2eps/3 left of them) must clear this head
                floor = head + 2 * eps / 3 + 2 * nu
            if not (head < q[j]) or (j == 1 and not head < top_y - eps / 3):
                raise InvalidParams(f"pocket {j} too narrow for its triple at epsilon={eps}")
        witness = bld.representation()
    meta = {
        "m": m,
        "C": C,
        "number_paths": {i: len(p) for i, p in paths.items()},
        "connector_paths": {j: len(c) for j, c in connectors.items()},
        "inner_delta": inner.delta,
    }
    return GadgetInstance(bld.instance(), witness, meta)
