"""Command-line front end and JSON/SVG plumbing.

Exit codes: 0 feasible or valid, 1 infeasible or invalid (details as JSON on
stdout), 2 bad input or usage, 3 a solver produced a witness that failed
verification.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from xml.sax.saxutils import escape

from .core import (
    Infeasible,
    Instance,
    MalformedInstance,
    Representation,
    StickError,
    as_fraction,
    components,
    verify_representation,
)
from .fixed_length import solve_fixed_with_order, solve_stick_fix_ab
from .gadgets import (
    VARIANTS,
    GadgetParams,
    MonotoneCnf,
    ThreePartitionInstance,
    gen_3partition,
    gen_3partition_three_lengths,
    gen_monotone3sat,
)
from .oracle import oracle_fixed, oracle_stick, oracle_stick_a, oracle_stick_ab, order_witness
from .stick_a import solve_stick_a
from .sweep_ab import solve_stick_ab

log = logging.getLogger("stickkit")


class WitnessRejected(StickError):
    pass


# JSON ---------------------------------------------------------------------


def _rat(x: Fraction) -> str:
    return str(x)


def instance_to_json(inst: Instance) -> dict:
    a_rank = {a: k for k, a in enumerate(inst.a_vertices)}
    b_rank = {b: k for k, b in enumerate(inst.b_vertices)}
    out = {
        "A": list(inst.a_vertices),
        "B": list(inst.b_vertices),
        "edges": [list(e) for e in sorted(inst.edges, key=lambda e: (a_rank[e[0]], b_rank[e[1]]))],
    }
    if inst.sigma_a is not None:
        out["sigma_A"] = list(inst.sigma_a)
    if inst.sigma_b is not None:
        out["sigma_B"] = list(inst.sigma_b)
    if inst.lengths is not None:
        out["lengths"] = {v: _rat(inst.lengths[v]) for v in inst.vertices}
    return out


def instance_from_json(data) -> Instance:
    if not isinstance(data, dict):
        raise MalformedInstance("an instance is a JSON object")
    unknown = set(data) - {"A", "B", "edges", "sigma_A", "sigma_B", "lengths"}
    if unknown:
        raise MalformedInstance(f"unknown keys {sorted(unknown)}")
    try:
        edges = [tuple(e) for e in data.get("edges", [])]
    except TypeError as exc:
        raise MalformedInstance("edges must be pairs") from exc
    if any(len(e) != 2 for e in edges):
        raise MalformedInstance("edges must be pairs")
    if len(set(edges)) != len(edges):
        raise MalformedInstance("duplicate edges")
    lengths = data.get("lengths")
    if lengths is not None:
        try:
            lengths = {v: as_fraction(x) for v, x in lengths.items()}
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedInstance(f"bad length: {exc}") from exc
    return Instance(
        a_vertices=data.get("A", []),
        b_vertices=data.get("B", []),
        edges=edges,
        sigma_a=data.get("sigma_A"),
        sigma_b=data.get("sigma_B"),
        lengths=lengths,
    )


def rep_to_json(rep: Representation, order=None) -> dict:
    keys = list(order) if order is not None else sorted(rep.foot, key=lambda v: (rep.foot[v], str(v)))
    return {"foot": {v: _rat(rep.foot[v]) for v in keys}, "length": {v: _rat(rep.length[v]) for v in keys}}


def rep_from_json(data) -> Representation:
    if not isinstance(data, dict) or "foot" not in data or "length" not in data:
        raise MalformedInstance("a representation needs 'foot' and 'length'")
    try:
        return Representation(data["foot"], data["length"])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInstance(f"bad representation: {exc}") from exc


def canonical_dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, default=str) + "\n"


# SVG ----------------------------------------------------------------------


@dataclass(frozen=True)
class RenderOptions:
    scale: Fraction = Fraction(40)
    show_labels: bool = True
    color_by: str = "set"

    def __post_init__(self):
        scale = as_fraction(self.scale)
        if scale <= 0:
            raise ValueError("scale must be positive")
        if self.color_by not in ("set", "component"):
            raise ValueError("color_by is 'set' or 'component'")
        object.__setattr__(self, "scale", scale)


SET_COLORS = {True: "#1f5fae", False: "#c23b22"}
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
MARGIN = 20


def _attr(v) -> str:
    return escape(str(v), {'"': "&quot;"})


def _num(x: Fraction) -> str:
    return f"{float(x):.3f}".rstrip("0").rstrip(".")


def render_svg(inst: Instance, rep: Representation, opts: RenderOptions | None = None) -> str:
    """Deterministic SVG with the ground line and one segment per stick.

    The plane point of foot ``p`` is ``(p, -p)``; SVG's y axis points down,
    so it lands at pixel ``(p, p)`` times the scale.
    """
    opts = opts or RenderOptions()
    report = verify_representation(inst, rep)
    if report:
        log.warning("rendering a representation that does not verify: %s", "; ".join(report.lines()[:5]))
    s = opts.scale
    if inst.vertices:
        xmin, xmax, ymin, ymax = rep.bounding_box(inst)
    else:
        xmin = xmax = ymin = ymax = Fraction(0)

    def px(x):
        return (x - xmin) * s + MARGIN

    def py(y):
        return (ymax - y) * s + MARGIN

    color = {}
    if opts.color_by == "component":
        for k, comp in enumerate(components(inst)):
            for v in comp:
                color[v] = PALETTE[k % len(PALETTE)]
    else:
        for v in inst.vertices:
            color[v] = SET_COLORS[inst.is_a(v)]

    width = (xmax - xmin) * s + 2 * MARGIN
    height = (ymax - ymin) * s + 2 * MARGIN
    feet = [rep.foot[v] for v in inst.vertices]
    lo, hi = (min(feet), max(feet)) if feet else (Fraction(0), Fraction(0))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(width)}" height="{_num(height)}">',
        f'<line class="ground" x1="{_num(px(lo))}" y1="{_num(py(-lo))}" x2="{_num(px(hi))}" y2="{_num(py(-hi))}" '
        'stroke="#888888" stroke-width="1"/>',
    ]
    labels = []
    for v in inst.vertices:
        p, ln = rep.foot[v], rep.length[v]
        x1, y1 = p, -p
        x2, y2 = (p, -p + ln) if inst.is_a(v) else (p + ln, -p)
        kind = "vertical" if inst.is_a(v) else "horizontal"
        out.append(
            f'<line class="{kind}" data-id="{_attr(v)}" x1="{_num(px(x1))}" y1="{_num(py(y1))}" '
            f'x2="{_num(px(x2))}" y2="{_num(py(y2))}" stroke="{color[v]}" stroke-width="2"/>'
        )
        if opts.show_labels:
            labels.append(
                f'<text x="{_num(px(x2) + 3)}" y="{_num(py(y2) - 3)}" font-size="10" '
                f'fill="{color[v]}">{escape(str(v))}</text>'
            )
    out += labels
    out.append("</svg>")
    return "\n".join(out) + "\n"


# commands -----------------------------------------------------------------


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise MalformedInstance(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInstance(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _emit(obj, out: str | None) -> None:
    text = canonical_dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _checked(inst: Instance, rep: Representation) -> Representation:
    report = verify_representation(inst, rep)
    if report:
        raise WitnessRejected("; ".join(report.lines()[:10]))
    return rep


def _params(args) -> GadgetParams:
    eps = as_fraction(args.epsilon) if args.epsilon is not None else Fraction(1, 64)
    delta = as_fraction(args.delta) if args.delta is not None else None
    return GadgetParams(eps, delta)


def cmd_solve_ab(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    rep = _checked(inst, solve_stick_ab(inst))
    _emit({"feasible": True, "representation": rep_to_json(rep)}, args.output)
    return 0


def cmd_solve_a(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    result = solve_stick_a(inst)
    rep = _checked(inst.replace(sigma_b=result.sigma_b), result.representation)
    out = {"feasible": True, "sigma_B": list(result.sigma_b), "representation": rep_to_json(rep)}
    if args.dump_forest:
        out["forests"] = [f.forest_text() for f in result.forests]
        out["expressed"] = [sorted(list(p) for p in f.forest_expressed(bound=args.max_size)) for f in result.forests]
    _emit(out, args.output)
    return 0


def cmd_solve_fixed(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    order = _load_json(args.order)
    if not isinstance(order, list):
        raise MalformedInstance("the order file holds a JSON list of stick ids")
    rep = _checked(inst, solve_fixed_with_order(inst, order))
    _emit({"feasible": True, "representation": rep_to_json(rep)}, args.output)
    return 0


def cmd_solve_fixed_ab(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    rep = _checked(inst, solve_stick_fix_ab(inst))
    _emit({"feasible": True, "representation": rep_to_json(rep)}, args.output)
    return 0


def cmd_oracle(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    if args.variant == "fixed":
        ok, rep = oracle_fixed(inst, max_size=args.max_size)
    else:
        fn = {"stick": oracle_stick, "a": oracle_stick_a, "ab": oracle_stick_ab}[args.variant]
        ok, order = fn(inst, max_size=args.max_size)
        rep = order_witness(inst, order) if ok else None
    if not ok:
        _emit({"feasible": False, "reason": f"no {args.variant} representation exists"}, args.output)
        return 1
    check = inst
    if args.variant != "fixed":
        # lengths are free in these variants
        check = inst.replace(lengths=None)
    if args.variant == "stick":
        check = check.replace(sigma_a=None, sigma_b=None)
    elif args.variant == "a":
        check = check.replace(sigma_b=None)
    _emit({"feasible": True, "representation": rep_to_json(_checked(check, rep))}, args.output)
    return 0


def cmd_verify(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    rep = rep_from_json(_load_json(args.representation))
    report = verify_representation(inst, rep)
    _emit(report.to_json(), args.output)
    return 1 if report else 0


def cmd_render(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    rep = rep_from_json(_load_json(args.representation))
    if args.scale == "fit":
        w, h = rep.extent(inst) if inst.vertices else (Fraction(0), Fraction(0))
        span = max(w, h)
        scale = Fraction(800) / span if span > 0 else Fraction(40)
    else:
        scale = as_fraction(args.scale)
    opts = RenderOptions(scale=scale, show_labels=not args.no_labels, color_by=args.color_by)
    svg = render_svg(inst, rep, opts)
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


def _write_gadget(gi, args) -> int:
    _emit(instance_to_json(gi.instance), args.output)
    if args.witness:
        if gi.witness is None:
            raise MalformedInstance("no witness: supply a certificate (partition or assignment)")
        Path(args.witness).write_text(canonical_dumps(rep_to_json(_checked(gi.instance, gi.witness))))
    return 0


def _random_partition(m: int, rng: random.Random):
    """A yes-instance: m triples summing to a common C with C/4 < s < C/2."""
    c = 12 * rng.randint(2, 5)
    triples = []
    for _ in range(m):
        while True:
            s1 = rng.randint(c // 4 + 1, c // 2 - 1)
            s2 = rng.randint(c // 4 + 1, c // 2 - 1)
            s3 = c - s1 - s2
            if c / 4 < s3 < c / 2:
                triples.append((s1, s2, s3))
                break
    return triples


def cmd_gen_3part(args, three_lengths: bool) -> int:
    if args.random is not None:
        rng = random.Random(args.seed)
        partition = _random_partition(args.random, rng)
        numbers = [s for t in partition for s in t]
        rng.shuffle(numbers)
    else:
        if not args.numbers:
            raise MalformedInstance("give the numbers or --random M")
        numbers = args.numbers
        partition = _parse_partition(args.partition) if args.partition else None
    tp = ThreePartitionInstance(tuple(numbers))
    gen = gen_3partition_three_lengths if three_lengths else gen_3partition
    gi = gen(tp, _params(args), partition=partition)
    return _write_gadget(gi, args)


def _parse_partition(text: str):
    try:
        return [tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise MalformedInstance(f"bad partition {text!r}; expected e.g. '5,5,5;5,5,5'") from exc


def _parse_cnf(text: str, n_vars: int | None) -> MonotoneCnf:
    try:
        clauses = [tuple(int(x) for x in part.split()) for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise MalformedInstance(f"bad formula {text!r}; expected e.g. '1 2 3; -1 -2 -4'") from exc
    n = n_vars or max((abs(v) for c in clauses for v in c), default=1)
    return MonotoneCnf(n, tuple(clauses))


def _random_cnf(n: int, m: int, rng: random.Random):
    """Random monotone formula with a planted satisfying assignment."""
    if n < 3:
        raise MalformedInstance("need at least 3 variables")
    truth = [rng.random() < 0.5 for _ in range(n)]
    clauses = []
    while len(clauses) < m:
        vs = rng.sample(range(1, n + 1), 3)
        sign = rng.choice((1, -1))
        if any(truth[v - 1] == (sign > 0) for v in vs):
            clauses.append(tuple(sign * v for v in vs))
    return MonotoneCnf(n, tuple(clauses)), truth


def cmd_gen_m3sat(args) -> int:
    if args.random is not None:
        n, m = args.random
        phi, assignment = _random_cnf(n, m, random.Random(args.seed))
    else:
        if not args.cnf:
            raise MalformedInstance("give --cnf or --random N M")
        phi = _parse_cnf(args.cnf, args.n_vars)
        assignment = None
        if args.assignment:
            if set(args.assignment) - {"0", "1", "t", "f"}:
                raise MalformedInstance("assignment is a string over {t,f} or {1,0}")
            assignment = [c in "1t" for c in args.assignment]
    gi = gen_monotone3sat(phi, _params(args), variant=args.variant, assignment=assignment)
    return _write_gadget(gi, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stickkit", description="Stick graph recognition and gadget generation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_output(p):
        p.add_argument("-o", "--output", help="write the result here instead of stdout")
        return p

    p = with_output(sub.add_parser("solve-ab", help="both orders given"))
    p.add_argument("instance")
    p.set_defaults(func=cmd_solve_ab)

    p = with_output(sub.add_parser("solve-a", help="vertical order given"))
    p.add_argument("instance")
    p.add_argument("--dump-forest", action="store_true", help="include the final forest and its expressed orders")
    p.add_argument("--max-size", type=int, default=8, help="leaf bound for --dump-forest")
    p.set_defaults(func=cmd_solve_a)

    p = with_output(sub.add_parser("solve-fixed", help="fixed lengths, total ground order given"))
    p.add_argument("instance")
    p.add_argument("--order", required=True, help="JSON list with the left-to-right order of all sticks")
    p.set_defaults(func=cmd_solve_fixed)

    p = with_output(sub.add_parser("solve-fixed-ab", help="fixed lengths, both orders given"))
    p.add_argument("instance")
    p.set_defaults(func=cmd_solve_fixed_ab)

    p = with_output(sub.add_parser("oracle", help="brute force over all orders"))
    p.add_argument("instance")
    p.add_argument("--variant", choices=("stick", "a", "ab", "fixed"), default="ab")
    p.add_argument("--max-size", type=int, default=10)
    p.set_defaults(func=cmd_oracle)

    for name, three in (("gen-3part", False), ("gen-3part3len", True)):
        p = with_output(sub.add_parser(name, help="instance from a 3-PARTITION input"))
        p.add_argument("numbers", nargs="*", type=int)
        p.add_argument("--partition", help="triples, e.g. '5,5,5;5,5,5'; enables the witness")
        p.add_argument("--random", type=int, metavar="M", help="random yes-instance with M triples")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--epsilon")
        p.add_argument("--delta")
        p.add_argument("--witness", help="write the witness representation here")
        p.set_defaults(func=lambda a, three=three: cmd_gen_3part(a, three))

    p = with_output(sub.add_parser("gen-m3sat", help="instance from a monotone 3-SAT formula"))
    p.add_argument("--cnf", help="clauses separated by ';', e.g. '1 2 3; -1 -2 -4'")
    p.add_argument("--n-vars", type=int)
    p.add_argument("--assignment", help="e.g. 'ttf' or '110'; enables the witness")
    p.add_argument("--variant", choices=VARIANTS, default=VARIANTS[0])
    p.add_argument("--random", type=int, nargs=2, metavar=("N", "M"), help="random satisfiable formula")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon")
    p.add_argument("--delta")
    p.add_argument("--witness", help="write the witness representation here")
    p.set_defaults(func=cmd_gen_m3sat)

    p = with_output(sub.add_parser("verify", help="check a representation against an instance"))
    p.add_argument("instance")
    p.add_argument("representation")
    p.set_defaults(func=cmd_verify)

    p = with_output(sub.add_parser("render", help="draw a representation as SVG"))
    p.add_argument("instance")
    p.add_argument("representation")
    p.add_argument("--scale", default="40", help="pixels per unit, or 'fit'")
    p.add_argument("--no-labels", action="store_true")
    p.add_argument("--color-by", choices=("set", "component"), default="set")
    p.set_defaults(func=cmd_render)
    return parser


def _configure_logging() -> None:
    level = os.environ.get("STICKKIT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def run(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    log.debug("command %s", args.command)
    try:
        return args.func(args)
    except Infeasible as exc:
        _emit(exc.to_json(), getattr(args, "output", None))
        return 1
    except WitnessRejected as exc:
        print(f"internal error: witness failed verification: {exc}", file=sys.stderr)
        return 3
    except (StickError, ValueError, TypeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
