import json
import re
from fractions import Fraction

import pytest

from stickkit.cli import (
    RenderOptions,
    canonical_dumps,
    instance_from_json,
    instance_to_json,
    render_svg,
    rep_from_json,
    rep_to_json,
    run,
)
from stickkit.core import Representation

from conftest import make

BAD_AB = {
    "A": ["a1", "a2", "a3"],
    "B": ["b1", "b2"],
    "edges": [["a1", "b1"], ["a1", "b2"], ["a2", "b1"], ["a3", "b2"]],
    "sigma_A": ["a1", "a2", "a3"],
    "sigma_B": ["b1", "b2"],
}
K22 = {
    "A": ["a1", "a2"],
    "B": ["b1", "b2"],
    "edges": [["a1", "b1"], ["a1", "b2"], ["a2", "b1"], ["a2", "b2"]],
    "sigma_A": ["a1", "a2"],
    "sigma_B": ["b1", "b2"],
}


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def _lines(svg):
    return re.findall(r"<line\b", svg)


def test_solve_ab_infeasible_names_a2(tmp_path, capsys):
    code = run(["solve-ab", _write(tmp_path, "bad.json", BAD_AB)])
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert out["feasible"] is False and out["at"] == "a2"


def test_solve_then_verify_then_render(tmp_path, capsys):
    inst = _write(tmp_path, "k22.json", K22)
    sol = tmp_path / "sol.json"
    assert run(["solve-ab", inst, "-o", str(sol)]) == 0
    rep = _write(tmp_path, "rep.json", json.loads(sol.read_text())["representation"])
    assert run(["verify", inst, rep]) == 0
    assert json.loads(capsys.readouterr().out)["valid"] is True
    svg_path = tmp_path / "out.svg"
    assert run(["render", inst, rep, "-o", str(svg_path)]) == 0
    svg = svg_path.read_text()
    assert svg.startswith("<svg") or svg.startswith("<?xml")
    assert len(_lines(svg)) == 5
    assert svg.count('class="vertical"') == 2 and svg.count('class="horizontal"') == 2


def test_verify_rejects_bad_drawing(tmp_path, capsys):
    inst = _write(tmp_path, "e.json", {"A": ["a1"], "B": ["b1"], "edges": [["a1", "b1"]]})
    rep = _write(tmp_path, "r.json", {"foot": {"b1": "0", "a1": "2"}, "length": {"b1": "1", "a1": "1"}})
    assert run(["verify", inst, rep]) == 1
    assert json.loads(capsys.readouterr().out)["missing"] == [["a1", "b1"]]


def test_usage_and_input_errors(tmp_path, capsys):
    assert run([]) == 2
    assert run(["solve-ab", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["solve-ab", str(bad)]) == 2
    assert run(["solve-ab", _write(tmp_path, "x.json", {"A": ["a"], "B": ["b"], "edges": [["b", "a"]]})]) == 2
    assert run(["gen-3part", "1", "5", "9"]) == 2
    assert "error" in capsys.readouterr().err


def test_solve_a_and_dump(tmp_path, capsys):
    data = {"A": ["a1"], "B": ["b1", "b2"], "edges": [["a1", "b1"], ["a1", "b2"]], "sigma_A": ["a1"]}
    assert run(["solve-a", _write(tmp_path, "p.json", data), "--dump-forest"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["expressed"] == [[["b1", "b2"], ["b2", "b1"]]]


def test_fixed_commands(tmp_path, capsys):
    inst = dict(K22, lengths={v: "1" for v in ["a1", "a2", "b1", "b2"]})
    path = _write(tmp_path, "f.json", inst)
    order = _write(tmp_path, "o.json", ["b1", "b2", "a1", "a2"])
    assert run(["solve-fixed", path, "--order", order]) == 0
    assert run(["solve-fixed-ab", path]) == 0
    wrong = _write(tmp_path, "w.json", ["a1", "b1", "b2", "a2"])
    capsys.readouterr()
    assert run(["solve-fixed", path, "--order", wrong]) == 1
    assert json.loads(capsys.readouterr().out)["certificate"]


@pytest.mark.parametrize("variant, code", [("stick", 0), ("a", 0), ("ab", 1), ("fixed", 1)])
def test_oracle_command(tmp_path, variant, code):
    inst = dict(BAD_AB, lengths={v: "1" for v in ["a1", "a2", "a3", "b1", "b2"]})
    assert run(["oracle", _write(tmp_path, "i.json", inst), "--variant", variant]) == code


def test_generators_write_verified_witnesses(tmp_path):
    inst, wit = tmp_path / "i.json", tmp_path / "w.json"
    args = ["gen-3part", "5", "5", "5", "5", "5", "5", "--partition", "5,5,5;5,5,5"]
    assert run(args + ["-o", str(inst), "--witness", str(wit)]) == 0
    assert run(["verify", str(inst), str(wit), "-o", str(tmp_path / "rep.json")]) == 0
    assert run(["gen-3part3len", "7", "8", "9", "--partition", "7,8,9", "--epsilon", "1/4",
                "-o", str(inst), "--witness", str(wit)]) == 0
    assert len(set(json.loads(inst.read_text())["lengths"].values())) == 3
    assert run(["gen-3part", "--random", "2", "--seed", "3", "-o", str(inst), "--witness", str(wit)]) == 0
    assert run(["verify", str(inst), str(wit), "-o", str(tmp_path / "rep.json")]) == 0
    for variant in ("with_isolated_A_order_only", "with_both_orders", "no_isolated"):
        assert run(["gen-m3sat", "--cnf", "1 2 3; -1 -2 -4", "--assignment", "tftf", "--variant", variant,
                    "-o", str(inst), "--witness", str(wit)]) == 0
        assert run(["verify", str(inst), str(wit), "-o", str(tmp_path / "rep.json")]) == 0
    assert run(["gen-m3sat", "--random", "5", "4", "--seed", "1", "-o", str(inst), "--witness", str(wit)]) == 0
    assert run(["gen-m3sat", "--cnf", "1 2 3", "--assignment", "fff"]) == 2


def test_json_round_trip_is_stable():
    inst = make(["a2", "a1"], ["b1"], [("a1", "b1"), ("a2", "b1")], sigma_a=["a1", "a2"], lengths={"a1": Fraction(1, 3), "a2": 2, "b1": 1})
    text = canonical_dumps(instance_to_json(inst))
    back = instance_from_json(json.loads(text))
    assert back == inst
    assert canonical_dumps(instance_to_json(back)) == text
    rep = Representation({"b1": 0, "a1": Fraction(1, 3), "a2": 1}, {"b1": 1, "a1": Fraction(1, 3), "a2": 2})
    assert rep_from_json(json.loads(canonical_dumps(rep_to_json(rep)))) == rep


def test_svg_line_counts_and_determinism():
    edge = make(["a1"], ["b1"], [("a1", "b1")])
    rep = Representation({"b1": 0, "a1": Fraction(1, 2)}, {"b1": 1, "a1": 1})
    svg = render_svg(edge, rep)
    assert len(_lines(svg)) == 3
    assert svg == render_svg(edge, rep)
    empty = render_svg(make([], [], []), Representation({}, {}))
    assert len(_lines(empty)) == 1
    quiet = render_svg(edge, rep, RenderOptions(show_labels=False, color_by="component"))
    assert "<text" not in quiet and len(_lines(quiet)) == 3
    with pytest.raises(ValueError):
        RenderOptions(scale=Fraction(0))


def test_ground_line_has_slope_minus_one():
    edge = make(["a1"], ["b1"], [("a1", "b1")])
    rep = Representation({"b1": 0, "a1": 2}, {"b1": 3, "a1": 3})
    svg = render_svg(edge, rep)
    ground = re.search(r'<line[^>]*class="ground"[^>]*>', svg).group(0)
    x1, y1, x2, y2 = (float(re.search(f'{k}="([-0-9.]+)"', ground).group(1)) for k in ("x1", "y1", "x2", "y2"))
    # SVG y grows downward, so a slope of -1 in the plane shows as +1 here
    assert (y2 - y1) == pytest.approx(x2 - x1)
