from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stickkit.core import (
    Instance,
    MalformedInstance,
    MissingVertex,
    Representation,
    as_fraction,
    components,
    intersection_edges,
    intersects,
    verify_representation,
)

from conftest import make

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
lengths = st.fractions(min_value=Fraction(1, 12), max_value=20, max_denominator=12)


@pytest.mark.parametrize(
    "args, expected",
    [
        ((1, 2, 0, 2), True),
        ((0, 5, 1, 5), False),
        ((3, 3, 0, 3), True),
        ((0, 1, 0, 1), True),  # shared foot
        ((Fraction(7, 2), 3, 0, 3), False),
    ],
)
def test_intersects_examples(args, expected):
    assert intersects(*map(Fraction, args)) is expected


@given(rationals, lengths, rationals, lengths, lengths)
def test_intersects_monotone_in_lengths(pa, la, pb, lb, extra):
    if intersects(pa, la, pb, lb):
        assert intersects(pa, la + extra, pb, lb)
        assert intersects(pa, la, pb, lb + extra)


@given(rationals, lengths, rationals, lengths)
def test_horizontal_never_reaches_left(pa, la, pb, lb):
    if pa < pb:
        assert not intersects(pa, la, pb, lb)


def test_verify_single_edge():
    inst = make(["a1"], ["b1"], [("a1", "b1")])
    ok = Representation({"b1": 0, "a1": Fraction(1, 2)}, {"b1": 1, "a1": 1})
    assert verify_representation(inst, ok).is_empty
    bad = Representation({"b1": 0, "a1": 2}, {"b1": 1, "a1": 1})
    report = verify_representation(inst, bad)
    assert report.missing == [("a1", "b1")]
    assert report.lines() == ["missing intersection a1-b1"]


def test_verify_k22():
    inst = make(["a1", "a2"], ["b1", "b2"], [(a, b) for a in ("a1", "a2") for b in ("b1", "b2")])
    rep = Representation({"b1": 0, "b2": 1, "a1": 2, "a2": 3}, dict.fromkeys(["a1", "a2", "b1", "b2"], 3))
    assert verify_representation(inst, rep).is_empty


def test_verify_reports_spurious_order_and_length():
    inst = make(["a1"], ["b1", "b2"], [("a1", "b1")], sigma_b=["b2", "b1"], lengths={"a1": 1, "b1": 1, "b2": 1})
    rep = Representation({"b1": 0, "b2": Fraction(1, 2), "a1": 1}, {"a1": 1, "b1": 1, "b2": 2})
    report = verify_representation(inst, rep)
    assert report.spurious == [("a1", "b2")]
    assert report.order_violations == [("sigma_B", "b2", "b1")]
    assert report.length_mismatches == [("b2", Fraction(2), Fraction(1))]
    assert not report.to_json()["valid"]


def test_foot_collisions():
    inst = make(["a1", "a2"], ["b1"], [("a1", "b1")])
    shared = Representation({"a1": 0, "b1": 0, "a2": 5}, {"a1": 1, "b1": 1, "a2": 1})
    assert verify_representation(inst, shared).foot_collisions == []
    two_verticals = Representation({"a1": 0, "b1": -1, "a2": 0}, {"a1": 1, "b1": 1, "a2": 1})
    report = verify_representation(inst, two_verticals)
    assert report.foot_collisions == [("a1", "a2")]


def test_verify_missing_vertex():
    inst = make(["a1"], ["b1"], [("a1", "b1")])
    with pytest.raises(MissingVertex):
        verify_representation(inst, Representation({"a1": 0}, {"a1": 1}))


@st.composite
def drawn(draw):
    n_a = draw(st.integers(1, 6))
    n_b = draw(st.integers(1, 6))
    a = [f"a{i}" for i in range(n_a)]
    b = [f"b{j}" for j in range(n_b)]
    feet = draw(st.lists(rationals, min_size=n_a + n_b, max_size=n_a + n_b))
    lens = draw(st.lists(lengths, min_size=n_a + n_b, max_size=n_a + n_b))
    rep = Representation(dict(zip(a + b, feet)), dict(zip(a + b, lens)))
    return a, b, rep


@settings(max_examples=150)
@given(drawn())
def test_fast_verify_matches_pairwise_scan(data):
    a, b, rep = data
    # the graph read off by exhaustive pair enumeration always verifies
    inst = Instance(a, b, intersection_edges(Instance(a, b, []), rep))
    report = verify_representation(inst, rep)
    assert not report.missing and not report.spurious
    # and any single edge flip is caught
    if a and b:
        e = (a[0], b[0])
        flipped = Instance(a, b, inst.edges ^ {e})
        report = verify_representation(flipped, rep)
        assert (report.missing + report.spurious) == [e]


def test_components_examples():
    assert components(make(["a1", "a2"], ["b1", "b2"], [("a1", "b1"), ("a2", "b2")])) == [{"a1", "b1"}, {"a2", "b2"}]
    assert components(make(["a1", "a2"], ["b1"], [("a1", "b1"), ("a2", "b1")])) == [{"a1", "a2", "b1"}]
    assert components(make(["a1"], ["b1"], [])) == [{"a1"}, {"b1"}]


def test_instance_validation():
    with pytest.raises(MalformedInstance):
        make(["a1"], ["a1"], [])
    with pytest.raises(MalformedInstance):
        make(["a1"], ["b1"], [("b1", "a1")])
    with pytest.raises(MalformedInstance):
        make(["a1"], ["b1"], [], sigma_a=["a1", "a1"])
    with pytest.raises(MalformedInstance):
        make(["a1"], ["b1"], [], lengths={"a1": 1, "b1": 0})
    with pytest.raises(MalformedInstance):
        make(["a1"], ["b1"], [], lengths={"a1": 1})


def test_as_fraction_refuses_floats():
    assert as_fraction("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_induced_restricts_orders_and_lengths():
    inst = make(["a1", "a2"], ["b1"], [("a1", "b1"), ("a2", "b1")], sigma_a=["a2", "a1"], lengths={"a1": 1, "a2": 2, "b1": 3})
    sub = inst.induced({"a2", "b1"})
    assert sub.sigma_a == ("a2",)
    assert sub.lengths == {"a2": 2, "b1": 3}
    assert sub.edges == {("a2", "b1")}


def test_extent():
    inst = make(["a1"], ["b1"], [("a1", "b1")])
    rep = Representation({"b1": 0, "a1": 1}, {"b1": 2, "a1": 3})
    # x spans [0, 2], y spans [-1, 2]
    assert rep.extent(inst) == (2, 3)
