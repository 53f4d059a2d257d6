from fractions import Fraction

import pytest

from ilconv import mls
from ilconv.mls import (
    EXAMPLE1,
    HARMONIC,
    BallSpec,
    IntegerPt,
    IrrationalPt,
    Isolated,
    LabelPt,
    LimitPoint,
    PointError,
    RationalPt,
    TableSpace,
    check_metric_axioms,
    check_metric_like_axioms,
    check_partial_metric_axioms,
    check_t0,
    classify_point,
    in_ball,
)

one, two = IntegerPt(1), IntegerPt(2)
half, third = RationalPt(1, 2), RationalPt(1, 3)
root2 = IrrationalPt("sqrt2")


def test_example1_distances():
    assert EXAMPLE1.delta(root2, root2) == 0
    assert EXAMPLE1.delta(one, one) == 2
    assert EXAMPLE1.delta(one, two) == 2
    assert EXAMPLE1.delta(half, one) == 3
    assert EXAMPLE1.delta(half, half) == 3
    assert EXAMPLE1.delta(root2, IrrationalPt("pi")) == 3


def test_point_validation():
    with pytest.raises(PointError, match="fraction not reduced"):
        RationalPt(2, 4)
    with pytest.raises(PointError):
        RationalPt(1, 1)
    with pytest.raises(PointError):
        IntegerPt(-1)
    with pytest.raises(PointError):
        HARMONIC.delta(IntegerPt(2), IntegerPt(0))


def test_axiom_triple_on_example1():
    sample = EXAMPLE1.sample()
    assert check_metric_like_axioms(EXAMPLE1, sample).holds
    p = check_partial_metric_axioms(EXAMPLE1, sample)
    assert p.fails and p.certificate.axiom == "p1" and p.certificate.points == (half, third)
    m = check_metric_axioms(EXAMPLE1, sample)
    assert m.fails and m.certificate.points == (one, one) and m.certificate.lhs == 2


def test_harmonic_is_metric():
    assert check_metric_axioms(HARMONIC, HARMONIC.sample()).holds


def test_table_triangle_violation_found():
    t = TableSpace.from_entries(
        ["a", "b", "c"],
        {
            ("a", "a"): 0, ("b", "b"): 0, ("c", "c"): 0,
            ("a", "b"): 5, ("b", "a"): 5,
            ("a", "c"): 1, ("c", "a"): 1,
            ("b", "c"): 1, ("c", "b"): 1,
        },
    )
    v = check_metric_like_axioms(t, t.points())
    assert v.fails and v.certificate.axiom == "delta3"


def test_table_rejects_asymmetry_and_gaps():
    with pytest.raises(ValueError, match="symmetric"):
        TableSpace.from_entries(["a", "b"], {("a", "a"): 0, ("b", "b"): 0, ("a", "b"): 1, ("b", "a"): 2})
    with pytest.raises(ValueError, match="missing"):
        TableSpace.from_entries(["a", "b"], {("a", "a"): 0, ("a", "b"): 1, ("b", "a"): 1})


def test_ball_membership_uses_self_distance():
    ball = BallSpec(one, Fraction(1, 100))
    # every integer sits at deviation 0 from 1
    assert in_ball(EXAMPLE1, IntegerPt(17), ball)
    assert not in_ball(EXAMPLE1, half, ball)
    with pytest.raises(ValueError):
        BallSpec(one, Fraction(0))


def test_classify_points():
    assert isinstance(classify_point(HARMONIC, IntegerPt(0)), LimitPoint)
    assert classify_point(HARMONIC, half) == Isolated(Fraction(1, 6))
    assert isinstance(classify_point(HARMONIC, RationalPt(1, 20)), Isolated)
    assert isinstance(classify_point(EXAMPLE1, root2), Isolated)
    assert isinstance(classify_point(EXAMPLE1, one), LimitPoint)


def test_t0_holds_on_harmonic_and_fails_with_twins():
    assert check_t0(HARMONIC, HARMONIC.sample()).holds
    twins = TableSpace.from_entries(
        ["a", "b"], {("a", "a"): 1, ("b", "b"): 1, ("a", "b"): 1, ("b", "a"): 1}
    )
    v = check_t0(twins, twins.points())
    assert v.fails and v.certificate.points == (LabelPt("a"), LabelPt("b"))


def test_render_forms():
    assert [p.render() for p in (one, half, root2, LabelPt("a"))] == ["int 1", "rat 1/2", "irr sqrt2", "pt a"]
    assert mls.point_from_fraction(Fraction(1, 3)) == third
