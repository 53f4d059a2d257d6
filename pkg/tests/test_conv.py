import random
from fractions import Fraction

import pytest

from cases import random_case
from ilconv import conv, mls, oracle
from ilconv.conv import (
    CellSequence,
    ConstPoint,
    HarmonicApproach,
    IntegerRamp,
    PreconditionError,
    ap_promote,
    build_separating_sequence,
    classical_converges,
    deviation,
    deviation_set,
    extract_subsequence,
    i_converges,
    i_star_converges,
    i_star_refute,
    isolated_promote,
    probe_epsilon,
    refutation_subsequence,
    statistically_converges,
)
from ilconv.ideals import DECOMPOSITION, DENSITY0, FIN
from ilconv.mls import EXAMPLE1, HARMONIC, IntegerPt, IrrationalPt, RationalPt
from ilconv.natset import SymbolicNatSet
from ilconv.verdict import CellWitness, FilterSet

D = SymbolicNatSet.cell
one, two = IntegerPt(1), IntegerPt(2)
half = RationalPt(1, 2)
ex1 = CellSequence(EXAMPLE1, IntegerRamp(), {2: half})
thm5 = CellSequence(HARMONIC, HarmonicApproach(IntegerPt(0)))


def test_example1_values():
    assert [ex1.value(n) for n in range(1, 7)] == [one, half, one, IntegerPt(3), one, half]


def test_example1_deviation_sets():
    for x0 in (one, two):
        assert deviation_set(ex1, x0, Fraction(1, 1000)) == D(2)
        assert deviation_set(ex1, x0, Fraction(1)) == D(2)
        assert deviation_set(ex1, x0, Fraction(1001, 1000)) == SymbolicNatSet.empty()


def test_example1_verdicts():
    for x0 in (one, two):
        v = i_converges(ex1, x0, DECOMPOSITION)
        assert v.holds and v.certificate.set == D(2)
    c = classical_converges(ex1, one)
    assert c.fails and c.certificate == CellWitness(2, Fraction(1))
    s = statistically_converges(ex1, one)
    assert s.fails and s.values["density"] == Fraction(1, 4) and s.values["epsilon"] == Fraction(1, 2)


def test_far_target_fails_with_interior_epsilon():
    v = i_converges(CellSequence(EXAMPLE1, ConstPoint(half)), one, DECOMPOSITION)
    assert v.fails and v.values["epsilon"] == Fraction(1, 2)
    v = i_converges(CellSequence(EXAMPLE1, ConstPoint(one)), IrrationalPt("e"), DECOMPOSITION)
    assert v.fails and v.values["epsilon"] == 1
    assert probe_epsilon(Fraction(1)) == Fraction(1, 2)
    assert probe_epsilon(Fraction(3)) == 1


def test_statistical_with_index_exception():
    seq = CellSequence(EXAMPLE1, ConstPoint(one), point_overrides={1: half})
    assert statistically_converges(seq, one).holds
    assert classical_converges(seq, one).holds
    cellwise = CellSequence(EXAMPLE1, ConstPoint(one), {1: half})
    v = statistically_converges(cellwise, one)
    assert v.fails and v.values["density"] == Fraction(1, 2)


def test_harmonic_classical_fails_on_first_cell():
    v = classical_converges(thm5, IntegerPt(0))
    assert v.fails and v.certificate == CellWitness(1, Fraction(1, 2))


def test_thm5_pair():
    x0 = IntegerPt(0)
    assert i_converges(thm5, x0, DECOMPOSITION).holds
    r = i_star_refute(thm5, x0)
    assert r.fails and r.certificate == CellWitness(1, Fraction(1, 2))
    r3 = i_star_refute(thm5, x0, tested=D(1) | D(2))
    assert r3.certificate == CellWitness(3, Fraction(1, 4))
    assert i_star_converges(thm5, x0, DECOMPOSITION).fails


def test_refute_requires_member_tested_set():
    with pytest.raises(ValueError):
        i_star_refute(thm5, IntegerPt(0), tested=~D(1))
    with pytest.raises(ValueError):
        i_star_refute(thm5, IntegerPt(0), I=FIN)


def test_build_separating_sequence():
    seq = build_separating_sequence(HARMONIC, IntegerPt(0))
    assert [seq.cell_value(j) for j in range(1, 5)] == [RationalPt(1, j + 1) for j in range(1, 5)]
    with pytest.raises(PreconditionError) as e:
        build_separating_sequence(HARMONIC, half)
    assert e.value.reason == "not-limit-point"
    with pytest.raises(PreconditionError) as e:
        build_separating_sequence(EXAMPLE1, IrrationalPt("pi"))
    assert e.value.reason == "no-ball-pick"


def test_extract_example1():
    assert extract_subsequence(ex1, one, 5) == [1, 3, 4, 5, 7]


def test_extract_thm5_indices_grow():
    idx = extract_subsequence(thm5, IntegerPt(0), 12)
    assert all(a < b for a, b in zip(idx, idx[1:]))
    assert all(deviation(thm5, IntegerPt(0), n) < Fraction(1, k) for k, n in enumerate(idx, 1))


def test_extract_precondition():
    with pytest.raises(PreconditionError) as e:
        extract_subsequence(ex1, one, 3, FIN)
    assert e.value.reason == "not-i-convergent"


def test_refutation_subsequence():
    w = refutation_subsequence(ex1, one, FIN)
    assert w.S == D(2) and w.eps0 == Fraction(1, 2)
    assert refutation_subsequence(ex1, one, DECOMPOSITION) is None


def test_isolated_promote():
    seq = CellSequence(EXAMPLE1, ConstPoint(IrrationalPt("sqrt2")), {2: half})
    v = isolated_promote(seq, IrrationalPt("sqrt2"), DECOMPOSITION)
    assert v.holds and v.certificate == FilterSet(~D(2))
    with pytest.raises(PreconditionError) as e:
        isolated_promote(ex1, one, DECOMPOSITION)
    assert e.value.reason == "not-isolated"
    with pytest.raises(PreconditionError) as e:
        isolated_promote(seq, IrrationalPt("sqrt2"), FIN)
    assert e.value.reason == "not-i-convergent"


def test_ap_promote_and_refusals():
    seq = CellSequence(EXAMPLE1, ConstPoint(one), point_overrides={3: half, 9: half})
    v = ap_promote(seq, one, FIN)
    assert v.holds and v.values["crossover"] == {"1": 10, "1/2": 10, "1/4": 10, "1/8": 10}
    with pytest.raises(conv.APUnsupportedError, match="AP unsupported for decomposition"):
        ap_promote(ex1, one, DECOMPOSITION)
    with pytest.raises(PreconditionError):
        ap_promote(thm5, IntegerPt(0), DENSITY0)


def test_tail_certificates():
    with pytest.raises(conv.UncertifiedTail):
        conv.deviation_profile(thm5, IntegerPt(1))
    with pytest.raises(mls.PointError):
        CellSequence(HARMONIC, HarmonicApproach(half))
    with pytest.raises(mls.PointError):
        CellSequence(HARMONIC, IntegerRamp())


@pytest.mark.parametrize("seed", range(4))
def test_profiles_agree_with_oracle_scan(seed):
    rng = random.Random(seed)
    checked = 0
    while checked < 30:
        c = random_case(rng)
        try:
            prof = conv.deviation_profile(c.seq, c.x0)
        except conv.UncertifiedTail:
            continue
        assert oracle.scan_deviations(c.seq, c.x0, 300) == [prof.dev(n) for n in range(1, 301)], c
        checked += 1


@pytest.mark.parametrize("seed", range(4))
def test_deviation_sets_agree_with_oracle(seed):
    rng = random.Random(100 + seed)
    checked = 0
    while checked < 20:
        c = random_case(rng)
        try:
            prof = conv.deviation_profile(c.seq, c.x0)
        except conv.UncertifiedTail:
            continue
        devs = oracle.scan_deviations(c.seq, c.x0, 1024)
        for eps in (Fraction(1, 7), Fraction(1, 2), Fraction(1), Fraction(3)):
            A = conv._deviation_set(prof, eps)
            assert oracle.equiv_on_prefix(A, lambda n: devs[n - 1] >= eps, 1024).holds, (c, eps)
        checked += 1
