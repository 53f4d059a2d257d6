from fractions import Fraction

import numpy as np

from ilconv import oracle
from ilconv.natset import SymbolicNatSet, cell_of


def test_cells_match_valuation():
    cs = oracle.cells(1000)
    assert cs.tolist() == [cell_of(n) for n in range(1, 1001)]


def test_equiv_reports_first_disagreement():
    v = oracle.equiv_on_prefix(SymbolicNatSet.cell(2), lambda n: n % 4 == 2 and n != 10, 64)
    assert v.fails and v.certificate.n == 10 and v.certificate.values == (True, False)
    assert oracle.equiv_on_prefix(SymbolicNatSet.cell(2), lambda n: n % 4 == 2, 64).holds


def test_empirical_density():
    assert oracle.empirical_density(lambda n: n % 4 == 2, 2**16) == Fraction(1, 4)


def test_witness_accepts_arrays_and_witnesses():
    bits = np.array([True, False, True, False])
    w = oracle.witness(bits, 4, "odd")
    assert oracle.witness(w, 3).bits.tolist() == [True, False, True]


def test_cell_mask_cofinite():
    m = oracle.cell_mask([1], 8, cofinite=True)
    assert m.tolist() == [n % 2 == 0 for n in range(1, 9)]
