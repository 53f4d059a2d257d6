import numpy as np
import pytest

from ilconv import _kernels as k

needs_numba = pytest.mark.skipif(not k.USING_NUMBA, reason="numba disabled")


@pytest.mark.parametrize("N", [1, 2, 7, 1024, 100_003])
def test_numpy_cells_are_valuations(N):
    out = k.cell_indices_numpy(N)
    n = np.arange(1, N + 1)
    assert np.all((n % (2 ** (out - 1)) == 0) & (n % (2**out) != 0))


@needs_numba
@pytest.mark.parametrize("N", [1, 5, 4096, 65536])
def test_numba_and_numpy_agree(N):
    cs = k.cell_indices_numba(N)
    assert np.array_equal(cs, k.cell_indices_numpy(N))
    table = np.zeros(6, dtype=np.bool_)
    table[[2, 4]] = True
    for beyond in (False, True):
        assert np.array_equal(k.select_cells_numba(cs, table, beyond), k.select_cells_numpy(cs, table, beyond))
    a = np.zeros(N, dtype=np.bool_)
    b = a.copy()
    assert k.first_mismatch_numba(a, b) == k.first_mismatch_numpy(a, b) == -1
    b[N // 2] = True
    assert k.first_mismatch_numba(a, b) == k.first_mismatch_numpy(a, b) == N // 2


def test_disable_flag_selects_numpy(monkeypatch):
    import importlib

    monkeypatch.setenv("ILCONV_DISABLE_NUMBA", "1")
    fresh = importlib.reload(k)
    try:
        assert not fresh.USING_NUMBA
        assert fresh.cell_indices is fresh.cell_indices_numpy
    finally:
        monkeypatch.delenv("ILCONV_DISABLE_NUMBA")
        importlib.reload(k)
