"""Prefix kernels for the brute-force oracle.

Each kernel has a numba ``@njit`` body and a pure-numpy twin.  The numba path
is used when numba imports cleanly and ``ILCONV_DISABLE_NUMBA`` is unset (or
``0``); both paths must return identical arrays.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("ILCONV_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("numba disabled by ILCONV_DISABLE_NUMBA")
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

USING_NUMBA = njit is not None


# -- pure numpy -----------------------------------------------------------

def cell_indices_numpy(N: int) -> np.ndarray:
    """``out[i] = v2(i + 1) + 1`` for ``i`` in ``range(N)``."""
    n = np.arange(1, N + 1, dtype=np.int64)
    low = n & -n
    # low is an exact power of two, so frexp recovers its exponent exactly
    _, exp = np.frexp(low.astype(np.float64))
    return exp.astype(np.int64)


def select_cells_numpy(cells: np.ndarray, table: np.ndarray, beyond: bool) -> np.ndarray:
    """Membership mask: ``table[cell]`` for cells inside the table, ``beyond`` otherwise."""
    inside = cells < table.shape[0]
    out = np.full(cells.shape[0], beyond, dtype=np.bool_)
    out[inside] = table[cells[inside]]
    return out


def first_mismatch_numpy(a: np.ndarray, b: np.ndarray) -> int:
    diff = np.flatnonzero(a != b)
    return int(diff[0]) if diff.size else -1


# -- numba ----------------------------------------------------------------

if USING_NUMBA:

    @njit(cache=True)
    def _cell_indices_jit(N):
        out = np.empty(N, dtype=np.int64)
        for i in range(N):
            n = i + 1
            c = 1
            while n & 1 == 0:
                n >>= 1
                c += 1
            out[i] = c
        return out

    @njit(cache=True)
    def _select_cells_jit(cells, table, beyond):
        out = np.empty(cells.shape[0], dtype=np.bool_)
        size = table.shape[0]
        for i in range(cells.shape[0]):
            c = cells[i]
            out[i] = table[c] if c < size else beyond
        return out

    @njit(cache=True)
    def _first_mismatch_jit(a, b):
        for i in range(a.shape[0]):
            if a[i] != b[i]:
                return i
        return -1

    def cell_indices_numba(N: int) -> np.ndarray:
        return _cell_indices_jit(N)

    def select_cells_numba(cells: np.ndarray, table: np.ndarray, beyond: bool) -> np.ndarray:
        return _select_cells_jit(cells, table, bool(beyond))

    def first_mismatch_numba(a: np.ndarray, b: np.ndarray) -> int:
        return int(_first_mismatch_jit(a, b))

    cell_indices = cell_indices_numba
    select_cells = select_cells_numba
    first_mismatch = first_mismatch_numba
else:  # pragma: no cover
    cell_indices = cell_indices_numpy
    select_cells = select_cells_numpy
    first_mismatch = first_mismatch_numpy
