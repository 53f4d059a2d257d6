"""Time the oracle prefix kernels: numba against the pure-numpy twins.

    python benchmarks/bench_kernels.py [--sizes 4096 65536 1048576] [--repeat 5]
"""

from __future__ import annotations

import argparse
import json
import timeit

import numpy as np

from ilconv import _kernels as k


def bench(fn, repeat: int) -> float:
    fn()  # warm-up, includes jit compilation
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[2**12, 2**16, 2**20])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    if not k.USING_NUMBA:
        raise SystemExit("numba is disabled (ILCONV_DISABLE_NUMBA); nothing to compare")
    rows = []
    for N in args.sizes:
        cells = k.cell_indices_numpy(N)
        assert np.array_equal(cells, k.cell_indices_numba(N))
        table = np.zeros(int(cells.max()) + 1, dtype=np.bool_)
        table[2::3] = True
        a = np.zeros(N, dtype=np.bool_)
        b = a.copy()
        b[-1] = True
        cases = {
            "cell_indices": (lambda: k.cell_indices_numpy(N), lambda: k.cell_indices_numba(N)),
            "select_cells": (lambda: k.select_cells_numpy(cells, table, False), lambda: k.select_cells_numba(cells, table, False)),
            "first_mismatch": (lambda: k.first_mismatch_numpy(a, b), lambda: k.first_mismatch_numba(a, b)),
        }
        for name, (np_fn, nb_fn) in cases.items():
            t_np, t_nb = bench(np_fn, args.repeat), bench(nb_fn, args.repeat)
            rows.append({"kernel": name, "N": N, "numpy_s": t_np, "numba_s": t_nb, "speedup": t_np / t_nb})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'kernel':<16}{'N':>10}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for r in rows:
        print(f"{r['kernel']:<16}{r['N']:>10}{r['numpy_s'] * 1e3:>12.3f}{r['numba_s'] * 1e3:>12.3f}{r['speedup']:>10.2f}")


if __name__ == "__main__":
    main()
