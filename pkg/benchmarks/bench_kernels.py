"""Wall-clock comparison of the search and series kernels.

    python benchmarks/bench_kernels.py [--height 40] [--levels 97 137]

The numba kernels are compiled once before timing.  The numpy kernel is
only timed up to a modest height since it enumerates the full box.
"""
import argparse
import time

from x0plus import _kernels, golden, ingest, model as model_mod


def _slabs(model, height):
    exps, coefs, offsets = _kernels.pack_polys(model.polys)
    g = model.gPlus
    return [(exps, coefs, offsets, g, lead, v, height)
            for lead in range(g) for v in ([1] if lead == g - 1 else range(1, height + 1))]


def _time(fn, slabs):
    t0 = time.perf_counter()
    n = sum(len(fn(*s)) for s in slabs)
    return time.perf_counter() - t0, n


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--height", type=int, default=40)
    ap.add_argument("--numpy-height", type=int, default=15)
    ap.add_argument("--levels", type=int, nargs="*", default=[97, 137])
    args = ap.parse_args()
    if not _kernels.numba_enabled():
        raise SystemExit("numba is disabled (X0PLUS_DISABLE_NUMBA); nothing to compare")
    warm = _slabs(golden.golden_model(), 3)
    for fn in (_kernels.search_slab_numba, _kernels.search_slab_solve):
        _time(fn, warm)
    print(f"{'model':>10} {'height':>6} {'kernel':>12} {'seconds':>9} {'points':>6}")
    for N in args.levels:
        m = model_mod.build_model(ingest.load_level(N))
        for name, fn, h in (("numpy", _kernels.search_slab_numpy, args.numpy_height),
                            ("numba-brute", _kernels.search_slab_numba, args.numpy_height),
                            ("numba-brute", _kernels.search_slab_numba, args.height),
                            ("numba-solve", _kernels.search_slab_solve, args.numpy_height),
                            ("numba-solve", _kernels.search_slab_solve, args.height)):
            dt, n = _time(fn, _slabs(m, h))
            print(f"{'N=' + str(N):>10} {h:>6} {name:>12} {dt:>9.3f} {n:>6}")
    basis = ingest.load_level(137)
    C = basis.coefficient_matrix(2000)
    _kernels.series_values_numba(C, 0.1 + 0.05j)
    for name, fn in (("numpy", _kernels.series_values_numpy), ("numba", _kernels.series_values_numba)):
        t0 = time.perf_counter()
        for k in range(200):
            fn(C, complex(0.001 * k, 0.05))
        print(f"series 2000 terms x200 {name:>6}: {time.perf_counter() - t0:.3f} s")


if __name__ == "__main__":
    main()
