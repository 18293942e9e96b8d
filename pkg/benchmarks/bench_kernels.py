"""Time the compiled power-iteration kernel against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row solves q(G) for one graph with both backends and reports the best
wall time of ``--repeat`` runs and the speed-up. The two backends must agree
to within the solver tolerance; the script exits non-zero otherwise.
"""

import argparse
import sys
import time

from supertrees import spectral
from supertrees.families import hyperstar, loose_path, s1
from supertrees.spectral import SolverOptions, spectral_radius

CASES = [
    ("loose_path(20,3)", lambda: loose_path(20, 3)),
    ("loose_path(60,3)", lambda: loose_path(60, 3)),
    ("hyperstar(40,4)", lambda: hyperstar(40, 4)),
    ("s1(30,10,3)", lambda: s1(30, 10, 3)),
    ("s1(80,20,5)", lambda: s1(80, 20, 5)),
]


def best_time(G, backend, opts, repeat):
    spectral.set_backend(backend)
    best, res = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = spectral_radius(G, "Q", opts)
        best = min(best, time.perf_counter() - t0)
    return best, res


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args(argv)
    if "cython" not in spectral.BACKENDS:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1
    opts = SolverOptions(tolerance=args.tol)
    print(f"{'graph':<20}{'iters':>8}{'python ms':>12}{'cython ms':>12}{'speed-up':>10}")
    ok = True
    for name, make in CASES:
        G = make()
        t_py, r_py = best_time(G, "python", opts, args.repeat)
        t_cy, r_cy = best_time(G, "cython", opts, args.repeat)
        ok &= abs(r_py.value - r_cy.value) <= 10 * args.tol
        print(f"{name:<20}{r_cy.iterations:>8}{t_py * 1e3:>12.2f}{t_cy * 1e3:>12.2f}{t_py / t_cy:>9.1f}x")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
