"""Time the modular rank backends (numba loop vs numpy) against exact elimination.

    python3 benchmarks/bench_rank.py [--repeat 3]

Matrices are the differentials of M_4 and P_{As,4} plus one random block.
Every backend must report the same rank; the script exits 1 otherwise.
"""
from __future__ import annotations

import argparse
import random
import sys
import time

from minop import _kernels, homology, operad, resolution


def matrices():
    c = homology.assemble(operad.basis(4), operad.degree, operad.differential, check=False)
    for k in c.degrees:
        if c.matrices.get(k):
            yield f"M_4 d^{k}", c.matrices[k], len(c.bases.get(k + 1, ())), len(c.bases[k])
    p = homology.assemble(resolution.basis_P("As", 4), lambda m: m.degree, resolution.d_P, check=False)
    for k in p.degrees:
        if p.matrices.get(k):
            yield f"P_As,4 d^{k}", p.matrices[k], len(p.bases.get(k + 1, ())), len(p.bases[k])
    # a random dense block to stress the kernels
    rng = random.Random(0)
    n = 150
    cols = {j: {i: rng.randint(-3, 3) for i in range(n) if rng.random() < 0.3} for j in range(n)}
    yield "random 150x150", cols, n, n


def bench(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if _kernels.HAVE_NUMBA:
        _kernels.rank_mod_p([[1, 2], [3, 4]], backend="numba")  # compile outside the timings
    print(f"{'matrix':<18}{'shape':>12}{'exact':>10}" + "".join(f"{b:>10}" for b in backends) + "  rank")
    ok = True
    for name, cols, rows, ncols in matrices():
        r_exact, t_exact = bench(lambda: homology.rank_exact(cols), args.repeat)
        times = []
        for b in backends:
            r, t = bench(lambda: homology.rank_modular(cols, rows, ncols, backend=b), args.repeat)
            ok &= r == r_exact
            times.append(t)
        shape = f"{rows}x{ncols}"
        print(f"{name:<18}{shape:>12}{t_exact:>10.4f}" + "".join(f"{t:>10.4f}" for t in times) + f"  {r_exact}")
    if not _kernels.HAVE_NUMBA:
        print("numba disabled or missing: only the numpy backend was timed")
    print("ranks agree" if ok else "RANK MISMATCH")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
