"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run under pytest (the lines are printed in the terminal summary) or directly
with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import subprocess
import sys
import time
from math import factorial

import pytest

from minop import homology, operad, resolution, verify

RESULTS: dict = {}

# runtime targets in seconds
D_SQUARED_BUDGET = 120
BETTI_M4_BUDGET = 600


def poly_coefficients(n):
    """Coefficients of prod_{k<n} (1 + k t), computed by direct expansion."""
    coeffs = [1]
    for k in range(1, n):
        coeffs = [a + k * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return coeffs


def betti_list(name, n):
    b = verify.betti_table(name, n)
    return [b.betti.get(-k, 0) for k in range(n)]


def criterion_1():
    t = time.perf_counter()
    rep = True
    checked = 0
    for n in range(1, 5):
        r = verify.suite_d_squared("M", n)
        rep = rep and r["passed"]
        checked += r["checks"][0]["checked"]
    dt = time.perf_counter() - t
    return rep and checked == 1 + 4 + 48 + 960 and dt < D_SQUARED_BUDGET, f"{checked} elements, {dt:.1f}s"


def criterion_2():
    got = {}
    ok = True
    for n in (2, 3, 4):
        t = time.perf_counter()
        got[n] = betti_list("M", n)
        dt = time.perf_counter() - t
        ok &= got[n] == poly_coefficients(n) and (n < 4 or dt < BETTI_M4_BUDGET)
    ok &= got == {2: [1, 1], 3: [1, 3, 2], 4: [1, 6, 11, 6]}
    return ok, f"betti {got}"


def criterion_3():
    chis = {}
    for n in (2, 3, 4):
        c = verify.complex_for("M", n)
        chis[n] = homology.euler(c)
    cells = resolution.k_complex(4)
    dims = [sum(1 for c in cells if c.finite_edges == k) for k in range(3)]
    chi_k4 = dims[0] - dims[1] + dims[2]
    ok = chis == {2: 0, 3: 0, 4: 0} and dims == [11, 15, 5] and chi_k4 == 1
    return ok, f"chi(M_n)={chis}, K4 dims={dims}, chi(K4)={chi_k4}"


def criterion_4():
    r = verify.suite_leibniz(n_exhaustive=3, samples=200, sample_arity=4, seed=0)
    ex, sm = r["checks"][0], r["checks"][1]
    ok = r["passed"] and sm["checked"] >= 200
    return ok, f"exhaustive {ex['checked']}, sampled {sm['checked']}"


def criterion_5():
    r = verify.suite_operad_axioms(n_assoc=5, n_unit=5, n_equiv=3)
    counts = {c["id"]: c["checked"] for c in r["checks"]}
    return r["passed"], f"{counts}"


def criterion_6():
    ok = True
    parts = []
    for name, n in (("P-As", 2), ("P-As", 3), ("P-As", 4), ("P-M", 2), ("P-M", 3)):
        r = verify.suite_d_squared(name, n)
        ok &= r["passed"]
        b = betti_list(name, n)
        target = [factorial(n)] + [0] * (n - 1) if name == "P-As" else betti_list("M", n)
        ok &= b == target
        parts.append(f"{name},{n}:{b}")
    return ok, " ".join(parts)


def criterion_7():
    r = verify.suite_gerstenhaber(triples=60, cap=5, seed=0)
    by = {c["id"]: c["checked"] for c in r["checks"]}
    triples = sum(v for k, v in by.items() if k.startswith("antisymmetry/"))
    ok = r["passed"] and triples >= 100 and all(by[f"maurer-cartan/{a}"] == 1 for a in verify.ALGEBRAS)
    return ok, f"{triples} triples over {len(verify.ALGEBRAS)} algebras"


def criterion_8():
    r = verify.suite_dg_compat(n_max=3, cap=5, seed=0)
    trees = {c["id"]: c["checked"] for c in r["checks"]}
    per_algebra = [v for k, v in trees.items() if not k.endswith("negative-control")]
    ok = r["passed"] and all(v == 1 + 4 + 48 for v in per_algebra)
    return ok, f"{trees}"


def criterion_9():
    r = verify.suite_orders(n_max=4)
    gens = sum(c["checked"] for c in r["checks"] if c["id"].startswith("complementary/"))
    return r["passed"] and gens == 4 + 96 + 3840, f"{gens} generators"


DETERMINISM_RUNS = [
    ["verify", "--suite", "gerstenhaber", "--seed", "11", "--cap", "4"],
    ["verify", "--suite", "dg-compat", "--seed", "3", "--cap", "4"],
    ["verify", "--suite", "leibniz", "--seed", "5"],
    ["betti", "--operad", "P-M", "--arity", "3"],
    ["poset", "--arity", "3"],
]


def criterion_10():
    same = 0
    for args in DETERMINISM_RUNS:
        outs = [
            subprocess.run([sys.executable, "-m", "minop.cli", *args], capture_output=True, check=False).stdout
            for _ in range(2)
        ]
        same += outs[0] == outs[1] and bool(outs[0])
    return same == len(DETERMINISM_RUNS), f"{same}/{len(DETERMINISM_RUNS)} commands byte-identical"


CRITERIA = {
    1: ("d_M^2 = 0 for n <= 4", criterion_1),
    2: ("Betti(M_n) = prod(1+kt), n = 2,3,4", criterion_2),
    3: ("Euler characteristics of M_n and K4", criterion_3),
    4: ("graded Leibniz for d_M", criterion_4),
    5: ("operad axioms for M", criterion_5),
    6: ("d_P^2 = 0, phi chain map, quasi-isomorphism Betti", criterion_6),
    7: ("Gerstenhaber antisymmetry, Jacobi, d_m^2 = 0", criterion_7),
    8: ("dg-compatibility of the action", criterion_8),
    9: ("order lemmas for P_n generators, n <= 4", criterion_9),
    10: ("CLI determinism", criterion_10),
}


def line(k):
    ok, detail = RESULTS[k]
    return f"{'PASS' if ok else 'FAIL'} criterion {k}: {CRITERIA[k][0]} ({detail})"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    try:
        RESULTS[k] = CRITERIA[k][1]()
    except Exception as exc:  # a crash is a failure of the criterion, reported as such
        RESULTS[k] = (False, f"error: {exc!r}")
    print(line(k))
    assert RESULTS[k][0], line(k)


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        RESULTS[k] = CRITERIA[k][1]()
        failed += not RESULTS[k][0]
        print(line(k), flush=True)
    sys.exit(1 if failed else 0)
