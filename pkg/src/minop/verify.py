"""Verification suites shared by the command line and the acceptance tests.

Every suite returns a plain dict report.  Reports contain no timings or
object ids, so a fixed seed gives byte-identical JSON.
"""
from __future__ import annotations

import itertools
import random

from . import action, algebras, homology, operad, orders, resolution
from .hochschild import bracket, hochschild_differential, is_maurer_cartan
from .linear import Chain
from .trees import PlanarTree, enumerate_admissible, relabel, rename_labels

MAX_FAILURES = 5


class Check:
    def __init__(self, ident: str):
        self.ident = ident
        self.checked = 0
        self.failures = []
        self.info = {}

    def record(self, ok: bool, detail=None):
        self.checked += 1
        if not ok:
            self.failures.append(detail)

    @property
    def passed(self) -> bool:
        return not self.failures and self.checked > 0

    def to_json(self):
        out = {
            "id": self.ident,
            "passed": self.passed,
            "checked": self.checked,
            "failures": len(self.failures),
            "examples": self.failures[:MAX_FAILURES],
        }
        if self.info:
            out["info"] = self.info
        return out


def report(suite: str, params: dict, checks) -> dict:
    checks = sorted(checks, key=lambda c: c.ident)
    return {
        "suite": suite,
        "params": params,
        "passed": all(c.passed for c in checks),
        "checks": [c.to_json() for c in checks],
    }


# ---------------------------------------------------------------------------
# complexes


def complex_for(name: str, n: int, check: bool = True):
    """``(basis, degree, differential)`` assembled for ``M``, ``P-M`` or ``P-As``."""
    if name == "M":
        return homology.assemble(operad.basis(n), operad.degree, operad.differential, check)
    if name in ("P-M", "P-As"):
        R = name[2:]
        return homology.assemble(resolution.basis_P(R, n), lambda m: m.degree, resolution.d_P, check)
    raise ValueError(f"unknown operad {name!r}; choose M, P-M or P-As")


def suite_d_squared(name: str, n: int) -> dict:
    c = Check(f"d-squared/{name}/{n}")
    if name == "M":
        elems, d, deg = operad.basis(n), operad.differential, operad.degree
    else:
        elems, d, deg = resolution.basis_P(name[2:], n), resolution.d_P, (lambda m: m.degree)
    for b in elems:
        img = d(b)
        dd = img.map(d)
        bad_deg = [str(t) for t, _ in img if deg(t) != deg(b) + 1]
        c.record(not dd and not bad_deg, {"element": str(b), "dd_terms": len(dd), "bad_degrees": bad_deg[:3]})
    checks = [c]
    if name != "M":
        R = name[2:]
        chain = Check(f"phi-chain-map/{name}/{n}")
        for b in elems:
            lhs = resolution.phi(resolution.d_P(b))
            rhs = resolution.d_R(R, resolution.phi(b))
            chain.record(lhs == rhs, {"element": str(b)})
        sec = Check(f"phi-psi-identity/{name}/{n}")
        for r in resolution.inscriptions(R, list(range(1, n + 1))):
            sec.record(resolution.phi(resolution.psi(r)) == Chain.basis(r), {"element": str(r)})
        filt = Check(f"generator-filtration/{name}/{n}")
        for g in resolution.generators(R, n):
            late = [str(s) for s, _ in resolution.d_P(g) if any(w >= g.weight() for w in resolution.components(s))]
            filt.record(not late, {"generator": str(g), "summands": late[:3]})
        checks += [chain, sec, filt]
    return report("d-squared", {"operad": name, "arity": n}, checks)


def betti_table(name: str, n: int, method: str = "exact"):
    return homology.betti(complex_for(name, n), method=method)


# ---------------------------------------------------------------------------
# minimal operad identities


def _leibniz_case(t1, i, t2):
    lhs = operad.d(operad.compose(t1, i, t2))
    rhs = operad.compose_chains(operad.differential(t1), i, Chain.basis(t2))
    sign = -1 if operad.degree(t1) % 2 else 1
    rhs = rhs + operad.compose_chains(Chain.basis(t1), i, operad.differential(t2)) * sign
    return lhs == rhs


def suite_leibniz(n_exhaustive: int = 3, samples: int = 200, sample_arity: int = 4, seed: int = 0) -> dict:
    ex = Check(f"leibniz/exhaustive/{n_exhaustive}")
    for n1 in range(1, n_exhaustive + 1):
        for n2 in range(1, n_exhaustive + 2 - n1):
            for t1 in operad.basis(n1):
                for t2 in operad.basis(n2):
                    for i in range(1, n1 + 1):
                        ex.record(_leibniz_case(t1, i, t2), {"t1": str(t1), "i": i, "t2": str(t2)})
    rng = random.Random(seed)
    sm = Check(f"leibniz/sampled/{sample_arity}")
    splits = [(n1, sample_arity + 1 - n1) for n1 in range(1, sample_arity + 1)]
    for _ in range(samples):
        n1, n2 = rng.choice(splits)
        t1 = rng.choice(operad.basis(n1))
        t2 = rng.choice(operad.basis(n2))
        i = rng.randint(1, n1)
        sm.record(_leibniz_case(t1, i, t2), {"t1": str(t1), "i": i, "t2": str(t2)})
    return report("leibniz", {"exhaustive": n_exhaustive, "samples": samples, "seed": seed}, [ex, sm])


def _triples(total):
    for n1, n2, n3 in itertools.product(range(1, total + 1), repeat=3):
        if n1 + n2 + n3 - 2 <= total:
            yield n1, n2, n3


def suite_operad_axioms(n_assoc: int = 5, n_unit: int = 4, n_equiv: int = 3) -> dict:
    unit = Check(f"unit/{n_unit}")
    te = PlanarTree((1, ()))
    for n in range(1, n_unit + 1):
        for t in operad.basis(n):
            unit.record(operad.compose(te, 1, t) == Chain.basis(t), {"tree": str(t), "side": "left"})
            for i in range(1, n + 1):
                unit.record(operad.compose(t, i, te) == Chain.basis(t), {"tree": str(t), "side": "right", "i": i})

    assoc = Check(f"associativity/{n_assoc}")
    basis = {n: operad.basis(n) for n in range(1, n_assoc + 1)}
    C = operad.compose_chains
    for n1, n2, n3 in _triples(n_assoc):
        for t1, t2, t3 in itertools.product(basis[n1], basis[n2], basis[n3]):
            a, b, c = Chain.basis(t1), Chain.basis(t2), Chain.basis(t3)
            d2, d3 = operad.degree(t2), operad.degree(t3)
            for i in range(1, n1 + 1):
                t12 = C(a, i, b)
                # sequential: t3 goes into t2
                for j in range(1, n2 + 1):
                    ok = C(t12, i + j - 1, c) == C(a, i, C(b, j, c))
                    assoc.record(ok, {"kind": "sequential", "trees": [str(t1), str(t2), str(t3)], "i": i, "j": j})
                # parallel: t3 into another slot of t1
                for k in range(i + 1, n1 + 1):
                    lhs = C(t12, k + n2 - 1, c)
                    sign = -1 if (d2 * d3) % 2 else 1
                    rhs = C(C(a, k, c), i, b) * sign
                    assoc.record(lhs == rhs, {"kind": "parallel", "trees": [str(t1), str(t2), str(t3)], "i": i, "k": k})

    equiv = Check(f"equivariance/{n_equiv}")
    for n1 in range(1, n_equiv + 1):
        for n2 in range(1, n_equiv + 2 - n1):
            N = n1 + n2 - 1
            for t1, t2 in itertools.product(operad.basis(n1), operad.basis(n2)):
                for i in range(1, n1 + 1):
                    comp = operad.compose(t1, i, t2)
                    for perm in itertools.permutations(range(1, N + 1)):
                        sigma = dict(zip(range(1, N + 1), perm))
                        lhs = operad.relabel_chain(comp, sigma)
                        m1 = operad.shift_labels(t1, i, n2)
                        park = N + 1
                        r1 = rename_labels(t1, {**{j: sigma[v] for j, v in m1.items()}, i: park})
                        r2 = rename_labels(t2, {k: sigma[k + i - 1] for k in range(1, n2 + 1)})
                        rhs = Chain.from_pairs(operad.compose_named(r1, park, r2))
                        equiv.record(lhs == rhs, {"t1": str(t1), "i": i, "t2": str(t2), "sigma": list(perm)})
    action_law = Check(f"relabel-action/{n_equiv}")
    for t in operad.basis(n_equiv):
        perms = list(itertools.permutations(range(1, n_equiv + 1)))
        for p, q in itertools.product(perms, perms):
            s = dict(zip(range(1, n_equiv + 1), p))
            r = dict(zip(range(1, n_equiv + 1), q))
            rs = {k: r[s[k]] for k in s}
            action_law.record(relabel(relabel(t, s), r) == relabel(t, rs), {"tree": str(t)})
    return report(
        "operad-axioms",
        {"associativity": n_assoc, "unit": n_unit, "equivariance": n_equiv},
        [unit, assoc, equiv, action_law],
    )


# ---------------------------------------------------------------------------
# cochain side

ALGEBRAS = ("dual-numbers", "x-u")


def _random_homogeneous(A, rng, cap, arities=(0, 1, 2)):
    sp = A.space
    while True:
        ar = rng.sample(list(arities), 2)
        degs = algebras.admissible_degrees(sp, ar)
        c = algebras.random_cochain(sp, rng, rng.choice(degs), ar, 0.7, cap=cap)
        if not c.is_zero():
            return c


def suite_gerstenhaber(triples: int = 60, cap: int = 5, seed: int = 0) -> dict:
    checks = []
    for name in ALGEBRAS:
        A = algebras.TEST_ALGEBRAS[name](cap=cap)
        rng = random.Random(f"{seed}/{name}")
        anti, jac, dd = Check(f"antisymmetry/{name}"), Check(f"jacobi/{name}"), Check(f"d-squared/{name}")
        mc = Check(f"maurer-cartan/{name}")
        mc.record(is_maurer_cartan(A.m).holds, {"algebra": name})
        nonzero = 0
        for t in range(triples):
            a, b, c = (_random_homogeneous(A, rng, cap) for _ in range(3))
            da, db, dc = a.degree, b.degree, c.degree
            s = lambda x: -1 if x % 2 else 1  # noqa: E731
            ab = bracket(a, b)
            nonzero += not ab.is_zero()
            anti.record((ab + bracket(b, a).scale(s(da * db))).is_zero(), {"triple": t})
            j = (
                bracket(a, bracket(b, c)).scale(s(da * dc))
                + bracket(b, bracket(c, a)).scale(s(db * da))
                + bracket(c, bracket(a, b)).scale(s(dc * db))
            )
            jac.record(j.is_zero(), {"triple": t, "arities": sorted(j.components)})
            dd.record(hochschild_differential(A, hochschild_differential(A, a)).is_zero(), {"triple": t})
        anti.info = {"nonzero_brackets": nonzero}
        checks += [anti, jac, dd, mc]
    return report("gerstenhaber", {"triples": triples, "cap": cap, "seed": seed}, checks)


def suite_action_axioms(n_max: int = 3, cap: int = 5, seed: int = 0) -> dict:
    checks = []
    for name in ALGEBRAS:
        A = algebras.TEST_ALGEBRAS[name](cap=cap)
        rng = random.Random(f"{seed}/{name}")
        gammas = [_random_homogeneous(A, rng, cap) for _ in range(n_max)]
        v = action.check_algebra_axioms(A, gammas, n_max)
        c = Check(f"algebra-axioms/{name}")
        c.checked = v.checked
        c.failures = [{"t1": f["t1"], "i": f["i"], "t2": f["t2"]} for f in v.failures]
        checks.append(c)
    return report("action-axioms", {"n_max": n_max, "cap": cap, "seed": seed}, checks)


def suite_dg_compat(n_max: int = 3, cap: int = 5, seed: int = 0) -> dict:
    checks = []
    for name in ALGEBRAS:
        A = algebras.TEST_ALGEBRAS[name](cap=cap)
        rng = random.Random(f"{seed}/{name}")
        c = Check(f"dg-compat/{name}")
        nontrivial = 0
        for n in range(1, n_max + 1):
            for t in operad.basis(n):
                gammas = [_random_homogeneous(A, rng, cap) for _ in range(n)]
                defect = action.dg_defect(t, gammas, A)
                nontrivial += not bracket(A.m, action.act(t, gammas, A)).is_zero()
                c.record(defect.is_zero(), {"tree": str(t), "defect_arities": sorted(defect.components)})
        c.info = {"nonzero_lhs": nontrivial}
        checks.append(c)
    # negative control: a product that is not Maurer-Cartan must break the identity
    bad = algebras.non_associative(cap=cap)
    rng = random.Random(f"{seed}/negative")
    neg = Check("dg-compat/negative-control")
    broken = 0
    for t in operad.basis(2):
        gammas = [_random_homogeneous(algebras.dual_numbers(cap), rng, cap) for _ in range(2)]
        broken += not action.dg_defect(t, gammas, bad).is_zero()
    neg.record(broken > 0, {"broken_trees": broken})
    neg.info = {"broken_trees": broken}
    checks.append(neg)
    return report("dg-compat", {"n_max": n_max, "cap": cap, "seed": seed}, checks)


def suite_orders(n_max: int = 4) -> dict:
    checks = []
    for n in range(2, n_max + 1):
        comp, tot, rec, mini = (Check(f"{k}/{n}") for k in ("complementary", "total", "reconstruct", "minimal"))
        for g in resolution.generators("M", n):
            p = orders.tail_orders(g)
            problems = p.problems()
            comp.record(not problems, {"generator": str(g), "problem": problems[:1]})
            if problems:
                continue
            try:
                plus, minus = orders.combined_orders(p)
            except orders.OrderError as exc:
                tot.record(False, {"generator": str(g), "error": str(exc)})
                continue
            tot.record(True)
            rec.record(orders.reconstruct(plus, minus) == p, {"generator": str(g)})
            try:
                s0 = orders.minimal_element(p)
                mini.record(s0 == plus[0], {"generator": str(g), "s0": s0, "min_plus": plus[0]})
            except orders.OrderError as exc:
                mini.record(False, {"generator": str(g), "error": str(exc)})
        checks += [comp, tot, rec, mini]
    return report("orders", {"n_max": n_max}, checks)


SUITES = {
    "d-squared": suite_d_squared,
    "leibniz": suite_leibniz,
    "operad-axioms": suite_operad_axioms,
    "gerstenhaber": suite_gerstenhaber,
    "action-axioms": suite_action_axioms,
    "dg-compat": suite_dg_compat,
    "orders": suite_orders,
}


def admissible_count(n: int) -> int:
    return len(enumerate_admissible(n))
