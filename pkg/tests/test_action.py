from __future__ import annotations

import itertools
import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from minop import action, algebras, operad
from minop.hochschild import Cochain
from minop.linear import Chain
from minop.trees import T_e, angles, enumerate_admissible, nesting, product, relabel


def random_homogeneous(A, rng, cap=5, arities=(0, 1, 2)):
    while True:
        ar = rng.sample(list(arities), 2)
        d = rng.choice(algebras.admissible_degrees(A.space, ar))
        c = algebras.random_cochain(A.space, rng, d, ar, 0.7, cap=cap)
        if not c.is_zero():
            return c


ALGS = ["dual-numbers", "x-u"]


def test_corolla_insertions():
    for t in enumerate_admissible(3)[:10]:
        for k in range(4):
            assert action.Corolla(k).count(t) == comb(len(angles(t)) + k - 1, k)


def test_unit_acts_as_identity():
    A = algebras.dual_numbers(cap=5)
    g = random_homogeneous(A, random.Random(0))
    assert action.act(T_e, [g], A) == g


def test_product_of_constants():
    # gamma_1() = x, gamma_2() = 1: the value is +-m_2(x, 1) = +-x in arity 0 only
    A = algebras.dual_numbers(cap=4)
    sp = A.space
    g1 = Cochain.from_entries(sp, [((), "x", 1)], cap=4)
    g2 = Cochain.from_entries(sp, [((), "1", 1)], cap=4)
    out = action.act(product(1, 2), [g1, g2], A)
    assert set(out.components) == {0}
    (key, c), = out.components[0].items()
    assert key == ((), sp.index("x")) and abs(c) == 1
    # both constants have Hochschild degree 0 and m_2 is commutative: no sign on swapping
    swapped = action.act(product(1, 2), [g2, g1], A)
    assert swapped.components[0][key] == c


def test_zero_structure_kills_non_labeled_vertices():
    A = algebras.dual_numbers(cap=4)
    zero = Cochain.zero(A.space, cap=4)
    rng = random.Random(1)
    for t in enumerate_admissible(3):
        if any(t.at(p)[0] is None for p in t.preorder):
            g = [random_homogeneous(A, rng, cap=4) for _ in range(3)]
            assert action.act(t, g, zero).is_zero()


@pytest.mark.parametrize("name", ALGS)
def test_multilinear(name):
    A = algebras.TEST_ALGEBRAS[name](cap=5)
    rng = random.Random(2)
    for t in enumerate_admissible(2):
        a = random_homogeneous(A, rng)
        b = random_homogeneous(A, rng)
        c = random_homogeneous(A, rng)
        lhs = action.act(t, [a + b.scale(3), c], A)
        rhs = action.act(t, [a, c], A) + action.act(t, [b, c], A).scale(3)
        assert lhs.agrees_with(rhs)


@pytest.mark.parametrize("name", ALGS)
def test_equivariance(name):
    # the labels carry no sign; only the Koszul sign of reordering the cochains appears
    A = algebras.TEST_ALGEBRAS[name](cap=5)
    rng = random.Random(3)
    for t in enumerate_admissible(3)[::4]:
        g = [random_homogeneous(A, rng) for _ in range(3)]
        degs = [x.total_degree for x in g]
        for p in itertools.permutations([1, 2, 3]):
            s = dict(zip([1, 2, 3], p))
            inv = sum(
                1
                for a in range(3)
                for b in range(a + 1, 3)
                if p[a] > p[b] and degs[p[a] - 1] % 2 and degs[p[b] - 1] % 2
            )
            lhs = action.act(relabel(t, s), g, A)
            rhs = action.act(t, [g[s[j] - 1] for j in (1, 2, 3)], A).scale(-1 if inv % 2 else 1)
            assert lhs.agrees_with(rhs)


@pytest.mark.parametrize("name", ALGS)
def test_degree_bookkeeping(name):
    A = algebras.TEST_ALGEBRAS[name](cap=5)
    rng = random.Random(4)
    for n in (1, 2, 3):
        for t in enumerate_admissible(n)[:8]:
            g = [random_homogeneous(A, rng) for _ in range(n)]
            out = action.act(t, g, A)
            if not out.is_zero():
                assert out.total_degree == operad.degree(t) + sum(x.total_degree for x in g)


@pytest.mark.parametrize("name", ALGS)
def test_algebra_axioms(name):
    A = algebras.TEST_ALGEBRAS[name](cap=4)
    rng = random.Random(5)
    g = [random_homogeneous(A, rng, cap=4) for _ in range(3)]
    v = action.check_algebra_axioms(A, g, 3)
    assert v and v.checked == 237


def test_algebra_axioms_detect_corrupted_compose():
    A = algebras.dual_numbers(cap=4)
    rng = random.Random(6)
    g = [random_homogeneous(A, rng, cap=4) for _ in range(3)]

    def corrupted(t1, i, t2):
        c = operad.compose(t1, i, t2)
        return c * -1 if operad.degree(t1) % 2 else c

    assert not action.check_algebra_axioms(A, g, 3, compose=corrupted)


def test_dg_compat_product_small_arities():
    A = algebras.dual_numbers(cap=5)
    rng = random.Random(7)
    g = [random_homogeneous(A, rng, arities=(0, 1)) for _ in range(2)]
    assert action.check_dg_compatibility(product(1, 2), g, A)
    assert action.check_dg_compatibility(T_e, g[:1], A)


@pytest.mark.parametrize("name", ALGS)
@given(seed=st.integers(0, 10**6), which=st.integers(0, 52))
def test_dg_compat_random(name, seed, which):
    A = algebras.TEST_ALGEBRAS[name](cap=4)
    trees = [t for n in (1, 2, 3) for t in enumerate_admissible(n)]
    t = trees[which]
    rng = random.Random(seed)
    g = [random_homogeneous(A, rng, cap=4) for _ in range(t.arity)]
    assert action.dg_defect(t, g, A).is_zero()


def test_dg_compat_negative_control():
    bad = algebras.non_associative(cap=5)
    rng = random.Random(8)
    A = algebras.dual_numbers(cap=5)
    g = [random_homogeneous(A, rng) for _ in range(2)]
    assert not action.check_dg_compatibility(product(1, 2), g, bad)


def test_act_chain_linear():
    A = algebras.dual_numbers(cap=4)
    rng = random.Random(9)
    g = [random_homogeneous(A, rng, cap=4) for _ in range(2)]
    x = Chain({nesting(1, 2): 2, product(2, 1): -1})
    lhs = action.act_chain(x, g, A)
    rhs = action.act(nesting(1, 2), g, A).scale(2) - action.act(product(2, 1), g, A)
    assert lhs.agrees_with(rhs)


def test_act_input_errors():
    A = algebras.dual_numbers(cap=4)
    g = Cochain.zero(A.space, cap=4)
    with pytest.raises(ValueError):
        action.act(product(1, 2), [g], A)
    other = algebras.ground_field(cap=4).m
    with pytest.raises(ValueError):
        action.act(product(1, 2), [g, other], A)
