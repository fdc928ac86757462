from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from minop import algebras
from minop.hochschild import (
    UNKNOWN,
    AInfinityStructure,
    CapExhausted,
    Cochain,
    GradedSpace,
    bracket,
    circle,
    hochschild_differential,
    is_maurer_cartan,
)

K = GradedSpace(("1",), (0,))


def sgn(x):
    return -1 if x % 2 else 1


def random_homogeneous(A, rng, cap=5):
    while True:
        ar = rng.sample([0, 1, 2], 2)
        d = rng.choice(algebras.admissible_degrees(A.space, ar))
        c = algebras.random_cochain(A.space, rng, d, ar, 0.7, cap=cap)
        if not c.is_zero():
            return c


def test_graded_space_validation():
    with pytest.raises(ValueError):
        GradedSpace((), ())
    with pytest.raises(ValueError):
        GradedSpace(("a", "a"), (0, 0))
    assert GradedSpace.from_json(K.to_json()) == K


def test_degrees():
    m = algebras.dual_numbers().m
    assert m.degree == 1 and m.total_degree == 2
    g = Cochain.from_entries(K, [((), "1", 1)])
    # map degree 0, arity 0
    assert g.total_degree == 0
    with pytest.raises(ValueError):
        (g + Cochain.from_entries(K, [(("1",), "1", 1)])).degree


def test_circle_with_identity():
    m = algebras.dual_numbers().m
    ident = Cochain.identity(m.space)
    assert circle(m, ident) == m.scale(2)
    assert circle(ident, m) == m


def test_circle_with_zero():
    m = algebras.dual_numbers().m
    assert circle(m, Cochain.zero(m.space)).is_zero()


def test_associator():
    m = algebras.dual_numbers().m
    assert circle(m, m).is_zero()
    bad = algebras.non_associative()
    assoc = circle(bad, bad)
    assert set(assoc.components) == {3}


def test_bracket_with_itself():
    m = algebras.non_associative()
    assert bracket(m, m) == circle(m, m).scale(2)  # odd shifted degree
    g = Cochain.from_entries(m.space, [(("1",), "x", 1)])  # shifted degree 0
    assert bracket(g, g).is_zero()


def test_maurer_cartan_verdicts():
    assert is_maurer_cartan(algebras.dual_numbers().m)
    assert is_maurer_cartan(algebras.x_u_algebra().m)
    assert is_maurer_cartan(Cochain.zero(K))
    v = is_maurer_cartan(algebras.non_associative())
    assert not v and v.failing_arity == 3
    with pytest.raises(ValueError):
        is_maurer_cartan(Cochain.from_entries(K, [(("1",), "1", 1)]))


def test_a_infinity_structure_checks():
    with pytest.raises(ValueError):
        AInfinityStructure(Cochain.from_entries(K, [((), "1", 1)]))  # wrong degree
    sp = GradedSpace(("a",), (2,))
    m0 = Cochain.from_entries(sp, [((), "a", 1)])  # shifted degree 1, arity 0
    with pytest.raises(ValueError):
        AInfinityStructure(m0, truncated=True)
    assert AInfinityStructure(m0, truncated=False).m == m0


def classical(n):
    return 1 + sum((-1) ** i for i in range(1, n + 1)) + (-1) ** (n + 1)


@pytest.mark.parametrize("n", range(0, 6))
def test_ground_field_differential(n):
    A = algebras.ground_field(cap=7)
    g = Cochain.from_entries(A.space, [(("1",) * n, "1", 1)], cap=7)
    dg = hochschild_differential(A, g)
    value = dg.components.get(n + 1, {}).get(((0,) * (n + 1), 0), 0)
    assert abs(value) == abs(classical(n))
    assert set(dg.components) <= {n + 1}


def test_zero_structure_differential():
    g = Cochain.from_entries(K, [(("1",), "1", 3)])
    assert hochschild_differential(Cochain.zero(K), g).is_zero()


def test_d_m_of_m_vanishes():
    for A in (algebras.dual_numbers(cap=5), algebras.x_u_algebra(cap=5)):
        assert hochschild_differential(A, A.m).is_zero()


def test_cap_semantics():
    m = algebras.dual_numbers(cap=3).m
    assert m.status(4) == UNKNOWN
    with pytest.raises(CapExhausted):
        m.component(4)
    mm = circle(m, m)
    assert mm.cap is not None and mm.cap <= 4


def test_cap_exhausted_when_nothing_computable():
    sp = GradedSpace(("1",), (0,))
    f = Cochain.identity(sp, cap=1)
    g = Cochain.zero(sp, cap=-1)  # every component unknown, even arity 0
    with pytest.raises(CapExhausted):
        circle(f, g)


def test_truncation_soundness():
    rng = random.Random(4)
    A5, A7 = algebras.dual_numbers(cap=5), algebras.dual_numbers(cap=7)
    for _ in range(10):
        g = random_homogeneous(A5, rng)
        small = hochschild_differential(A5, g)
        big = hochschild_differential(A7, Cochain(g.space, g.components, 7))
        assert big.cap is None or small.cap is None or big.cap >= small.cap
        assert small.agrees_with(big)


def test_json_roundtrip():
    m = algebras.x_u_algebra(cap=4).m
    assert Cochain.from_json(m.space, m.to_json()) == m
    with pytest.raises(ValueError):
        Cochain.from_json(m.space, {"entries": [{"arity": 2, "inputs": ["x"], "output": "u", "coeff": "1"}]})
    with pytest.raises(ValueError):
        Cochain.from_json(m.space, {"entries": [{"arity": 1, "inputs": ["y"], "output": "u", "coeff": "1"}]})


@pytest.mark.parametrize("name", ["dual-numbers", "x-u"])
@given(seed=st.integers(0, 10**6))
def test_gerstenhaber_identities(name, seed):
    A = algebras.TEST_ALGEBRAS[name](cap=5)
    rng = random.Random(seed)
    a, b, c = (random_homogeneous(A, rng) for _ in range(3))
    da, db, dc = a.degree, b.degree, c.degree
    ab = bracket(a, b)
    assert (ab + bracket(b, a).scale(sgn(da * db))).is_zero()
    jac = (
        bracket(a, bracket(b, c)).scale(sgn(da * dc))
        + bracket(b, bracket(c, a)).scale(sgn(db * da))
        + bracket(c, bracket(a, b)).scale(sgn(dc * db))
    )
    assert jac.is_zero()
    if not ab.is_zero():
        # shifted degrees add, so Hochschild degrees satisfy |[a,b]| = |a| + |b| - 1
        assert ab.total_degree == a.total_degree + b.total_degree - 1
    assert hochschild_differential(A, hochschild_differential(A, a)).is_zero()
