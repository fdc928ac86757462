from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from minop.trees import (
    AbstractTree,
    PlanarTree,
    T_e,
    angles,
    enumerate_admissible,
    nesting,
    product,
    relabel,
    validate,
)


def abstract(parent, internal, tails=(), root="r"):
    return AbstractTree(frozenset(parent), root, frozenset(internal), frozenset(tails), dict(parent))


# -- brute-force oracle ------------------------------------------------------


def plane_trees(size):
    """All plane rooted trees with ``size`` vertices, as nested child tuples."""
    if size == 1:
        yield ()
        return
    for forest in plane_forests(size - 1):
        yield forest


def plane_forests(size):
    if size == 0:
        yield ()
        return
    for first in range(1, size + 1):
        for t in plane_trees(first):
            for rest in plane_forests(size - first):
                yield (t,) + rest


def oracle_count(n):
    """Label plane trees in every injective way and keep the admissible ones."""
    seen = set()
    for size in range(n, 2 * n):
        for shape in plane_trees(size):
            paths = []

            def walk(t, p):
                paths.append(p)
                for i, c in enumerate(t):
                    walk(c, p + (i,))

            walk(shape, ())
            for chosen in itertools.permutations(paths, n):
                lab = {p: i + 1 for i, p in enumerate(chosen)}

                def build(t, p):
                    return (lab.get(p), tuple(build(c, p + (i,)) for i, c in enumerate(t)))

                tree = PlanarTree(build(shape, ()))
                if tree.is_admissible():
                    seen.add(tree.encoding)
    return len(seen)


# -- validation --------------------------------------------------------------


def test_validate_smallest_tree():
    assert validate(T_e.to_abstract()) is None
    assert validate(abstract({"r": "r", "v": "r"}, ["v"])) is None


def test_validate_cycle():
    bad = abstract({"r": "r", "v": "r", "w": "w"}, ["v", "w"])
    assert validate(bad).axiom == "b"


def test_validate_two_root_children():
    bad = abstract({"r": "r", "v": "r", "w": "r"}, ["v", "w"])
    assert validate(bad).axiom == "d"


def test_validate_tail_with_preimage():
    bad = abstract({"r": "r", "v": "r", "t": "v", "u": "t"}, ["v", "u"], ["t"])
    assert validate(bad).axiom == "c"


def test_validate_partition():
    bad = abstract({"r": "r", "v": "r", "t": "v"}, ["v"])
    assert validate(bad).axiom == "a"


# -- enumeration -------------------------------------------------------------


def test_counts_small():
    assert enumerate_admissible(0) == []
    assert enumerate_admissible(1) == [T_e]
    two = enumerate_admissible(2)
    assert len(two) == 4
    assert set(two) == {product(1, 2), product(2, 1), nesting(1, 2), nesting(2, 1)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counts_match_oracle(n):
    assert len(enumerate_admissible(n)) == oracle_count(n)


def test_frozen_counts():
    # values produced by oracle_count and frozen here
    assert [len(enumerate_admissible(n)) for n in range(1, 5)] == [1, 4, 48, 960]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_invariants(n):
    trees = enumerate_admissible(n)
    assert trees == sorted(trees)
    assert len({t.encoding for t in trees}) == len(trees)
    for t in trees:
        assert t.is_admissible()
        assert validate(t.to_abstract()) is None
        assert PlanarTree.decode(t.encoding) == t
        assert PlanarTree.from_json(t.to_json()) == t


# -- angles ------------------------------------------------------------------


def test_angles_examples():
    assert len(angles(T_e)) == 1
    assert len(angles(nesting(1, 2))) == 3
    assert len(angles(product(1, 2))) == 5
    a = angles(nesting(1, 2))
    assert [a.vertex_of(i) for i in range(3)] == [(), (0,), ()]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_angle_count_formula(n):
    for t in enumerate_admissible(n):
        a = angles(t)
        assert len(a) == sum(t.valency(p) + 1 for p in t.preorder)
        assert {a.vertex_of(i) for i in range(len(a))} == set(t.preorder)


# -- relabeling --------------------------------------------------------------


def test_relabel_examples():
    t = product(1, 2)
    assert relabel(t, {1: 1, 2: 2}) == t
    assert relabel(t, {1: 2, 2: 1}) == product(2, 1)
    with pytest.raises(ValueError):
        relabel(t, {1: 1, 2: 1})


def test_relabel_action_law():
    perms = list(itertools.permutations([1, 2, 3]))
    for t in enumerate_admissible(3):
        for p, q in itertools.product(perms, perms):
            s, r = dict(zip([1, 2, 3], p)), dict(zip([1, 2, 3], q))
            assert relabel(relabel(t, s), r) == relabel(t, {k: r[s[k]] for k in s})


@given(st.integers(min_value=0, max_value=47), st.permutations([1, 2, 3]))
def test_relabel_is_invertible(i, perm):
    t = enumerate_admissible(3)[i]
    s = dict(zip([1, 2, 3], perm))
    inv = {v: k for k, v in s.items()}
    assert relabel(relabel(t, s), inv) == t


def test_decode_rejects_garbage():
    with pytest.raises(ValueError):
        PlanarTree.decode("*(1,")
    with pytest.raises(ValueError):
        PlanarTree.from_json({"label": "x", "children": []})
