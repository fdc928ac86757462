"""The minimal operad: basis trees, degrees, composition and differential.

Signs follow the orientation line of a tree: one odd factor per internal
edge, read depth-first.  Composition concatenates the edge words of the two
trees and the differential puts the new edge in front; every term then
carries the sign of sorting its edges back into depth-first order.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .linear import Chain
from .signs import permutation_sign, tree_word
from .trees import PlanarTree, angles, enumerate_admissible, relabel


def degree(tree: PlanarTree) -> int:
    """Sum of ``-|v|`` over labeled and ``2-|v|`` over non-labeled vertices."""
    total = 0
    for p in tree.preorder:
        lab, kids = tree.at(p)
        total += -len(kids) if lab is not None else 2 - len(kids)
    return total


def line_degree(tree: PlanarTree) -> int:
    """Degree of the orientation line: ``|E_i| + 2 - 2 |V_lab|``."""
    return tree_word(tree).degree


def basis(n: int) -> list:
    return enumerate_admissible(n)


def chain_degree(x: Chain):
    """Common degree of the terms of ``x`` (``None`` for zero, error if mixed)."""
    degs = {degree(t) for t in x.terms}
    if len(degs) > 1:
        raise ValueError(f"mixed-degree chain: degrees {sorted(degs)}")
    return degs.pop() if degs else None


# ---------------------------------------------------------------------------
# tagged trees: vertices carry identities so edge words can be tracked


def _tag(nd, prefix, path=()):
    lab, kids = nd
    return (prefix + (path,), lab, tuple(_tag(k, prefix, path + (i,)) for i, k in enumerate(kids)))


def _untag(tn):
    return (tn[1], tuple(_untag(k) for k in tn[2]))


def _tagged_preorder(tn, out=None):
    if out is None:
        out = []
    out.append(tn[0])
    for k in tn[2]:
        _tagged_preorder(k, out)
    return out


def _edge_ids(tn):
    """Identities of the internal edges (all vertices but the top one)."""
    return _tagged_preorder(tn)[1:]


# ---------------------------------------------------------------------------
# composition


def _insert(tn2, kids_by_angle):
    """Rebuild tagged ``tn2`` with extra children placed into its angles."""

    def rec(tn, path):
        ident, lab, kids = tn
        new = []
        for a, k in enumerate(kids):
            new.extend(kids_by_angle.get((path, a), ()))
            new.append(rec(k, path + (a,)))
        new.extend(kids_by_angle.get((path, len(kids)), ()))
        return (ident, lab, tuple(new))

    return rec(tn2, ())


def _replace(tn, target_id, replacement):
    ident, lab, kids = tn
    if ident == target_id:
        return replacement
    return (ident, lab, tuple(_replace(k, target_id, replacement) for k in kids))


@lru_cache(maxsize=200_000)
def compose_named(t1: PlanarTree, x: int, t2: PlanarTree) -> tuple:
    """Insert ``t2`` at the vertex labeled ``x`` of ``t1``, keeping label names.

    The labels of ``t1`` other than ``x`` must be disjoint from those of
    ``t2``.  Returns a tuple of ``(sign, tree)`` pairs, one per monotone
    assignment of the children of ``x`` to the angles of ``t2``.
    """
    if x not in t1.labels:
        raise ValueError(f"{x} is not a label of {t1}")
    if (t1.label_set - {x}) & t2.label_set:
        raise ValueError(f"label collision composing {t2} into {t1} at {x}")
    v_path = t1.labels[x]
    tag1 = _tag(t1.root, ("a",))
    tag2 = _tag(t2.root, ("b",))
    v_id = ("a", v_path)

    def find(tn):
        if tn[0] == v_id:
            return tn
        for k in tn[2]:
            f = find(k)
            if f is not None:
                return f
        return None

    v_kids = find(tag1)[2]
    A = angles(t2).angles
    r2_id = tag2[0]
    source = [r2_id if e == v_id else e for e in _edge_ids(tag1)] + _edge_ids(tag2)
    out = []
    for beta in itertools.combinations_with_replacement(range(len(A)), len(v_kids)):
        by_angle = {}
        for child, ai in zip(v_kids, beta):
            by_angle.setdefault(A[ai], []).append(child)
        new2 = _insert(tag2, by_angle)
        result = _replace(tag1, v_id, new2)
        sign = permutation_sign(source, _edge_ids(result))
        out.append((sign, PlanarTree(_untag(result))))
    return tuple(out)


def shift_labels(tree: PlanarTree, i: int, n2: int):
    """Label renaming used by ``compose``: ``j > i`` moves up by ``n2 - 1``."""
    return {j: (j if j < i else j + n2 - 1) for j in tree.labels if j != i}


def compose(t1: PlanarTree, i: int, t2: PlanarTree) -> Chain:
    """Operadic composition ``t1 o_i t2`` with the usual index shifting.

    Labels ``1..n2`` of ``t2`` become ``i..i+n2-1``; labels of ``t1`` above
    ``i`` move up by ``n2 - 1``.
    """
    n2 = t2.arity
    m1 = shift_labels(t1, i, n2)
    # park label i out of the way so renaming is collision free
    park = max(list(m1.values()) + [i, n2 + t1.arity]) + 1
    t1r = relabel_partial(t1, {**m1, i: park})
    t2r = relabel_partial(t2, {j: j + i - 1 for j in t2.labels})
    return Chain.from_pairs(compose_named(t1r, park, t2r))


def relabel_partial(tree: PlanarTree, mapping) -> PlanarTree:
    def conv(nd):
        lab, kids = nd
        return (None if lab is None else mapping.get(lab, lab), tuple(conv(k) for k in kids))

    return PlanarTree(conv(tree.root))


def compose_chains(x: Chain, i: int, y: Chain) -> Chain:
    out = Chain()
    for t1, c1 in x.terms.items():
        for t2, c2 in y.terms.items():
            for t, c in compose(t1, i, t2).terms.items():
                out.add_term(t, c1 * c2 * c)
    return out


def compose_named_chains(x: Chain, label: int, y: Chain) -> Chain:
    out = Chain()
    for t1, c1 in x.terms.items():
        for t2, c2 in y.terms.items():
            for s, t in compose_named(t1, label, t2):
                out.add_term(t, c1 * c2 * s)
    return out


# ---------------------------------------------------------------------------
# differential


def _split_terms(tree: PlanarTree):
    """Yield ``(sign, tree')`` for every admissible way to split one vertex."""
    tag = _tag(tree.root, ())
    source_tail = _edge_ids(tag)
    new_id = ("new",)

    def rebuild(tn, target, make):
        if tn[0] == target:
            return make(tn)
        return (tn[0], tn[1], tuple(rebuild(k, target, make) for k in tn[2]))

    for ident in _tagged_preorder(tag):
        tn_v = _find(tag, ident)
        lab, kids = tn_v[1], tn_v[2]
        k = len(kids)
        for p in range(k + 1):
            for q in range(p, k + 1):
                width = q - p
                options = []
                if lab is None:
                    if width >= 2 and k - width >= 1:
                        options.append((None, None))
                else:
                    if k - width >= 1:
                        options.append((None, lab))  # (up label, down label)
                    if width >= 2:
                        options.append((lab, None))
                for up_lab, down_lab in options:
                    def make(tn, p=p, q=q, up_lab=up_lab, down_lab=down_lab):
                        kk = tn[2]
                        down = (new_id, down_lab, kk[p:q])
                        return (tn[0], up_lab, kk[:p] + (down,) + kk[q:])

                    result = rebuild(tag, ident, make)
                    sign = permutation_sign([new_id] + source_tail, _edge_ids(result))
                    yield sign, PlanarTree(_untag(result))


def _find(tn, ident):
    if tn[0] == ident:
        return tn
    for k in tn[2]:
        f = _find(k, ident)
        if f is not None:
            return f
    return None


@lru_cache(maxsize=200_000)
def _differential_cached(tree: PlanarTree) -> Chain:
    return Chain.from_pairs(_split_terms(tree))


def differential(tree: PlanarTree) -> Chain:
    """``d_M`` of a basis tree: sum over all admissible vertex splittings."""
    return Chain(_differential_cached(tree).terms)


def d(x: Chain) -> Chain:
    return x.map(_differential_cached)


def relabel_chain(x: Chain, sigma) -> Chain:
    return Chain({relabel(t, sigma): c for t, c in x.terms.items()})


def unit() -> PlanarTree:
    return PlanarTree((1, ()))
