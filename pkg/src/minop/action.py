"""The action of the minimal operad on Hochschild cochains.

A basis tree ``T`` with labels ``1..n`` acts on cochains ``gamma_1..gamma_n``
of an A-infinity algebra ``(A, m)``.  For every output arity ``k`` the ``k``
tails of the corolla are distributed monotonically over the angles of ``T``;
each distribution decorates ``T`` with tails, and the decorated tree is read
as a composite of multilinear maps: ``gamma_j`` sits at the vertex labeled
``j`` and ``m_{|v|}`` at every non-labeled vertex ``v``.

Cochains are stored in the bar convention (see ``hochschild``), so
``T(gamma_1..gamma_n)`` is returned as the stored representative ``x`` with
``T(gamma) = s x``.  The global sign comes from rewriting the orientation
word of ``T`` followed by ``s gamma_1 .. s gamma_n`` into the composite
``s_out o_v ...`` (vertices in preorder); see :func:`orientation_sign`.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from . import operad
from .hochschild import (
    NONZERO,
    UNKNOWN,
    ZERO,
    AInfinityStructure,
    CapExhausted,
    Cochain,
    bracket,
)
from .linear import Chain
from .signs import reorder_sign
from .trees import PlanarTree, angles


@dataclass(frozen=True)
class Corolla:
    """The planar corolla with one labeled vertex and ``k`` ordered tails."""

    k: int

    def insertions(self, tree: PlanarTree):
        """Tail counts per angle of ``tree`` for every monotone insertion."""
        A = angles(tree).angles
        for beta in itertools.combinations_with_replacement(range(len(A)), self.k):
            counts = defaultdict(int)
            for a in beta:
                counts[A[a]] += 1
            yield dict(counts)

    def count(self, tree: PlanarTree) -> int:
        return sum(1 for _ in self.insertions(tree))


def _structure(m) -> Cochain:
    return m.m if isinstance(m, AInfinityStructure) else m


def _odd(x) -> int:
    return -1 if x % 2 else 1


def orientation_sign(tree: PlanarTree, degrees) -> int:
    """Sign turning ``U_T (s g_1)...(s g_n)`` into ``s_out o_v ...``.

    ``degrees[j-1]`` is the shifted degree of ``g_j``.  Edges are odd
    symbols ``e_u``; at a non-labeled vertex the edge becomes the odd
    operation ``m_u``; at a labeled vertex ``u`` (not the top) the edge pairs
    off with ``s_j``.  The top vertex supplies ``s_out``.
    """
    word = []
    deg = {}
    for u in tree.edges():
        word.append(("e", u))
        deg[("e", u)] = 1
    for j in range(1, tree.arity + 1):
        word += [("s", j), ("g", j)]
        deg[("s", j)] = 1
        deg[("g", j)] = degrees[j - 1]
    deg[("out",)] = 1
    sign = 1
    lab_of = {p: tree.at(p)[0] for p in tree.preorder}
    for u in tree.edges():
        if lab_of[u] is None:
            word[word.index(("e", u))] = ("m", u)
            deg[("m", u)] = 1
    top = tree.preorder[0]
    if lab_of[top] is None:
        word = [("out",), ("m", top)] + word
        deg[("m", top)] = 1
    else:
        word[word.index(("s", lab_of[top]))] = ("out",)
    for u in tree.edges():
        j = lab_of[u]
        if j is None:
            continue
        i, k = word.index(("e", u)), word.index(("s", j))
        between = sum(deg[w] for w in word[i + 1:k])
        sign *= _odd(between)
        word = word[:i] + word[i + 1:k] + word[k + 1:]
    target = [("out",)] + [("m", u) if lab_of[u] is None else ("g", lab_of[u]) for u in tree.preorder]
    return sign * reorder_sign(word, target, lambda w: deg[w])


# ---------------------------------------------------------------------------
# evaluation of decorated trees


def _index(space, comp, degree_of):
    idx = defaultdict(list)
    for (ins, out), c in comp.items():
        idx[out].append((ins, c, degree_of((ins, out)), sum(space.sdeg(i) for i in ins)))
    return idx


def _compose_tensor(space, f_comp, slots) -> dict:
    """``f o (g_1 x ... x g_r)``; a slot is ``None`` (identity) or an index by output."""
    out = defaultdict(int)
    for (ins, c_out), fc in f_comp.items():
        choices = []
        for a, slot in zip(ins, slots):
            if slot is None:
                choices.append((((a,), 1, 0, space.sdeg(a)),))
            else:
                opts = slot.get(a)
                if not opts:
                    break
                choices.append(opts)
        else:
            for combo in itertools.product(*choices):
                sign, seen, coeff, new_ins = 1, 0, fc, ()
                for g_ins, gc, gdeg, insdeg in combo:
                    if gdeg % 2 and seen % 2:
                        sign = -sign
                    seen += insdeg
                    coeff *= gc
                    new_ins += g_ins
                out[(new_ins, c_out)] += sign * coeff
    return {k: v for k, v in out.items() if v}


def _degree_fn(space):
    return lambda key: space.sdeg(key[1]) - sum(space.sdeg(i) for i in key[0])


def _evaluate(tree, ops, counts, space):
    """Entries of the composite read off a tail-decorated tree."""
    deg = _degree_fn(space)

    def rec(path):
        lab, kids = tree.at(path)
        slots = []
        for a in range(len(kids) + 1):
            slots += [None] * counts.get((path, a), 0)
            if a < len(kids):
                sub = rec(path + (a,))
                slots.append(_index(space, sub, deg))
        op = ops[path]
        return _compose_tensor(space, op.components.get(len(slots), {}), slots)

    return rec(())


def _tail_vectors(vertices, valency, ops, k):
    """Yield ``(statuses, t)`` for tail counts ``t`` per vertex summing to ``k``."""

    def rec(i, left, acc):
        if i == len(vertices):
            if left == 0:
                yield tuple(acc)
            return
        v = vertices[i]
        for t in range(left + 1):
            if ops[v].status(valency[v] + t) == ZERO:
                continue
            yield from rec(i + 1, left - t, acc + [t])

    yield from rec(0, k, [])


def _distributions(tree, tvec):
    """All ways to spread ``tvec[v]`` tails over the angles of each vertex."""
    per_vertex = []
    for v, t in zip(tree.preorder, tvec):
        nang = tree.valency(v) + 1
        opts = []
        for beta in itertools.combinations_with_replacement(range(nang), t):
            c = defaultdict(int)
            for a in beta:
                c[(v, a)] += 1
            opts.append(dict(c))
        per_vertex.append(opts)
    for combo in itertools.product(*per_vertex):
        merged = {}
        for c in combo:
            merged.update(c)
        yield merged


def _act_homogeneous(tree, parts, m, space):
    vertices = tree.preorder
    valency = {v: tree.valency(v) for v in vertices}
    ops = {}
    for v in vertices:
        lab = tree.at(v)[0]
        ops[v] = m if lab is None else parts[lab - 1]
        if lab is None and valency[v] < 2:
            raise AssertionError("non-labeled vertex of valency < 2")
    capped = any(op.cap is not None for op in ops.values())
    limit = sum(max(0, op.bound() - valency[v]) for v, op in ops.items())
    comps = {}
    cap = None
    for k in range(limit + 1):
        tvecs = list(_tail_vectors(vertices, valency, ops, k))
        if any(
            any(ops[v].status(valency[v] + t) == UNKNOWN for v, t in zip(vertices, tv)) for tv in tvecs
        ):
            cap = k - 1
            break
        acc = defaultdict(int)
        for tv in tvecs:
            for counts in _distributions(tree, tv):
                for key, c in _evaluate(tree, ops, counts, space).items():
                    acc[key] += c
        comps[k] = dict(acc)
    else:
        cap = limit if capped else None
    if cap is not None and cap < 0:
        raise CapExhausted(f"no output arity of {tree} is computable")
    return Cochain(space, comps, cap)


def act(tree: PlanarTree, gammas, m) -> Cochain:
    """``T(gamma_1, .., gamma_n)`` for an A-infinity structure (or any cochain) ``m``."""
    m = _structure(m)
    space = m.space
    if len(gammas) != tree.arity:
        raise ValueError(f"{tree} takes {tree.arity} cochains, got {len(gammas)}")
    if tree.label_set != frozenset(range(1, tree.arity + 1)):
        raise ValueError(f"labels of {tree} are not 1..{tree.arity}")
    for g in gammas:
        if g.space != space:
            raise ValueError("cochains live on different spaces")
    split = [sorted(g.homogeneous_parts().items()) for g in gammas]
    total = None
    for choice in itertools.product(*split):
        degs = [d for d, _ in choice]
        parts = [p for _, p in choice]
        term = _act_homogeneous(tree, parts, m, space).scale(orientation_sign(tree, degs))
        total = term if total is None else total + term
    if total is None:
        # some gamma is zero: the value is zero, with the cap of the zero arguments
        caps = [g.cap for g in gammas if g.cap is not None] + ([m.cap] if m.cap is not None else [])
        total = Cochain.zero(space, min(caps) if caps else None)
    return total


def act_chain(x: Chain, gammas, m) -> Cochain:
    """Linear extension of :func:`act` to chains of trees."""
    space = _structure(m).space
    total = None
    for t, c in x:
        term = act(t, gammas, m).scale(c)
        total = term if total is None else total + term
    if total is None:
        caps = [g.cap for g in gammas if g.cap is not None]
        total = Cochain.zero(space, min(caps) if caps else None)
    return total


# ---------------------------------------------------------------------------
# checks


@dataclass
class Verdict:
    passed: bool
    checked: int
    failures: list

    def __bool__(self):
        return self.passed


def _diff(a: Cochain, b: Cochain) -> dict:
    d = a - b
    return {k: {str(key): str(c) for key, c in sorted(v.items())} for k, v in sorted(d.components.items())}


def c_degree(g: Cochain) -> int:
    return g.degree + 1


def check_algebra_axioms(m, gammas, n_max: int, compose=operad.compose) -> Verdict:
    """Check ``(T1 o_i T2)(g) = +- T1(.., T2(..), ..)`` for all basis trees.

    ``gammas`` is a list of at least ``n_max`` homogeneous cochains; the
    sign is ``(-1)^{deg T2 * sum_{j<i} deg g_j}`` with Hochschild degrees.
    ``compose`` can be swapped for a corrupted version as a negative control.
    """
    failures, checked = [], 0
    for n1 in range(1, n_max + 1):
        for n2 in range(1, n_max + 2 - n1):
            if n1 + n2 - 1 > n_max:
                continue
            g = gammas[: n1 + n2 - 1]
            for t1 in operad.basis(n1):
                for t2 in operad.basis(n2):
                    for i in range(1, n1 + 1):
                        lhs = act_chain(compose(t1, i, t2), g, m)
                        inner = act(t2, g[i - 1 : i - 1 + n2], m)
                        outer = g[: i - 1] + [inner] + g[i - 1 + n2 :]
                        pre = sum(c_degree(x) for x in g[: i - 1])
                        rhs = act(t1, outer, m).scale(_odd(operad.degree(t2) * pre))
                        checked += 1
                        if not lhs.agrees_with(rhs):
                            failures.append({"t1": t1.encoding, "i": i, "t2": t2.encoding, "diff": _diff(lhs, rhs)})
    return Verdict(not failures, checked, failures)


def dg_defect(tree: PlanarTree, gammas, m) -> Cochain:
    """``d_m T(g) - (d_M T)(g) - sum_i +- T(.., d_m g_i, ..)`` in stored form.

    With ``T(g) = s x`` the Hochschild differential reads
    ``d(s x) = -s [m, x]``; dividing by ``-1`` gives the identity checked here.
    """
    m = _structure(m)
    lhs = bracket(m, act(tree, gammas, m))
    rhs = act_chain(operad.differential(tree), gammas, m).scale(-1)
    pre = operad.degree(tree)
    for i, g in enumerate(gammas):
        dg = bracket(m, g)
        args = list(gammas)
        args[i] = dg
        rhs = rhs + act(tree, args, m).scale(_odd(pre))
        pre += c_degree(g)
    return lhs - rhs


def check_dg_compatibility(tree: PlanarTree, gammas, m) -> Verdict:
    defect = dg_defect(tree, gammas, m)
    failures = [] if defect.is_zero() else [{"tree": tree.encoding, "defect": {k: len(v) for k, v in defect.components.items()}}]
    return Verdict(not failures, 1, failures)
