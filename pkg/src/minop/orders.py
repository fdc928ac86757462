"""Horizontal and vertical orders on the tails of a generator of ``P_M``.

For tails ``i != j`` let ``v`` be their lowest common ancestor in the base
tree and ``x, y`` the labeled vertices of the inscription ``T_v`` that stand
for the children of ``v`` containing ``i`` and ``j``.  Then

* ``i <_v j`` when ``y`` lies strictly above ``x`` (on the path from ``x``
  to the top vertex of ``T_v``), so lower tails come first;
* ``i <_h j`` when neither is above the other and ``x`` is left of ``y``:
  the paths from the top first diverge with ``x`` on the left.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import resolution
from .resolution import MetaTree, basis_P, d_P


class OrderError(ValueError):
    pass


@dataclass(frozen=True)
class OrderPair:
    n: int
    horizontal: frozenset  # pairs (a, b) meaning a <_h b
    vertical: frozenset

    @property
    def ground(self) -> range:
        return range(1, self.n + 1)

    def problems(self) -> list:
        """Violations of strictness, transitivity and complementarity."""
        out = []
        for name, rel in (("horizontal", self.horizontal), ("vertical", self.vertical)):
            for a, b in rel:
                if a == b:
                    out.append(f"{name} is reflexive at {a}")
                if (b, a) in rel:
                    out.append(f"{name} is symmetric on {a},{b}")
            for (a, b), (c, d) in itertools.product(rel, rel):
                if b == c and (a, d) not in rel:
                    out.append(f"{name} is not transitive on {a},{b},{d}")
        for a, b in itertools.combinations(self.ground, 2):
            hits = sum(p in r for r in (self.horizontal, self.vertical) for p in ((a, b), (b, a)))
            if hits != 1:
                out.append(f"pair {a},{b} is comparable {hits} times")
        return out

    @property
    def is_complementary(self) -> bool:
        return not self.problems()

    def to_json(self):
        return {
            "n": self.n,
            "horizontal": sorted(map(list, self.horizontal)),
            "vertical": sorted(map(list, self.vertical)),
        }


def _above(p, q) -> bool:
    """Path ``p`` is a strict ancestor of path ``q``."""
    return len(p) < len(q) and q[: len(p)] == p


def tail_orders(g: MetaTree) -> OrderPair:
    if g.operad != "M" or not g.is_generator:
        raise OrderError(f"{g} is not a generator of P_M")
    problem = resolution.check_shape(g)
    if problem:
        raise OrderError(problem)
    # for each tail: (node, label standing for the tail there) from the root down
    chains = {}

    def rec(node, trail):
        for c in node[1]:
            if isinstance(c, int):
                chains[c] = trail + [(node, c)]
            else:
                rec(c[1], trail + [(node, resolution._min_tail(c))])

    rec(g.root, [])
    hor, ver = set(), set()
    for i, j in itertools.permutations(sorted(chains), 2):
        ci, cj = chains[i], chains[j]
        k = 0  # same node at depth k; equal labels mean the same child below
        while ci[k][1] == cj[k][1]:
            k += 1
        node, xi = ci[k]
        xj = cj[k][1]
        ins = node[0]
        x, y = ins.labels[xi], ins.labels[xj]
        if _above(y, x):
            ver.add((i, j))
        elif not _above(x, y):
            m = 0
            while x[m] == y[m]:
                m += 1
            if x[m] < y[m]:
                hor.add((i, j))
    return OrderPair(g.arity, frozenset(hor), frozenset(ver))


def _total(rel: set, n: int) -> list:
    """The linear extension of ``rel`` if it is a strict total order."""
    ranked = sorted(range(1, n + 1), key=lambda a: sum((b, a) in rel for b in range(1, n + 1)))
    for a, b in itertools.combinations(ranked, 2):
        if (a, b) not in rel or (b, a) in rel:
            raise OrderError("relation is not a strict total order")
    return ranked


def combined_orders(p: OrderPair):
    """``<_{1+2}`` and ``<_{1-2}`` as increasing lists of the ground set."""
    problems = p.problems()
    if problems:
        raise OrderError("not a complementary pair: " + problems[0])
    plus = set(p.horizontal) | set(p.vertical)
    minus = set(p.horizontal) | {(b, a) for a, b in p.vertical}
    return _total(plus, p.n), _total(minus, p.n)


def reconstruct(plus: list, minus: list) -> OrderPair:
    """Recover the pair: ``<_h`` is the intersection, ``<_v`` the disagreement."""
    rp = {(a, b) for i, a in enumerate(plus) for b in plus[i + 1 :]}
    rm = {(a, b) for i, a in enumerate(minus) for b in minus[i + 1 :]}
    return OrderPair(len(plus), frozenset(rp & rm), frozenset(rp - rm))


def minimal_element(p: OrderPair) -> int:
    """The unique element below all others in ``<_h`` or ``<_v``."""
    rel = p.horizontal | p.vertical
    cands = [s for s in p.ground if all((s, t) in rel for t in p.ground if t != s)]
    if len(cands) != 1:
        raise OrderError(f"expected one minimal element, found {cands}")
    return cands[0]


# ---------------------------------------------------------------------------
# the meta-tree poset

MAX_POSET_ARITY = 4


def meta_tree_poset(n: int, degree_window=None, closure: bool = True):
    """Covering relation ``T' < T`` whenever ``T'`` is a summand of ``d_P T``.

    Returns ``(elements, covers, closure_pairs)``; ``closure_pairs`` is the
    transitive closure (``None`` when not requested).
    """
    if n > MAX_POSET_ARITY:
        estimate = len(resolution.generators("M", min(n, MAX_POSET_ARITY))) * n ** 2
        raise OrderError(f"arity {n} exceeds the bound {MAX_POSET_ARITY} (well over {estimate} meta-trees)")
    elems = basis_P("M", n)
    if degree_window is not None:
        lo, hi = degree_window
        elems = [e for e in elems if lo <= e.degree <= hi]
    keep = set(elems)
    covers = set()
    for t in elems:
        for s, _ in d_P(t):
            if s in keep:
                covers.add((s, t))
    pairs = None
    if closure:
        below = {t: {s for s, u in covers if u == t} for t in elems}
        # summands sit one degree higher, so close from the top degree down
        for t in sorted(elems, key=lambda e: e.degree, reverse=True):
            acc = set(below[t])
            for s in list(below[t]):
                acc |= below[s]
            below[t] = acc
        pairs = {(s, t) for t in elems for s in below[t]}
    return elems, covers, pairs


def poset_report(n: int, degree_window=None) -> dict:
    elems, covers, pairs = meta_tree_poset(n, degree_window)
    counts = {}
    for e in elems:
        counts[e.degree] = counts.get(e.degree, 0) + 1
    return {
        "arity": n,
        "counts": {str(k): v for k, v in sorted(counts.items(), reverse=True)},
        "covers": sorted([s.encoding, t.encoding] for s, t in covers),
        "relations": len(pairs),
    }

