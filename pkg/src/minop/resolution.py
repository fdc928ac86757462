"""Free resolutions ``P_R`` of ``R = M`` (the minimal operad) and ``R = As``.

A basis element is a meta-tree: a rooted tree with numbered tails whose
internal vertices have at least two children, every internal edge marked
finite or infinite, and an ``R``-basis element inscribed at each internal
vertex.  Children of a vertex are ordered by their smallest tail, and the
inscription names each child by that smallest tail, so inscriptions of
``M`` are planar trees labeled by tails and inscriptions of ``As`` are
orderings of tails.

Generators of ``P`` are the meta-trees with every internal edge finite;
meta-trees with infinite edges are their free-operad composites.

Signs: the orientation of a meta-tree is the word made of one odd symbol per
finite edge (preorder of the child vertex) followed by the edge words of the
inscriptions, vertex by vertex in preorder.  Each piece of the differential
acts on this word with the Koszul rule.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from . import operad
from .linear import Chain
from .signs import reorder_sign
from .trees import PlanarTree, enumerate_admissible

FINITE, INFINITE = "f", "i"
OPERADS = ("M", "As")


def _min_tail(child) -> int:
    return child if isinstance(child, int) else _node_tails(child[1])[0]


@lru_cache(maxsize=None)
def _node_tails(node) -> tuple:
    out = []
    for c in node[1]:
        out.extend((c,) if isinstance(c, int) else _node_tails(c[1]))
    return tuple(sorted(out))


def _ins_encoding(ins) -> str:
    return ins.encoding if isinstance(ins, PlanarTree) else ".".join(map(str, ins))


def _ins_edges(ins) -> int:
    return len(ins.edges()) if isinstance(ins, PlanarTree) else 0


def _ins_degree(ins) -> int:
    return operad.degree(ins) if isinstance(ins, PlanarTree) else 0


def _encode(node) -> str:
    ins, kids = node
    parts = [str(c) if isinstance(c, int) else c[0] + _encode(c[1]) for c in kids]
    return "{" + _ins_encoding(ins) + "}(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class MetaTree:
    """``root = (inscription, children)``; a child is a tail number or ``(mark, node)``."""

    operad: str
    root: tuple

    def __post_init__(self):
        if self.operad not in OPERADS:
            raise ValueError(f"unknown operad {self.operad!r}")

    @property
    def encoding(self) -> str:
        return self.operad + ":" + _encode(self.root)

    def __str__(self):
        return self.encoding

    __repr__ = __str__

    def __lt__(self, other):
        return self.encoding < other.encoding

    @property
    def tails(self) -> tuple:
        return _node_tails(self.root)

    @property
    def arity(self) -> int:
        return len(self.tails)

    def vertices(self) -> list:
        """``(tail set, node, mark of the edge above or None)`` in preorder."""
        out = []

        def rec(node, mark):
            out.append((_node_tails(node), node, mark))
            for c in node[1]:
                if not isinstance(c, int):
                    rec(c[1], c[0])

        rec(self.root, None)
        return out

    def marks(self) -> list:
        return [m for _, _, m in self.vertices()[1:]]

    @property
    def finite_edges(self) -> int:
        return self.marks().count(FINITE)

    @property
    def is_generator(self) -> bool:
        return INFINITE not in self.marks()

    @property
    def degree(self) -> int:
        return sum(_ins_degree(nd[0]) for _, nd, _ in self.vertices()) - self.finite_edges

    def units(self) -> list:
        """Orientation units ``(symbol, degree)`` in canonical order."""
        vs = self.vertices()
        out = [(("f", ts), 1) for ts, _, m in vs[1:] if m == FINITE]
        out += [(("U", ts), _ins_edges(nd[0])) for ts, nd, _ in vs]
        return out

    def weight(self) -> tuple:
        """Filtration weight ``(finite edges, -inscription edges)``."""
        return (self.finite_edges, -sum(_ins_edges(nd[0]) for _, nd, _ in self.vertices()))

    # -- json --------------------------------------------------------------

    def to_json(self):
        def conv(node):
            ins, kids = node
            children = []
            for c in kids:
                if isinstance(c, int):
                    children.append({"tail": c})
                else:
                    children.append({"mark": "finite" if c[0] == FINITE else "infinite", "vertex": conv(c[1])})
            ins_json = ins.to_json() if isinstance(ins, PlanarTree) else list(ins)
            return {"inscription": ins_json, "children": children}

        return {"operad": self.operad, "root": conv(self.root)}

    @classmethod
    def from_json(cls, obj) -> "MetaTree":
        try:
            op = obj["operad"]

            def conv(o):
                kids = []
                for c in o["children"]:
                    if "tail" in c:
                        kids.append(int(c["tail"]))
                    else:
                        mark = {"finite": FINITE, "infinite": INFINITE}[c["mark"]]
                        kids.append((mark, conv(c["vertex"])))
                ins = PlanarTree.from_json(o["inscription"]) if op == "M" else tuple(o["inscription"])
                return (ins, tuple(kids))

            mt = cls(op, conv(obj["root"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed meta-tree: {exc}") from None
        problem = check_shape(mt)
        if problem:
            raise ValueError(problem)
        return mt

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def check_shape(mt: MetaTree):
    """Return a description of the first structural defect, or ``None``."""
    tails = mt.tails
    if list(tails) != list(range(1, len(tails) + 1)):
        return f"tails must be 1..n, got {list(tails)}"
    for _, (ins, kids), _ in mt.vertices():
        if len(kids) < 2:
            return "internal vertices need at least two children"
        names = [_min_tail(c) for c in kids]
        if names != sorted(names):
            return "children must be ordered by smallest tail"
        if isinstance(ins, PlanarTree):
            if not ins.is_admissible() or ins.label_set != frozenset(names):
                return f"inscription {ins} does not match children {names}"
        elif sorted(ins) != names:
            return f"inscription {ins} is not an order of {names}"
    return None


# ---------------------------------------------------------------------------
# enumeration


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


@lru_cache(maxsize=None)
def _shapes(tails: tuple) -> tuple:
    """Tree shapes on ``tails``: a shape is the tuple of its children."""
    out = []
    for part in _set_partitions(list(tails)):
        if len(part) < 2:
            continue
        blocks = sorted((tuple(sorted(b)) for b in part), key=lambda b: b[0])
        options = [[b[0]] if len(b) == 1 else list(_shapes(b)) for b in blocks]
        for combo in itertools.product(*options):
            out.append(tuple(combo))
    return tuple(out)


def inscriptions(R: str, names) -> list:
    """Non-unit ``R``-basis elements whose labels are ``names``."""
    if R == "M":
        return enumerate_admissible(len(names), labels=names)
    return [tuple(p) for p in itertools.permutations(names)]


def _decorate(R, shape, marks_allowed):
    names = [c if isinstance(c, int) else _shape_min(c) for c in shape]
    kid_opts = []
    for c in shape:
        if isinstance(c, int):
            kid_opts.append([c])
        else:
            kid_opts.append([(mk, nd) for nd in _decorate(R, c, marks_allowed) for mk in marks_allowed])
    for ins in inscriptions(R, names):
        for kids in itertools.product(*kid_opts):
            yield (ins, tuple(kids))


def _shape_min(shape) -> int:
    return min(c if isinstance(c, int) else _shape_min(c) for c in shape)


def _enumerate(R, n, marks):
    if R not in OPERADS:
        raise ValueError(f"unknown operad {R!r}")
    if n < 2:
        return []
    out = []
    for shape in _shapes(tuple(range(1, n + 1))):
        out.extend(MetaTree(R, nd) for nd in _decorate(R, shape, marks))
    return sorted(out)


def generators(R: str, n: int) -> list:
    """Meta-trees with every internal edge finite."""
    return _enumerate(R, n, (FINITE,))


def basis_P(R: str, n: int) -> list:
    """All meta-trees: every internal edge finite or infinite."""
    return _enumerate(R, n, (FINITE, INFINITE))


# ---------------------------------------------------------------------------
# differential


def _replace_node(node, target_tails, make):
    if _node_tails(node) == target_tails:
        return make(node)
    ins, kids = node
    new = tuple(c if isinstance(c, int) else (c[0], _replace_node(c[1], target_tails, make)) for c in kids)
    return (ins, new)


def _pos_degree(units, symbol) -> int:
    total = 0
    for s, d in units:
        if s == symbol:
            return total
        total += d
    raise KeyError(symbol)


def _sign(x) -> int:
    return -1 if x % 2 else 1


def _compose_ins(ins_u, label, ins_w):
    """``(sign, inscription)`` pairs for plugging ``ins_w`` into ``ins_u`` at ``label``."""
    if isinstance(ins_u, PlanarTree):
        return operad.compose_named(ins_u, label, ins_w)
    i = ins_u.index(label)
    return ((1, ins_u[:i] + ins_w + ins_u[i + 1:]),)


def contract(mt: MetaTree, w_tails: tuple):
    """Contract the edge above the vertex with tail set ``w_tails``.

    Returns ``(sign, meta-tree)`` pairs; the sign covers moving the edge word
    of the lower inscription next to the upper one, the composition signs in
    ``R``, and the reordering into canonical form.  The edge's own symbol is
    the caller's business.
    """
    units = mt.units()
    deg = dict(units)
    vs = mt.vertices()
    parent = None
    for ts, nd, _ in vs:
        for c in nd[1]:
            if not isinstance(c, int) and _node_tails(c[1]) == w_tails:
                parent, w_node, mark = ts, c[1], c[0]
    if parent is None:
        raise ValueError(f"no edge above {w_tails} in {mt}")
    word = [s for s, _ in units if s != ("f", w_tails)]
    # move U_w right behind U_u
    uw, uu = ("U", w_tails), ("U", parent)
    i, j = word.index(uu), word.index(uw)
    between = sum(deg[s] for s in word[i + 1:j])
    move = _sign(deg[uw] * between)
    word = word[:i + 1] + [uw] + word[i + 1:j] + word[j + 1:]
    word.remove(uw)  # merged into U_u
    label = w_tails[0]
    out = []

    def make_for(new_ins):
        def make(node):
            ins, kids = node
            new_kids = []
            for c in kids:
                if not isinstance(c, int) and _node_tails(c[1]) == w_tails:
                    new_kids.extend(w_node[1])
                else:
                    new_kids.append(c)
            new_kids.sort(key=_min_tail)
            return (new_ins, tuple(new_kids))

        return make

    for s_beta, new_ins in _compose_ins(_find(mt.root, parent)[0], label, w_node[0]):
        new = MetaTree(mt.operad, _replace_node(mt.root, parent, make_for(new_ins)))
        new_units = new.units()
        ndeg = dict(new_units)
        target = [s for s, _ in new_units]
        sign = move * s_beta * reorder_sign(word, target, lambda s: ndeg[s])
        out.append((sign, new))
    return out


def _find(node, tails):
    if _node_tails(node) == tails:
        return node
    for c in node[1]:
        if not isinstance(c, int):
            f = _find(c[1], tails)
            if f is not None:
                return f
    return None


@lru_cache(maxsize=None)
def _d_basis(mt: MetaTree) -> Chain:
    out = Chain()
    units = mt.units()
    vs = mt.vertices()
    # (i) internal differential of an inscription
    if mt.operad == "M":
        for ts, nd, _ in vs:
            pre = _sign(_pos_degree(units, ("U", ts)))
            for t2, c in operad.differential(nd[0]):
                new = MetaTree(mt.operad, _replace_node(mt.root, ts, lambda node, t2=t2: (t2, node[1])))
                out.add_term(new, pre * c)
    for ts, _, mark in vs[1:]:
        if mark != FINITE:
            continue
        pre = _sign(_pos_degree(units, ("f", ts)))
        # (ii) the finite edge becomes infinite
        remarked = MetaTree(mt.operad, _remark(mt.root, ts))
        out.add_term(remarked, pre)
        # (iii) the finite edge is contracted
        for s, new in contract(mt, ts):
            out.add_term(new, -pre * s)
    return out


def _remark(node, target):
    ins, kids = node
    new = []
    for c in kids:
        if isinstance(c, int):
            new.append(c)
        elif _node_tails(c[1]) == target:
            new.append((INFINITE, c[1]))
        else:
            new.append((c[0], _remark(c[1], target)))
    return (ins, tuple(new))


def d_P(x) -> Chain:
    """Differential of ``P`` on a meta-tree or a chain of meta-trees."""
    if isinstance(x, MetaTree):
        return Chain(_d_basis(x).terms)
    return x.map(_d_basis)


# ---------------------------------------------------------------------------
# comparison maps


def phi(x) -> Chain:
    """Project to ``R``: kill finite edges, compose along infinite ones.

    The result is a chain of planar trees (``M``) or of tail orders (``As``).
    """
    if not isinstance(x, MetaTree):
        return x.map(phi)
    if x.finite_edges:
        return Chain()
    current = Chain.basis(x)
    while True:
        nxt = Chain()
        done = True
        for mt, c in current:
            vs = mt.vertices()
            if len(vs) == 1:
                nxt.add_term(mt, c)
                continue
            done = False
            for s, new in contract(mt, vs[1][0]):
                nxt.add_term(new, c * s)
        current = nxt
        if done:
            break
    return Chain({mt.root[0]: c for mt, c in current.terms.items()})


def psi(r) -> MetaTree:
    """The single-vertex meta-tree carrying ``r`` (a planar tree or an order)."""
    if isinstance(r, PlanarTree):
        return MetaTree("M", (r, tuple(sorted(r.label_set))))
    return MetaTree("As", (tuple(r), tuple(sorted(r))))


def d_R(R: str, x: Chain) -> Chain:
    return operad.d(x) if R == "M" else Chain()


def components(mt: MetaTree) -> list:
    """Weights of the generator pieces obtained by cutting infinite edges."""
    groups = {}
    order = []

    def rec(node, group):
        if group not in groups:
            groups[group] = [0, 0]
            order.append(group)
        groups[group][1] -= _ins_edges(node[0])
        for c in node[1]:
            if isinstance(c, int):
                continue
            if c[0] == FINITE:
                groups[group][0] += 1
                rec(c[1], group)
            else:
                rec(c[1], _node_tails(c[1]))

    rec(mt.root, _node_tails(mt.root))
    return [tuple(groups[g]) for g in order]


def _all_infinite(node):
    ins, kids = node
    return (ins, tuple(c if isinstance(c, int) else (INFINITE, _all_infinite(c[1])) for c in kids))


def k_complex(n: int) -> list:
    """Meta-trees of ``P_As`` whose composite order is ``1..n``.

    Graded by the number of finite edges, these are the cells of the cubical
    subdivision of the associahedron ``K_n``.
    """
    ident = tuple(range(1, n + 1))
    out = []
    for mt in basis_P("As", n):
        comp = phi(MetaTree("As", _all_infinite(mt.root)))
        if list(comp.terms) == [ident]:
            out.append(mt)
    return out
