"""Rooted trees, admissible labeled planar trees and their angles.

A planar tree is stored as nested tuples ``(label, children)`` describing the
vertex attached to the root edge; the root vertex itself and the root edge are
implicit.  ``label`` is an ``int`` for labeled vertices and ``None`` for
non-labeled ones.  Vertices are addressed by *paths*: the tuple of child
indices leading from the top vertex, so ``()`` is the top vertex.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional

Node = tuple  # (label: int | None, children: tuple[Node, ...])


def leaf(label):
    return (label, ())


def node(label, *children):
    return (label, tuple(children))


# ---------------------------------------------------------------------------
# abstract trees


@dataclass(frozen=True)
class AbstractTree:
    """A rooted tree given by its parent map.

    ``parent[root] == root``; every other vertex points one step closer to the
    root.  Internal and tail vertices are disjoint and exclude the root.
    """

    vertices: frozenset
    root: object
    internal: frozenset
    tails: frozenset
    parent: dict = field(hash=False)

    def children(self, v) -> list:
        return [w for w in self.vertices if w != self.root and self.parent[w] == v]

    def valency(self, v) -> int:
        return len(self.children(v))

    def internal_edges(self) -> list:
        """Internal edges, each named by its lower (child) vertex."""
        return [v for v in self.internal if self.parent[v] in self.internal]

    def tail_edges(self) -> list:
        return [v for v in self.tails]

    def root_edge(self):
        kids = self.children(self.root)
        return kids[0] if len(kids) == 1 else None


@dataclass(frozen=True)
class Violation:
    axiom: str
    message: str

    def __str__(self):
        return f"axiom {self.axiom}: {self.message}"


def validate(tree: AbstractTree) -> Optional[Violation]:
    """Return the first violated tree axiom, or ``None`` for a valid tree.

    Axioms, in the order checked: (a) vertex partition, (b) the parent map
    reaches the root with no cycles, (c) nothing hangs below a tail,
    (d) exactly one vertex sits directly on the root.
    """
    V = set(tree.vertices)
    if tree.root not in V:
        return Violation("a", "root is not a vertex")
    if tree.internal & tree.tails:
        return Violation("a", "internal and tail vertices overlap")
    if tree.root in tree.internal or tree.root in tree.tails:
        return Violation("a", "root listed as internal or tail")
    if {tree.root} | tree.internal | tree.tails != V:
        return Violation("a", "vertices are not root + internal + tails")
    if set(tree.parent) != V or not set(tree.parent.values()) <= V:
        return Violation("b", "parent map is not a self-map of the vertex set")
    if tree.parent[tree.root] != tree.root:
        return Violation("b", "root is not fixed by the parent map")
    for v in V:
        seen = set()
        w = v
        while w != tree.root:
            if w in seen:
                return Violation("b", f"cycle through vertex {v!r}")
            seen.add(w)
            w = tree.parent[w]
    for v in V:
        if v != tree.root and tree.parent[v] in tree.tails:
            return Violation("c", f"tail {tree.parent[v]!r} has a preimage {v!r}")
    on_root = [v for v in V if v != tree.root and tree.parent[v] == tree.root]
    if len(on_root) != 1:
        return Violation("d", f"{len(on_root)} vertices map to the root, expected 1")
    return None


# ---------------------------------------------------------------------------
# planar trees


def _encode(nd) -> str:
    label, kids = nd
    head = "*" if label is None else str(label)
    if not kids:
        return head
    return head + "(" + ",".join(_encode(k) for k in kids) + ")"


def _decode(s: str):
    pos = 0

    def parse():
        nonlocal pos
        if s[pos] == "*":
            label = None
            pos += 1
        else:
            start = pos
            while pos < len(s) and s[pos].isdigit():
                pos += 1
            if start == pos:
                raise ValueError(f"bad tree encoding at {pos}: {s!r}")
            label = int(s[start:pos])
        kids = []
        if pos < len(s) and s[pos] == "(":
            pos += 1
            kids.append(parse())
            while s[pos] == ",":
                pos += 1
                kids.append(parse())
            if s[pos] != ")":
                raise ValueError(f"bad tree encoding at {pos}: {s!r}")
            pos += 1
        return (label, tuple(kids))

    try:
        out = parse()
    except IndexError:
        raise ValueError(f"truncated tree encoding {s!r}") from None
    if pos != len(s):
        raise ValueError(f"trailing characters in tree encoding {s!r}")
    return out


@dataclass(frozen=True)
class PlanarTree:
    """An admissible-or-not labeled planar tree (no tails)."""

    root: tuple

    @classmethod
    def decode(cls, s: str) -> "PlanarTree":
        return cls(_decode(s))

    @cached_property
    def encoding(self) -> str:
        return _encode(self.root)

    def __str__(self):
        return self.encoding

    def __repr__(self):
        return f"PlanarTree({self.encoding!r})"

    def __lt__(self, other):
        return self.encoding < other.encoding

    # -- traversal ---------------------------------------------------------

    @cached_property
    def preorder(self) -> tuple:
        """Paths of all vertices, depth first, children in planar order."""
        out = []

        def walk(nd, path):
            out.append(path)
            for i, k in enumerate(nd[1]):
                walk(k, path + (i,))

        walk(self.root, ())
        return tuple(out)

    def at(self, path):
        nd = self.root
        for i in path:
            nd = nd[1][i]
        return nd

    @cached_property
    def labels(self) -> dict:
        """label -> path of the vertex carrying it."""
        return {self.at(p)[0]: p for p in self.preorder if self.at(p)[0] is not None}

    @property
    def label_set(self) -> frozenset:
        return frozenset(self.labels)

    @property
    def arity(self) -> int:
        return len(self.labels)

    def edges(self) -> tuple:
        """Internal edges named by their lower vertex, in depth-first order."""
        return self.preorder[1:]

    def valency(self, path) -> int:
        return len(self.at(path)[1])

    def is_admissible(self) -> bool:
        return all(
            self.at(p)[0] is not None or len(self.at(p)[1]) >= 2 for p in self.preorder
        )

    def to_abstract(self) -> AbstractTree:
        root = "root"
        parent = {root: root}
        for p in self.preorder:
            parent[p] = p[:-1] if p else root
        internal = frozenset(self.preorder)
        return AbstractTree(frozenset(parent), root, internal, frozenset(), parent)

    # -- json --------------------------------------------------------------

    def to_json(self):
        def conv(nd):
            return {"label": nd[0], "children": [conv(k) for k in nd[1]]}

        return conv(self.root)

    @classmethod
    def from_json(cls, obj) -> "PlanarTree":
        def conv(o):
            if not isinstance(o, dict) or "children" not in o:
                raise ValueError(f"tree node must be an object with 'children': {o!r}")
            label = o.get("label")
            if label is not None and not isinstance(label, int):
                raise ValueError(f"label must be an integer or null: {label!r}")
            return (label, tuple(conv(k) for k in o["children"]))

        return cls(conv(obj))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


T_e = PlanarTree(leaf(1))


def product(a: int = 1, b: int = 2) -> PlanarTree:
    """Non-labeled binary vertex over the labels ``a`` and ``b``."""
    return PlanarTree(node(None, leaf(a), leaf(b)))


def nesting(top: int = 1, bottom: int = 2) -> PlanarTree:
    """Labeled vertex ``top`` with the single labeled child ``bottom``."""
    return PlanarTree(node(top, leaf(bottom)))


# ---------------------------------------------------------------------------
# enumeration


def _ordered_forests(labels: frozenset, min_trees: int = 0) -> Iterator[tuple]:
    """Sequences of admissible trees whose label sets partition ``labels``."""
    if not labels:
        if min_trees == 0:
            yield ()
        return
    items = sorted(labels)
    for r in range(1, len(items) + 1):
        for block in itertools.combinations(items, r):
            rest = labels - frozenset(block)
            if min_trees > 1 and not rest:
                continue
            for t in _trees_on(frozenset(block)):
                for tail in _ordered_forests(rest, max(min_trees - 1, 0)):
                    yield (t,) + tail


_TREE_CACHE: dict = {}


def _trees_on(labels: frozenset) -> tuple:
    if labels in _TREE_CACHE:
        return _TREE_CACHE[labels]
    out = []
    for x in sorted(labels):
        for kids in _ordered_forests(labels - {x}):
            out.append((x, kids))
    for kids in _ordered_forests(labels, min_trees=2):
        out.append((None, kids))
    _TREE_CACHE[labels] = tuple(out)
    return _TREE_CACHE[labels]


def enumerate_admissible(n: int, labels=None) -> list:
    """All admissible planar trees on ``n`` labels, sorted by encoding.

    ``labels`` overrides the default label set ``{1..n}``.
    """
    if labels is None:
        labels = range(1, n + 1)
    labels = frozenset(labels)
    if not labels:
        return []
    return sorted(PlanarTree(r) for r in _trees_on(labels))


# ---------------------------------------------------------------------------
# angles and relabeling


@dataclass(frozen=True)
class AngleList:
    """Angles ``(vertex path, position)`` in boundary-walk order."""

    angles: tuple

    def __len__(self):
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def __getitem__(self, i):
        return self.angles[i]

    def vertex_of(self, i):
        return self.angles[i][0]


def angles(tree: PlanarTree) -> AngleList:
    """Angles of every vertex, walking the boundary from left to right.

    A vertex with ``k`` children has angles ``0..k``; angle ``a`` sits between
    its ``a``-th and ``a+1``-th child.
    """
    out = []

    def walk(nd, path):
        kids = nd[1]
        for i, k in enumerate(kids):
            out.append((path, i))
            walk(k, path + (i,))
        out.append((path, len(kids)))

    walk(tree.root, ())
    return AngleList(tuple(out))


def relabel(tree: PlanarTree, sigma) -> PlanarTree:
    """Apply the label permutation ``sigma`` (a mapping ``old -> new``)."""
    sigma = dict(sigma)
    labels = tree.label_set
    if set(sigma) != labels or set(sigma.values()) != labels:
        raise ValueError(f"{sigma!r} is not a permutation of the labels {sorted(labels)}")

    def conv(nd):
        lab, kids = nd
        return (None if lab is None else sigma[lab], tuple(conv(k) for k in kids))

    return PlanarTree(conv(tree.root))


def rename_labels(tree: PlanarTree, mapping) -> PlanarTree:
    """Rename labels through an injective mapping (labels not in it are kept)."""

    def conv(nd):
        lab, kids = nd
        return (mapping.get(lab, lab) if lab is not None else None, tuple(conv(k) for k in kids))

    return PlanarTree(conv(tree.root))
