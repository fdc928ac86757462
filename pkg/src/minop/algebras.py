"""Small test algebras and seeded random cochains.

All structures are written in the bar convention of ``hochschild``: an
arity-``n`` operation is a map ``(sA)^n -> sA`` of shifted degree one.
"""
from __future__ import annotations

import itertools
import random

from .hochschild import AInfinityStructure, Cochain, GradedSpace


def dual_numbers(cap=None) -> AInfinityStructure:
    """``k[x]/x^2`` in degree zero with its product as ``m_2``."""
    space = GradedSpace(("1", "x"), (0, 0))
    m2 = [(("1", "1"), "1", 1), (("1", "x"), "x", 1), (("x", "1"), "x", 1)]
    return AInfinityStructure(Cochain.from_entries(space, m2, cap))


def ground_field(cap=None) -> AInfinityStructure:
    """``A = k`` in degree zero with multiplication."""
    space = GradedSpace(("1",), (0,))
    return AInfinityStructure(Cochain.from_entries(space, [(("1", "1"), "1", 1)], cap))


def x_u_algebra(cap=None) -> AInfinityStructure:
    """Two generators ``x`` (degree 1) and ``u`` (degree 2) with
    ``m_2(x, x) = u`` and ``m_3(x, x, x) = u``; every other product is zero.

    Both operations only accept ``x`` and only produce ``u``, so all
    composites vanish and the Maurer-Cartan equation holds, while ``m_3``
    is nonzero.
    """
    space = GradedSpace(("x", "u"), (1, 2))
    m = [(("x", "x"), "u", 1), (("x", "x", "x"), "u", 1)]
    return AInfinityStructure(Cochain.from_entries(space, m, cap))


def non_associative(cap=None) -> Cochain:
    """A degree-one ``m_2`` on ``span(1, x)`` whose associator is nonzero."""
    space = GradedSpace(("1", "x"), (0, 0))
    m2 = [(("1", "1"), "x", 1), (("1", "x"), "1", 1)]
    return Cochain.from_entries(space, m2, cap)


TEST_ALGEBRAS = {
    "dual-numbers": dual_numbers,
    "x-u": x_u_algebra,
    "ground-field": ground_field,
}


def random_cochain(space: GradedSpace, rng: random.Random, degree: int, arities, density=0.5, cap=None) -> Cochain:
    """Seeded random cochain of shifted degree ``degree`` supported on ``arities``.

    Coefficients are small nonzero integers; the result may be zero when no
    basis tuple has the requested degree.
    """
    entries = []
    for k in arities:
        for ins in itertools.product(range(space.dim), repeat=k):
            for out in range(space.dim):
                d = space.sdeg(out) - sum(space.sdeg(i) for i in ins)
                if d != degree or rng.random() >= density:
                    continue
                c = rng.choice((-2, -1, 1, 2))
                entries.append((tuple(space.names[i] for i in ins), space.names[out], c))
    return Cochain.from_entries(space, entries, cap)


def admissible_degrees(space: GradedSpace, arities) -> list:
    """Shifted degrees realised by some basis entry in the given arities."""
    degs = set()
    for k in arities:
        for ins in itertools.product(range(space.dim), repeat=k):
            for out in range(space.dim):
                degs.add(space.sdeg(out) - sum(space.sdeg(i) for i in ins))
    return sorted(degs)
