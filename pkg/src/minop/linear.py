"""Finite formal linear combinations with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Chain:
    """A sparse vector: basis element -> nonzero exact coefficient.

    Basis elements must be hashable and mutually comparable (the sort order is
    used for deterministic iteration).  Zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for b, c in dict(terms).items():
                if c:
                    self.terms[b] = _norm(c)

    @classmethod
    def basis(cls, b, coeff=1) -> "Chain":
        return cls({b: coeff})

    @classmethod
    def from_pairs(cls, pairs) -> "Chain":
        out = cls()
        for c, b in pairs:
            out.add_term(b, c)
        return out

    def add_term(self, b, c):
        if not c:
            return
        new = self.terms.get(b, 0) + c
        if new:
            self.terms[b] = _norm(new)
        else:
            self.terms.pop(b, None)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda bc: bc[0]))

    def items(self):
        return list(self)

    def coefficient(self, b):
        return self.terms.get(b, 0)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Chain):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = Chain(self.terms)
        for b, c in other.terms.items():
            out.add_term(b, c)
        return out

    def __sub__(self, other):
        out = Chain(self.terms)
        for b, c in other.terms.items():
            out.add_term(b, -c)
        return out

    def __neg__(self):
        return Chain({b: -c for b, c in self.terms.items()})

    def __mul__(self, scalar):
        return Chain({b: c * scalar for b, c in self.terms.items()})

    __rmul__ = __mul__

    def map(self, f) -> "Chain":
        """Extend ``f: basis -> Chain`` linearly."""
        out = Chain()
        for b, c in self.terms.items():
            for b2, c2 in f(b).terms.items():
                out.add_term(b2, c * c2)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for b, c in self:
            parts.append(f"{c:+} {b}" if not isinstance(c, Fraction) else f"+({c}) {b}")
        return " ".join(parts)

    def to_json(self, encode):
        return [{"coeff": str(Fraction(c)), "tree": encode(b)} for b, c in self]
