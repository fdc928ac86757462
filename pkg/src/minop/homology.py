"""Exact chain complexes and Betti numbers over the rationals.

Complexes are cohomologically graded: the differential raises degree by one.
Ranks are computed by fraction-free elimination on sparse integer rows (exact);
a modular dense rank from ``_kernels`` is available as a fast cross-check.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from . import _kernels


class DSquaredError(AssertionError):
    def __init__(self, element, image):
        self.element = element
        self.image = image
        super().__init__(f"d(d({element})) = {image} != 0")


@dataclass
class ChainComplexData:
    """Graded basis plus sparse differential matrices.

    ``matrices[k]`` maps column index ``j`` of ``bases[k]`` to a dict
    ``{row index in bases[k+1]: coefficient}``.
    """

    bases: dict
    matrices: dict = field(default_factory=dict)

    @property
    def degrees(self) -> list:
        return sorted(self.bases)

    def dims(self) -> dict:
        return {k: len(self.bases[k]) for k in self.degrees}

    def dense(self, k) -> list:
        """The matrix of ``d: C^k -> C^{k+1}`` as a list of rows."""
        rows = len(self.bases.get(k + 1, ()))
        cols = len(self.bases.get(k, ()))
        out = [[0] * cols for _ in range(rows)]
        for j, col in self.matrices.get(k, {}).items():
            for i, c in col.items():
                out[i][j] = c
        return out


@dataclass(frozen=True)
class BettiTable:
    betti: dict
    dims: dict

    @property
    def euler(self) -> int:
        return sum((-1) ** (k % 2) * b for k, b in self.betti.items())

    @property
    def euler_from_dims(self) -> int:
        return sum((-1) ** (k % 2) * b for k, b in self.dims.items())

    def nonzero(self) -> dict:
        return {k: b for k, b in sorted(self.betti.items(), reverse=True) if b}

    def to_json(self) -> dict:
        return {str(k): b for k, b in sorted(self.betti.items(), reverse=True)}


def assemble(elements, degree, differential, check: bool = True) -> ChainComplexData:
    """Build a complex from a basis list and a differential on basis elements.

    ``differential(b)`` must return a ``Chain`` over the same basis.  With
    ``check`` set, ``d(d(b)) == 0`` is verified for every basis element and a
    :class:`DSquaredError` names the first offender.
    """
    bases = defaultdict(list)
    for b in sorted(elements):
        bases[degree(b)].append(b)
    bases = dict(bases)
    index = {k: {b: i for i, b in enumerate(v)} for k, v in bases.items()}
    matrices = {}
    images = {}
    for k, elems in bases.items():
        cols = {}
        for j, b in enumerate(elems):
            img = differential(b)
            images[b] = img
            col = {}
            for b2, c in img.terms.items():
                deg2 = degree(b2)
                if deg2 != k + 1:
                    raise ValueError(f"d({b}) has a term {b2} of degree {deg2}, expected {k + 1}")
                try:
                    col[index[k + 1][b2]] = c
                except KeyError:
                    raise ValueError(f"d({b}) leaves the basis: {b2}") from None
            if col:
                cols[j] = col
        matrices[k] = cols
    if check:
        for b, img in images.items():
            dd = img.map(lambda t: images[t])
            if dd:
                raise DSquaredError(b, dd)
    return ChainComplexData(bases, matrices)


def _as_integer_rows(cols: dict) -> list:
    """Transpose sparse columns into integer rows (clearing denominators)."""
    rows = defaultdict(dict)
    for j, col in cols.items():
        for i, c in col.items():
            rows[i][j] = c
    out = []
    for row in rows.values():
        den = 1
        for c in row.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        out.append({j: int(c * den) for j, c in row.items()})
    return out


def rank_exact(cols: dict) -> int:
    """Rank over Q of a sparse matrix given column-wise, by integer elimination."""
    rows = [r for r in _as_integer_rows(cols) if r]
    rank = 0
    while rows:
        # pivot on the shortest row, at its smallest column
        rows.sort(key=len)
        piv = rows.pop(0)
        col = min(piv)
        a = piv[col]
        rank += 1
        new_rows = []
        for r in rows:
            b = r.get(col)
            if b is None:
                new_rows.append(r)
                continue
            g = math.gcd(a, b)
            fa, fb = a // g, b // g
            out = {}
            for j in set(r) | set(piv):
                v = fa * r.get(j, 0) - fb * piv.get(j, 0)
                if v:
                    out[j] = v
            if out:
                content = 0
                for v in out.values():
                    content = math.gcd(content, v)
                if content > 1:
                    out = {j: v // content for j, v in out.items()}
                new_rows.append(out)
        rows = new_rows
    return rank


def rank_modular(cols: dict, rows: int, ncols: int, backend=None, p: int = _kernels.PRIME) -> int:
    dense = [[0] * ncols for _ in range(rows)]
    for j, col in cols.items():
        for i, c in col.items():
            c = Fraction(c)
            dense[i][j] = (c.numerator * pow(c.denominator, -1, p)) % p
    return _kernels.rank_mod_p(dense, p=p, backend=backend)


def betti(c: ChainComplexData, method: str = "exact", backend=None) -> BettiTable:
    """Betti numbers ``dim C^k - rank d_k - rank d_{k-1}`` for every degree."""
    ranks = {}
    for k in c.degrees:
        cols = c.matrices.get(k, {})
        if method == "exact":
            ranks[k] = rank_exact(cols)
        elif method == "modp":
            ranks[k] = rank_modular(cols, len(c.bases.get(k + 1, ())), len(c.bases[k]), backend)
        else:
            raise ValueError(f"unknown rank method {method!r}")
    dims = c.dims()
    out = {}
    for k in c.degrees:
        out[k] = dims[k] - ranks.get(k, 0) - ranks.get(k - 1, 0)
    return BettiTable(out, dims)


def euler(c: ChainComplexData) -> int:
    return sum((-1) ** (k % 2) * n for k, n in c.dims().items())


def poincare_coefficients(n: int) -> list:
    """Coefficients of ``prod_{k=1}^{n-1} (1 + k t)``, lowest power first."""
    poly = [1]
    for k in range(1, n):
        nxt = [0] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i] += a
            nxt[i + 1] += k * a
        poly = nxt
    return poly
