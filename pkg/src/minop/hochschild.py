"""Hochschild cochains of a finite-dimensional graded space.

Cochains are stored in the bar convention: the arity-``k`` component is a
multilinear map ``(sA)^k -> sA`` on the suspension ``sA = A[1]`` (basis
element ``b`` has degree ``deg(b) - 1`` there), given by exact coefficients
on basis tuples.  In this convention the Gerstenhaber pre-Lie product is plain
insertion with Koszul signs, and the *shifted* degree of an entry
``(b_1..b_k) -> c`` is ``|c|' - sum |b_i|'``.  The total (Hochschild) degree
is the shifted degree plus one, i.e. ``map degree + arity``.

Every cochain carries an arity ``cap``: components above it are unknown
(``cap=None`` means the stored components are all there is).
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

ZERO, NONZERO, UNKNOWN = "zero", "nonzero", "unknown"


class CapExhausted(ValueError):
    """Raised when a requested component lies above the computable arity."""


@dataclass(frozen=True)
class GradedSpace:
    names: tuple
    degrees: tuple

    def __post_init__(self):
        if not self.names:
            raise ValueError("a graded space needs a nonempty basis")
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")

    @property
    def dim(self) -> int:
        return len(self.names)

    def sdeg(self, i: int) -> int:
        """Degree of basis element ``i`` in the suspension ``sA``."""
        return self.degrees[i] - 1

    def index(self, name) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown basis element {name!r}") from None

    def to_json(self):
        return {"basis": [{"name": n, "degree": d} for n, d in zip(self.names, self.degrees)]}

    @classmethod
    def from_json(cls, obj) -> "GradedSpace":
        try:
            basis = obj["basis"]
            return cls(tuple(str(b["name"]) for b in basis), tuple(int(b["degree"]) for b in basis))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graded space: {exc}") from None


@dataclass
class Cochain:
    """``components[k]`` maps ``(inputs, output)`` index tuples to coefficients."""

    space: GradedSpace
    components: dict = field(default_factory=dict)
    cap: int | None = None

    def __post_init__(self):
        clean = {}
        for k, comp in self.components.items():
            if self.cap is not None and k > self.cap:
                raise ValueError(f"component of arity {k} above cap {self.cap}")
            entries = {key: c for key, c in comp.items() if c}
            for (ins, _out) in entries:
                if len(ins) != k:
                    raise ValueError(f"entry {ins} stored under arity {k}")
            if entries:
                clean[k] = entries
        self.components = clean

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, space, cap=None) -> "Cochain":
        return cls(space, {}, cap)

    @classmethod
    def from_entries(cls, space, entries, cap=None) -> "Cochain":
        """``entries``: iterable of ``(input names, output name, coeff)``."""
        comps = defaultdict(dict)
        for ins, out, c in entries:
            key = (tuple(space.index(x) for x in ins), space.index(out))
            comps[len(ins)][key] = comps[len(ins)].get(key, 0) + c
        return cls(space, dict(comps), cap)

    @classmethod
    def identity(cls, space, cap=None) -> "Cochain":
        return cls(space, {1: {((i,), i): 1 for i in range(space.dim)}}, cap)

    # -- inspection --------------------------------------------------------

    def status(self, k: int) -> str:
        if self.cap is not None and k > self.cap:
            return UNKNOWN
        return NONZERO if self.components.get(k) else ZERO

    def component(self, k: int) -> dict:
        if self.status(k) == UNKNOWN:
            raise CapExhausted(f"arity {k} is above the cap {self.cap}")
        return self.components.get(k, {})

    @property
    def max_arity(self) -> int:
        """Largest arity with a stored nonzero component (-1 for zero)."""
        return max(self.components, default=-1)

    def bound(self) -> int:
        """Arities above this are zero or unknown."""
        return self.max_arity if self.cap is None else self.cap

    def entry_degree(self, key) -> int:
        ins, out = key
        return self.space.sdeg(out) - sum(self.space.sdeg(i) for i in ins)

    def degrees(self) -> set:
        return {self.entry_degree(key) for comp in self.components.values() for key in comp}

    @property
    def degree(self) -> int:
        """Shifted degree (degree in ``C[1]``) of a homogeneous cochain."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous cochain (shifted degrees {sorted(degs)})")
        if not degs:
            raise ValueError("the zero cochain has no degree")
        return degs.pop()

    @property
    def total_degree(self) -> int:
        """Hochschild degree: map degree plus arity."""
        return self.degree + 1

    def homogeneous_parts(self) -> dict:
        parts = defaultdict(lambda: defaultdict(dict))
        for k, comp in self.components.items():
            for key, c in comp.items():
                parts[self.entry_degree(key)][k][key] = c
        return {d: Cochain(self.space, dict(comps), self.cap) for d, comps in parts.items()}

    def is_zero(self) -> bool:
        return not self.components

    # -- linear structure --------------------------------------------------

    def _combine(self, other, sign):
        if other.space != self.space:
            raise ValueError("cochains live on different spaces")
        cap = _min_cap(self.cap, other.cap)
        comps = defaultdict(dict)
        for src, s in ((self, 1), (other, sign)):
            for k, comp in src.components.items():
                if cap is not None and k > cap:
                    continue
                for key, c in comp.items():
                    comps[k][key] = comps[k].get(key, 0) + s * c
        return Cochain(self.space, dict(comps), cap)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "Cochain":
        return Cochain(
            self.space,
            {k: {key: s * c for key, c in comp.items()} for k, comp in self.components.items()},
            self.cap,
        )

    def __rmul__(self, s):
        return self.scale(s)

    def truncate(self, cap: int) -> "Cochain":
        cap = cap if self.cap is None else min(cap, self.cap)
        return Cochain(self.space, {k: v for k, v in self.components.items() if k <= cap}, cap)

    def agrees_with(self, other, upto=None) -> bool:
        """Equality on every arity known to both (and ``<= upto`` if given)."""
        cap = _min_cap(self.cap, other.cap)
        if upto is not None:
            cap = upto if cap is None else min(cap, upto)
        arities = set(self.components) | set(other.components)
        for k in arities:
            if cap is not None and k > cap:
                continue
            if self.components.get(k, {}) != other.components.get(k, {}):
                return False
        return True

    def vanishes(self) -> bool:
        """True if every known component is zero."""
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.space == other.space and self.cap == other.cap and self.components == other.components

    # -- json --------------------------------------------------------------

    def to_json(self):
        entries = []
        for k in sorted(self.components):
            for (ins, out), c in sorted(self.components[k].items()):
                entries.append(
                    {
                        "arity": k,
                        "inputs": [self.space.names[i] for i in ins],
                        "output": self.space.names[out],
                        "coeff": str(Fraction(c)),
                    }
                )
        return {"cap": self.cap, "entries": entries}

    @classmethod
    def from_json(cls, space, obj) -> "Cochain":
        try:
            cap = obj.get("cap")
            entries = []
            for e in obj["entries"]:
                if int(e["arity"]) != len(e["inputs"]):
                    raise ValueError(f"arity {e['arity']} does not match inputs {e['inputs']}")
                entries.append((e["inputs"], e["output"], Fraction(e["coeff"])))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed cochain: missing {exc}") from None
        return cls.from_entries(space, entries, cap)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _min_cap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# ---------------------------------------------------------------------------
# insertion


def _partial(space, f_comp, g_by_out, i):
    """Entries of ``f o_i g`` for one arity pair (Koszul signs on sA)."""
    out = defaultdict(int)
    for (ins, c_out), fc in f_comp.items():
        a = ins[i]
        if a not in g_by_out:
            continue
        pre = sum(space.sdeg(x) for x in ins[:i])
        for g_ins, gc, gdeg in g_by_out[a]:
            sign = -1 if (gdeg * pre) % 2 else 1
            out[(ins[:i] + g_ins + ins[i + 1:], c_out)] += sign * fc * gc
    return out


def _by_output(g: Cochain, comp):
    idx = defaultdict(list)
    for key, c in comp.items():
        idx[key[1]].append((key[0], c, g.entry_degree(key)))
    return idx


def _computable(f: Cochain, g: Cochain, k: int) -> bool:
    for p in range(1, k + 2):
        q = k + 1 - p
        sf, sg = f.status(p), g.status(q)
        if ZERO in (sf, sg):
            continue
        if UNKNOWN in (sf, sg):
            return False
    return True


def circle(f: Cochain, g: Cochain) -> Cochain:
    """Gerstenhaber insertion ``f o g = sum_i f o_i g``.

    Output arities are computed while every contributing pair of components is
    known; the first arity needing an unknown component becomes the new cap.
    """
    if f.space != g.space:
        raise ValueError("cochains live on different spaces")
    space = f.space
    limit = f.bound() + g.bound()
    if f.cap is None and g.cap is None:
        cap = None
    else:
        cap = limit
        for k in range(0, limit + 1):
            if not _computable(f, g, k):
                cap = k - 1
                break
        if cap < 0:
            raise CapExhausted("no arity of the insertion is computable")
    comps = defaultdict(lambda: defaultdict(int))
    top = limit if cap is None else cap
    for k in range(0, top + 1):
        for p in range(1, k + 2):
            q = k + 1 - p
            if f.status(p) != NONZERO or g.status(q) != NONZERO:
                continue
            g_by_out = _by_output(g, g.components[q])
            for i in range(p):
                for key, c in _partial(space, f.components[p], g_by_out, i).items():
                    comps[k][key] += c
    return Cochain(space, {k: dict(v) for k, v in comps.items()}, cap)


def bracket(f: Cochain, g: Cochain) -> Cochain:
    """Gerstenhaber bracket ``f o g - (-1)^{|f||g|} g o f`` (shifted degrees).

    Inhomogeneous arguments are split into homogeneous parts first.
    """
    total = None
    for df, fp in f.homogeneous_parts().items():
        for dg, gp in g.homogeneous_parts().items():
            sign = -1 if (df * dg) % 2 else 1
            term = circle(fp, gp) - circle(gp, fp).scale(sign)
            total = term if total is None else total + term
    if total is None:  # a zero argument: keep the cap bookkeeping of circle
        return circle(f, g) - circle(g, f)
    return total


def hochschild_differential(m, gamma: Cochain) -> Cochain:
    """``d_m(gamma) = [m, gamma]``; ``m`` may be a cochain or an A-infinity structure."""
    m = m.m if isinstance(m, AInfinityStructure) else m
    return bracket(m, gamma)


@dataclass(frozen=True)
class MCVerdict:
    holds: bool
    verified_upto: int | None  # None: every arity verified
    failing_arity: int | None = None

    def __bool__(self):
        return self.holds


def is_maurer_cartan(m: Cochain) -> MCVerdict:
    """Check ``[m, m] = 0`` on every arity that can be computed."""
    if not m.is_zero() and m.degrees() != {1}:
        raise ValueError(f"a Maurer-Cartan element has shifted degree 1, got {sorted(m.degrees())}")
    if m.is_zero():
        return MCVerdict(True, m.cap)
    mm = circle(m, m)
    for k in sorted(mm.components):
        return MCVerdict(False, mm.cap, k)
    return MCVerdict(True, mm.cap)


@dataclass
class AInfinityStructure:
    """A degree-one cochain ``m``; ``truncated`` forbids an arity-0 part."""

    m: Cochain
    truncated: bool = True

    def __post_init__(self):
        if not self.m.is_zero() and self.m.degrees() != {1}:
            raise ValueError("an A-infinity structure has shifted degree 1")
        if self.truncated and self.m.status(0) == NONZERO:
            raise ValueError("truncated structure must have m_0 = 0")

    @property
    def space(self):
        return self.m.space

    def verdict(self) -> MCVerdict:
        return is_maurer_cartan(self.m)
