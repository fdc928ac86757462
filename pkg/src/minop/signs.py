"""Koszul sign bookkeeping for tensor words in graded lines.

Factors are one-dimensional graded lines tagged with a generator identity.
The degree conventions are: ``L1`` has degree -1, ``L2`` degree -2, and the
duals ``L1*``, ``L2*`` degrees +1 and +2.  Only odd factors ever produce a
sign, so in practice the bookkeeping is permutation parity restricted to the
odd factors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

L1, L1_DUAL, L2, L2_DUAL = -1, 1, -2, 2


class Factor(NamedTuple):
    gen: object
    degree: int


@dataclass(frozen=True)
class OrientationWord:
    factors: tuple

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    def permuted(self, perm: Sequence[int]) -> "OrientationWord":
        """The word whose ``i``-th factor is the ``perm[i]``-th factor of self."""
        return OrientationWord(tuple(self.factors[p] for p in perm))


def _odd_inversions(items: Sequence[int], odd: Sequence[bool]) -> int:
    count = 0
    for a in range(len(items)):
        if not odd[a]:
            continue
        for b in range(a + 1, len(items)):
            if odd[b] and items[a] > items[b]:
                count += 1
    return count


def koszul_sign(word: OrientationWord, perm: Sequence[int]) -> int:
    """Sign of rearranging ``word`` into ``word.permuted(perm)``."""
    perm = list(perm)
    if sorted(perm) != list(range(len(word))):
        raise ValueError(f"{perm!r} is not a permutation of {len(word)} positions")
    odd = [word[p].degree % 2 == 1 for p in perm]
    return -1 if _odd_inversions(perm, odd) % 2 else 1


def pair(word: OrientationWord, i: int, j: int):
    """Contract the dual factor at ``i`` with its partner at ``j``.

    The partner is moved to sit immediately right of the dual factor, then
    both are evaluated away.  Returns ``(sign, shorter_word)``.
    """
    a, b = word[i], word[j]
    if i == j or a.degree + b.degree != 0 or a.degree <= 0:
        raise ValueError(f"factors {a} and {b} are not a dual pair")
    if a.gen != b.gen:
        raise ValueError(f"factors {a} and {b} belong to different generators")
    if i < j:
        crossed = word.factors[i + 1:j]
    else:
        crossed = word.factors[j + 1:i + 1]
    s = sum(f.degree for f in crossed) * b.degree
    rest = tuple(f for k, f in enumerate(word.factors) if k not in (i, j))
    return (-1 if s % 2 else 1), OrientationWord(rest)


def reorder_sign(source: Sequence, target: Sequence, degree) -> int:
    """Koszul sign of moving the items of ``source`` into the order ``target``.

    ``degree`` maps an item to its degree (only the parity matters).
    """
    pos = {x: k for k, x in enumerate(source)}
    if len(pos) != len(source) or set(target) != set(source) or len(target) != len(source):
        raise ValueError("target is not a rearrangement of source")
    perm = [pos[x] for x in target]
    odd = [degree(x) % 2 == 1 for x in target]
    return -1 if _odd_inversions(perm, odd) % 2 else 1


def permutation_sign(source: Sequence, target: Sequence) -> int:
    """Sign of the permutation taking ``source`` to ``target`` (all items odd)."""
    return reorder_sign(source, target, lambda _: 1)


def tree_word(tree) -> OrientationWord:
    """The orientation line of an admissible planar tree in canonical order.

    Global ``L2*`` first, then one ``L1*`` per internal edge (named by the lower
    vertex path, depth-first), then one ``L2`` per label in increasing order.
    """
    factors = [Factor("root", L2_DUAL)]
    factors += [Factor(("edge", p), L1_DUAL) for p in tree.edges()]
    factors += [Factor(("label", x), L2) for x in sorted(tree.labels)]
    return OrientationWord(tuple(factors))
