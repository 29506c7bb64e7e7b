"""Canonical index tuples for exterior powers and permutation signs."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an index repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    # cycle decomposition on the ranks
    order = sorted(range(len(seq)), key=seq.__getitem__)
    seen = [False] * len(seq)
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def canonical(seq: Sequence[int]) -> tuple:
    """``(sign, sorted tuple)`` with sign 0 for repeated indices."""
    return perm_sign(seq), tuple(sorted(seq))


@lru_cache(maxsize=None)
def tuples(dim: int, m: int) -> tuple:
    """Strictly increasing ``m``-tuples of ``range(dim)`` in lexicographic order."""
    return tuple(combinations(range(dim), m))


@lru_cache(maxsize=None)
def _positions(dim: int, m: int) -> dict:
    return {t: k for k, t in enumerate(tuples(dim, m))}


def pairs(dim: int) -> tuple:
    return tuples(dim, 2)


def triples(dim: int) -> tuple:
    return tuples(dim, 3)


def index_of(dim: int, t: Sequence[int]) -> Optional[int]:
    """Position of a canonical tuple in the enumeration, ``None`` if not canonical."""
    return _positions(dim, len(t)).get(tuple(t))


class BasisIndexer:
    """Enumerations of canonical pairs, triples and general m-tuples for one dimension."""

    def __init__(self, dim: int):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim

    @property
    def pairs(self) -> tuple:
        return pairs(self.dim)

    @property
    def triples(self) -> tuple:
        return triples(self.dim)

    def tuples(self, m: int) -> tuple:
        return tuples(self.dim, m)

    def index(self, t: Sequence[int]) -> Optional[int]:
        return index_of(self.dim, t)

    sign = staticmethod(perm_sign)

    def __repr__(self):
        return f"BasisIndexer(dim={self.dim})"
