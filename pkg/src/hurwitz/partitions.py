"""Integer partitions as ramification types.

Parts are stored as a weakly decreasing tuple of positive integers; the
derived quantities n (weight), m (length), and the minimal transposition
count n + m - 2 hang off the same object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

__all__ = ["Partition", "partitions", "partitions_upto_length", "class_size"]


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...]

    def __post_init__(self):
        p = self.parts
        if any(a < 1 for a in p):
            raise ValueError("parts must be positive")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError("parts must be weakly decreasing")

    @staticmethod
    def of(parts: Sequence[int]) -> "Partition":
        return Partition(tuple(sorted(parts, reverse=True)))

    @staticmethod
    def parse(text: str) -> "Partition":
        """Comma-separated parts, any order; normalized descending."""
        try:
            parts = [int(tok) for tok in text.split(",") if tok.strip()]
        except ValueError:
            raise ValueError(f"cannot parse partition {text!r}")
        if not parts:
            raise ValueError("empty partition")
        return Partition.of(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def min_length(self) -> int:
        """Fewest transpositions whose product can have this cycle type
        while acting transitively: n + m - 2."""
        return self.n + self.m - 2

    def j_for_genus(self, g: int) -> int:
        return self.min_length + 2 * g

    def key(self) -> str:
        """Dash-separated form used by the CSV dump."""
        return "-".join(str(a) for a in self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.parts) + ")"


@lru_cache(maxsize=None)
def _parts_lists(n: int, cap: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, cap), 0, -1):
        for rest in _parts_lists(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n, descending-lex order."""
    for p in _parts_lists(n, n):
        yield Partition(p)


def partitions_upto_length(n: int, max_len: int) -> Iterator[Partition]:
    for p in _parts_lists(n, n):
        if len(p) <= max_len:
            yield Partition(p)


def class_size(alpha: Partition) -> int:
    """Size of the conjugacy class with cycle type alpha in S_n."""
    n = alpha.n
    denom = 1
    mult = 1
    prev = None
    for a in alpha.parts:
        denom *= a
        if a == prev:
            mult += 1
        else:
            mult = 1
        prev = a
        denom *= mult
    return math.factorial(n) // denom
