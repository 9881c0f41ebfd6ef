"""Exact combinatorial primitives.

Subsets of the ground set [n] = {1, ..., n} are stored as bitmasks: bit
``i - 1`` is set iff element ``i`` is a member.  For a fixed cardinality,
increasing integer order of the masks *is* colexicographic order, which is
the single canonical order used throughout the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator

MAX_N = 63


@lru_cache(maxsize=None)
def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def falling(x: int, i: int) -> int:
    """Falling factorial x (x-1) ... (x-i+1); 1 when i == 0."""
    if i < 0:
        raise ValueError("falling factorial needs i >= 0")
    out = 1
    for j in range(i):
        out *= x - j
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_of(elements: Iterable[int]) -> int:
    bits = 0
    for e in elements:
        bits |= 1 << (e - 1)
    return bits


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_N:
        raise ValueError(f"ground set size must satisfy 0 <= n <= {MAX_N}, got {n}")


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of [n] held as a bitmask.

    Ordering compares ``bits`` first, which is colex order for subsets of a
    common ground set.
    """

    bits: int
    n: int

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"mask {self.bits:#x} has bits outside [1, {self.n}]")

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "Subset":
        elements = list(elements)
        for e in elements:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside [1, {n}]")
        return cls(mask_of(elements), n)

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: int) -> bool:
        return 1 <= x <= self.n and bool(self.bits >> (x - 1) & 1)

    def __iter__(self):
        return iter(self.elements)

    def issubset(self, other: "Subset") -> bool:
        return self.bits & other.bits == self.bits

    def isdisjoint(self, other: "Subset") -> bool:
        return not self.bits & other.bits

    def __and__(self, other: "Subset") -> "Subset":
        return Subset(self.bits & other.bits, max(self.n, other.n))

    def __or__(self, other: "Subset") -> "Subset":
        return Subset(self.bits | other.bits, max(self.n, other.n))

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def rank_mask(mask: int) -> int:
    """Colex rank of a subset mask among the subsets of its cardinality."""
    r = 0
    j = 0
    pos = 0
    while mask:
        if mask & 1:
            j += 1
            r += binom(pos, j)
        mask >>= 1
        pos += 1
    return r


def rank(s: Subset) -> int:
    return rank_mask(s.bits)


def unrank_mask(n: int, k: int, r: int) -> int:
    _check_n(n)
    total = binom(n, k)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} out of range [0, {total})")
    mask = 0
    m = n
    while k > 0:
        m -= 1
        # largest position m with C(m, k) <= r
        while binom(m, k) > r:
            m -= 1
        r -= binom(m, k)
        mask |= 1 << m
        k -= 1
    return mask


def unrank(n: int, k: int, r: int) -> Subset:
    """The k-subset of [n] with colex rank r."""
    return Subset(unrank_mask(n, k, r), n)


def iter_masks(n: int, k: int) -> Iterator[int]:
    """All k-subset masks of [n] in colex (increasing integer) order."""
    _check_n(n)
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        # Gosper's hack
        c = mask & -mask
        r = mask + c
        mask = (((r ^ mask) >> 2) // c) | r


def enumerate_subsets(n: int, k: int) -> Iterator[Subset]:
    for m in iter_masks(n, k):
        yield Subset(m, n)


def sub_masks_of_size(mask: int, d: int) -> Iterator[int]:
    """All d-element submasks of ``mask``, in colex order."""
    positions = [i for i in range(mask.bit_length()) if mask >> i & 1]
    for local in iter_masks(len(positions), d) if d <= len(positions) else ():
        out = 0
        j = 0
        while local:
            if local & 1:
                out |= 1 << positions[j]
            local >>= 1
            j += 1
        yield out
