"""Set families on [n]: degrees, intersection checks, named examples, file I/O."""
from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .report import LemmaReport, Sense, Verdict
from .subsets import (
    MAX_N,
    Subset,
    binom,
    elements_of,
    iter_masks,
    mask_of,
    sub_masks_of_size,
)


class NotIntersectingError(ValueError):
    """Raised when an operation needs an intersecting family and gets another.

    ``witness`` holds the offending pair of subsets.
    """

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NonUniformError(ValueError):
    pass


def _as_mask(s, n: int) -> int:
    if isinstance(s, Subset):
        if s.bits >> n:
            raise ValueError(f"{s} is not a subset of [{n}]")
        return s.bits
    if isinstance(s, int):
        raise TypeError("pass subsets as Subset or an iterable of elements")
    elements = list(s)
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside [1, {n}]")
    return mask_of(elements)


@dataclass(frozen=True)
class SetFamily:
    """An immutable family of distinct subsets of [n], stored in colex order."""

    n: int
    masks: tuple[int, ...]
    uniform_k: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise ValueError(f"n must be in [0, {MAX_N}]")
        masks = tuple(sorted(self.masks))
        if len(set(masks)) != len(masks):
            raise ValueError("family has duplicate members")
        for m in masks:
            if m < 0 or m >> self.n:
                raise ValueError(f"member {elements_of(m)} not a subset of [{self.n}]")
        sizes = {m.bit_count() for m in masks}
        object.__setattr__(self, "masks", masks)
        object.__setattr__(self, "uniform_k", sizes.pop() if len(sizes) == 1 else None)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable) -> "SetFamily":
        return cls(n, tuple(_as_mask(s, n) for s in sets))

    @property
    def members(self) -> list[Subset]:
        return [Subset(m, self.n) for m in self.masks]

    @property
    def k(self) -> int:
        if self.uniform_k is None:
            raise NonUniformError("family is not uniform (or is empty)")
        return self.uniform_k

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s) -> bool:
        return _as_mask(s, self.n) in set(self.masks)

    def as_lists(self) -> list[list[int]]:
        return [list(elements_of(m)) for m in self.masks]

    def __repr__(self):
        return f"SetFamily(n={self.n}, k={self.uniform_k}, size={len(self)})"


@dataclass(frozen=True)
class DegreeVector:
    """d-degrees of a family; ``counts`` maps d-set masks to degrees.

    Only d-sets of nonzero degree are stored; ``self[S]`` returns 0 otherwise.
    """

    n: int
    d: int
    counts: dict

    def __getitem__(self, s) -> int:
        return self.counts.get(_as_mask(s, self.n) if not isinstance(s, int) else s, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def dense(self) -> np.ndarray:
        """Degrees of all d-subsets of [n] in colex order (int64)."""
        return np.fromiter((self.counts.get(m, 0) for m in iter_masks(self.n, self.d)),
                           dtype=np.int64, count=binom(self.n, self.d))


def disjoint_pair(F: SetFamily):
    """First (colex) pair of members with empty intersection, or None.

    An empty member counts as disjoint from itself.
    """
    masks = F.masks
    if masks and masks[0] == 0:
        return (Subset(0, F.n), Subset(0, F.n))
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if not a & b:
                return (Subset(a, F.n), Subset(b, F.n))
    return None


def is_intersecting(F: SetFamily) -> bool:
    if F.uniform_k and len(F) > 64:
        return intersection_counts(F)[0] == 0
    return disjoint_pair(F) is None


def require_intersecting(F: SetFamily) -> None:
    pair = disjoint_pair(F)
    if pair is not None:
        raise NotIntersectingError(f"members {pair[0]} and {pair[1]} are disjoint", pair)


def degree(F: SetFamily, S) -> int:
    """Number of members containing S."""
    s = _as_mask(S, F.n)
    return sum(1 for m in F.masks if m & s == s)


def degree_vector(F: SetFamily, d: int) -> DegreeVector:
    cnt: Counter = Counter()
    for m in F.masks:
        cnt.update(sub_masks_of_size(m, d))
    return DegreeVector(F.n, d, dict(cnt))


def min_degree(F: SetFamily, d: int) -> tuple[int, Subset]:
    """Minimum d-degree and its colex-least minimizer."""
    if not 0 <= d <= F.n:
        raise ValueError(f"need 0 <= d <= n, got d={d}")
    counts = degree_vector(F, d).counts
    best, arg = None, None
    for s in iter_masks(F.n, d):
        v = counts.get(s, 0)
        if best is None or v < best:
            best, arg = v, s
            if v == 0:
                break
    return best, Subset(arg, F.n)


def star(n: int, k: int, B) -> SetFamily:
    """All k-subsets of [n] containing B."""
    b = _as_mask(B, n)
    t = b.bit_count()
    if not t <= k <= n:
        raise ValueError(f"need |B| <= k <= n, got |B|={t}, k={k}, n={n}")
    rest = [i for i in range(n) if not b >> i & 1]
    out = []
    for local in iter_masks(len(rest), k - t):
        m = b
        for j, pos in enumerate(rest):
            if local >> j & 1:
                m |= 1 << pos
        out.append(m)
    return SetFamily(n, tuple(out))


def complete(n: int, k: int) -> SetFamily:
    return SetFamily(n, tuple(iter_masks(n, k)))


# -- named families ----------------------------------------------------------

DESIGN_2_6_3_2_BLOCKS = (
    (6, 1, 2), (6, 1, 3), (6, 2, 4), (6, 3, 5), (6, 4, 5),
    (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5),
)

FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def design_2_6_3_2() -> SetFamily:
    """The ten blocks of the 2-(6,3,2) design; intersecting with delta_2 = 2."""
    return SetFamily.from_sets(6, DESIGN_2_6_3_2_BLOCKS)


def fano() -> SetFamily:
    return SetFamily.from_sets(7, FANO_LINES)


def upper_half(n: int) -> SetFamily:
    """All subsets of [n] of size at least (n+1)/2, n odd (non-uniform)."""
    if n % 2 == 0:
        raise ValueError("upper_half needs odd n")
    masks = [m for t in range((n + 1) // 2, n + 1) for m in iter_masks(n, t)]
    return SetFamily(n, tuple(masks))


def catalog() -> dict:
    """Named families. ``upper_half`` is a constructor taking odd n."""
    return {"design_2_6_3_2": design_2_6_3_2(), "fano": fano(), "upper_half": upper_half}


# -- intersection sizes --------------------------------------------------------

def _popcount64(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x)


def intersection_counts(F: SetFamily) -> list[int]:
    """N_m = number of ordered pairs (S, T) in F x F with |S & T| = m, m = 0..k."""
    k = F.uniform_k
    if k is None:
        if len(F) == 0:
            return [0]
        raise NonUniformError("intersection distribution needs a uniform family")
    masks = np.array(F.masks, dtype=np.uint64)
    counts = np.zeros(k + 1, dtype=np.int64)
    step = max(1, 2_000_000 // max(1, len(masks)))
    for lo in range(0, len(masks), step):
        block = _popcount64(masks[lo:lo + step, None] & masks[None, :])
        counts += np.bincount(block.ravel(), minlength=k + 1)[: k + 1]
    return [int(c) for c in counts]


intersection_distribution = intersection_counts


# -- theorem-facing quantities ----------------------------------------------------

def ekr_degree_bound(n: int, k: int, d: int) -> int:
    """C(n-d-1, k-d-1): the minimum d-degree of a 1-star."""
    if not 0 <= d < k:
        raise ValueError(f"need 0 <= d < k, got d={d}, k={k}")
    return binom(n - d - 1, k - d - 1)


def chvatal_check(n: int, d: int = 1):
    """Compare delta_d of the upper half of 2^[n] with delta_d of every G_i.

    G_i is the family of all subsets of [n] containing i.  Returns a
    :class:`ekrdeg.lemmas.LemmaReport` with lhs = max_i delta_d(G_i) and
    rhs = delta_d(upper half), claimed strictly smaller.
    """
    if n % 2 == 0 or n < 3:
        raise ValueError("chvatal_check needs odd n >= 3")
    if not 1 <= d <= (n - 1) // 2:
        raise ValueError(f"need 1 <= d <= (n-1)/2, got d={d}")
    F = upper_half(n)
    everything = tuple(range(1 << n))
    per_point = []
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        Gi = SetFamily(n, tuple(m for m in everything if m & bit))
        per_point.append(min_degree(Gi, d)[0])
    lhs = max(per_point)
    rhs, arg = min_degree(F, d)
    verdict = Verdict.PASS if lhs < rhs else Verdict.FAIL
    return LemmaReport(
        "chvatal", {"n": n, "d": d}, lhs, rhs, Sense.LT, verdict=verdict,
        witness=arg,
        details={"upper_half_intersecting": is_intersecting(F), "delta_G_i": per_point},
    )


# -- random families -------------------------------------------------------------

def random_family(n: int, k: int, rng: random.Random, size: int | None = None) -> SetFamily:
    everything = list(iter_masks(n, k))
    if size is None:
        size = rng.randint(1, len(everything))
    return SetFamily(n, tuple(rng.sample(everything, size)))


def random_intersecting_family(n: int, k: int, rng: random.Random) -> SetFamily:
    """Perturbed star: drop random members of a 1-star, then greedily add
    random k-sets meeting everything present.  Always intersecting."""
    centre = rng.randint(1, n)
    keep = rng.uniform(0.2, 1.0)
    base = [m for m in star(n, k, [centre]).masks if rng.random() < keep]
    if not base:
        base = [star(n, k, [centre]).masks[0]]
    others = [m for m in iter_masks(n, k) if not m >> (centre - 1) & 1]
    rng.shuffle(others)
    chosen = list(base)
    budget = rng.randint(0, len(others))
    for m in others[:budget]:
        if all(m & c for c in chosen):
            chosen.append(m)
    return SetFamily(n, tuple(chosen))


# -- file format ------------------------------------------------------------------

def family_to_json(F: SetFamily) -> dict:
    out = {"n": F.n}
    if F.uniform_k is not None:
        out["k"] = F.uniform_k
    out["sets"] = F.as_lists()
    return out


def family_from_json(obj) -> SetFamily:
    if not isinstance(obj, dict) or "n" not in obj or "sets" not in obj:
        raise ValueError("family file needs an object with 'n' and 'sets'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or not 0 <= n <= MAX_N:
        raise ValueError(f"bad ground set size {n!r}")
    sets = obj["sets"]
    if not isinstance(sets, list):
        raise ValueError("'sets' must be an array")
    masks = []
    for s in sets:
        if not isinstance(s, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in s):
            raise ValueError(f"set {s!r} is not an array of integers")
        if len(set(s)) != len(s):
            raise ValueError(f"set {s!r} repeats an element")
        masks.append(_as_mask(s, n))
    if len(set(masks)) != len(masks):
        raise ValueError("family file lists a set twice")
    F = SetFamily(n, tuple(masks))
    if "k" in obj and obj["k"] is not None:
        if any(m.bit_count() != obj["k"] for m in masks):
            raise ValueError(f"declared k={obj['k']} but sets have other sizes")
    return F


def save_family(F: SetFamily, path) -> None:
    Path(path).write_text(json.dumps(family_to_json(F)) + "\n", encoding="utf-8")


def load_family(path) -> SetFamily:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"{path}: not valid JSON ({e})") from None
    return family_from_json(obj)
