"""Branch-and-bound search for intersecting k-uniform families whose minimum
d-degree reaches a target.

Candidates are the k-subsets of [n] in colex order, held as bit positions of
Python-int bitsets.  Each node picks the colex-least d-set S whose degree is
still below target and branches over the pool members containing S; once a
branch is closed its candidate leaves the pool of the later siblings, so
subtrees are disjoint.

Cuts:

* ``size_floor``   chosen + pool < ceil(target C(n,d) / C(k,d)), from
                   double counting the d-degrees;
* ``ekr_ceiling``  the size floor already exceeds C(n-1, k-1) (n >= 2k);
* ``degree_reach`` some d-set cannot reach the target from the pool;
* ``symmetry``     a branch candidate is not the colex-least in its orbit
                   under a group of coordinate permutations fixing the node
                   (shallow depths only).

The symmetry group at a node is the Young subgroup of the partition of [n]
by membership in S, in every chosen set and in every inherited excluded set.
Each such permutation maps solutions below the node to solutions below the
node, so restricting to orbit leaders loses nothing.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

from .families import SetFamily, is_intersecting, min_degree
from .scheme import InconsistencyError
from .subsets import binom, iter_masks, sub_masks_of_size


class Status(str, enum.Enum):
    WITNESS = "witness"
    EXHAUSTED = "exhausted"
    CAPPED = "capped"


@dataclass(frozen=True)
class SearchProblem:
    n: int
    k: int
    d: int
    target: int
    symmetry_pruning: bool = True
    node_limit: int | None = None
    time_limit: float | None = None
    symmetry_depth: int = 2

    def __post_init__(self):
        if not 0 <= self.d < self.k <= self.n:
            raise ValueError(f"need 0 <= d < k <= n, got n={self.n} k={self.k} d={self.d}")
        if self.n > 63:
            raise ValueError("n > 63 not supported")
        if self.target < 1:
            raise ValueError("target must be >= 1")


@dataclass
class SearchOutcome:
    status: Status
    witness: SetFamily | None
    nodes_explored: int
    bound_cuts: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_json(self) -> dict:
        out = {
            "status": self.status.value,
            "nodes_explored": self.nodes_explored,
            "bound_cuts": dict(self.bound_cuts),
            "elapsed": round(self.elapsed, 6),
        }
        if self.witness is not None:
            out["witness"] = {"n": self.witness.n, "k": self.witness.uniform_k,
                              "sets": self.witness.as_lists()}
        return out


class _Capped(Exception):
    pass


def size_floor(n: int, k: int, d: int, target: int) -> int:
    """Smallest |F| compatible with every d-degree >= target."""
    return -(-target * binom(n, d) // binom(k, d))


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _Solver:
    def __init__(self, p: SearchProblem):
        self.p = p
        n, k, d = p.n, p.k, p.d
        self.cands = list(iter_masks(n, k))
        self.dsets = list(iter_masks(n, d))
        dindex = {m: i for i, m in enumerate(self.dsets)}
        self.contains = [0] * len(self.dsets)
        self.cand_dsets = []
        for t, m in enumerate(self.cands):
            ds = [dindex[s] for s in sub_masks_of_size(m, d)]
            self.cand_dsets.append(ds)
            for s in ds:
                self.contains[s] |= 1 << t
        self.meets = []
        for a in self.cands:
            row = 0
            for t, b in enumerate(self.cands):
                if a & b:
                    row |= 1 << t
            self.meets.append(row)
        self.floor = size_floor(n, k, d, p.target)
        self.deg = [0] * len(self.dsets)
        self.chosen: list[int] = []
        self.nodes = 0
        self.cuts = {"size_floor": 0, "degree_reach": 0, "symmetry": 0, "ekr_ceiling": 0}
        self.deadline = None if p.time_limit is None else time.monotonic() + p.time_limit

    def run(self) -> Status:
        p = self.p
        if p.n >= 2 * p.k and self.floor > binom(p.n - 1, p.k - 1):
            self.cuts["ekr_ceiling"] += 1
            return Status.EXHAUSTED
        full = (1 << len(self.cands)) - 1
        try:
            found = self._rec(0, full, [])
        except _Capped:
            return Status.CAPPED
        return Status.WITNESS if found else Status.EXHAUSTED

    def _tick(self):
        self.nodes += 1
        if self.p.node_limit is not None and self.nodes > self.p.node_limit:
            raise _Capped
        if self.deadline is not None and self.nodes & 255 == 0 and time.monotonic() > self.deadline:
            raise _Capped

    def _rec(self, depth: int, pool: int, excluded: list[int]) -> bool:
        self._tick()
        target = self.p.target
        deg = self.deg
        low = -1
        for s, v in enumerate(deg):
            if v < target:
                low = s
                break
        if low < 0:
            return True
        if len(self.chosen) + pool.bit_count() < self.floor:
            self.cuts["size_floor"] += 1
            return False
        contains = self.contains
        for s in range(low, len(deg)):
            v = deg[s]
            if v < target and v + (pool & contains[s]).bit_count() < target:
                self.cuts["degree_reach"] += 1
                return False

        branch = pool & contains[low]
        cells = None
        track = self.p.symmetry_pruning and depth <= self.p.symmetry_depth
        if track:
            cells = self._cells(low, excluded)
        local = pool
        skipped: list[int] = []
        for t in _bits(branch):
            local &= ~(1 << t)
            if cells is not None and not _is_leader(self.cands[t], cells):
                self.cuts["symmetry"] += 1
                skipped.append(t)
                continue
            self.chosen.append(t)
            for s in self.cand_dsets[t]:
                deg[s] += 1
            child_excluded = excluded + skipped if track else excluded
            found = self._rec(depth + 1, local & self.meets[t], child_excluded)
            if found:
                return True
            for s in self.cand_dsets[t]:
                deg[s] -= 1
            self.chosen.pop()
            skipped.append(t)
        return False

    def _cells(self, low: int, excluded: list[int]) -> list[list[int]]:
        fixed = [self.dsets[low]] + [self.cands[t] for t in self.chosen] + \
                [self.cands[t] for t in excluded]
        groups: dict = {}
        for x in range(self.p.n):
            sig = tuple(m >> x & 1 for m in fixed)
            groups.setdefault(sig, []).append(x)
        return list(groups.values())


def _is_leader(mask: int, cells: list[list[int]]) -> bool:
    """True iff, in every cell, the mask uses an initial segment of the cell."""
    for cell in cells:
        seen_gap = False
        for x in cell:
            if mask >> x & 1:
                if seen_gap:
                    return False
            else:
                seen_gap = True
    return True


def search_min_degree(p: SearchProblem) -> SearchOutcome:
    start = time.monotonic()
    solver = _Solver(p)
    status = solver.run()
    witness = None
    if status is Status.WITNESS:
        witness = SetFamily(p.n, tuple(solver.cands[t] for t in solver.chosen))
        if not is_intersecting(witness) or witness.uniform_k != p.k \
                or min_degree(witness, p.d)[0] < p.target:
            raise InconsistencyError("search returned a family that fails re-verification")
    return SearchOutcome(status, witness, solver.nodes, dict(solver.cuts), time.monotonic() - start)


def scan_theorem(n_max: int = 10, k_max: int = 5, d_max: int = 2, max_candidates: int = 40,
                 symmetry_pruning: bool = True, time_limit: float | None = None) -> list[dict]:
    """Search every (n, k, d) with n >= 2k, 2 <= d < k, C(n, k) <= max_candidates
    for an intersecting family beating the 1-star's minimum d-degree.

    A witness inside k > d >= 2, n >= 2k+2d-3 would contradict the theorem and
    raises :class:`InconsistencyError`.
    """
    from .families import ekr_degree_bound
    from .lemmas import in_theorem_range

    rows = []
    for k in range(3, k_max + 1):
        for d in range(2, min(d_max, k - 1) + 1):
            for n in range(2 * k, n_max + 1):
                if binom(n, k) > max_candidates:
                    continue
                bound = ekr_degree_bound(n, k, d)
                p = SearchProblem(n, k, d, bound + 1, symmetry_pruning=symmetry_pruning,
                                  time_limit=time_limit)
                out = search_min_degree(p)
                in_range = in_theorem_range(n, k, d)
                if in_range and out.status is Status.WITNESS:
                    raise InconsistencyError(f"witness beating the bound inside the theorem range at {(n, k, d)}")
                rows.append({"n": n, "k": k, "d": d, "target": bound + 1, "in_range": in_range,
                             "note": None if in_range else "outside theorem range",
                             **out.to_json()})
    return rows
