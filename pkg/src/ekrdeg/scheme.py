"""Spectral engine for the Kneser graph KG(n, k) inside the Johnson scheme.

The squared norms of the projections of an indicator vector onto the common
eigenspaces E_0, ..., E_k are recovered from intersection-size moments

    h^T (W_ik^T W_ik) h = sum_m C(m, i) N_m,

where W_ik is the i-vs-k inclusion matrix and N_m counts ordered pairs of
members meeting in m points.  W_ik^T W_ik acts on E_j as the scalar
``wtw_eigenvalue(n, k, i, j)``, which vanishes for j > i, so the moments
determine the norms through a triangular system with positive pivots
C(n - 2i, k - i).  Nothing of size C(n, k) is ever materialised.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .families import NonUniformError, SetFamily, degree_vector, intersection_counts
from .subsets import binom, iter_masks


class InconsistencyError(RuntimeError):
    """Two routes to the same exact quantity disagree."""


def _check_scheme(n: int, k: int) -> None:
    if k < 0 or n < 2 * k:
        raise ValueError(f"Kneser scheme needs n >= 2k >= 0, got n={n}, k={k}")


def kneser_eigenvalue(n: int, k: int, i: int) -> int:
    """Eigenvalue of the KG(n, k) adjacency matrix on E_i: (-1)^i C(n-k-i, k-i)."""
    _check_scheme(n, k)
    if not 0 <= i <= k:
        raise ValueError(f"need 0 <= i <= k, got i={i}")
    return (-1) ** i * binom(n - k - i, k - i)


def eigenspace_dim(n: int, i: int) -> int:
    if i < 0 or 2 * i > n:
        raise ValueError(f"need 0 <= i <= n/2, got i={i}, n={n}")
    return binom(n, i) - binom(n, i - 1)


def wtw_eigenvalue(n: int, k: int, i: int, j: int) -> int:
    """Eigenvalue of W_{i,k}^T W_{i,k} on E_j: C(k-j, k-i) C(n-i-j, k-i)."""
    if not (0 <= i <= k and 0 <= j <= k):
        raise ValueError(f"need 0 <= i, j <= k, got i={i}, j={j}, k={k}")
    return binom(k - j, k - i) * binom(n - i - j, k - i)


def _uniform(F: SetFamily) -> int:
    if F.uniform_k is None:
        raise NonUniformError("spectral operations need a non-empty uniform family")
    return F.uniform_k


def moment(F: SetFamily, i: int, counts: list[int] | None = None) -> int:
    """h^T W_{i,k}^T W_{i,k} h, i.e. the sum over ordered member pairs of C(|S & T|, i)."""
    k = _uniform(F)
    if not 0 <= i <= k:
        raise ValueError(f"need 0 <= i <= k, got i={i}")
    if counts is None:
        counts = intersection_counts(F)
    return sum(binom(m, i) * c for m, c in enumerate(counts))


@dataclass(frozen=True)
class SpectralProfile:
    n: int
    k: int
    norms: tuple[Fraction, ...]
    family_size: int

    def __getitem__(self, j: int) -> Fraction:
        return self.norms[j]

    def __len__(self):
        return len(self.norms)

    def invariant_checks(self) -> dict:
        N = binom(self.n, self.k)
        return {
            "nonnegative": all(x >= 0 for x in self.norms),
            "sum_is_size": sum(self.norms) == self.family_size,
            "first_is_size_squared_over_total": self.norms[0] == Fraction(self.family_size ** 2, N),
        }


def spectral_profile(F: SetFamily, counts: list[int] | None = None) -> SpectralProfile:
    k = _uniform(F)
    n = F.n
    _check_scheme(n, k)
    if counts is None:
        counts = intersection_counts(F)
    norms: list[Fraction] = []
    for i in range(k + 1):
        acc = Fraction(moment(F, i, counts))
        for j in range(i):
            acc -= wtw_eigenvalue(n, k, i, j) * norms[j]
        norms.append(acc / wtw_eigenvalue(n, k, i, i))
    return SpectralProfile(n, k, tuple(norms), len(F))


def kneser_quadratic(F: SetFamily, profile: SpectralProfile | None = None) -> tuple[int, Fraction]:
    """h^T A h two ways: ordered disjoint member pairs, and the eigenvalue sum."""
    k = _uniform(F)
    counts = intersection_counts(F)
    if profile is None:
        profile = spectral_profile(F, counts)
    combinatorial = counts[0]
    spectral = sum(kneser_eigenvalue(F.n, k, i) * x for i, x in enumerate(profile.norms))
    if spectral != combinatorial:
        raise InconsistencyError(f"h^T A h: pair count {combinatorial} != spectral {spectral}")
    return combinatorial, spectral


def disjoint_coefficient(n: int, k: int, d: int, j: int) -> int:
    """Coefficient of ||h_j||^2 in D_d^T M D_d (M = disjointness of d-sets)."""
    return (-1) ** j * binom(k - j, d - j) * binom(n - d - j, d - j) * binom(n - d - j, k - d)


def disjoint_pair_sum(n: int, d: int, values: np.ndarray) -> int:
    """sum of values[S] * values[T] over ordered pairs of disjoint d-subsets.

    ``values`` is indexed by the colex rank of the d-subsets of [n].
    """
    values = np.asarray(values, dtype=np.int64)
    masks = np.fromiter(iter_masks(n, d), dtype=np.uint64, count=binom(n, d))
    rows = np.flatnonzero(values)
    total = 0
    step = max(1, 4_000_000 // max(1, len(masks)))
    for lo in range(0, len(rows), step):
        idx = rows[lo:lo + step]
        disjoint = (masks[idx, None] & masks[None, :]) == 0
        row_sums = disjoint.astype(np.int64) @ values
        total += sum(int(a) * int(b) for a, b in zip(values[idx], row_sums))
    return total


def disjoint_quadratic_form(F: SetFamily, d: int,
                            profile: SpectralProfile | None = None) -> tuple[int, Fraction]:
    """D_d^T M D_d two ways: directly over disjoint d-set pairs, and spectrally."""
    k = _uniform(F)
    n = F.n
    _check_scheme(n, k)
    if not 0 <= d < k:
        raise ValueError(f"need 0 <= d < k, got d={d}")
    direct = disjoint_pair_sum(n, d, degree_vector(F, d).dense())
    if profile is None:
        profile = spectral_profile(F)
    spectral = sum(disjoint_coefficient(n, k, d, j) * profile.norms[j] for j in range(d + 1))
    if direct != spectral:
        raise InconsistencyError(f"D^T M D: direct {direct} != spectral {spectral}")
    return direct, spectral


# -- explicit matrices (small parameters only) ------------------------------------

def inclusion_matrix(n: int, i: int, j: int) -> np.ndarray:
    """W_{i,j}: rows i-subsets, columns j-subsets of [n] (colex), entry [S <= T]."""
    rows = list(iter_masks(n, i))
    cols = list(iter_masks(n, j))
    return np.array([[int(r & c == r) for c in cols] for r in rows], dtype=np.int64)


def kneser_adjacency(n: int, k: int) -> np.ndarray:
    v = list(iter_masks(n, k))
    return np.array([[int(not a & b) for b in v] for a in v], dtype=np.int64)


def intersection_matrix(n: int, k: int, fn) -> np.ndarray:
    """Matrix on k-subsets with (S, T) entry fn(|S & T|)."""
    v = list(iter_masks(n, k))
    return np.array([[fn((a & b).bit_count()) for b in v] for a in v], dtype=object)
