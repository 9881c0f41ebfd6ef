"""Exact verifiers for the inequalities and identities behind the d-degree
EKR bound, and an end-to-end check of the bound on concrete families.

Every verifier returns a :class:`~ekrdeg.report.LemmaReport`.  Verifiers
refuse parameters outside the range their statement covers instead of
extrapolating.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .families import (
    SetFamily,
    degree_vector,
    ekr_degree_bound,
    is_intersecting,
    min_degree,
    require_intersecting,
)
from .report import LemmaReport, Sense, Verdict
from .scheme import (
    InconsistencyError,
    disjoint_coefficient,
    disjoint_pair_sum,
    kneser_eigenvalue,
    spectral_profile,
)
from .subsets import binom, falling


class HypothesisError(ValueError):
    """A family fails a lemma's hypothesis; ``witness`` shows where."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _main_range(n: int, k: int, d: int) -> None:
    _need(k > d >= 1, f"need k > d >= 1, got k={k}, d={d}")
    _need(n >= 2 * k + 1, f"need n >= 2k+1, got n={n}, k={k}")


def hoffman_constant(n: int, k: int, d: int) -> Fraction:
    """(k-d)/(n-k) C(n-k, k)."""
    return Fraction(k - d, n - k) * binom(n - k, k)


# -- binomial comparison -------------------------------------------------------

def binomial_compare(n: int, k: int, d: int) -> LemmaReport:
    """(k-d)/(n-k) C(n-k,k) >= C(n-k-d-1, k-d-1), tight only at n = 2k+1."""
    _main_range(n, k, d)
    lhs = hoffman_constant(n, k, d)
    rhs = binom(n - k - d - 1, k - d - 1)
    rep = LemmaReport("lemma31", {"n": n, "k": k, "d": d}, lhs, rhs, Sense.GE)
    tight = rep.verdict is Verdict.EQUALITY
    rep.details["tight_iff_n_eq_2k_plus_1"] = tight == (n == 2 * k + 1)
    if not rep.details["tight_iff_n_eq_2k_plus_1"]:
        rep.verdict = Verdict.FAIL
    return rep


# -- coefficients of the two spectral inequalities -------------------------------

@dataclass(frozen=True)
class CoefficientSet:
    n: int
    k: int
    d: int
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    c: Fraction
    f: Fraction
    g: Fraction

    def to_json(self) -> dict:
        from .report import fraction_str

        return {
            "n": self.n, "k": self.k, "d": self.d,
            "a": [fraction_str(x) for x in self.a],
            "b": [fraction_str(x) for x in self.b],
            "c": fraction_str(self.c), "f": fraction_str(self.f), "g": fraction_str(self.g),
        }


def coefficients(n: int, k: int, d: int) -> CoefficientSet:
    _main_range(n, k, d)
    c = hoffman_constant(n, k, d)
    a = tuple(c + (-1) ** i * binom(n - k - i, k - i) for i in range(d + 1))
    b = tuple(Fraction(disjoint_coefficient(n, k, d, i)) for i in range(d + 1))
    bound = binom(n - d - 1, k - d - 1)
    f = Fraction(2 * bound * binom(n - d, d) * binom(k, d))
    g = Fraction(bound ** 2 * binom(n, d) * binom(n - d, d))
    return CoefficientSet(n, k, d, a, b, c, f, g)


def claim1(n: int, k: int, d: int) -> LemmaReport:
    """b_0 - a_0 b_1 / a_1 = n(k-d) / (k(n-d)) * b_0 > 0."""
    cs = coefficients(n, k, d)
    a, b = cs.a, cs.b
    lhs = b[0] - a[0] * b[1] / a[1]
    rhs = Fraction(n * (k - d), k * (n - d)) * b[0]
    rep = LemmaReport("claim1", {"n": n, "k": k, "d": d}, lhs, rhs, Sense.EQ)
    rep.details = {"positive": lhs > 0, "a1_negative": a[1] < 0, "b1_negative": b[1] < 0,
                   "a1_closed_form": a[1] == -Fraction(d, n - k) * binom(n - k, k)}
    if not all(rep.details.values()):
        rep.verdict = Verdict.FAIL
    return rep


def claim3(n: int, k: int, d: int) -> LemmaReport:
    """f - b_1 c / a_1 = (2kn - dk - dn) / (k(n-d)) C(n-d-1,k-d-1) C(n-d,d) C(k,d)."""
    cs = coefficients(n, k, d)
    lhs = cs.f - cs.b[1] * cs.c / cs.a[1]
    rhs = (Fraction(2 * k * n - d * k - d * n, k * (n - d))
           * binom(n - d - 1, k - d - 1) * binom(n - d, d) * binom(k, d))
    return LemmaReport("claim3", {"n": n, "k": k, "d": d}, lhs, rhs, Sense.EQ)


def _S(n: int, k: int, i: int) -> Fraction:
    return Fraction(falling(k - 1, i - 1), falling(n - k - 1, i - 1))


def _T(n: int, k: int, d: int, i: int) -> Fraction:
    return Fraction(falling(d - 1, i - 1) ** 2 * falling(n - k - 1, i - 1),
                    falling(n - d - 1, i - 1) ** 2 * falling(k - 1, i - 1))


def claim2(n: int, k: int, d: int, i: int) -> LemmaReport:
    """b_i <= a_i b_1 / a_1 for 2 <= i <= d.

    Even i needs n >= 2k+1; odd i needs n >= 2k+2d-3.
    """
    _main_range(n, k, d)
    _need(2 <= i <= d, f"need 2 <= i <= d, got i={i}, d={d}")
    if i % 2:
        _need(n >= 2 * k + 2 * d - 3, f"odd i needs n >= 2k+2d-3, got n={n}")
    cs = coefficients(n, k, d)
    a, b = cs.a, cs.b
    rep = LemmaReport("claim2", {"n": n, "k": k, "d": d, "i": i},
                      b[i], a[i] * b[1] / a[1], Sense.LE)
    S, T = _S(n, k, i), _T(n, k, d, i)
    sign = (-1) ** i
    rep.details = {
        "a_ratio_falling_form": a[i] / -a[1] == (k - d + sign * k * S) / d,
        "b_ratio_falling_form": b[i] / -b[1] == sign * T,
        "S_exceeds_T": S > T,
    }
    if not all(rep.details.values()):
        rep.verdict = Verdict.FAIL
    return rep


# -- alternating binomial sum and the technical inequality ---------------------

def hahn_identity(n: int, k: int, d: int, j: int) -> LemmaReport:
    """sum_{i=j}^d (-1)^i C(k-i,d-i)^2 C(k-j,k-i) C(n-i-j,k-i)
       = (-1)^j C(k-j,d-j) C(n-d-j,d-j) C(n-d-j,k-d)."""
    _need(0 <= j <= d < k and 2 * k <= n, f"need 0 <= j <= d < k <= n/2, got n={n} k={k} d={d} j={j}")
    lhs = sum((-1) ** i * binom(k - i, d - i) ** 2 * binom(k - j, k - i) * binom(n - i - j, k - i)
              for i in range(j, d + 1))
    rhs = disjoint_coefficient(n, k, d, j)
    return LemmaReport("hahn", {"n": n, "k": k, "d": d, "j": j}, lhs, rhs, Sense.EQ)


def technical_cubic(k: int, d: int) -> int:
    return ((4 * d - 12) * k ** 3 + (4 * d * d - 30 * d + 66) * k ** 2
            - (2 * d ** 3 + 3 * d * d - 53 * d + 114) * k + (6 * d ** 3 - 15 * d * d - 15 * d + 60))


def technical_inequality(n: int, k: int, d: int, i: int) -> LemmaReport:
    """k S_i(n) - d T_i(n) <= k - d for k > d >= i >= 3, n >= 2k+2d-3.

    Besides the inequality itself, ``details`` records each step of the
    reduction to the base case n = 2k+2d-3 and then to i = 3.
    """
    _need(k > d >= i >= 3, f"need k > d >= i >= 3, got k={k} d={d} i={i}")
    base = 2 * k + 2 * d - 3
    _need(n >= base, f"need n >= 2k+2d-3 = {base}, got n={n}")

    def val(m, t):
        return k * _S(m, k, t) - d * _T(m, k, d, t)

    S, T = _S(n, k, i), _T(n, k, d, i)
    S1, T1 = _S(n + 1, k, i), _T(n + 1, k, d, i)
    checks = {
        "0<T<S<=1": 0 < T < S <= 1,
        "S_ratio_closed_form": S1 / S == Fraction(n - k - i + 1, n - k),
        "T_ratio_closed_form": T1 / T == Fraction(n - d - i + 1, n - d) ** 2 * Fraction(n - k, n - k - i + 1),
        "ratio_monotone": S1 / S <= T1 / T,
        "step_nonincreasing": val(n + 1, i) <= val(n, i),
    }

    # base case, descending in i
    def alpha(t):
        return Fraction(falling(k - 1, t - 1), falling(base - k - 1, t - 1))

    def beta(t):
        return Fraction(falling(d - 1, t - 1), falling(base - d - 1, t - 1))

    if i < d:
        checks["base_decreasing_in_i"] = val(base, i + 1) <= val(base, i)
        checks["alpha_minus_beta_decreasing"] = alpha(i + 1) - beta(i + 1) <= alpha(i) - beta(i)
        checks["beta_over_alpha_decreasing"] = beta(i + 1) / alpha(i + 1) < beta(i) / alpha(i)
    checks["third_order_compare"] = ((base - 2 * k) * (k - 1) * (k - 2)
                                     >= (base - 2 * d) * (d - 1) * (d - 2))
    a3, b3 = alpha(3), beta(3)
    checks["one_minus_alpha3_closed_form"] = 1 - a3 == Fraction(
        (base - 3) * (base - 2 * k), (base - k - 1) * (base - k - 2))
    checks["alpha3_minus_beta3_closed_form"] = a3 - b3 == Fraction(
        (k - d) * (base - 3) * ((k + d - 3) * base - 2 * d * k + 4),
        (base - k - 1) * (base - k - 2) * (base - d - 1) * (base - d - 2))
    checks["i3_reduction"] = d * (a3 - b3) * (1 + b3 / a3) <= (k - d) * (1 - a3)
    cubic = technical_cubic(k, d)
    checks["cubic_matches_reduction"] = cubic == (
        (base - 2 * k) * (k - 1) * (base - d - 1) * (base - d - 2)
        - d * (2 * k - 4) * ((k + d - 3) * base - 2 * d * k + 4))
    checks["cubic_nonnegative"] = cubic >= 0
    lin_k = 6 * d ** 3 - 33 * d * d + 69 * d - 60
    lin_c = 6 * d ** 3 - 15 * d * d - 15 * d + 60
    checks["linear_bound_coefficients_nonnegative"] = lin_k >= 0 and lin_c >= 0 \
        and 4 * d - 12 >= 0 and 4 * d * d - 30 * d + 66 >= 0
    checks["cubic_at_least_linear_bound"] = cubic >= lin_k * k + lin_c

    rep = LemmaReport("technical", {"n": n, "k": k, "d": d, "i": i},
                      val(n, i), k - d, Sense.LE, details=dict(checks, S=S, T=T, cubic=cubic))
    if not all(checks.values()):
        rep.verdict = Verdict.FAIL
    return rep


# -- the two spectral inequalities on a concrete family ------------------------

def hoffman_slack(F: SetFamily, d: int, cap=None) -> LemmaReport:
    """Evaluate -cap |F| + sum_{i<=d} (cap + lambda_i) ||h_i||^2 (claimed <= 0).

    ``cap`` defaults to (k-d)/(n-k) C(n-k,k); any value at least
    C(n-k-d-1, k-d-1) keeps the inequality valid.
    """
    require_intersecting(F)
    n, k = F.n, F.k
    _main_range(n, k, d)
    floor = binom(n - k - d - 1, k - d - 1)
    cap = hoffman_constant(n, k, d) if cap is None else Fraction(cap)
    _need(cap >= floor, f"cap {cap} below the admissible floor {floor}")
    prof = spectral_profile(F)
    value = -cap * len(F) + sum((cap + kneser_eigenvalue(n, k, i)) * prof.norms[i]
                                for i in range(d + 1))
    return LemmaReport("lemma32", {"n": n, "k": k, "d": d, "cap": cap}, 0, value, Sense.GE,
                       details={"profile": list(prof.norms)})


def degree_quadratic_routes(F: SetFamily, d: int) -> tuple[int, Fraction]:
    """Both sides of: sum over ordered disjoint d-set pairs of
    (d_S - B)(d_T - B)  ==  sum_j b_j ||h_j||^2 - f |F| + g,  B = C(n-d-1, k-d-1).

    Holds for every k-uniform family with n >= 2k; no hypothesis needed.
    """
    n, k = F.n, F.k
    _need(0 <= d < k and n >= 2 * k, f"need 0 <= d < k <= n/2, got n={n} k={k} d={d}")
    bound = binom(n - d - 1, k - d - 1)
    shifted = degree_vector(F, d).dense() - bound
    raw = disjoint_pair_sum(n, d, shifted)
    prof = spectral_profile(F)
    spectral = (sum(disjoint_coefficient(n, k, d, j) * prof.norms[j] for j in range(d + 1))
                - 2 * bound * binom(n - d, d) * binom(k, d) * len(F)
                + bound ** 2 * binom(n, d) * binom(n - d, d))
    return raw, spectral


def degree_quadratic(F: SetFamily, d: int) -> LemmaReport:
    """Check 0 <= sum_j b_j ||h_j||^2 - f|F| + g for a family with delta_d >= C(n-d-1,k-d-1).

    Strict when delta_d exceeds the bound.  The raw double sum over disjoint
    pairs must agree with the spectral value exactly.
    """
    n, k = F.n, F.k
    bound = ekr_degree_bound(n, k, d)
    delta, arg = min_degree(F, d)
    if delta < bound:
        raise HypothesisError(f"d-set {arg} has degree {delta} < {bound}", arg)
    raw, spectral = degree_quadratic_routes(F, d)
    if raw != spectral:
        raise InconsistencyError(f"degree quadratic: raw {raw} != spectral {spectral}")
    strict = delta > bound
    rep = LemmaReport("lemma33", {"n": n, "k": k, "d": d}, 0, spectral,
                      Sense.LT if strict else Sense.LE,
                      details={"raw": raw, "min_degree": delta, "bound": bound})
    return rep


# -- final quadratic in |F| --------------------------------------------------------

def factorization_constant(n: int, k: int, d: int) -> Fraction:
    """Leading coefficient of the combined quadratic in m = |F|."""
    return (Fraction(n * (k - d), k * (n - d)) * binom(k, d) * binom(n - d, d)
            * binom(n - d, k - d) / binom(n, k))


def final_factorization(n: int, k: int, d: int, m) -> tuple[Fraction, Fraction]:
    """(combined quadratic at m, (m - C(n-1,k-1)) (m - C(n-d-1,k-d-1) C(n,d)/C(k,d)))."""
    _main_range(n, k, d)
    m = Fraction(m)
    cs = coefficients(n, k, d)
    lin = claim3(n, k, d).rhs
    combined = factorization_constant(n, k, d) * m * m - lin * m + cs.g
    r1 = binom(n - 1, k - 1)
    r2 = Fraction(binom(n - d - 1, k - d - 1) * binom(n, d), binom(k, d))
    return combined, (m - r1) * (m - r2)


def factorization_check(n: int, k: int, d: int) -> LemmaReport:
    """Combined quadratic == kappa * factored form, kappa > 0, as polynomials in m.

    Two quadratics agreeing at three points agree everywhere; the roots
    C(n-1,k-1) and C(n-d-1,k-d-1) C(n,d)/C(k,d) are checked as well.
    """
    kappa = factorization_constant(n, k, d)
    points = [Fraction(-1), Fraction(-2), Fraction(-3)]
    ratios = []
    for m in points:
        comb_v, fact_v = final_factorization(n, k, d, m)
        ratios.append(comb_v / fact_v)
    r1 = binom(n - 1, k - 1)
    r2 = Fraction(binom(n - d - 1, k - d - 1) * binom(n, d), binom(k, d))
    roots_ok = all(final_factorization(n, k, d, r) == (0, 0) for r in (r1, r2))
    rep = LemmaReport("factorization", {"n": n, "k": k, "d": d}, ratios[0], kappa, Sense.EQ)
    rep.details = {"constant_ratio": len(set(ratios)) == 1, "kappa_positive": kappa > 0,
                   "roots": roots_ok, "root_ekr": r1, "root_double_count": r2}
    if not all(v for v in rep.details.values() if isinstance(v, bool)):
        rep.verdict = Verdict.FAIL
    return rep


# -- the theorem on a concrete family ---------------------------------------------

def in_theorem_range(n: int, k: int, d: int) -> bool:
    return k > d >= 2 and n >= 2 * k + 2 * d - 3


def theorem_check(F: SetFamily, d: int) -> LemmaReport:
    """delta_d(F) <= C(n-d-1, k-d-1) for an intersecting k-uniform family.

    Inside k > d >= 2, n >= 2k+2d-3 the verdict is pass/fail and ``details``
    carries the chain of inequalities; elsewhere both quantities are
    reported with verdict OUT_OF_RANGE.
    """
    n, k = F.n, F.k
    require_intersecting(F)
    bound = ekr_degree_bound(n, k, d)
    delta, arg = min_degree(F, d)
    params = {"n": n, "k": k, "d": d}
    if not in_theorem_range(n, k, d):
        return LemmaReport("theorem", params, delta, bound, Sense.LE, verdict=Verdict.OUT_OF_RANGE,
                           witness=arg, details={"note": "out of theorem range"})
    trace = {
        "lemma32": hoffman_slack(F, d),
        "ekr_size": LemmaReport("ekr", params, len(F), binom(n - 1, k - 1), Sense.LE),
        "double_count_floor": LemmaReport(
            "double_count", params, Fraction(delta * binom(n, d), binom(k, d)), len(F), Sense.LE),
    }
    if delta >= bound:
        trace["lemma33"] = degree_quadratic(F, d)
    comb_v, fact_v = final_factorization(n, k, d, len(F))
    trace["factored_at_size"] = fact_v
    verdict = Verdict.PASS if delta <= bound else Verdict.FAIL
    if not all(r.ok for r in trace.values() if isinstance(r, LemmaReport)):
        verdict = Verdict.FAIL
    return LemmaReport("theorem", params, delta, bound, Sense.LE, verdict=verdict,
                       witness=arg, details=trace)


# -- grid scans ------------------------------------------------------------------

def scan_lemma31(kmax: int = 25, nmax: int = 80, kmin: int = 2) -> Iterator[LemmaReport]:
    for k in range(max(2, kmin), kmax + 1):
        for d in range(1, k):
            for n in range(2 * k + 1, nmax + 1):
                yield binomial_compare(n, k, d)


def scan_hahn(nmax: int = 40, kmax: int | None = None, kmin: int = 1) -> Iterator[LemmaReport]:
    kmax = nmax // 2 if kmax is None else kmax
    for n in range(2, nmax + 1):
        for k in range(max(1, kmin), min(kmax, n // 2) + 1):
            for d in range(k):
                for j in range(d + 1):
                    yield hahn_identity(n, k, d, j)


def scan_technical(kmax: int = 20, nmax: int = 80, kmin: int = 4) -> Iterator[LemmaReport]:
    for k in range(max(4, kmin), kmax + 1):
        for d in range(3, k):
            for i in range(3, d + 1):
                for n in range(2 * k + 2 * d - 3, nmax + 1):
                    yield technical_inequality(n, k, d, i)


def scan_claims(kmax: int = 20, nmax: int = 80, kmin: int = 2) -> Iterator[LemmaReport]:
    for k in range(max(2, kmin), kmax + 1):
        for d in range(1, k):
            for n in range(2 * k + 1, nmax + 1):
                yield claim1(n, k, d)
                yield claim3(n, k, d)
                for i in range(2, d + 1):
                    if i % 2 == 0 or n >= 2 * k + 2 * d - 3:
                        yield claim2(n, k, d, i)


def scan_factorization(kmax: int = 15, nmax: int = 60, kmin: int = 2) -> Iterator[LemmaReport]:
    for k in range(max(2, kmin), kmax + 1):
        for d in range(1, k):
            for n in range(2 * k + 1, nmax + 1):
                yield factorization_check(n, k, d)


def family_checks(F: SetFamily, d: int) -> list[LemmaReport]:
    """Hoffman value (if intersecting) and the two-route degree quadratic on F."""
    out = []
    n, k = F.n, F.k
    if is_intersecting(F) and n >= 2 * k + 1 and k > d >= 1:
        out.append(hoffman_slack(F, d))
    if 0 <= d < k and n >= 2 * k:
        raw, spectral = degree_quadratic_routes(F, d)
        out.append(LemmaReport("lemma33_routes", {"n": n, "k": k, "d": d, "size": len(F)},
                               raw, spectral, Sense.EQ))
    return out
