"""Exact counts of correctable erasure patterns and code rates.

All formulas are evaluated on Python integers and :class:`fractions.Fraction`;
floating point appears only in rates and in presentation rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from spreadcodes.gf import smallest_prime_power_at_least

ExactCount = int | Fraction


def round_half_away(x: Fraction | int) -> int:
    """Nearest integer, ties away from zero."""
    x = Fraction(x)
    sign = -1 if x < 0 else 1
    return sign * math.floor(abs(x) + Fraction(1, 2))


def log10_exact(x: Fraction | int) -> float:
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of a non-positive number")
    return math.log10(x.numerator) - math.log10(x.denominator)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dim subspaces of F_q^n."""
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


# --- REC -----------------------------------------------------------------------

def rec_count(k: int, n: int) -> int:
    """2^{kn} - (2^n - 1)^k: patterns leaving at least one row untouched."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return 2 ** (k * n) - (2 ** n - 1) ** k


# --- CEC -----------------------------------------------------------------------

def block_count(k: int, r: int = 0) -> int:
    """Correctable patterns of one (k-r) x k block: at most k-r-1 erased columns.

    For r = 0 this is 2^{k^2} - (2^k - 1)^k.
    """
    if not 0 <= r < k:
        raise ValueError(f"need 0 <= r < k, got r={r}, k={k}")
    return sum(comb(k, j) * (2 ** (k - r) - 1) ** j for j in range(k - r))


def e_ell(N: int, m: int, ell: int) -> int:
    """N^m (1 - ((N-1)/N)^{ell+1}), an integer for 0 <= ell <= m-1."""
    if not 0 <= ell <= m - 1:
        raise ValueError(f"need 0 <= ell <= m-1, got ell={ell}, m={m}")
    value = Fraction(N) ** m * (1 - Fraction(N - 1, N) ** (ell + 1))
    assert value.denominator == 1, "e_ell must be integral"
    return int(value)


def e_ell_sum(N: int, m: int, ell: int) -> int:
    """Binomial-sum form: sum_{t=1}^{ell+1} C(ell+1, t) (N-1)^{ell+1-t} N^{m-ell-1}."""
    return sum(comb(ell + 1, t) * (N - 1) ** (ell + 1 - t) * N ** (m - ell - 1) for t in range(1, ell + 2))


def e_avg(q: int, k: int, m: int, N: int) -> Fraction:
    """Closed form of the code-average of e_ell."""
    n = m * k
    inner = Fraction((q ** k - 1) * (N - 1), N) + 1
    return Fraction(N ** m, q ** n - 1) * (q ** n - inner ** m)


def e_avg_weighted(q: int, k: int, m: int, N: int) -> Fraction:
    """Weighted average (1/(q^n-1)) sum_ell C(m, ell+1) (q^k-1)^{ell+1} e_ell."""
    n = m * k
    total = sum(comb(m, ell + 1) * (q ** k - 1) ** (ell + 1) * e_ell(N, m, ell) for ell in range(m))
    return Fraction(total, q ** n - 1)


@dataclass(frozen=True)
class CecCounts:
    N: int
    e_ell: int | None
    e_avg: Fraction

    @property
    def e_avg_rounded(self) -> int:
        return round_half_away(self.e_avg)


def cec_counts(q: int, k: int, m: int, ell: int | None = None) -> CecCounts:
    N = block_count(k)
    return CecCounts(N, None if ell is None else e_ell(N, m, ell), e_avg(q, k, m, N))


def cec_counts_deletions(q: int, k: int, m: int, r: int, ell: int | None = None) -> CecCounts:
    """Counts over (k-r) x n patterns after r deletions; r = 0 gives :func:`cec_counts`."""
    if not 0 <= r < k:
        raise ValueError(f"need 0 <= r < k, got r={r}, k={k}")
    N = block_count(k, r)
    return CecCounts(N, None if ell is None else e_ell(N, m, ell), e_avg(q, k, m, N))


def hybrid_counts(q: int | None, n: int, n_prime: int, k: int, r: int = 0) -> tuple[int, int]:
    """(e_H, e_{H_r}): patterns with at most n-n' erased columns."""
    if not k < n_prime < n:
        raise ValueError(f"need k < n' < n, got k={k}, n'={n_prime}, n={n}")
    if not 0 <= r < k:
        raise ValueError(f"need 0 <= r < k, got r={r}, k={k}")

    def count(rows: int) -> int:
        return sum(comb(n, j) * (2 ** rows - 1) ** j for j in range(n - n_prime + 1))

    return count(k), count(k - r)


# --- rates -----------------------------------------------------------------------

@dataclass(frozen=True)
class RateValue:
    """``log_base(argument) / denominator``, evaluated from the exact integers."""

    argument: int
    base: int
    denominator: int
    expression: str

    @property
    def value(self) -> float:
        return math.log(self.argument) / math.log(self.base) / self.denominator

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return f"{self.value:.6f}"


def spread_size(q: int, k: int, n: int) -> int:
    if n % k:
        raise ValueError(f"spreads need k | n, got k={k}, n={n}")
    return (q ** n - 1) // (q ** k - 1)


def spread_rate(q: int, k: int, n: int) -> RateValue:
    return RateValue(spread_size(q, k, n), q, n * k, f"log_{q}((q^{n}-1)/(q^{k}-1))/({n}*{k})")


def hybrid_rate(q: int, n: int, n_prime: int, k: int) -> RateValue:
    if not k < n_prime < n:
        raise ValueError(f"need k < n' < n, got k={k}, n'={n_prime}, n={n}")
    return RateValue(gaussian_binomial(n_prime, k, q), q, n * k, f"log_{q}([{n_prime} choose {k}]_{q})/({n}*{k})")


def lifted_gabidulin_dimension(n_prime: int, k: int, r: int) -> int:
    """log_q of the size of a lifted Gabidulin code in G_q(k, n') with subspace distance 2(r+1)."""
    cols = n_prime - k
    if not 0 <= r < min(k, cols):
        raise ValueError(f"need r < min(k, n'-k), got r={r}, k={k}, n'-k={cols}")
    if cols >= k:
        return cols * (k - r)
    return k * (cols - r)


def hybrid_deletions_rate(q: int, n: int, n_prime: int, k: int, r: int) -> RateValue:
    dim = lifted_gabidulin_dimension(n_prime, k, r)
    return RateValue(q ** dim, q, n * k, f"{dim}/({n}*{k})")


def rate(code) -> RateValue:
    """Rate of a :class:`SpreadCode` or :class:`HybridCode` object."""
    from spreadcodes.hybrid import HybridCode
    from spreadcodes.spread import SpreadCode

    if isinstance(code, SpreadCode):
        return spread_rate(code.q, code.k, code.n)
    if isinstance(code, HybridCode):
        return hybrid_rate(code.q, code.n, code.n_prime, code.k)
    raise TypeError(f"no rate formula for {type(code).__name__}")


@dataclass(frozen=True)
class NPrimeChoice:
    exact: Fraction
    value: int
    candidates: tuple[int, ...]
    rounded: bool


def _choose(exact: Fraction, n: int, k: int) -> NPrimeChoice:
    lo, hi = k + 1, n - 1
    cands = tuple(sorted({min(max(v, lo), hi) for v in (math.floor(exact), math.ceil(exact))}))
    value = min(max(round_half_away(exact), lo), hi)
    return NPrimeChoice(exact, value, cands, Fraction(value) != exact)


def equal_rate_n_prime(n: int, k: int) -> NPrimeChoice:
    """n' = (n-k)/k + k, so that hybrid and spread rates roughly agree."""
    return _choose(Fraction(n - k, k) + k, n, k)


def equal_rate_n_prime_deletions(n: int, k: int, r: int) -> NPrimeChoice:
    if n >= k * (k - r + 1):
        exact = Fraction(n - k, k - r) + k
    else:
        exact = Fraction(n - k, k) + k + r
    return _choose(exact, n, k)


# --- asymptotic / ratio checks ----------------------------------------------------

@dataclass
class CheckReport:
    ratio_bound: dict[tuple[int, int], bool]
    rec_bounds: dict[tuple[int, int], bool]
    limit_deviation: dict[int, list[tuple[int, float]]]
    limit_decreasing: dict[int, bool]

    @property
    def ok(self) -> bool:
        return all(self.ratio_bound.values()) and all(self.rec_bounds.values()) and all(self.limit_decreasing.values())


def limit_ratio(q: int, k: int, m: int) -> Fraction:
    """e_avg / (m N^{m-1}), which tends to 1 as k grows."""
    N = block_count(k)
    return e_avg(q, k, m, N) / (m * Fraction(N) ** (m - 1))


def ratio_and_limit_checks(
    q: int = 2,
    ks=(2, 3),
    ms=range(2, 7),
    limit_ks=range(2, 7),
    limit_ms=(2, 3),
) -> CheckReport:
    ratio, bounds = {}, {}
    for k in ks:
        N = block_count(k)
        for m in ms:
            n = m * k
            r = rec_count(k, n)
            lhs = Fraction(r) / e_avg(q, k, m, N)
            rhs = k * N * Fraction(2 ** ((k - 1) * k), N) ** m
            ratio[(k, m)] = lhs <= rhs
            bounds[(k, m)] = 2 ** ((k - 1) * n) < r < k * 2 ** ((k - 1) * n)
    deviation, decreasing = {}, {}
    for m in limit_ms:
        devs = [(k, abs(limit_ratio(q, k, m) - 1)) for k in limit_ks]
        deviation[m] = [(k, float(d)) for k, d in devs]
        decreasing[m] = all(a[1] > b[1] for a, b in zip(devs, devs[1:]))
    return CheckReport(ratio, bounds, deviation, decreasing)


# --- tables -------------------------------------------------------------------------

def hybrid_field_size(n: int) -> int:
    """Smallest prime power exceeding n - 1."""
    return smallest_prime_power_at_least(n)


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    n_prime: int
    q_hybrid: int
    rate_spread: RateValue
    rate_hybrid: RateValue
    e_avg: Fraction
    e_hybrid: int

    def as_dict(self, digits: int = 3) -> dict:
        return {
            "n": self.n,
            "n_prime": self.n_prime,
            "q_hybrid": self.q_hybrid,
            "rate_spread": f"{self.rate_spread.value:.{digits}f}",
            "rate_hybrid": f"{self.rate_hybrid.value:.{digits}f}",
            "e_avg": round_half_away(self.e_avg),
            "e_H": self.e_hybrid,
        }


def comparison_table(extra: int = 1, ns=(6, 8, 10, 12, 14), k: int = 2) -> list[ComparisonRow]:
    """Spread (q=2) vs hybrid codes with n' = n/2 + extra, k = 2."""
    rows = []
    for n in ns:
        m = n // k
        n_prime = n // 2 + extra
        qh = hybrid_field_size(n)
        rows.append(
            ComparisonRow(
                n,
                n_prime,
                qh,
                spread_rate(2, k, n),
                hybrid_rate(qh, n, n_prime, k),
                cec_counts(2, k, m).e_avg,
                hybrid_counts(qh, n, n_prime, k)[0],
            )
        )
    return rows


def deletions_table(k: int = 3, r: int = 1, ns=(9, 12, 15, 18)) -> list[ComparisonRow]:
    """Spread vs hybrid codes after r deletions; both n' neighbours listed when the
    equal-rate n' is fractional."""
    rows = []
    for n in ns:
        m = n // k
        qh = hybrid_field_size(n)
        choice = equal_rate_n_prime_deletions(n, k, r)
        for n_prime in choice.candidates:
            rows.append(
                ComparisonRow(
                    n,
                    n_prime,
                    qh,
                    spread_rate(2, k, n),
                    hybrid_deletions_rate(qh, n, n_prime, k, r),
                    cec_counts_deletions(2, k, m, r).e_avg,
                    hybrid_counts(qh, n, n_prime, k, r)[1],
                )
            )
    return rows


@dataclass(frozen=True)
class ProportionRow:
    kind: str
    q: int
    k: int
    n: int
    n_prime: int | None
    rate: RateValue
    count: ExactCount

    @property
    def log10_proportion(self) -> float:
        return log10_exact(Fraction(self.count) / 2 ** (self.k * self.n))

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "q": self.q,
            "k": self.k,
            "n": self.n,
            "n_prime": "" if self.n_prime is None else self.n_prime,
            "rate": f"{self.rate.value:.5f}",
            "log10_proportion": f"{self.log10_proportion:.2f}",
            "order_of_magnitude": math.floor(self.log10_proportion),
        }


def proportion_table(q: int = 29, k: int = 10, n: int = 25, n_prime: int = 13, spread_ks=range(6, 11), max_m: int = 10_000) -> list[ProportionRow]:
    """A hybrid code and, for every spread dimension, the shortest spread over the
    same field whose rate exceeds the hybrid rate."""
    hyb_rate = hybrid_rate(q, n, n_prime, k)
    rows = [ProportionRow("hybrid", q, k, n, n_prime, hyb_rate, hybrid_counts(q, n, n_prime, k)[0])]
    target = hyb_rate.value
    for ks in spread_ks:
        # spread rates stay below 1/k for every m
        if 1 / ks <= target:
            continue
        for m in range(2, max_m + 1):
            rs = spread_rate(q, ks, m * ks)
            if rs.value > target:
                N = block_count(ks)
                rows.append(ProportionRow("spread", q, ks, m * ks, None, rs, e_avg(q, ks, m, N)))
                break
    return rows


def counts_series(k: int, ms=range(2, 9), q: int = 2) -> list[dict]:
    """REC count and CEC average count against n = m k."""
    out = []
    for m in ms:
        n = m * k
        avg = cec_counts(q, k, m).e_avg
        out.append({"k": k, "n": n, "rec_count": rec_count(k, n), "e_avg": round_half_away(avg), "e_avg_exact": str(avg)})
    return out
