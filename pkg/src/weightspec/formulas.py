"""Closed-form weight-spectrum quantities, bounds and thresholds.

Everything that can be exact is exact (arbitrary-precision integers and
`fractions.Fraction`); floating point appears only in the log-domain
Stirling check, the low-weight threshold and the regime report, where
the quantities are genuinely transcendental.

The central objects:

* ``mds_spectrum``      -- the unique weight distribution of an MDS code.
* ``expected_spectrum`` -- mean counts for a uniformly random generator
                           matrix, with the (2q+1)-factor variance bound.
* ``ratio_bounds`` / ``theta_expansion`` / ``mu_sandwich`` /
  ``stirling_upper_bound`` -- the inequality chain comparing the two.
* ``full_rank_prob``    -- probability that a random k x n matrix has
                           full rank (exact product, plus the looser
                           product that omits the zero-first-row factor).
* ``thresholds`` / ``theorem_bound`` / ``regime_check`` -- the integer
  weight windows and the coverage bound used by the ensemble harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class QSmallerThanNError(ValueError):
    """MDS-spectrum formulas need n <= q; refusing to evaluate beyond."""


class WeightOutOfRangeError(ValueError):
    """Weight outside the domain of the requested bound."""


# ---------------------------------------------------------------------------
# prime powers
# ---------------------------------------------------------------------------

def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p^m and p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = q
    for f in range(2, int(math.isqrt(q)) + 1):
        if q % f == 0:
            p = f
            break
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, m


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
        return True
    except ValueError:
        return False


def prime_powers_in(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 2), hi + 1) if is_prime_power(q)]


# ---------------------------------------------------------------------------
# closed-form spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MdsSpectrum:
    """Exact MDS weight distribution: zeros below D = n-k+1, lambda_w above."""

    n: int
    k: int
    q: int
    counts: tuple[int, ...]

    @property
    def D(self) -> int:
        return self.n - self.k + 1


@dataclass(frozen=True)
class ExpectedSpectrum:
    """Mean counts mu_w for a uniform random generator, plus (2q+1) mu_w."""

    n: int
    k: int
    q: int
    mu: tuple[Fraction, ...]
    var_bound: tuple[Fraction, ...]


def _validate_nkq(n: int, k: int, q: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    factor_prime_power(q)


def _mds_lambda(n: int, k: int, q: int, w: int) -> int:
    """Count of weight-w words in an [n,k]_q MDS code, for w >= n-k+1."""
    D = n - k + 1
    s = sum(
        (-1) ** j * math.comb(w - 1, j) * q ** (w - D - j) for j in range(w - D + 1)
    )
    return math.comb(n, w) * (q - 1) * s


def mds_spectrum(n: int, k: int, q: int) -> MdsSpectrum:
    """The weight distribution shared by every [n,k]_q MDS code (needs n <= q)."""
    _validate_nkq(n, k, q)
    if q < n:
        raise QSmallerThanNError(
            f"q={q} < n={n}: the alternating sum is not guaranteed positive"
        )
    D = n - k + 1
    counts = [0] * (n + 1)
    counts[0] = 1
    for w in range(D, n + 1):
        counts[w] = _mds_lambda(n, k, q, w)
    return MdsSpectrum(n, k, q, tuple(counts))


def expected_spectrum(n: int, k: int, q: int) -> ExpectedSpectrum:
    """mu_w = C(n,w) (q-1)^w (q^k - 1) / q^n, exactly."""
    _validate_nkq(n, k, q)
    scale = Fraction(q**k - 1, q**n)
    mu = [Fraction(0)]
    for w in range(1, n + 1):
        mu.append(math.comb(n, w) * (q - 1) ** w * scale)
    vb = [(2 * q + 1) * f for f in mu]
    return ExpectedSpectrum(n, k, q, tuple(mu), tuple(vb))


# ---------------------------------------------------------------------------
# bounds relating the two spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioBounds:
    """Exact lambda_w / mu_w together with its proven enclosing interval."""

    n: int
    k: int
    q: int
    w: int
    lower: Fraction
    upper: Fraction
    ratio: Fraction
    holds: bool


def ratio_bounds(n: int, k: int, q: int, w: int) -> RatioBounds:
    """(1-1/q)(1-(w-1)/q) <= lambda_w/mu_w <= 1/(1-w/q), checked exactly."""
    _validate_nkq(n, k, q)
    if q < n:
        raise QSmallerThanNError(f"bounds require q >= n, got q={q}, n={n}")
    D = n - k + 1
    if not D <= w <= n:
        raise WeightOutOfRangeError(f"need {D} <= w <= {n}, got w={w}")
    if w >= q:
        raise WeightOutOfRangeError(f"upper bound 1/(1-w/q) needs w < q, got w={w}")
    lam = _mds_lambda(n, k, q, w)
    mu = math.comb(n, w) * (q - 1) ** w * Fraction(q**k - 1, q**n)
    ratio = Fraction(lam) / mu
    lower = (1 - Fraction(1, q)) * (1 - Fraction(w - 1, q))
    upper = Fraction(q, q - w)
    return RatioBounds(n, k, q, w, lower, upper, ratio, lower <= ratio <= upper)


@dataclass(frozen=True)
class ThetaExpansion:
    """The alternating series lambda_w = (C(n,w) q^w / q^(n-k)) (1-1/q) theta(w).

    ``terms`` are the grouped nonnegative differences whose sum equals
    1 - theta; ``term_indices`` their leading odd j; ``ratios`` the
    successive-coefficient ratios w/(j+1) - 1 that certify t_j >= 0 for
    q >= n.  The final term is the bare C(w-1,j)/q^j when w - D is odd
    (an odd count of terms after the leading 1 cannot be fully paired).
    """

    n: int
    k: int
    q: int
    w: int
    theta: Fraction
    terms: tuple[Fraction, ...]
    term_indices: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    terms_nonnegative: bool
    theta_within_bounds: bool
    ratios_bounded: bool
    lambda_identity: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.terms_nonnegative
            and self.theta_within_bounds
            and self.ratios_bounded
            and self.lambda_identity
        )


def theta_expansion(n: int, k: int, q: int, w: int) -> ThetaExpansion:
    """Exact evaluation of theta(w) = sum_j (-1)^j C(w-1,j) q^-j, with checks."""
    _validate_nkq(n, k, q)
    if q < n:
        raise QSmallerThanNError(f"bounds require q >= n, got q={q}, n={n}")
    D = n - k + 1
    if not D <= w <= n:
        raise WeightOutOfRangeError(f"need {D} <= w <= {n}, got w={w}")
    top = w - D
    a = [Fraction(math.comb(w - 1, j), q**j) for j in range(top + 1)]
    theta = sum(((-1) ** j * aj for j, aj in enumerate(a)), Fraction(0))

    terms, idxs, ratios = [], [], []
    for j in range(1, top + 1, 2):
        idxs.append(j)
        ratios.append(Fraction(w, j + 1) - 1)
        terms.append(a[j] - a[j + 1] if j + 1 <= top else a[j])
    assert theta == 1 - sum(terms, Fraction(0))

    lam = _mds_lambda(n, k, q, w)
    normalizer = Fraction(math.comb(n, w) * q**w, q ** (n - k))
    return ThetaExpansion(
        n, k, q, w,
        theta=theta,
        terms=tuple(terms),
        term_indices=tuple(idxs),
        ratios=tuple(ratios),
        terms_nonnegative=all(t >= 0 for t in terms),
        theta_within_bounds=(1 - Fraction(w - 1, q)) <= theta <= 1,
        ratios_bounded=all(abs(r) <= n for r in ratios),
        lambda_identity=(lam == normalizer * (1 - Fraction(1, q)) * theta),
    )


@dataclass(frozen=True)
class SandwichCheck:
    """Per-side truth of (1-1/q)(1-w/q) <= mu_w / (C(n,w) q^w / q^(n-k)) <= 1."""

    n: int
    k: int
    q: int
    w: int
    ratio: Fraction
    lower: Fraction
    lower_holds: bool
    upper_holds: bool


def mu_sandwich(n: int, k: int, q: int, w: int) -> SandwichCheck:
    _validate_nkq(n, k, q)
    if not 1 <= w <= n:
        raise WeightOutOfRangeError(f"need 1 <= w <= {n}, got w={w}")
    mu = math.comb(n, w) * (q - 1) ** w * Fraction(q**k - 1, q**n)
    normalizer = Fraction(math.comb(n, w) * q**w, q ** (n - k))
    ratio = mu / normalizer
    lower = (1 - Fraction(1, q)) * (1 - Fraction(w, q))
    return SandwichCheck(n, k, q, w, ratio, lower, lower <= ratio, ratio <= 1)


def stirling_upper_bound(n: int, k: int, q: int, w: int) -> bool:
    """mu_w <= 4 e n * exp(n H(w/n)) * q^(w-(n-k)), H the natural-log entropy.

    Compared in the log domain (monotone-equivalent) with a 1e-9 guard;
    H(0) = H(1) = 0 at the endpoints.
    """
    _validate_nkq(n, k, q)
    if not 1 <= w <= n:
        raise WeightOutOfRangeError(f"need 1 <= w <= {n}, got w={w}")
    mu = math.comb(n, w) * (q - 1) ** w * Fraction(q**k - 1, q**n)
    x = w / n
    entropy = 0.0 if w == n else -x * math.log(x) - (1 - x) * math.log(1 - x)
    lhs = math.log(mu.numerator) - math.log(mu.denominator)
    rhs = math.log(4 * math.e * n) + n * entropy + (w - (n - k)) * math.log(q)
    return lhs <= rhs + 1e-9


# ---------------------------------------------------------------------------
# full-rank probability
# ---------------------------------------------------------------------------

def full_rank_prob(n: int, k: int, q: int, variant: str = "exact") -> Fraction:
    """Probability that a uniform random k x n matrix over GF(q) has rank k.

    `exact` is the true probability prod_{j=0}^{k-1} (1 - q^(j-n)).
    `paper` omits the j = 0 factor (the first row being zero), i.e.
    prod_{j=1}^{k-1}, which is the commonly printed chain that starts
    from P(one row is independent) = 1.  Both are >= 1 - 2/q^(n-k).
    """
    _validate_nkq(n, k, q)
    start = {"exact": 0, "paper": 1}.get(variant)
    if start is None:
        raise ValueError(f"unknown variant {variant!r}")
    prob = Fraction(1)
    for j in range(start, k):
        prob *= 1 - Fraction(q**j, q**n)
    return prob


# ---------------------------------------------------------------------------
# thresholds, coverage bound, regime report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Thresholds:
    """Weight windows for the low-weight gap (a1) and MDS band (a2) checks."""

    n: int
    k: int
    q: int
    w_low_real: float
    w_low: int
    w_up: int
    a1_vacuous: bool
    a2_vacuous: bool
    a2_band: Fraction


def thresholds(n: int, k: int, q: int) -> Thresholds:
    """w_low = floor(n - k - 2n/ln q), w_up = n - k + 5, band width 3n/q."""
    if not (n > k >= 1):
        raise ValueError(f"need n > k >= 1, got n={n}, k={k}")
    if q < 2:
        raise ValueError(f"need q >= 2, got q={q}")
    w_low_real = n - k - 2 * n / math.log(q)
    w_low = math.floor(w_low_real)
    w_up = n - k + 5
    return Thresholds(
        n, k, q,
        w_low_real=w_low_real,
        w_low=w_low,
        w_up=w_up,
        a1_vacuous=w_low < 1,
        a2_vacuous=w_up > n,
        a2_band=Fraction(3 * n, q),
    )


def theorem_bound(n: int, q: int) -> Fraction:
    """1 - 18q/n^2, the claimed asymptotic coverage fraction (may be < 0)."""
    if n < 1:
        raise ValueError("need n >= 1")
    return 1 - Fraction(18 * q, n * n)


def clamp_unit(x: Fraction) -> Fraction:
    return min(Fraction(1), max(Fraction(0), x))


@dataclass(frozen=True)
class RegimeReport:
    """Whether (n, k, q) sits in the super-linear-field-size regime."""

    n: int
    k: int
    q: int
    lower: float
    upper: float
    rate: Fraction
    interval_empty: bool
    in_regime: bool
    q_over_n: Fraction


def regime_check(n: int, k: int, q: int) -> RegimeReport:
    """Membership of k/n in [1/sqrt(ln n), 1 - 1/sqrt(ln n)], natural log."""
    if n < 4:
        raise ValueError(f"need n >= 4, got n={n}")
    lo = 1 / math.sqrt(math.log(n))
    hi = 1 - lo
    rate = Fraction(k, n)
    empty = lo > hi
    return RegimeReport(
        n, k, q,
        lower=lo,
        upper=hi,
        rate=rate,
        interval_empty=empty,
        in_regime=(not empty) and lo <= float(rate) <= hi,
        q_over_n=Fraction(q, n),
    )


# ---------------------------------------------------------------------------
# deterministic inequality sweep
# ---------------------------------------------------------------------------

@dataclass
class SweepReport:
    nmax: int
    qmax: int
    checks: dict[str, int]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def total_checks(self) -> int:
        return sum(self.checks.values())


def bounds_sweep(nmax: int = 12, qmax: int = 64) -> SweepReport:
    """Run every exact bound over n in [4, nmax], 1 <= k < n, primes powers
    n <= q <= qmax, and all weights in range; record any violation."""
    checks = {
        "lambda_positive": 0,
        "lambda_sum": 0,
        "mu_sum": 0,
        "ratio_bounds": 0,
        "theta_expansion": 0,
        "mu_sandwich": 0,
        "stirling": 0,
        "full_rank_lower": 0,
        "full_rank_exact_le_paper": 0,
    }
    failures: list[str] = []

    def run(name: str, where: str, ok: bool) -> None:
        checks[name] += 1
        if not ok:
            failures.append(f"{name} failed at {where}")

    for n in range(4, nmax + 1):
        for q in prime_powers_in(n, qmax):
            for k in range(1, n):
                where = f"(n={n}, k={k}, q={q})"
                D = n - k + 1
                ms = mds_spectrum(n, k, q)
                es = expected_spectrum(n, k, q)
                run("lambda_positive", where,
                    all(ms.counts[w] > 0 for w in range(D, n + 1)))
                run("lambda_sum", where, sum(ms.counts[1:]) == q**k - 1)
                run("mu_sum", where,
                    sum(es.mu, Fraction(0))
                    == Fraction((q**n - 1) * (q**k - 1), q**n))
                fr_exact = full_rank_prob(n, k, q, "exact")
                fr_paper = full_rank_prob(n, k, q, "paper")
                run("full_rank_lower", where,
                    fr_exact >= 1 - Fraction(2, q ** (n - k)))
                run("full_rank_exact_le_paper", where, fr_exact <= fr_paper)
                for w in range(D, n + 1):
                    run("theta_expansion", f"{where} w={w}",
                        theta_expansion(n, k, q, w).all_ok)
                    if w < q:
                        run("ratio_bounds", f"{where} w={w}",
                            ratio_bounds(n, k, q, w).holds)
                for w in range(1, n + 1):
                    s = mu_sandwich(n, k, q, w)
                    run("mu_sandwich", f"{where} w={w}",
                        s.lower_holds and s.upper_holds)
                    run("stirling", f"{where} w={w}",
                        stirling_upper_bound(n, k, q, w))
    return SweepReport(nmax, qmax, checks, failures)
