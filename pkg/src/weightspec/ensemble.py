"""Deterministic Monte Carlo over random [n,k]_q generator matrices.

Each sample i draws its own seed as ``substream_seed(master_seed, i)``
and is evaluated independently, so the run is embarrassingly parallel:
the records, the aggregates and the serialized summary are bit-identical
for a fixed config no matter how many worker processes are used.

Rank-deficient samples are kept, not resampled: the probability space is
all matrices, and conditioning on full rank happens at aggregation time
(``fraction_q_conditional``).  Their weight counts use the message
multiplicity q^(k-rank).

Per-sample checks:

* a1 -- low-weight gap: no nonzero message maps to weight <= w_low.
* a2 -- MDS band: for every w in [n-k+5, n] the count N_w lies within
  the relative band 3n/q around the closed-form MDS count (inclusive,
  exact integer comparison; requires q >= n, otherwise skipped).
* concentration -- whether |N_w - mu_w| >= mu_w / n, per tracked weight.

Aggregation is exact (integer sums, Fraction means/variances); floating
point only enters the advisory sampling-slack comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

from .codes import (
    DEFAULT_ENUMERATION_CAP,
    LinearCode,
    MessageWeightCounts,
    message_weight_counts,
)
from .formulas import (
    ExpectedSpectrum,
    MdsSpectrum,
    QSmallerThanNError,
    Thresholds,
    clamp_unit,
    expected_spectrum,
    factor_prime_power,
    mds_spectrum,
    theorem_bound,
    thresholds,
)
from .gf import FieldSpec, field_create
from .linalg import MatrixGF, random_matrix, vec_mat
from .rng import SeedStream, substream_seed

EXHAUSTIVE_MATRIX_CAP = 10**7


class InfeasibleError(ValueError):
    """Config requires enumerating more words than the cap allows."""


class TooLargeForExhaustiveError(ValueError):
    """Exhaustive matrix-space audit exceeds the hard cap."""


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    k: int
    p: int
    m: int
    samples: int
    master_seed: int
    strategy: str = "auto"
    cap: int = DEFAULT_ENUMERATION_CAP
    check_a1: bool = True
    check_a2: bool = True
    check_concentration: bool = True
    tracked_weights: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.samples < 1:
            raise ValueError("need at least one sample")
        if self.strategy not in ("auto", "direct", "dual"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        object.__setattr__(self, "master_seed", self.master_seed & ((1 << 64) - 1))
        if self.tracked_weights is not None:
            bad = [w for w in self.tracked_weights if not 1 <= w <= self.n]
            if bad:
                raise ValueError(f"tracked weights out of range: {bad}")

    @property
    def q(self) -> int:
        return self.p**self.m


@dataclass(frozen=True)
class SampleRecord:
    index: int
    seed: int
    rank: int
    full_rank: bool
    a1: bool | None
    a2: bool | None
    dmin: int | None
    counts: tuple[int, ...]
    concentration: tuple[bool, ...] | None


@dataclass
class EnsembleSummary:
    config: EnsembleConfig
    samples: int
    full_rank_count: int
    a1_count: int | None
    a2_count: int | None
    q_joint_count: int
    fraction_full_rank: Fraction
    fraction_a1: Fraction | None
    fraction_a2: Fraction | None
    fraction_q_conditional: Fraction | None
    fraction_q_joint: Fraction
    thresholds: Thresholds | None
    theorem_bound_raw: Fraction
    theorem_bound_clamped: Fraction
    mean: dict[int, Fraction] = dc_field(default_factory=dict)
    variance: dict[int, Fraction] = dc_field(default_factory=dict)
    mu: dict[int, Fraction] = dc_field(default_factory=dict)
    var_bound: dict[int, Fraction] = dc_field(default_factory=dict)
    concentration_events: dict[int, int] = dc_field(default_factory=dict)
    chebyshev_bound: dict[int, Fraction] = dc_field(default_factory=dict)
    violations: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# per-sample checks
# ---------------------------------------------------------------------------

def check_a1(counts: MessageWeightCounts, th: Thresholds | None) -> bool:
    """True iff no message hits any weight 1..w_low (vacuous if w_low < 1)."""
    if th is None or th.a1_vacuous:
        return True
    return all(counts.counts[w] == 0 for w in range(1, min(th.w_low, counts.n) + 1))


def check_a2(counts: MessageWeightCounts, mds: MdsSpectrum, n: int, k: int, q: int) -> bool:
    """True iff lambda_w (q-3n) <= q N_w <= lambda_w (q+3n) for all w >= n-k+5.

    Inclusive bounds, exact integers; the lower side is automatic when
    q <= 3n.  Vacuous when n-k+5 > n.
    """
    if q < n:
        raise QSmallerThanNError(f"MDS band needs q >= n, got q={q}, n={n}")
    w_up = n - k + 5
    if w_up > n:
        return True
    for w in range(w_up, n + 1):
        lam, nw = mds.counts[w], counts.counts[w]
        if q * nw > lam * (q + 3 * n):
            return False
        if q > 3 * n and q * nw < lam * (q - 3 * n):
            return False
    return True


def concentration_check(counts: MessageWeightCounts, expected: ExpectedSpectrum, w: int) -> bool:
    """Whether the deviation event |N_w - mu_w| >= mu_w / n occurred."""
    mu = expected.mu[w]
    if mu <= 0:
        raise ValueError(f"mu_{w} must be positive")
    return abs(counts.counts[w] - mu) >= mu / expected.n


# ---------------------------------------------------------------------------
# the harness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Context:
    field: FieldSpec
    thresholds: Thresholds | None
    mds: MdsSpectrum | None
    expected: ExpectedSpectrum
    tracked: tuple[int, ...]


def _build_context(cfg: EnsembleConfig) -> _Context:
    field = field_create(cfg.p, cfg.m)
    n, k, q = cfg.n, cfg.k, field.q
    needed = {
        "direct": q**k,
        "dual": q ** (n - k),
        "auto": min(q**k, q ** (n - k)),
    }[cfg.strategy]
    if needed > cfg.cap:
        raise InfeasibleError(
            f"strategy {cfg.strategy!r} needs {needed} words/sample, cap is {cfg.cap}"
        )
    th = thresholds(n, k, q) if k < n else None
    mds = mds_spectrum(n, k, q) if (cfg.check_a2 and q >= n) else None
    tracked = cfg.tracked_weights or tuple(range(1, n + 1))
    return _Context(field, th, mds, expected_spectrum(n, k, q), tracked)


def evaluate_sample(cfg: EnsembleConfig, ctx: _Context, index: int) -> SampleRecord:
    """Draw and fully evaluate sample `index`; pure given (cfg, index)."""
    n, k, q = cfg.n, cfg.k, ctx.field.q
    seed = substream_seed(cfg.master_seed, index)
    G = random_matrix(ctx.field, k, n, SeedStream(seed))
    code = LinearCode(G)
    strategy = cfg.strategy
    if strategy == "dual" and code.rank < k:
        strategy = "direct"  # dual path needs full rank
    counts = message_weight_counts(code, strategy, cfg.cap)
    if sum(counts.counts[1:]) != q**k - q ** (k - code.rank):
        raise RuntimeError("message-count total mismatch; this is a bug")
    full = code.rank == k
    dmin = next((w for w in range(1, n + 1) if counts.counts[w]), None)
    if full and dmin is not None and dmin > n - k + 1:
        raise RuntimeError("Singleton bound violated; this is a bug")
    a1 = check_a1(counts, ctx.thresholds) if cfg.check_a1 else None
    a2 = (
        check_a2(counts, ctx.mds, n, k, q)
        if (cfg.check_a2 and ctx.mds is not None)
        else None
    )
    conc = (
        tuple(concentration_check(counts, ctx.expected, w) for w in ctx.tracked)
        if cfg.check_concentration
        else None
    )
    return SampleRecord(
        index=index,
        seed=seed,
        rank=code.rank,
        full_rank=full,
        a1=a1,
        a2=a2,
        dmin=dmin,
        counts=counts.counts,
        concentration=conc,
    )


_WORKER_CTX: dict[EnsembleConfig, _Context] = {}


def _evaluate_block(args: tuple[EnsembleConfig, int, int]) -> list[SampleRecord]:
    cfg, lo, hi = args
    ctx = _WORKER_CTX.get(cfg)
    if ctx is None:
        ctx = _WORKER_CTX[cfg] = _build_context(cfg)
    return [evaluate_sample(cfg, ctx, i) for i in range(lo, hi)]


def run_ensemble(
    cfg: EnsembleConfig, jobs: int = 1
) -> tuple[EnsembleSummary, list[SampleRecord]]:
    """Evaluate all samples (optionally in parallel) and aggregate exactly.

    The output is a pure function of the config: identical for any
    `jobs`.  A rank-deficient sample under extreme parameters can still
    exceed the cap on its direct fallback; that error propagates.
    """
    ctx = _build_context(cfg)
    M = cfg.samples
    if jobs <= 1 or M < 4:
        records = [evaluate_sample(cfg, ctx, i) for i in range(M)]
    else:
        from concurrent.futures import ProcessPoolExecutor

        jobs = min(jobs, M)
        block = max(1, -(-M // (jobs * 4)))
        blocks = [(cfg, lo, min(lo + block, M)) for lo in range(0, M, block)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_evaluate_block, blocks))
        records = [rec for part in parts for rec in part]
        records.sort(key=lambda r: r.index)
    return summarize(cfg, records, ctx), records


def summarize(
    cfg: EnsembleConfig, records: list[SampleRecord], ctx: _Context | None = None
) -> EnsembleSummary:
    """Exact aggregation of per-sample records into an EnsembleSummary."""
    if ctx is None:
        ctx = _build_context(cfg)
    n, q, M = cfg.n, cfg.q, len(records)
    full_count = sum(1 for r in records if r.full_rank)
    a1_on = cfg.check_a1
    a2_on = cfg.check_a2 and ctx.mds is not None
    a1_count = sum(1 for r in records if r.a1) if a1_on else None
    a2_count = sum(1 for r in records if r.a2) if a2_on else None

    def q_ok(r: SampleRecord) -> bool:
        return (r.a1 is not False) and (r.a2 is not False)

    q_joint = sum(1 for r in records if r.full_rank and q_ok(r))
    raw = theorem_bound(n, q)
    summary = EnsembleSummary(
        config=cfg,
        samples=M,
        full_rank_count=full_count,
        a1_count=a1_count,
        a2_count=a2_count,
        q_joint_count=q_joint,
        fraction_full_rank=Fraction(full_count, M),
        fraction_a1=Fraction(a1_count, M) if a1_count is not None else None,
        fraction_a2=Fraction(a2_count, M) if a2_count is not None else None,
        fraction_q_conditional=Fraction(q_joint, full_count) if full_count else None,
        fraction_q_joint=Fraction(q_joint, M),
        thresholds=ctx.thresholds,
        theorem_bound_raw=raw,
        theorem_bound_clamped=clamp_unit(raw),
    )

    for w in range(1, n + 1):
        s1 = sum(r.counts[w] for r in records)
        s2 = sum(r.counts[w] * r.counts[w] for r in records)
        summary.mean[w] = Fraction(s1, M)
        summary.variance[w] = Fraction(M * s2 - s1 * s1, M * M)
        summary.mu[w] = ctx.expected.mu[w]
        summary.var_bound[w] = ctx.expected.var_bound[w]

    violations: list[str] = []
    if cfg.check_concentration:
        slack = 3 * math.sqrt(math.log(M) / M) if M > 1 else 3.0
        for pos, w in enumerate(ctx.tracked):
            events = sum(1 for r in records if r.concentration[pos])
            summary.concentration_events[w] = events
            cheb = min(Fraction(1), n * n * (2 * q + 1) / ctx.expected.mu[w])
            summary.chebyshev_bound[w] = cheb
            if events / M > float(cheb) + slack:
                violations.append(f"concentration frequency above bound at w={w}")
    for w in range(1, n + 1):
        if summary.variance[w] > summary.var_bound[w]:
            violations.append(f"empirical variance above (2q+1) mu at w={w}")
    if (
        summary.fraction_q_conditional is not None
        and summary.fraction_q_conditional < summary.theorem_bound_clamped
    ):
        violations.append("conditional Q fraction below theorem bound")
    summary.violations = tuple(violations)
    return summary


def full_rank_montecarlo(
    n: int, k: int, p: int, m: int, samples: int, master_seed: int
) -> Fraction:
    """Fraction of full-rank draws among `samples` seeded random matrices.

    Rank-only fast path (no spectra); uses the same per-index seed
    derivation as `run_ensemble`, so estimates are reproducible.
    """
    from .linalg import mat_rank

    field = field_create(p, m)
    full = 0
    for i in range(samples):
        G = random_matrix(field, k, n, SeedStream(substream_seed(master_seed, i)))
        if mat_rank(G) == k:
            full += 1
    return Fraction(full, samples)


# ---------------------------------------------------------------------------
# exhaustive pairwise-independence audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndependenceReport:
    q: int
    k: int
    n: int
    w: int
    matrices: int
    independent_pairs: int
    independent_failures: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    dependent_pairs: int
    dependent_pairs_breaking_product: int

    @property
    def ok(self) -> bool:
        return not self.independent_failures


def independence_audit(q: int, k: int, n: int, w: int) -> IndependenceReport:
    """Exhaustively verify the product rule for weight-hit events.

    Over ALL q^(kn) matrices G, the events {weight(x G) = w} for two
    nonzero messages multiply exactly whenever neither message is a
    scalar multiple of the other.  Scalar-multiple pairs share the event
    verbatim (weights are scaling-invariant), so they are reported
    separately as the pairs where the product rule may break.
    """
    p, m = factor_prime_power(q)
    if q ** (k * n) > EXHAUSTIVE_MATRIX_CAP:
        raise TooLargeForExhaustiveError(
            f"q^(kn) = {q}^{k * n} exceeds {EXHAUSTIVE_MATRIX_CAP}"
        )
    F = field_create(p, m)
    messages = [x for x in product(range(q), repeat=k) if any(x)]
    hits: dict[tuple[int, ...], list[int]] = {x: [] for x in messages}
    total = 0
    for flat in product(range(q), repeat=k * n):
        rows = tuple(flat[i * n : (i + 1) * n] for i in range(k))
        G = MatrixGF(F, rows)
        for x in messages:
            word = vec_mat(x, G)
            if sum(1 for e in word if e) == w:
                hits[x].append(total)
        total += 1

    def is_multiple(x1: tuple[int, ...], x2: tuple[int, ...]) -> bool:
        return any(tuple(F.mul(a, e) for e in x1) == x2 for a in range(1, q))

    indep_pairs = 0
    indep_failures = []
    dep_pairs = 0
    dep_breaking = 0
    hit_sets = {x: set(ix) for x, ix in hits.items()}
    for i, x1 in enumerate(messages):
        for x2 in messages[i + 1 :]:
            both = len(hit_sets[x1] & hit_sets[x2])
            product_holds = both * total == len(hits[x1]) * len(hits[x2])
            if is_multiple(x1, x2):
                dep_pairs += 1
                if not product_holds:
                    dep_breaking += 1
            else:
                indep_pairs += 1
                if not product_holds:
                    indep_failures.append((x1, x2))
    return IndependenceReport(
        q, k, n, w,
        matrices=total,
        independent_pairs=indep_pairs,
        independent_failures=tuple(indep_failures),
        dependent_pairs=dep_pairs,
        dependent_pairs_breaking_product=dep_breaking,
    )
