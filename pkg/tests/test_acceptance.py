"""Acceptance suite: ten numbered criteria, one printed line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Every tolerance is pinned here; the statistical criteria use fixed
master seeds so the whole suite is reproducible bit for bit.
"""

import itertools
import math
from fractions import Fraction

import pytest

from weightspec.codes import LinearCode, reed_solomon_generator, spectrum_direct, spectrum_dual
from weightspec.ensemble import (
    EnsembleConfig,
    full_rank_montecarlo,
    independence_audit,
    run_ensemble,
)
from weightspec.formulas import (
    bounds_sweep,
    expected_spectrum,
    full_rank_prob,
    mds_spectrum,
    theorem_bound,
    thresholds,
)
from weightspec.gf import field_create
from weightspec.linalg import random_matrix
from weightspec.rng import SeedStream
from weightspec.serialize import records_csv, summary_json

SEED_MEAN_RUN = 1001       # criterion 3/4 ensemble (6,3,8)
SEED_FULLRANK_MC = 1002    # criterion 5 Monte Carlo (4,2,5)
SEED_A1_RUN = 1003         # criterion 7 ensemble (16,4,25)
SEED_A2_RUN = 1004         # criterion 8 ensemble (9,5,32)
SEED_EQUIV = 1005          # criterion 2 random codes
SEED_DETERMINISM = 1006    # criterion 10 config


def _report(crit: str, detail: str) -> None:
    print(f"ACCEPTANCE {crit}: PASS - {detail}")


@pytest.fixture(scope="module")
def mean_run():
    cfg = EnsembleConfig(n=6, k=3, p=2, m=3, samples=4000, master_seed=SEED_MEAN_RUN)
    return cfg, run_ensemble(cfg, jobs=1)


@pytest.fixture(scope="module")
def sweep_report():
    return bounds_sweep(nmax=12, qmax=64)


def test_criterion_01_mds_exactness():
    cases = [(4, 2, 5, 5, 1), (6, 3, 7, 7, 1), (8, 4, 9, 3, 2), (10, 5, 11, 11, 1)]
    for n, k, q, p, m in cases:
        code = reed_solomon_generator(field_create(p, m), n, k)
        enumerated = spectrum_direct(code)
        closed = mds_spectrum(n, k, q)
        assert enumerated.counts == closed.counts, (n, k, q)
        assert enumerated.total() == q**k
    assert mds_spectrum(6, 3, 7).counts[4:] == (90, 108, 144)
    assert mds_spectrum(4, 2, 5).counts[3:] == (16, 8)
    _report("1 (MDS exactness)",
            "RS enumeration equals the closed form for " +
            ", ".join(f"[{n},{k}]_{q}" for n, k, q, _, _ in cases))


def test_criterion_02_spectrum_oracle_equivalence():
    fields = {q: field_create(*pm) for q, pm in
              {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1),
               7: (7, 1), 8: (2, 3), 9: (3, 2)}.items()}
    import random

    rng = random.Random(SEED_EQUIV)
    checked = 0
    attempts = 0
    while checked < 100:
        attempts += 1
        q = rng.choice(list(fields))
        n = rng.randint(2, 8)
        k = rng.randint(1, n)
        code = LinearCode(random_matrix(fields[q], k, n, SeedStream(rng.getrandbits(63))))
        if code.rank < k:
            continue
        assert spectrum_direct(code).counts == spectrum_dual(code).counts, (q, n, k)
        checked += 1
    _report("2 (spectrum oracle equivalence)",
            f"direct == dual on {checked} seeded full-rank codes "
            f"({attempts} draws)")


def test_criterion_03_mean_formula(mean_run):
    cfg, (summary, _) = mean_run
    n, q, M = cfg.n, cfg.q, cfg.samples
    es = expected_spectrum(n, cfg.k, q)
    worst = 0.0
    for w in range(1, n + 1):
        tol = 5 * math.sqrt((2 * q + 1) * float(es.mu[w]) / M)
        dev = abs(float(summary.mean[w] - es.mu[w]))
        assert dev <= tol, (w, dev, tol)
        worst = max(worst, dev / tol)
    _report("3 (mean formula)",
            f"(6,3,8) M={M}: max |mean-mu| at {worst:.2f} of the 5-sigma budget")


def test_criterion_04_variance_bound(mean_run):
    cfg, (summary, _) = mean_run
    assert not summary.violations
    for w in range(1, cfg.n + 1):
        assert summary.variance[w] <= summary.var_bound[w], w
    ratios = [
        float(summary.variance[w] / summary.var_bound[w]) for w in range(1, cfg.n + 1)
    ]
    _report("4 (variance bound)",
            f"empirical var <= (2q+1) mu at every w; max ratio {max(ratios):.3f}")


def test_criterion_05_full_rank_probability(sweep_report):
    # exhaustive: all 256 binary 2x4 matrices
    from weightspec.linalg import mat_rank, matrix

    F2 = field_create(2)
    full = 0
    for flat in itertools.product(range(2), repeat=8):
        M = matrix(F2, [flat[:4], flat[4:]])
        full += mat_rank(M) == 2
    assert full == 210
    assert Fraction(full, 256) == full_rank_prob(4, 2, 2) == Fraction(105, 128)

    # seeded Monte Carlo, catching the exact product within 0.005
    est = full_rank_montecarlo(4, 2, 5, 1, 100_000, SEED_FULLRANK_MC)
    exact = full_rank_prob(4, 2, 5)
    err = abs(float(est - exact))
    assert err < 0.005, err

    # the sweep includes the product lower bound on every tuple
    assert sweep_report.checks["full_rank_lower"] > 0
    assert not [f for f in sweep_report.failures if "full_rank" in f]
    _report("5 (full-rank probability)",
            f"brute force 210/256 == 105/128; MC error {err:.2e} < 0.005; "
            f"{sweep_report.checks['full_rank_lower']} bound checks clean")


def test_criterion_06_deterministic_bound_sweep(sweep_report):
    assert sweep_report.nmax == 12 and sweep_report.qmax == 64
    assert sweep_report.ok, sweep_report.failures[:10]
    _report("6 (deterministic bound sweep)",
            f"{sweep_report.total_checks()} exact checks over n<=12, q<=64, "
            "zero failures")


def test_criterion_07_theorem_probe_a1():
    th = thresholds(16, 4, 25)
    assert th.w_low == 2
    cfg = EnsembleConfig(
        n=16, k=4, p=5, m=2, samples=200, master_seed=SEED_A1_RUN, strategy="direct"
    )
    summary, _ = run_ensemble(cfg, jobs=1)
    assert summary.fraction_a1 is not None
    assert summary.fraction_a1 >= Fraction(99, 100)
    _report("7 (theorem probe a1)",
            f"(16,4,25) M=200: w_low=2, fraction_a1 = {summary.fraction_a1}")


def test_criterion_08_theorem_probe_a2_and_q():
    cfg = EnsembleConfig(
        n=9, k=5, p=2, m=5, samples=300, master_seed=SEED_A2_RUN, strategy="dual"
    )
    summary, _ = run_ensemble(cfg, jobs=1)
    assert mds_spectrum(9, 5, 32).counts[9] == 25_214_842
    assert summary.fraction_full_rank >= Fraction(99, 100)
    assert summary.fraction_a2 is not None
    assert summary.fraction_a2 >= Fraction(99, 100)
    raw = theorem_bound(9, 32)
    assert raw == Fraction(-55, 9)
    assert summary.theorem_bound_raw == raw
    bound = max(Fraction(0), raw)
    assert summary.fraction_q_conditional is not None
    assert summary.fraction_q_conditional >= bound
    _report("8 (theorem probe a2/Q)",
            f"(9,5,32) M=300 dual: full_rank = {summary.fraction_full_rank}, "
            f"a2 = {summary.fraction_a2}, "
            f"Q|full = {summary.fraction_q_conditional} >= clamp({raw}) = {bound}")


def test_criterion_09_pairwise_independence_audit():
    total_pairs = 0
    for q, k, n in [(2, 2, 2), (2, 2, 3), (3, 2, 2)]:
        for w in range(1, n + 1):
            report = independence_audit(q, k, n, w)
            assert report.ok, (q, k, n, w, report.independent_failures[:3])
            total_pairs += report.independent_pairs
    _report("9 (pairwise independence)",
            f"exact product rule on {total_pairs} non-multiple pairs "
            "over all matrices, all weights")


def test_criterion_10_determinism_across_jobs():
    cfg = EnsembleConfig(n=6, k=3, p=2, m=3, samples=200, master_seed=SEED_DETERMINISM)
    outputs = []
    for jobs in (1, 3, 4):
        summary, records = run_ensemble(cfg, jobs=jobs)
        outputs.append((summary_json(summary), records_csv(records, cfg.n)))
    assert outputs[0] == outputs[1] == outputs[2]
    _report("10 (determinism)",
            f"summary JSON and records CSV byte-identical for jobs in (1, 3, 4); "
            f"summary is {len(outputs[0][0])} bytes")
