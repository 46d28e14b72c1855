"""Monte Carlo harness: checks, determinism, aggregation, audits."""

import itertools
from fractions import Fraction

import pytest

from weightspec.codes import MessageWeightCounts
from weightspec.ensemble import (
    EnsembleConfig,
    InfeasibleError,
    TooLargeForExhaustiveError,
    check_a1,
    check_a2,
    concentration_check,
    full_rank_montecarlo,
    independence_audit,
    run_ensemble,
)
from weightspec.formulas import (
    QSmallerThanNError,
    expected_spectrum,
    full_rank_prob,
    mds_spectrum,
    thresholds,
)
from weightspec.serialize import records_csv, summary_json


def _counts(n, **at):
    counts = [0] * (n + 1)
    for w, v in at.items():
        counts[int(w[1:])] = v
    return MessageWeightCounts(n, tuple(counts))


# ---------------------------------------------------------------------------
# the three per-sample checks
# ---------------------------------------------------------------------------

def test_check_a1_low_weight_gap():
    th = thresholds(16, 4, 25)
    assert th.w_low == 2
    assert check_a1(_counts(16, w3=10, w16=5), th)
    assert not check_a1(_counts(16, w2=24), th)
    assert not check_a1(_counts(16, w1=1), th)


def test_check_a1_vacuous():
    th = thresholds(9, 5, 32)
    assert th.a1_vacuous
    assert check_a1(_counts(9, w1=999), th)
    assert check_a1(_counts(9), None)  # k = n has no threshold object


def test_check_a2_band():
    mds = mds_spectrum(9, 5, 32)
    lam = mds.counts[9]
    assert check_a2(_counts(9, w9=lam), mds, 9, 5, 32)
    assert not check_a2(_counts(9, w9=0), mds, 9, 5, 32)
    # just inside / outside the inclusive upper edge lam*(q+3n)/q
    upper = lam * (32 + 27)
    assert check_a2(_counts(9, w9=upper // 32), mds, 9, 5, 32)
    assert not check_a2(_counts(9, w9=upper // 32 + 1), mds, 9, 5, 32)


def test_check_a2_vacuous_window():
    mds = mds_spectrum(9, 3, 32)  # w_up = 11 > 9
    assert check_a2(_counts(9, w9=0), mds, 9, 3, 32)


def test_check_a2_lower_side_automatic_when_band_covers_zero():
    # q = 16 <= 27 = 3n: the lower band edge is negative, so even a zero
    # count passes it and only the upper side can reject
    mds = mds_spectrum(9, 5, 16)
    assert check_a2(_counts(9, w9=0), mds, 9, 5, 16)
    assert not check_a2(_counts(9, w9=mds.counts[9] * 4), mds, 9, 5, 16)


def test_check_a2_requires_q_ge_n():
    mds = mds_spectrum(4, 2, 5)
    with pytest.raises(QSmallerThanNError):
        check_a2(_counts(6), mds, 6, 2, 5)


def test_concentration_check():
    es = expected_spectrum(6, 3, 8)
    mu6 = es.mu[6]
    # zero count: deviation mu >= mu/n always
    assert concentration_check(_counts(6), es, 6)
    # nearest integer: |229 - mu| is far below mu/6 here
    near = round(mu6)
    assert abs(near - mu6) < mu6 / 6
    assert not concentration_check(_counts(6, w6=near), es, 6)
    # exact boundary counts as an event (>=)
    es2 = expected_spectrum(2, 1, 2)  # mu_1 = 1/2 -> mu/n = 1/4
    assert concentration_check(_counts(2, w1=1), es2, 1)


# ---------------------------------------------------------------------------
# run_ensemble
# ---------------------------------------------------------------------------

def test_run_ensemble_deterministic_across_jobs():
    cfg = EnsembleConfig(n=6, k=3, p=2, m=3, samples=60, master_seed=99)
    s1, r1 = run_ensemble(cfg, jobs=1)
    s2, r2 = run_ensemble(cfg, jobs=3)
    assert summary_json(s1) == summary_json(s2)
    assert records_csv(r1, 6) == records_csv(r2, 6)
    s3, r3 = run_ensemble(cfg, jobs=1)
    assert summary_json(s1) == summary_json(s3)


def test_run_ensemble_full_rank_fraction_near_product():
    cfg = EnsembleConfig(n=4, k=2, p=5, m=1, samples=2000, master_seed=5)
    summary, records = run_ensemble(cfg)
    exact = full_rank_prob(4, 2, 5, "exact")
    assert abs(float(summary.fraction_full_rank - exact)) < 0.02
    assert summary.fraction_q_joint <= summary.fraction_full_rank
    assert not summary.violations


def test_run_ensemble_keeps_rank_deficient_samples():
    cfg = EnsembleConfig(n=2, k=2, p=2, m=1, samples=300, master_seed=17)
    summary, records = run_ensemble(cfg)
    deficient = [r for r in records if r.rank < 2]
    assert deficient  # P(rank < 2) = 5/8 for 2x2 over GF(2)
    for r in deficient[:20]:
        assert not r.full_rank
        assert sum(r.counts[1:]) == 4 - 2 ** (2 - r.rank)
        assert r.dmin is None or r.counts[r.dmin] > 0
    assert summary.fraction_full_rank == Fraction(
        sum(1 for r in records if r.full_rank), 300
    )


def test_run_ensemble_dual_strategy_matches_direct():
    base = dict(n=4, k=2, p=3, m=1, samples=120, master_seed=8)
    s_direct, r_direct = run_ensemble(EnsembleConfig(strategy="direct", **base))
    s_dual, r_dual = run_ensemble(EnsembleConfig(strategy="dual", **base))
    assert [r.counts for r in r_direct] == [r.counts for r in r_dual]
    assert summary_json(s_direct).replace('"direct"', '"dual"') == summary_json(s_dual)


def test_run_ensemble_infeasible_cap():
    cfg = EnsembleConfig(n=4, k=2, p=5, m=1, samples=5, master_seed=1, cap=10)
    with pytest.raises(InfeasibleError):
        run_ensemble(cfg)


def test_run_ensemble_a2_skipped_when_q_below_n():
    cfg = EnsembleConfig(n=6, k=3, p=5, m=1, samples=20, master_seed=3)
    summary, records = run_ensemble(cfg)
    assert summary.fraction_a2 is None
    assert all(r.a2 is None for r in records)
    assert summary.fraction_a1 is not None


def test_run_ensemble_checks_disabled():
    cfg = EnsembleConfig(
        n=4, k=2, p=5, m=1, samples=10, master_seed=2,
        check_a1=False, check_a2=False, check_concentration=False,
    )
    summary, records = run_ensemble(cfg)
    assert summary.fraction_a1 is None and summary.fraction_a2 is None
    assert summary.concentration_events == {}
    assert records[0].a1 is None and records[0].concentration is None


def test_run_ensemble_mean_variance_are_exact():
    cfg = EnsembleConfig(n=3, k=2, p=2, m=1, samples=7, master_seed=11)
    summary, records = run_ensemble(cfg)
    for w in range(1, 4):
        values = [r.counts[w] for r in records]
        mean = Fraction(sum(values), 7)
        assert summary.mean[w] == mean
        assert summary.variance[w] == sum(
            (v - mean) ** 2 for v in values
        ) / 7


def test_config_validation():
    with pytest.raises(ValueError):
        EnsembleConfig(n=3, k=4, p=2, m=1, samples=5, master_seed=0)
    with pytest.raises(ValueError):
        EnsembleConfig(n=3, k=2, p=2, m=1, samples=0, master_seed=0)
    with pytest.raises(ValueError):
        EnsembleConfig(n=3, k=2, p=2, m=1, samples=5, master_seed=0, strategy="x")
    with pytest.raises(ValueError):
        EnsembleConfig(n=3, k=2, p=2, m=1, samples=5, master_seed=0, tracked_weights=(9,))


def test_full_rank_montecarlo_deterministic():
    a = full_rank_montecarlo(4, 2, 5, 1, 500, 77)
    b = full_rank_montecarlo(4, 2, 5, 1, 500, 77)
    assert a == b
    assert abs(float(a) - float(full_rank_prob(4, 2, 5))) < 0.05


# ---------------------------------------------------------------------------
# independence audit
# ---------------------------------------------------------------------------

def test_independence_audit_2_2_2_example():
    report = independence_audit(2, 2, 2, 1)
    assert report.matrices == 16
    assert report.ok
    assert report.dependent_pairs == 0  # over GF(2) distinct messages never collide
    # oracle for the quoted pair: P(A((1,0)) and A((0,1))) = 1/4 = (1/2)^2
    both = hits_x1 = hits_x2 = 0
    for rows in itertools.product(range(2), repeat=4):
        w1 = (rows[0] != 0) + (rows[1] != 0)  # weight of row 1 = (1,0).G
        w2 = (rows[2] != 0) + (rows[3] != 0)  # weight of row 2 = (0,1).G
        hits_x1 += w1 == 1
        hits_x2 += w2 == 1
        both += (w1 == 1) and (w2 == 1)
    assert (hits_x1, hits_x2, both) == (8, 8, 4)
    assert Fraction(both, 16) == Fraction(hits_x1, 16) * Fraction(hits_x2, 16)


def test_independence_audit_3_2_2_flags_scalar_pairs():
    report = independence_audit(3, 2, 2, 1)
    assert report.matrices == 81
    assert report.ok  # every non-multiple pair passes exactly
    assert report.dependent_pairs == 4  # {x, 2x} among the 8 nonzero messages
    assert report.dependent_pairs_breaking_product == 4


def test_independence_audit_2_2_3():
    report = independence_audit(2, 2, 3, 1)
    assert report.matrices == 64
    assert report.ok


def test_independence_audit_cap():
    with pytest.raises(TooLargeForExhaustiveError):
        independence_audit(5, 4, 4, 2)
