import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nbvslab import CoeffSeq, SeqFamily, generate_family
from nbvslab.verdicts import BOUNDED, trend
from nbvslab.discrete_ineq import (
    AnalysisParams,
    block_mean_bound,
    coefficient_condition,
    dyadic_schedule,
    hardy_33,
    hardy_34,
    hardy_suite,
    lemma5_bound,
    lemma6_bound,
    make_report,
    tail_variation_bound,
)

from conftest import harmonic

pos = st.one_of(st.just(0.0), st.floats(1e-4, 1e4))
seq = st.lists(pos, min_size=1, max_size=40)


def e1(N=8):
    v = np.zeros(N)
    v[0] = 1.0
    return CoeffSeq(v)


def brute_hardy_33(lam, alpha, p):
    lhs = sum(l * sum(alpha[: n + 1]) ** p for n, l in enumerate(lam))
    nu = [i for i, l in enumerate(lam) if l > 0]
    rhs, prev = 0.0, -1
    for i in nu:
        rhs += lam[i] ** (1 - p) * sum(lam[i:]) ** p * sum(alpha[prev + 1: i + 1]) ** p
        prev = i
    return lhs, rhs


class TestMakeReport:
    def test_explicit_constant(self):
        r = make_report(14.0, 14.0, 4.0)
        assert r.holds and r.explicit and r.ratio == 1.0

    def test_zero_over_zero(self):
        r = make_report(0.0, 0.0)
        assert r.ratio == 0.0 and r.holds

    def test_positive_over_zero(self):
        r = make_report(1.0, 0.0)
        assert math.isinf(r.ratio) and not r.holds

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            make_report(-1.0, 1.0)


def test_analysis_params_validation():
    AnalysisParams(2.0, 1.0, 3, 0.5)
    for bad in ({"p": 1.0}, {"r": 0.5}, {"n": 0}, {"h": 4.0}):
        with pytest.raises(ValueError):
            AnalysisParams(**bad)


class TestHardy:
    def test_hardy33_ones(self):
        r = hardy_33([1, 1, 1], [1, 1, 1], 2)
        assert (r.lhs, r.rhs, r.constant_bound) == (14.0, 14.0, 4.0)
        assert r.holds

    def test_hardy33_zero_lambda(self):
        r = hardy_33([0, 0, 0], [5, 1, 2], 2)
        assert r.lhs == 0.0 and r.rhs == 0.0 and r.holds

    def test_hardy34_single(self):
        r = hardy_34([1], [1], 2)
        assert r.lhs == 1.0 and r.rhs == 1.0 and r.holds

    def test_hardy34_leading_zero(self):
        r = hardy_34([0, 1], [1, 1], 2)
        assert r.lhs == 1.0 and r.rhs == 1.0

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            hardy_33([1], [1], 1.0)
        with pytest.raises(ValueError):
            hardy_34([-1], [1], 2)

    @settings(max_examples=150, deadline=None)
    @given(seq, seq, st.sampled_from([1.5, 2.0, 3.0]))
    def test_hardy33_matches_brute_force(self, lam, alpha, p):
        L = max(len(lam), len(alpha))
        lam = lam + [0.0] * (L - len(lam))
        alpha = alpha + [0.0] * (L - len(alpha))
        r = hardy_33(lam, alpha, p)
        lhs, rhs = brute_hardy_33(lam, alpha, p)
        assert r.lhs == pytest.approx(lhs, rel=1e-9, abs=1e-300)
        assert r.rhs == pytest.approx(rhs, rel=1e-9, abs=1e-300)
        assert r.holds

    @settings(max_examples=150, deadline=None)
    @given(seq, seq, st.floats(1.1, 4.0))
    def test_hardy34_holds(self, lam, alpha, p):
        assert hardy_34(lam, alpha, p).holds

    def test_suite_deterministic(self):
        a = hardy_suite("3a", 2.0, trials=50, seed=3)
        b = hardy_suite("3a", 2.0, trials=50, seed=3)
        assert [r.lhs for r in a] == [r.lhs for r in b]


class TestTailVariation:
    def test_harmonic(self):
        r = tail_variation_bound(harmonic(1024), 8)
        rhs = 1 / 8 + 1 / 16 + 1 / 32 + math.fsum(k ** -2 for k in range(8, 1025))
        assert r.lhs == pytest.approx(1 / 8, rel=1e-12)
        assert r.rhs == pytest.approx(rhs, rel=1e-12)
        assert r.ratio == pytest.approx(0.35622, abs=5e-5)

    def test_tail_matches_long_truncation(self):
        short = tail_variation_bound(harmonic(256, tail=True), 8)
        long = tail_variation_bound(harmonic(2 ** 20), 8)
        assert short.ratio == pytest.approx(long.ratio, rel=1e-5)

    def test_zero(self):
        r = tail_variation_bound(CoeffSeq(np.zeros(16)), 4)
        assert r.lhs == r.rhs == r.ratio == 0.0

    def test_block_witness_bounded(self):
        a = generate_family(SeqFamily("block_witness", {"rho": 0.5}, 1024))
        ratios = [tail_variation_bound(a, n).ratio for n in (4, 16, 64)]
        assert max(ratios) < 10

    def test_index_range(self):
        with pytest.raises(IndexError):
            tail_variation_bound(harmonic(8), 9)


class TestBlockDifferenceSums:
    def test_lemma5_e1(self):
        r = lemma5_bound(e1(), 4, 2.0)
        assert r.lhs == pytest.approx((1 + 1 / 4 + 1 / 9) / 16, rel=1e-14)
        assert r.rhs == pytest.approx(1 / 16, rel=1e-14)
        assert r.ratio == pytest.approx(49 / 36, rel=1e-14)

    def test_lemma6_e1(self):
        r = lemma6_bound(e1(), 4, 2.0)
        assert r.lhs == 0.0 and r.holds

    def test_zero(self):
        z = CoeffSeq(np.zeros(8))
        assert lemma5_bound(z, 4, 2.0).ratio == 0.0
        assert lemma6_bound(z, 4, 2.0).ratio == 0.0

    def test_lemma6_harmonic_pinned(self):
        # 30-digit oracle, independent nested loops
        assert lemma6_bound(harmonic(1024), 8, 2.0).ratio == pytest.approx(0.247300519885266670, rel=1e-12)
        assert lemma6_bound(harmonic(64, tail=True), 8, 2.0).ratio == pytest.approx(0.246305160828256791, rel=1e-12)

    def test_lemma5_brute_force(self):
        a = harmonic(64)
        n, p = 12, 2.5
        v = np.append(a.values, 0.0)
        d = [abs(v[k - 1] - v[k]) for k in range(1, n)]
        lhs = n ** -p * sum(m ** -2 * sum(nu ** 2 * d[nu - 1] for nu in range(1, m + 1)) ** p for m in range(1, n))
        assert lemma5_bound(a, n, p).lhs == pytest.approx(lhs, rel=1e-12)

    def test_harmonic_sweep_flat(self):
        a = harmonic(4096, tail=True)
        ratios = [lemma5_bound(a, n, 2.0).ratio for n in (8, 16, 32, 64, 128, 256)]
        # rising but with shrinking steps (1.34, 1.23, 1.16, 1.11, 1.07)
        assert trend(ratios) == BOUNDED

    def test_requires_n_at_least_2(self):
        with pytest.raises(IndexError):
            lemma5_bound(harmonic(8), 1, 2.0)


class TestBlockMean:
    def test_harmonic(self):
        first, second = block_mean_bound(harmonic(64), 16)
        assert second.lhs == pytest.approx(1.0)
        window = math.fsum(1 / k for k in range(8, 33))
        assert second.rhs == pytest.approx(window, rel=1e-14)
        assert window == pytest.approx(1.46564, abs=1e-5)
        assert first.lhs == pytest.approx(1 / 16)
        assert first.rhs == pytest.approx(math.fsum(1 / k for k in range(9, 31)) / 16, rel=1e-14)

    def test_e1(self):
        first, second = block_mean_bound(e1(), 4)
        assert first.lhs == 0.0 and second is None


class TestCoefficientCondition:
    def test_eq21_harmonic(self):
        c = coefficient_condition(harmonic(2 ** 14), 2.0, "eq21")
        assert c.convergent
        assert c.partial_sums[-1] == pytest.approx(math.pi ** 2 / 6, abs=1e-4)

    def test_eq28_harmonic(self):
        c = coefficient_condition(harmonic(1024), 2.0, "eq28")
        np.testing.assert_allclose(c.partial_sums, c.schedule)
        assert not c.convergent and c.verdict == "divergent"

    def test_eq28_convergent(self):
        a = generate_family(SeqFamily("power", {"beta": 1.8}, 2 ** 14))
        assert coefficient_condition(a, 2.0, "eq28").convergent

    def test_schedule(self):
        assert dyadic_schedule(20) == [1, 2, 4, 8, 16]

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            coefficient_condition(harmonic(8), 2.0, "eq99")
