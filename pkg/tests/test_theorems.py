import math

import numpy as np
import pytest

from nbvslab import DEFAULTS, SeqFamily, PhiWeight, WeightFn
from nbvslab.theorems import (
    SKIPPED,
    check_weight,
    endpoint_verdict,
    lemma_sweep,
    pmap,
    theorem1_rhs_parts,
    theorem3_functionals,
    verify_lemma2_dichotomy,
    verify_theorem1,
    verify_theorem2,
    verify_theorem4,
    verify_theorem5,
)
from nbvslab.seqclass import CoeffSeq
from nbvslab.verdicts import BOUNDED, GROWING

from conftest import power

E1 = SeqFamily("explicit", {"values": [1.0, 0.0, 0.0, 0.0]}, 4)
ZERO = SeqFamily("explicit", {"values": [0.0] * 8}, 8)
ALT = SeqFamily("alternating", {}, 64)
FAST = DEFAULTS.replace(family_n=2 ** 12, theorem3_spectral_n=2 ** 12, theorem3_grid_n=2 ** 11,
                        cauchy_levels=(4, 5, 6, 7, 8, 9, 10))


class TestPmap:
    def test_order_kept_with_threads(self, monkeypatch):
        monkeypatch.setenv("NBVSLAB_THREADS", "4")
        assert pmap(lambda x: x * x, range(20)) == [x * x for x in range(20)]

    def test_bad_env(self, monkeypatch):
        monkeypatch.setenv("NBVSLAB_THREADS", "many")
        assert pmap(abs, [-1, 2]) == [1, 2]


class TestLemmaSweep:
    @pytest.mark.parametrize("lemma", ["4", "5", "6", "38", "42"])
    def test_harmonic_bounded(self, lemma):
        assert lemma_sweep(lemma, power(1.0)).verdict == BOUNDED

    def test_rows_in_schedule_order(self):
        res = lemma_sweep("4", power(1.0))
        assert [r.scale for r in res.rows()] == [str(n) for n in DEFAULTS.ladder]


class TestTheorem1:
    def test_rhs_e1(self):
        a = CoeffSeq([1.0, 0.0, 0.0, 0.0])
        for n in (2, 3, 4):
            r1, r2 = theorem1_rhs_parts(a, n, 2.0)
            assert r1 == pytest.approx(1 / n) and r2 == 0.0

    def test_e1_bounded(self):
        res = verify_theorem1(E1, 2.0)
        assert res.verdict == BOUNDED
        # omega_2(cos, 1/n) = 2 sin(1/(2n)) sqrt(pi) ~ sqrt(pi)/n
        assert res.ratios[-1] == pytest.approx(math.sqrt(math.pi), rel=1e-4)

    @pytest.mark.parametrize("beta", [1.0, 1.5])
    def test_parities_agree(self, beta):
        c = verify_theorem1(power(beta), 2.0, "cosine")
        s = verify_theorem1(power(beta), 2.0, "sine")
        assert c.verdict == s.verdict == BOUNDED
        np.testing.assert_allclose(c.ratios, s.ratios, rtol=1e-9)

    def test_nonmember_skipped(self):
        res = verify_theorem1(ALT, 2.0)
        assert res.verdict == SKIPPED and "NBVS" in res.skipped
        assert res.rows()[0].verdict.startswith("skipped")

    def test_divergent_condition_skipped(self):
        res = verify_theorem1(power(0.4), 2.0)
        assert res.skipped is not None

    def test_p3_runs(self):
        res = verify_theorem1(power(1.5), 3.0, settings=DEFAULTS.replace(theorem1_n=300))
        assert res.verdict == BOUNDED


class TestTheorem2:
    def test_weight_conditions(self):
        ok = check_weight(WeightFn(1.0, 0.5), 2, 2)
        assert ok.monotone and ok.doubling_ok and ok.eq25_ok and ok.eq26_ok
        assert not check_weight(WeightFn(1.0, 5.0), 2, 2).eq26_ok
        assert not check_weight(WeightFn(1.0, -0.5), 2, 2).eq25_ok

    def test_zero_function(self):
        fwd, rev, _ = verify_theorem2(ZERO, WeightFn(1.0, 0.5))
        assert fwd.reports[0].lhs == 0.0 and fwd.reports[0].rhs == 0.0

    def test_failing_weight_skips_reverse(self):
        fwd, rev, checks = verify_theorem2(power(1.5), WeightFn(1.0, 5.0),
                                           settings=DEFAULTS.replace(theorem2_ladder=(8, 16, 32, 64)))
        assert rev.skipped is not None and "B" in rev.skipped
        assert fwd.skipped is None


class TestTheorem3:
    def test_zero(self):
        res = theorem3_functionals(ZERO, PhiWeight(0.0), 3, 2, FAST, levels=6)
        assert all(v == 0.0 for inc in res.increments.values() for v in inc)
        assert res.consistent

    def test_parameter_check(self):
        with pytest.raises(ValueError):
            theorem3_functionals(power(1.5), PhiWeight(0.0), 2, 3, FAST)

    @pytest.mark.parametrize("beta, convergent", [(1.5, True), (0.6, False)])
    def test_fast_consistency(self, beta, convergent):
        res = theorem3_functionals(power(beta), PhiWeight(0.0), 3, 2, FAST, levels=10)
        assert res.consistent
        assert set(res.convergent.values()) == {convergent}
        assert len(res.rows()) == 9

    def test_grid_route_p_not_2(self):
        res = theorem3_functionals(power(1.5), PhiWeight(0.0), 3, 1.5, FAST, levels=10)
        assert res.consistent and all(res.convergent.values())


class TestTheorem4:
    def test_e1(self):
        res = verify_theorem4(SeqFamily("explicit", {"values": [1.0] + [0.0] * 2047}, 2048), 2.0)
        assert res.eq28.convergent and res.lipschitz_verdict == BOUNDED and res.derivative_finite
        assert res.consistent

    def test_endpoint_verdict(self):
        assert endpoint_verdict([1, 1.1, 1.15], 1.2, 0.3) == BOUNDED
        assert endpoint_verdict([1, 1.2, 1.4], 1.2, 0.3) == GROWING
        assert endpoint_verdict([1, 1.25, 1.2], 1.2, 0.3) == "inconclusive"


class TestTheorem5:
    def test_e1(self):
        res = verify_theorem5(SeqFamily("explicit", {"values": [1.0] + [0.0] * 511}, 512), 2.0)
        assert res.skipped is None and res.passed
        r = res.log_ratio.ratios
        assert r[-1] < r[0]

    def test_nonmember_skipped(self):
        assert verify_theorem5(ALT, 2.0).skipped is not None


class TestLemma2:
    def test_harmonic(self):
        res = verify_lemma2_dichotomy(power(1.0), 2.0)
        assert res.eq21.convergent and res.cauchy_convergent
        # Parseval: ||S_2N - S_N||_2^2 = pi sum_{N<k<=2N} k^-2
        N = 2 ** DEFAULTS.cauchy_levels[0]
        expected = math.pi * math.fsum(k ** -2.0 for k in range(N + 1, 2 * N + 1))
        assert res.cauchy_increments[0] == pytest.approx(expected, rel=1e-10)

    def test_divergent(self):
        res = verify_lemma2_dichotomy(power(0.4), 2.0)
        assert not res.eq21.convergent and not res.cauchy_convergent and res.agree

    def test_e1(self):
        res = verify_lemma2_dichotomy(SeqFamily("explicit", {"values": [1.0] + [0.0] * 63}, 64), 2.0)
        assert res.agree and res.eq21.convergent
