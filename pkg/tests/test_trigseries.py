import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nbvslab import CoeffSeq, Grid, PhiWeight, TrigPoly, WeightFn, best_approx, lp_norm, modulus, modulus_star
from nbvslab.trigseries import (
    GridTooCoarse,
    block_functional,
    difference_norms,
    dirichlet_block,
    evaluate,
    l2_difference_norms,
    modulus_l2,
    smoothness_integral,
)

SQRT_PI = math.sqrt(math.pi)
coeff_lists = st.lists(st.floats(-0.0, 5.0).map(abs), min_size=1, max_size=48)


def poly(vals, parity="cosine"):
    return TrigPoly(parity, CoeffSeq(vals))


COS = poly([1.0])


class TestGrid:
    def test_power_of_two(self):
        with pytest.raises(ValueError):
            Grid(100)
        with pytest.raises(ValueError):
            Grid(4)

    def test_for_degree(self):
        g = Grid.for_degree(2000)
        assert g.M == 8192
        g.check(2000)

    def test_too_coarse(self):
        with pytest.raises(GridTooCoarse):
            evaluate(poly(np.ones(10)), Grid(32))


class TestEvaluate:
    def test_examples(self):
        assert COS.naive(0.0)[0] == 1.0
        assert poly([0.3, 2.0], "sine").naive(0.0)[0] == 0.0
        assert poly([1.0, 1.0]).naive(math.pi)[0] == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("parity", ["cosine", "sine"])
    def test_fft_matches_naive(self, parity, rng):
        f = poly(rng.random(37), parity)
        g = Grid(256)
        np.testing.assert_allclose(evaluate(f, g), f.naive(g.points), atol=1e-12)
        np.testing.assert_allclose(evaluate(f, g, shift=0.3), f.naive(g.points + 0.3), atol=1e-12)

    def test_derivative(self, rng):
        f = poly(rng.random(9), "sine")
        d = f.derivative()
        x = np.linspace(0, 6, 7)
        h = 1e-6
        fd = (f.naive(x + h) - f.naive(x - h)) / (2 * h)
        np.testing.assert_allclose(np.abs(d.naive(x)), np.abs(fd), atol=1e-6)
        assert d.parity == "cosine"


class TestNorms:
    def test_lp_examples(self):
        g = Grid(64)
        assert lp_norm(COS, 2, g) == pytest.approx(SQRT_PI, rel=1e-14)
        assert lp_norm(poly([1.0, 1.0]), 2, g) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-14)
        assert lp_norm(poly([0.0, 0.0]), 3, g) == 0.0

    def test_l1_of_cos(self):
        # int |cos x| over a period is 4; quadrature of |.| converges slowly
        assert lp_norm(COS, 1, Grid(2 ** 14)) == pytest.approx(4.0, rel=1e-6)

    @settings(max_examples=50, deadline=None)
    @given(coeff_lists, st.sampled_from(["cosine", "sine"]))
    def test_parseval(self, vals, parity):
        f = poly(vals, parity)
        g = Grid.for_degree(f.degree)
        assert lp_norm(f, 2, g) ** 2 == pytest.approx(math.pi * math.fsum(np.square(vals)), rel=1e-10, abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(coeff_lists, st.floats(0.01, 3.0))
    def test_l2_difference_routes_agree(self, vals, t):
        f = poly(vals)
        g = Grid.for_degree(f.degree)
        for second in (False, True):
            fft = difference_norms(f, 2, g, [t], second=second)[0]
            parseval = l2_difference_norms(f, [t], second=second)[0]
            assert fft == pytest.approx(parseval, rel=1e-9, abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(coeff_lists, coeff_lists, st.floats(1.0, 4.0))
    def test_triangle_inequality(self, u, v, p):
        L = max(len(u), len(v))
        u = np.pad(u, (0, L - len(u)))
        v = np.pad(v, (0, L - len(v)))
        g = Grid.for_degree(L)
        lhs = lp_norm(poly(u + v), p, g)
        assert lhs <= lp_norm(poly(u), p, g) + lp_norm(poly(v), p, g) + 1e-9


class TestModulus:
    @pytest.mark.parametrize("h", [math.pi / 4, math.pi / 16, math.pi / 64, 1.0])
    def test_cos_closed_forms(self, h):
        g = Grid(64)
        assert modulus(COS, 2, h, g) == pytest.approx(2 * math.sin(h / 2) * SQRT_PI, rel=1e-6)
        assert modulus_star(COS, 2, h, g) == pytest.approx(2 * (1 - math.cos(h)) * SQRT_PI, rel=1e-6)
        assert modulus_l2(f=COS, h=h) == pytest.approx(2 * math.sin(h / 2) * SQRT_PI, rel=1e-6)

    def test_zero(self):
        z = poly([0.0, 0.0])
        assert modulus(z, 2, 0.5, Grid(64)) == 0.0
        assert modulus_star(z, 2, 0.5, Grid(64)) == 0.0

    def test_interior_maximum(self):
        # cos 8x: the first difference peaks at t = pi/8 < h
        f = poly([0] * 7 + [1.0])
        assert modulus(f, 2, 0.5, Grid(64)) == pytest.approx(2 * SQRT_PI, rel=1e-9)

    @settings(max_examples=20, deadline=None)
    @given(coeff_lists, st.floats(0.01, 1.0), st.floats(0.01, 1.0), st.sampled_from([1.5, 2.0, 3.0]))
    def test_monotone_and_star_bound(self, vals, h1, h2, p):
        h1, h2 = sorted((h1, h2))
        f = poly(vals)
        g = Grid.for_degree(f.degree)
        w1, w2 = modulus(f, p, h1, g, 16), modulus(f, p, h2, g, 16)
        assert w1 <= w2 * (1 + 1e-6) + 1e-9
        assert modulus_star(f, p, h2, g, 16) <= 2 * w2 * (1 + 1e-6) + 1e-9


class TestBestApprox:
    def test_examples(self):
        assert best_approx(poly([1.0, 1.0]), 1, 2)[0] == pytest.approx(SQRT_PI)
        assert best_approx(poly([1.0, 0.0]), 1, 2)[0] == 0.0

    def test_power_tail(self):
        a = np.arange(1, 2 ** 16 + 1, dtype=float) ** -1.5
        value, kind = best_approx(poly(a), 16, 2)
        tail = math.fsum(k ** -3.0 for k in range(17, 2 ** 16 + 1))
        assert kind == "exact"
        assert value == pytest.approx(math.sqrt(math.pi * tail), rel=1e-12)

    def test_analytic_tail(self):
        f = TrigPoly("cosine", CoeffSeq(np.arange(1, 33, dtype=float) ** -1.5, tail_beta=1.5))
        from scipy.special import zeta
        assert best_approx(f, 16, 2)[0] == pytest.approx(math.sqrt(math.pi * zeta(3, 17)), rel=1e-12)

    def test_other_p_flagged(self, rng):
        f = poly(rng.random(20))
        value, kind = best_approx(f, 5, 3.0)
        assert kind == "upper_bound" and value > 0


class TestBlockIdentity:
    def test_kernel_at_zero(self):
        assert dirichlet_block(1, 1, Grid(64))[0] == pytest.approx(2.0)

    def test_cos_example(self):
        integral, closed = block_functional(COS, 1, 1, math.pi / 2, Grid(64))
        assert closed == pytest.approx(2 * math.pi)
        assert integral == pytest.approx(2 * math.pi, rel=1e-12)

    def test_zero(self):
        integral, closed = block_functional(poly([0.0]), 1, 2, 0.3, Grid(64))
        assert integral == pytest.approx(0.0, abs=1e-15) and closed == 0.0

    @settings(max_examples=40, deadline=None)
    @given(coeff_lists, st.integers(1, 32), st.data(), st.floats(0.01, 3.0), st.sampled_from(["cosine", "sine"]))
    def test_identity(self, vals, n, data, t, parity):
        m = data.draw(st.integers(1, 2 * n))
        f = poly(vals, parity)
        integral, closed = block_functional(f, m, n, t, Grid.for_degree(max(f.degree, 2 * n)))
        scale = math.fsum(vals) + 1.0
        assert integral == pytest.approx(closed, rel=1e-7, abs=1e-10 * scale)


class TestWeights:
    def test_weight_fn(self):
        lam = WeightFn(2.0, 0.5)
        assert lam(4.0) == pytest.approx(4.0)
        assert lam.is_monotone()
        k1, k2 = lam.doubling_constants()
        assert k1 == pytest.approx(math.sqrt(2)) and k2 == pytest.approx(math.sqrt(2))

    def test_phi(self):
        phi = PhiWeight(1.0)
        assert phi.step(2.5) == pytest.approx(math.log(math.e + 3))
        assert phi.square_growth() < 2.1
        assert PhiWeight(0.0).Phi(np.array([0.5, 3.0]), 3.0, 2.0)[1] == pytest.approx(1 + 2 ** -0.5 + 3 ** -0.5)


class TestSmoothnessIntegral:
    def test_zero(self):
        assert smoothness_integral(poly([0.0, 0.0]), WeightFn(), 2, 2).value == 0.0

    def test_cos_against_adaptive_oracle(self):
        # mpmath quad of t^{-1} (2(1 - cos t))^2 pi/2 over [0, 1] at 30 digits
        I = smoothness_integral(COS, WeightFn(), 2, 2)
        assert I.value == pytest.approx(0.351434109247412499, rel=1e-6)
        assert not I.divergent

    def test_refinement(self):
        f = poly(np.arange(1, 257, dtype=float) ** -1.5)
        lam = WeightFn(1.0, 0.5)
        a = smoothness_integral(f, lam, 2, 2, t_steps=16).value
        b = smoothness_integral(f, lam, 2, 2, t_steps=32).value
        assert a == pytest.approx(b, rel=1e-6)
        assert a == pytest.approx(2.86247947304441, rel=1e-9)

    def test_divergent_weight(self):
        # lambda growing like x^5 makes the t -> 0 end non-integrable
        I = smoothness_integral(COS, WeightFn(1.0, 5.0), 2, 2)
        assert I.divergent and math.isinf(I.value)
