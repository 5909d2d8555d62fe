"""Truncated cosine/sine series on uniform periodic grids.

Samples come from an inverse real FFT of the coefficient spectrum, so a
shift ``f(x + t)`` is an exact phase rotation of the coefficients rather than
an interpolation.  Integrals over one period use the trapezoid rule, which is
exact for trigonometric polynomials of degree below ``M/2`` (and therefore
for every ``|.|^2`` integrand we form on a grid with ``M >= 4N + 4``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as gamma_fn, gammaincc, zeta

from . import _sums
from .config import DEFAULTS
from .seqclass import CoeffSeq

PARITIES = ("cosine", "sine")
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_CHUNK = 16


class GridTooCoarse(ValueError):
    pass


@dataclass(frozen=True)
class TrigPoly:
    parity: str
    coeffs: CoeffSeq

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise ValueError(f"parity must be one of {PARITIES}")

    @property
    def degree(self) -> int:
        return self.coeffs.N

    @property
    def a(self) -> np.ndarray:
        return self.coeffs.values

    def derivative(self, order: int = 1) -> "TrigPoly":
        """Derivative up to sign (all norms we take are sign-blind)."""
        k = np.arange(1, self.degree + 1, dtype=float)
        parity = self.parity if order % 2 == 0 else ("sine" if self.parity == "cosine" else "cosine")
        return TrigPoly(parity, CoeffSeq(self.a * k ** order))

    def section(self, lo: int, hi: int) -> "TrigPoly":
        """Terms lo < k <= hi (coefficients outside zeroed)."""
        v = np.zeros(hi)
        m = min(hi, self.degree)
        v[lo:m] = self.a[lo:m]
        return TrigPoly(self.parity, CoeffSeq(v))

    def naive(self, x) -> np.ndarray:
        """Direct summation at arbitrary points (reference path)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros_like(x)
        k = np.arange(1, self.degree + 1, dtype=float)
        trig = np.cos if self.parity == "cosine" else np.sin
        for i in range(0, x.size, 64):
            xs = x[i:i + 64]
            out[i:i + 64] = trig(np.outer(xs, k)) @ self.a
        return out


@dataclass(frozen=True)
class Grid:
    M: int

    def __post_init__(self):
        if self.M < 8 or self.M & (self.M - 1):
            raise ValueError("grid size must be a power of two >= 8")

    @classmethod
    def for_degree(cls, N: int, oversample: int = DEFAULTS.grid_oversample) -> "Grid":
        M = 8
        while M < oversample * N + 4:
            M *= 2
        return cls(M)

    @property
    def points(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.M) / self.M

    @property
    def weight(self) -> float:
        return 2 * np.pi / self.M

    def max_degree(self, oversample: int = DEFAULTS.grid_oversample) -> int:
        return (self.M - 4) // oversample

    def check(self, N: int):
        if self.M < 4 * N + 4:
            raise GridTooCoarse(f"grid M={self.M} too coarse for degree {N} (need M >= {4 * N + 4})")


def _spectrum(f: TrigPoly, M: int, factors=None) -> np.ndarray:
    """irfft input whose output is ``sum_k a_k * factor_k * e^{ikx}`` (real part
    for cosine, imaginary part for sine)."""
    X = np.zeros(M // 2 + 1, dtype=complex)
    c = f.a.astype(complex) * (M / 2)
    if f.parity == "sine":
        c = -1j * c
    if factors is not None:
        c = c * factors
    X[1:f.degree + 1] = c
    return X


def evaluate(f: TrigPoly, g: Grid, shift: float = 0.0) -> np.ndarray:
    """Samples of f(x_j + shift) on the grid."""
    g.check(f.degree)
    k = np.arange(1, f.degree + 1)
    factors = np.exp(1j * k * shift) if shift else None
    return np.fft.irfft(_spectrum(f, g.M, factors), n=g.M)


def _difference_samples(f: TrigPoly, g: Grid, ts, second: bool) -> np.ndarray:
    """Rows: samples of f(x+t) - f(x), or f(x+t) + f(x-t) - 2 f(x), per t."""
    k = np.arange(1, f.degree + 1, dtype=float)
    ts = np.asarray(ts, dtype=float)
    kt = np.outer(ts, k)
    s = np.sin(kt / 2)
    if second:
        factors = -4.0 * s * s + 0j
    else:
        # e^{ikt} - 1 without cancellation
        factors = -2.0 * s * s + 1j * np.sin(kt)
    X = np.zeros((ts.size, g.M // 2 + 1), dtype=complex)
    base = _spectrum(f, g.M)[1:f.degree + 1]
    X[:, 1:f.degree + 1] = base[None, :] * factors
    return np.fft.irfft(X, n=g.M, axis=1)


def _lp_rows(samples: np.ndarray, p: float, w: float) -> np.ndarray:
    if p == 2:
        return np.sqrt(np.sum(samples * samples, axis=-1) * w)
    return (np.sum(np.abs(samples) ** p, axis=-1) * w) ** (1.0 / p)


def lp_norm(f: TrigPoly, p: float, g: Grid) -> float:
    """L^p norm over one full period [0, 2pi)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    g.check(f.degree)
    return float(_lp_rows(evaluate(f, g), p, g.weight))


def difference_norms(f: TrigPoly, p: float, g: Grid, ts, second: bool = False) -> np.ndarray:
    """Full-period L^p norms of the first (or symmetric second) difference at each t."""
    g.check(f.degree)
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    out = np.empty(ts.size)
    for i in range(0, ts.size, _CHUNK):
        rows = _difference_samples(f, g, ts[i:i + _CHUNK], second)
        out[i:i + _CHUNK] = _lp_rows(rows, p, g.weight)
    return out


def sup_over_shifts(norm_fn, h: float, t_steps: int, tol: float = DEFAULTS.sup_tol) -> float:
    """max of ``norm_fn`` over (0, h]: uniform scan, then golden-section polish
    on the two cells around the best scan node."""
    if not 0 < h <= math.pi:
        raise ValueError("h must lie in (0, pi]")
    if t_steps < 1:
        raise ValueError("t_steps must be positive")
    ts = h * np.arange(1, t_steps + 1) / t_steps
    vals = np.asarray(norm_fn(ts), dtype=float)
    i = int(np.argmax(vals))
    best = float(vals[i])
    a = ts[i - 1] if i > 0 else 0.0
    b = ts[i + 1] if i + 1 < ts.size else h
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = (float(v) for v in norm_fn(np.array([c, d])))
    while b - a > tol * h:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = float(norm_fn(np.array([c]))[0])
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = float(norm_fn(np.array([d]))[0])
    return max(best, fc, fd)


def modulus(f: TrigPoly, p: float, h: float, g: Grid, t_steps: int = DEFAULTS.t_steps,
            tol: float = DEFAULTS.sup_tol) -> float:
    """sup over 0 < t <= h of the L^p norm of f(. + t) - f(.)."""
    g.check(f.degree)
    return sup_over_shifts(lambda ts: difference_norms(f, p, g, ts), h, t_steps, tol)


def modulus_star(f: TrigPoly, p: float, h: float, g: Grid, t_steps: int = DEFAULTS.t_steps,
                 tol: float = DEFAULTS.sup_tol) -> float:
    """sup over 0 < t <= h of the L^p norm of f(. + t) + f(. - t) - 2 f(.)."""
    g.check(f.degree)
    return sup_over_shifts(lambda ts: difference_norms(f, p, g, ts, second=True), h, t_steps, tol)


def _tail_mean(coeffs: CoeffSeq, weight: float) -> float:
    """weight * sum_{k > N} a_k^2 for a power tail (0 without one)."""
    if coeffs.tail_beta is None:
        return 0.0
    return weight * float(zeta(2 * coeffs.tail_beta, coeffs.N + 1))


def l2_difference_norms(f: TrigPoly, ts, second: bool = False) -> np.ndarray:
    """Parseval route for p = 2 (full period).

    A power tail past the truncation is added through its mean value; the
    dropped oscillating part is at most ``c * a_{N+1}^2 / sin(t/2)``.
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    k = np.arange(1, f.degree + 1, dtype=float)
    a2 = f.a * f.a
    out = np.empty(ts.size)
    for i, t in enumerate(ts):
        s2 = np.sin(k * t / 2) ** 2
        w = 16.0 * s2 * s2 if second else 4.0 * s2
        out[i] = np.pi * (_sums.fsum(a2 * w) + _tail_mean(f.coeffs, 6.0 if second else 2.0))
    return np.sqrt(out)


def modulus_l2(f: TrigPoly, h: float, t_steps: int = DEFAULTS.t_steps, second: bool = False,
               tol: float = DEFAULTS.sup_tol) -> float:
    return sup_over_shifts(lambda ts: l2_difference_norms(f, ts, second), h, t_steps, tol)


def best_approx(f: TrigPoly, n: int, p: float, g: Grid | None = None) -> tuple[float, str]:
    """E_n in L^p: exact for p = 2, otherwise the partial-sum remainder norm
    (an upper bound, flagged as such)."""
    if not 1 <= n < f.degree:
        raise IndexError(f"n={n} outside [1, {f.degree - 1}]")
    if p == 2:
        tail = _sums.fsum(f.a[n:] ** 2) + _tail_mean(f.coeffs, 1.0)
        return math.sqrt(math.pi * tail), "exact"
    g = g or Grid.for_degree(f.degree)
    rest = TrigPoly(f.parity, CoeffSeq(np.concatenate((np.zeros(n), f.a[n:]))))
    return lp_norm(rest, p, g), "upper_bound"


def dirichlet_block(m: int, n: int, g: Grid) -> np.ndarray:
    """Samples of sum_{nu=m}^{2n} cos(nu x)."""
    if not 1 <= m <= 2 * n:
        raise ValueError("need 1 <= m <= 2n")
    g.check(2 * n)
    v = np.zeros(2 * n)
    v[m - 1:] = 1.0
    return evaluate(TrigPoly("cosine", CoeffSeq(v)), g)


def block_functional(f: TrigPoly, m: int, n: int, t: float, g: Grid) -> tuple[float, float]:
    """Integral over a period of (2f(x) - f(x+t) - f(x-t)) T_{m,2n}(x), and
    its closed form 4 pi sum_{nu=m}^{2n} a_nu sin^2(nu t / 2) (zero for sine
    series, whose second difference is odd)."""
    g.check(max(f.degree, 2 * n))
    diff2 = -_difference_samples(f, g, [t], second=True)[0]
    kernel = dirichlet_block(m, n, g)
    integral = _sums.fsum(diff2 * kernel) * g.weight
    if f.parity == "sine":
        return integral, 0.0
    nu = np.arange(m, 2 * n + 1)
    closed = 4 * np.pi * _sums.fsum(f.coeffs.at(nu) * np.sin(nu * t / 2) ** 2)
    return integral, closed


@dataclass(frozen=True)
class WeightFn:
    """lambda(x) = c * x**gamma * log(e + x)**delta on [1, inf)."""

    c: float = 1.0
    gamma: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("c must be positive")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.c * x ** self.gamma * np.log(np.e + x) ** self.delta

    def is_monotone(self, x_max: float = 2.0 ** 40) -> bool:
        x = np.geomspace(1.0, x_max, 4001)
        d = np.diff(self(x))
        return bool(np.all(d >= 0) or np.all(d <= 0))

    def doubling_constants(self, levels: int = 40) -> tuple[float, float]:
        """(K1, K2): min and max of lambda(2^{n+1}) / lambda(2^n)."""
        x = 2.0 ** np.arange(levels + 1)
        q = self(x[1:]) / self(x[:-1])
        return float(q.min()), float(q.max())


@dataclass(frozen=True)
class PhiWeight:
    """phi_n = log(e + n)**s, its step extension and the summatory Phi."""

    s: float = 0.0

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("s must be >= 0")

    def seq(self, n):
        return np.log(np.e + np.asarray(n, dtype=float)) ** self.s

    def step(self, x):
        # phi(x) = phi_n on (n-1, n]
        return self.seq(np.maximum(np.ceil(np.asarray(x, dtype=float)), 1.0))

    def Phi(self, x, r: float, p: float):
        """sum_{n <= x} n^{r/p - 2} phi_n (0 for x < 1)."""
        x = np.asarray(x, dtype=float)
        top = int(np.floor(np.max(x))) if x.size else 0
        n = np.arange(1, max(top, 1) + 1, dtype=float)
        table = np.concatenate(([0.0], np.cumsum(n ** (r / p - 2) * self.seq(n))))
        idx = np.clip(np.floor(x).astype(np.int64), 0, table.size - 1)
        return table[idx]

    def square_growth(self, n_max: int = 2 ** 16) -> float:
        """max of phi_{n^2} / phi_n over n <= n_max."""
        n = np.arange(1, n_max + 1, dtype=float)
        return float(np.max(self.seq(n * n) / self.seq(n)))


@dataclass(frozen=True)
class SmoothnessIntegral:
    value: float
    divergent: bool
    t_min: float
    tail_bound: float
    nodes: int


def second_difference_integral(f: TrigPoly, p: float, g: Grid, ts) -> np.ndarray:
    """int_0^pi |f(x+t) + f(x-t) - 2f(x)|^p dx for each t (half of the full
    period by the even symmetry of |second difference|)."""
    g.check(f.degree)
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    out = np.empty(ts.size)
    for i in range(0, ts.size, _CHUNK):
        rows = _difference_samples(f, g, ts[i:i + _CHUNK], second=True)
        out[i:i + _CHUNK] = 0.5 * np.sum(np.abs(rows) ** p, axis=1) * g.weight
    return out


def _near_zero_bound(lam: WeightFn, D: float, r: float, p: float, t0: float) -> float:
    """Bound for int_0^t0 lambda(1/t) t^{r-2-r/p} (t^2 D)^r dt, using
    ||second difference||_p <= t^2 ||f''||_p."""
    e0 = 3 * r - 2 - r / p - lam.gamma
    if e0 <= -1:
        return math.inf
    if D == 0:
        return 0.0
    if lam.delta <= 0:
        # log(e + 1/t) >= 1
        return lam.c * D ** r * t0 ** (e0 + 1) / (e0 + 1)
    # log(e + 1/t) <= log(C/t) with C = 1 + e for t <= 1
    C = 1.0 + math.e
    s = lam.delta + 1
    L = math.log(C / t0)
    upper = gammaincc(s, (e0 + 1) * L) * gamma_fn(s)
    return lam.c * D ** r * C ** (e0 + 1) * upper / (e0 + 1) ** s


def smoothness_integral(f: TrigPoly, lam: WeightFn, r: float, p: float,
                        t_steps: int = DEFAULTS.theorem2_t_steps, g: Grid | None = None,
                        rel_tol: float = DEFAULTS.integral_rel_tol, max_decades: int = 40) -> SmoothnessIntegral:
    """I(f, lambda, r, p) = int_0^1 lambda(1/t) t^{r-2-r/p} (int_0^pi |Δ²_t f|^p dx)^{r/p} dt.

    Gauss-Legendre in log t, decade by decade toward 0; each decade is cut
    into panels short enough to resolve the highest frequency of the inner
    integrand.  Integration stops once the analytic bound on the remaining
    piece [0, t_min] is below ``0.1 * rel_tol`` of the accumulated value.
    """
    if not p > 1 or not r >= 1:
        raise ValueError("need p > 1 and r >= 1")
    g = g or Grid.for_degree(f.degree)
    g.check(f.degree)
    if not np.any(f.a):
        return SmoothnessIntegral(0.0, False, 1.0, 0.0, 0)
    D = lp_norm(f.derivative(2), p, g)
    xg, wg = np.polynomial.legendre.leggauss(t_steps)
    total = 0.0
    nodes = 0
    hi = 1.0
    for _ in range(max_decades):
        lo = hi / 10.0
        panels = max(1, math.ceil(2 * f.degree * (hi - lo) / math.pi))
        edges = np.geomspace(lo, hi, panels + 1)
        u0, u1 = np.log(edges[:-1]), np.log(edges[1:])
        u = (0.5 * (u1 - u0))[:, None] * xg[None, :] + (0.5 * (u0 + u1))[:, None]
        w = (0.5 * (u1 - u0))[:, None] * wg[None, :]
        t = np.exp(u).ravel()
        inner = second_difference_integral(f, p, g, t)
        vals = lam(1.0 / t) * t ** (r - 2 - r / p) * inner ** (r / p) * t
        total += _sums.fsum(vals * w.ravel())
        nodes += t.size
        hi = lo
        bound = _near_zero_bound(lam, D, r, p, hi)
        if math.isinf(bound):
            return SmoothnessIntegral(math.inf, True, hi, bound, nodes)
        if bound <= 0.1 * rel_tol * total:
            return SmoothnessIntegral(total, False, hi, bound, nodes)
    return SmoothnessIntegral(math.inf, True, hi, bound, nodes)
