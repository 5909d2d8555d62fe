"""Both sides of the discrete inequalities behind the smoothness estimates.

Every function returns an :class:`IneqReport`.  Sums run over the finite
prefix of a :class:`~nbvslab.seqclass.CoeffSeq`; when the sequence carries a
power-law tail, infinite sums include it in closed form (Hurwitz zeta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _sums
from .config import DEFAULTS, Settings
from .seqclass import CoeffSeq
from .verdicts import geometric_decay, safe_ratio


@dataclass(frozen=True)
class IneqReport:
    """One instance of ``lhs <= K * rhs``.

    ``constant_bound`` is the explicit constant when one is known (then
    ``explicit`` is True and ``holds`` compares against it); otherwise it is
    the observed ratio and ``holds`` only asks for a finite ratio.
    """

    lhs: float
    rhs: float
    ratio: float
    constant_bound: float
    holds: bool
    explicit: bool = False


def make_report(lhs: float, rhs: float, constant: float | None = None, rel_tol: float = 1e-9) -> IneqReport:
    lhs, rhs = float(lhs), float(rhs)
    if lhs < 0 or rhs < 0:
        raise ValueError("both sides must be nonnegative")
    ratio = safe_ratio(lhs, rhs)
    if constant is None:
        return IneqReport(lhs, rhs, ratio, ratio, math.isfinite(ratio))
    holds = lhs <= constant * rhs * (1.0 + rel_tol) + 1e-300
    return IneqReport(lhs, rhs, ratio, float(constant), bool(holds), explicit=True)


@dataclass(frozen=True)
class AnalysisParams:
    p: float = 2.0
    r: float = 1.0
    n: int = 1
    h: float = math.pi

    def __post_init__(self):
        if not self.p > 1:
            raise ValueError("p must exceed 1")
        if not self.r >= 1:
            raise ValueError("r must be >= 1")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 < self.h <= math.pi:
            raise ValueError("h must lie in (0, pi]")


def _check_hardy_args(lam, alpha, p):
    if not p > 1:
        raise ValueError("p must exceed 1")
    lam = np.asarray(lam, dtype=float).ravel()
    alpha = np.asarray(alpha, dtype=float).ravel()
    if np.any(lam < 0) or np.any(alpha < 0):
        raise ValueError("sequences must be nonnegative")
    L = max(lam.size, alpha.size)
    lam = np.pad(lam, (0, L - lam.size))
    alpha = np.pad(alpha, (0, L - alpha.size))
    return lam, alpha


def hardy_33(lambda_seq, alpha_seq, p: float, rel_tol: float = DEFAULTS.rel_tol) -> IneqReport:
    """Weighted Hardy inequality for forward partial sums, constant ``p**p``.

    lhs = sum_n lam_n (sum_{k<=n} alpha_k)^p.  On the right, the sum runs over
    the indices nu_1 < nu_2 < ... where lam is positive (nu_0 = 0) and pairs
    lam_{nu}^{1-p} (sum_{k>=nu} lam_k)^p with the alpha-block (nu_{n-1}, nu_n].
    """
    lam, alpha = _check_hardy_args(lambda_seq, alpha_seq, p)
    if lam.size == 0:
        return make_report(0.0, 0.0, p ** p, rel_tol)
    partial = _sums.cumsum(alpha)
    lhs = _sums.fsum(lam * partial ** p)
    nu = np.nonzero(lam > 0)[0]
    if nu.size == 0:
        return make_report(lhs, 0.0, p ** p, rel_tol)
    lam_tail = _sums.rcumsum(lam)
    starts = np.concatenate(([0], nu[:-1] + 1))
    blocks = _sums.block_sums(alpha[: nu[-1] + 1], starts)
    rhs = _sums.fsum(lam[nu] ** (1 - p) * lam_tail[nu] ** p * blocks ** p)
    return make_report(lhs, rhs, p ** p, rel_tol)


def hardy_34(lambda_seq, alpha_seq, p: float, rel_tol: float = DEFAULTS.rel_tol) -> IneqReport:
    """Hardy inequality for tail sums, constant ``p**p``.

    The alpha-blocks are [nu_n, nu_{n+1} - 1]; the last one runs to the end
    of the truncation (the ``nu_{N+1} = inf`` convention).
    """
    lam, alpha = _check_hardy_args(lambda_seq, alpha_seq, p)
    if lam.size == 0:
        return make_report(0.0, 0.0, p ** p, rel_tol)
    tails = _sums.rcumsum(alpha)
    lhs = _sums.fsum(lam * tails ** p)
    nu = np.nonzero(lam > 0)[0]
    if nu.size == 0:
        return make_report(lhs, 0.0, p ** p, rel_tol)
    lam_head = _sums.cumsum(lam)
    blocks = _sums.block_sums(alpha[nu[0]:], nu - nu[0])
    rhs = _sums.fsum(lam[nu] ** (1 - p) * lam_head[nu] ** p * blocks ** p)
    return make_report(lhs, rhs, p ** p, rel_tol)


def random_hardy_pairs(trials: int, max_len: int = 64, seed: int = 0):
    """Deterministic random (lambda, alpha) pairs with sparse zero patterns."""
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        L = int(rng.integers(1, max_len + 1))
        lam = rng.exponential(size=L) * (rng.random(L) > rng.uniform(0, 0.7))
        alpha = rng.exponential(size=L) * (rng.random(L) > rng.uniform(0, 0.5))
        lam *= 10.0 ** rng.uniform(-3, 3, size=L)
        yield lam, alpha


def hardy_suite(which: str, p: float, trials: int = 1000, max_len: int = 64, seed: int = 0,
                rel_tol: float = DEFAULTS.rel_tol) -> list[IneqReport]:
    fn = {"3a": hardy_33, "3b": hardy_34}[which]
    return [fn(lam, alpha, p, rel_tol) for lam, alpha in random_hardy_pairs(trials, max_len, seed)]


def _abs_diffs(a: CoeffSeq, upto: int) -> np.ndarray:
    """|a_k - a_{k+1}| for k = 1..upto, reading past N through the tail."""
    v = a.extended(upto + 1)
    return np.abs(v[:-1] - v[1:])


def _check_n(a: CoeffSeq, n: int, lo: int = 1):
    if not lo <= n <= a.N:
        raise IndexError(f"n={n} outside [{lo}, {a.N}]")


def tail_variation_bound(a: CoeffSeq, n: int) -> IneqReport:
    """sum_{k>=n} |Δa_k|  vs  a_n + a_2n + a_4n + sum_{k>=n} a_k/k."""
    _check_n(a, n)
    if a.tail_beta is None:
        lhs = _sums.fsum(_abs_diffs(a, a.N)[n - 1:])
    else:
        # the power tail is decreasing, so its variation telescopes to a_{N+1}
        lhs = _sums.fsum(_abs_diffs(a, a.N)[n - 1:]) + a.at(a.N + 1)
    rhs = _sums.fsum([a.at(n), a.at(2 * n), a.at(4 * n), a.weighted_sum(n, -1.0, 1.0)])
    return make_report(lhs, rhs)


def _lemma56_rhs(a: CoeffSeq, n: int, p: float) -> float:
    nu = np.arange(1, n, dtype=float)
    head = _sums.fsum(nu ** (2 * p - 2) * a.values[: n - 1] ** p)
    return n ** -p * head + a.weighted_sum(n, p - 2, p)


def lemma5_bound(a: CoeffSeq, n: int, p: float) -> IneqReport:
    """n^{-p} sum_{m<n} m^{-2} (sum_{nu<=m} nu^2 |Δa_nu|)^p against the
    two-piece coefficient functional shared with :func:`lemma6_bound`."""
    _check_n(a, n, lo=2)
    if not p > 1:
        raise ValueError("p must exceed 1")
    nu = np.arange(1, n, dtype=float)
    inner = _sums.cumsum(nu ** 2 * _abs_diffs(a, n - 1))
    lhs = n ** -p * _sums.fsum(nu ** -2 * inner ** p)
    return make_report(lhs, _lemma56_rhs(a, n, p))


def lemma6_bound(a: CoeffSeq, n: int, p: float) -> IneqReport:
    _check_n(a, n, lo=2)
    if not p > 1:
        raise ValueError("p must exceed 1")
    nu = np.arange(2, n + 1, dtype=float)
    # inner[m-1] = sum_{nu=m+1}^{n} nu |Δa_nu| for m = 1..n-1
    inner = _sums.rcumsum(nu * _abs_diffs(a, n)[1:])
    m = np.arange(1, n, dtype=float)
    lhs = n ** -p * _sums.fsum(m ** (p - 2) * inner ** p)
    return make_report(lhs, _lemma56_rhs(a, n, p))


def block_mean_bound(a: CoeffSeq, n: int) -> tuple[IneqReport, IneqReport | None]:
    """Pointwise control of a_n by nearby block means.

    First report: ``a_n`` against ``n^{-1} sum_{k=[n/2]+1}^{2n-2} a_k``.
    Second: ``n a_n`` against ``sum_{k=[n/2]}^{2n} a_k``, so its ratio is the
    reciprocal of the lower-bound constant; it is None when a_n = 0.
    """
    _check_n(a, n, lo=2)
    ext = a.extended(2 * n)
    upper = _sums.fsum(ext[n // 2: 2 * n - 2])
    first = make_report(ext[n - 1], upper / n)
    if ext[n - 1] == 0:
        return first, None
    window = _sums.fsum(ext[n // 2 - 1: 2 * n])
    return first, make_report(n * ext[n - 1], window)


@dataclass(frozen=True)
class ConvergenceCurve:
    schedule: tuple[int, ...]
    partial_sums: tuple[float, ...]
    increments: tuple[float, ...]
    convergent: bool

    @property
    def verdict(self) -> str:
        return "convergent" if self.convergent else "divergent"


def dyadic_schedule(N: int) -> list[int]:
    out, M = [], 1
    while M <= N:
        out.append(M)
        M *= 2
    return out


def coefficient_condition(a: CoeffSeq, p: float, mode: str = "eq21",
                          settings: Settings = DEFAULTS) -> ConvergenceCurve:
    """Partial sums of sum n^{p-2} a_n^p (``eq21``) or sum n^{2p-2} a_n^p
    (``eq28``) along M = 1, 2, 4, ... <= N, with a geometric-decay verdict."""
    if not p > 1:
        raise ValueError("p must exceed 1")
    exp = {"eq21": p - 2, "eq28": 2 * p - 2}.get(mode)
    if exp is None:
        raise ValueError(f"unknown mode {mode!r}")
    sched = dyadic_schedule(a.N)
    # very short sequences: extend with the (exactly zero) blocks past N
    while len(sched) < settings.decay_window + 1:
        sched.append(2 * sched[-1])
    L = max(sched[-1], a.N)
    n = np.arange(1, L + 1, dtype=float)
    terms = n ** exp * a.extended(L) ** p
    starts = [0] + sched[:-1]
    incs = [_sums.fsum(terms[s:e]) for s, e in zip(starts, sched)]
    partial = np.cumsum(incs)
    ok = geometric_decay(incs, settings.decay_ratio, settings.decay_window)
    return ConvergenceCurve(tuple(sched), tuple(float(x) for x in partial), tuple(incs), ok)
