"""Verification harnesses for the coefficient/smoothness theorems.

The constants in these results are existential, so each harness computes
both sides on a scale ladder and reports whether the ratio stays bounded.
Ladders, thresholds and truncations all come from :class:`Settings`.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls

from . import _sums
from .config import DEFAULTS, Settings
from .discrete_ineq import (
    ConvergenceCurve,
    block_mean_bound,
    coefficient_condition,
    lemma5_bound,
    lemma6_bound,
    make_report,
    tail_variation_bound,
)
from .report import Row, fmt_params
from .seqclass import CoeffSeq, SeqFamily, classify_family, generate_family
from .trigseries import (
    Grid,
    PhiWeight,
    TrigPoly,
    WeightFn,
    l2_difference_norms,
    lp_norm,
    modulus,
    modulus_l2,
    modulus_star,
    second_difference_integral,
    smoothness_integral,
    best_approx,
)
from .verdicts import BOUNDED, DECAYING, GROWING, band, geometric_decay, trend

SKIPPED = "skipped"
INCONCLUSIVE = "inconclusive"


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("NBVSLAB_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items):
    """Ordered map, threaded when NBVSLAB_THREADS > 1."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


@dataclass
class SweepResult:
    check_id: str
    family: str
    params: dict
    schedule: tuple
    reports: list
    verdict: str
    constants: dict = field(default_factory=dict)
    skipped: str | None = None
    extras: dict = field(default_factory=dict)

    @property
    def ratios(self) -> list[float]:
        return [r.ratio for r in self.reports]

    @property
    def passed(self) -> bool:
        return self.skipped is None and self.verdict in (BOUNDED, DECAYING)

    def rows(self) -> list[Row]:
        ps = fmt_params(self.params)
        if self.skipped is not None:
            return [Row(self.check_id, self.family, ps, "-", math.nan, math.nan, math.nan, f"skipped: {self.skipped}")]
        return [Row(self.check_id, self.family, ps, str(s), r.lhs, r.rhs, r.ratio, self.verdict)
                for s, r in zip(self.schedule, self.reports)]


def _skip(check_id, family, params, reason) -> SweepResult:
    return SweepResult(check_id, family.label(), params, (), [], SKIPPED, skipped=reason)


def _sweep(check_id, family, params, schedule, reports, settings, **kw) -> SweepResult:
    v = trend([r.ratio for r in reports], settings.trend_growth, settings.trend_window)
    consts = {"K": max((r.ratio for r in reports), default=0.0)}
    consts.update(kw.pop("constants", {}))
    return SweepResult(check_id, family.label(), params, tuple(schedule), list(reports), v, consts, **kw)


def family_coeffs(family: SeqFamily, N: int | None = None, tail: bool = False) -> CoeffSeq:
    """Family expanded to ``N`` terms (explicit families keep their own length)."""
    if family.kind in ("explicit", "monotone_custom") or N is None:
        return generate_family(family, tail=tail)
    return generate_family(family.with_n(N), tail=tail)


def nbvs_precondition(family: SeqFamily, settings: Settings = DEFAULTS) -> str | None:
    """None when the family is NBVS-stable, otherwise the reason it is not."""
    rep = classify_family(family, settings)
    if not rep.NBVS.stable:
        return f"family not NBVS-stable (k_min={rep.NBVS.k_min:.4g})"
    return None


# ---------------------------------------------------------------------------
# discrete lemma sweeps

LEMMA_IDS = ("4", "5", "6", "38", "42")


def lemma_sweep(lemma_id: str, family: SeqFamily, p: float = 2.0, settings: Settings = DEFAULTS,
                N: int | None = None) -> SweepResult:
    """Ratio ladder for one of the discrete NBVS estimates over settings.ladder."""
    ladder = settings.ladder
    if N is None:
        N = max(settings.family_n, 4 * max(ladder)) if family.kind != "block_witness" else 2048
    a = family_coeffs(family, N, tail=family.kind == "power")
    params = {"p": p} if lemma_id in ("5", "6") else {}
    fn = {
        "4": lambda n: tail_variation_bound(a, n),
        "5": lambda n: lemma5_bound(a, n, p),
        "6": lambda n: lemma6_bound(a, n, p),
        "38": lambda n: block_mean_bound(a, n)[0],
        "42": lambda n: block_mean_bound(a, n)[1],
    }[lemma_id]
    reports = pmap(fn, ladder)
    sched = [n for n, r in zip(ladder, reports) if r is not None]
    reports = [r for r in reports if r is not None]
    return _sweep(f"lemma{lemma_id}", family, params, sched, reports, settings)


# ---------------------------------------------------------------------------
# coefficient bound for omega_p(f, 1/n) <= K1 n^{-1} (head)^{1/p} + K2 (tail)^{1/p}

def theorem1_rhs_parts(a: CoeffSeq, n: int, p: float) -> tuple[float, float]:
    nu = np.arange(1, n, dtype=float)
    head = _sums.fsum(nu ** (2 * p - 2) * a.extended(n - 1) ** p) if n > 1 else 0.0
    tail = a.weighted_sum(n, p - 2, p)
    return head ** (1 / p) / n, tail ** (1 / p)


def verify_theorem1(family: SeqFamily, p: float = 2.0, parity: str = "cosine",
                    settings: Settings = DEFAULTS, grid: Grid | None = None,
                    N: int | None = None) -> SweepResult:
    params = {"p": p, "parity": parity}
    reason = nbvs_precondition(family, settings)
    if reason is None:
        cond = coefficient_condition(family_coeffs(family, settings.family_n), p, "eq21", settings)
        if not cond.convergent:
            reason = "coefficient condition (n^{p-2} a_n^p summable) fails"
    if reason is not None:
        return _skip("theorem1", family, params, reason)
    a = family_coeffs(family, N or settings.theorem1_n)
    f = TrigPoly(parity, a)
    grid = grid or Grid.for_degree(a.N, settings.grid_oversample)
    ladder = settings.ladder

    def point(n):
        lhs = modulus(f, p, 1.0 / n, grid, settings.t_steps, settings.sup_tol)
        r1, r2 = theorem1_rhs_parts(a, n, p)
        return lhs, r1, r2

    pts = pmap(point, ladder)
    reports = [make_report(lhs, r1 + r2) for lhs, r1, r2 in pts]
    # least-squares split of the empirical constant between the two pieces
    A = np.array([[r1 / lhs, r2 / lhs] for lhs, r1, r2 in pts if lhs > 0])
    k12 = nnls(A, np.ones(len(A)))[0] if len(A) else np.zeros(2)
    params["M"] = grid.M
    return _sweep("theorem1", family, params, ladder, reports, settings,
                  constants={"K1_fit": float(k12[0]), "K2_fit": float(k12[1])})


# ---------------------------------------------------------------------------
# two-sided weighted equivalence: sum lambda(n) a_n^r  <->  I(f, lambda, r, p)

@dataclass
class WeightChecks:
    monotone: bool
    doubling: tuple[float, float]
    eq25_ratios: list
    eq25_ok: bool
    eq26_ratios: list
    eq26_ok: bool

    @property
    def doubling_ok(self) -> bool:
        k1, k2 = self.doubling
        return k1 > 0 and math.isfinite(k2)


def check_weight(lam: WeightFn, r: float, p: float, settings: Settings = DEFAULTS,
                 levels: int = 14, tail_levels: int = 20) -> WeightChecks:
    """Numerical checks of the two growth conditions on lambda.

    Condition A: sum_{n<=m} lambda(n) n^{r/p-r} <= K lambda(m) m^{r/p-r+1}.
    Condition B: sum_{n>=m} lambda(n) n^{r(1/p-3)} <= K lambda(m) m^{1+r(1/p-3)}.
    Each passes when its ratio ladder over m = 2^j is not growing; B also
    requires the series itself to converge by the dyadic-increment rule.
    """
    ms = [2 ** j for j in range(levels + 1)]
    n_all = np.arange(1, 2 ** tail_levels + 1, dtype=float)
    lam_n = lam(n_all)

    ea = r / p - r
    head = np.cumsum(lam_n[: ms[-1]] * n_all[: ms[-1]] ** ea)
    a_ratios = [float(head[m - 1] / (lam(m) * m ** (ea + 1))) for m in ms]
    a_ok = trend(a_ratios, settings.trend_growth, settings.trend_window) != GROWING

    eb = r * (1 / p - 3)
    terms = lam_n * n_all ** eb
    sched = [2 ** j for j in range(tail_levels + 1)]
    incs = [_sums.fsum(terms[s:e]) for s, e in zip([0] + sched[:-1], sched)]
    converges = geometric_decay(incs, settings.decay_ratio, settings.decay_window)
    b_ratios = []
    if converges:
        # tail past the truncation: continue the last dyadic ratio geometrically
        q = incs[-1] / incs[-2] if incs[-2] > 0 else 0.0
        beyond = incs[-1] * q / (1 - q) if q < 1 else math.inf
        tails = _sums.rcumsum(terms) + beyond
        b_ratios = [float(tails[m - 1] / (lam(m) * m ** (1 + eb))) for m in ms]
    b_ok = converges and trend(b_ratios, settings.trend_growth, settings.trend_window) != GROWING
    return WeightChecks(lam.is_monotone(), lam.doubling_constants(), a_ratios, a_ok, b_ratios, b_ok)


def verify_theorem2(family: SeqFamily, lam: WeightFn, r: float = 2.0, p: float = 2.0,
                    settings: Settings = DEFAULTS, t_steps: int | None = None):
    """Forward and reverse sweeps over truncations N in settings.theorem2_ladder.

    Returns ``(forward, reverse, checks)``.
    """
    t_steps = t_steps or settings.theorem2_t_steps
    params = {"p": p, "r": r, "lam_gamma": lam.gamma, "lam_delta": lam.delta}
    checks = check_weight(lam, r, p, settings)
    reason = nbvs_precondition(family, settings)
    if reason is None and not (checks.monotone and checks.doubling_ok):
        reason = "weight is not monotone with a doubling constant"
    if reason is not None:
        skip = _skip("theorem2_fwd", family, params, reason)
        return skip, _skip("theorem2_rev", family, params, reason), checks

    ladder = settings.theorem2_ladder
    if family.kind in ("explicit", "monotone_custom"):
        ladder = [family.N]

    def point(N):
        a = family_coeffs(family, N)
        n = np.arange(1, a.N + 1, dtype=float)
        coef = _sums.fsum(lam(n) * a.values ** r)
        I = smoothness_integral(TrigPoly("cosine", a), lam, r, p, t_steps,
                                rel_tol=settings.integral_rel_tol)
        return coef, I

    pts = pmap(point, ladder)
    fwd = _sweep("theorem2_fwd", family, params, ladder,
                 [make_report(c, I.value) for c, I in pts], settings)
    fwd.extras["integrals"] = [I for _, I in pts]
    if not (checks.eq25_ok and checks.eq26_ok):
        failed = [name for name, ok in (("A", checks.eq25_ok), ("B", checks.eq26_ok)) if not ok]
        rev = _skip("theorem2_rev", family, params, f"weight growth condition {'/'.join(failed)} fails")
    else:
        rev = _sweep("theorem2_rev", family, params, ladder,
                     [make_report(I.value, c) for c, I in pts], settings)
    lp = verify_lemma2_dichotomy(family, p, settings) if family.kind not in ("explicit", "monotone_custom") else None
    if lp is not None:
        fwd.extras["lp_membership"] = {"eq21": lp.eq21.convergent, "cauchy": lp.cauchy_convergent,
                                       "agree": lp.agree}
    return fwd, rev, checks


# ---------------------------------------------------------------------------
# nine equivalent finiteness conditions

THEOREM3_NAMES = (
    "coef_sum", "s_double_sum", "tail_sum", "omega_sum", "best_approx_sum",
    "int_Phi", "int_phi_abs_f", "int_phi_inv_x", "int_second_diff",
)


@dataclass
class Theorem3Result:
    family: str
    params: dict
    increments: dict
    convergent: dict
    consistent: bool
    skipped: str | None = None

    def rows(self) -> list[Row]:
        ps = fmt_params(self.params)
        if self.skipped:
            return [Row("theorem3", self.family, ps, "-", math.nan, math.nan, math.nan, f"skipped: {self.skipped}")]
        out = []
        for name in THEOREM3_NAMES:
            inc = self.increments[name]
            last = inc[-1]
            q = last / inc[-2] if inc[-2] > 0 else (0.0 if last == 0 else math.inf)
            out.append(Row(f"theorem3:{name}", self.family, ps, str(len(inc)), float(np.sum(inc)), last, q,
                           "convergent" if self.convergent[name] else "divergent"))
        return out


def _dyadic_blocks(values: np.ndarray, J: int) -> list[float]:
    """Sums over {1}, (1,2], (2,4], ..., (2^{J-1}, 2^J] of values[n-1]."""
    edges = [0] + [2 ** j for j in range(J + 1)]
    return [_sums.fsum(values[lo:hi]) for lo, hi in zip(edges[:-1], edges[1:])]


def _tail_sums(a: CoeffSeq, length: int, index_exp: float, power: float) -> np.ndarray:
    """sum_{k >= n} k^index_exp a_k^power for n = 1..length, tail included."""
    ext = a.extended(max(length, a.N))
    k = np.arange(1, ext.size + 1, dtype=float)
    out = _sums.rcumsum(k ** index_exp * ext ** power) + a.weighted_sum(ext.size + 1, index_exp, power)
    return out[:length]


def _loglog_interp(n: np.ndarray, nodes: np.ndarray, vals: np.ndarray) -> np.ndarray:
    vals = np.asarray(vals, dtype=float)
    if np.all(vals > 0):
        return np.exp(np.interp(np.log(n), np.log(nodes), np.log(vals)))
    return np.interp(n, nodes, vals)


def theorem3_functionals(family: SeqFamily, phi: PhiWeight, r: float = 3.0, p: float = 2.0,
                         settings: Settings = DEFAULTS, levels: int | None = None) -> Theorem3Result:
    """Dyadic increments of all nine quantities and their convergence verdicts.

    Sums over n are cut into blocks (2^{j-1}, 2^j]; integrals over x or t into
    [pi 2^{-j}, pi 2^{-j+1}], so block j of every quantity probes the same
    scale.  The smoothness sums evaluate omega at n = 2^j only and
    interpolate in log-log inside a block (Cauchy condensation).  For p = 2
    the moduli use the Parseval route with the analytic tail of power
    families; otherwise a grid of degree settings.theorem3_grid_n.
    """
    J = levels or settings.theorem3_levels
    s = 1 / p - 1 / r + settings.theorem3_s_offset
    params = {"p": p, "r": r, "phi_s": phi.s, "s": s}
    if not 1 < p < r:
        raise ValueError("need 1 < p < r")
    if not math.isfinite(phi.square_growth()):
        return Theorem3Result(family.label(), params, {}, {}, False, "phi fails phi_{n^2} <= K phi_n")
    spectral = p == 2
    N = settings.theorem3_spectral_n if spectral else settings.theorem3_grid_n
    a = family_coeffs(family, N, tail=family.kind == "power")
    f = TrigPoly("cosine", a)
    nmax = 2 ** J
    n = np.arange(1, nmax + 1, dtype=float)
    an = a.extended(nmax)
    phin = phi.seq(n)
    inc: dict[str, list[float]] = {}

    inc["coef_sum"] = _dyadic_blocks(phin * n ** (r - 2) * an ** r, J)

    inner = _sums.cumsum(n ** ((s + 1) * p - 2) * an ** p)
    inc["s_double_sum"] = _dyadic_blocks(phin * n ** (-r * s + r / p - 2) * inner ** (r / p), J)

    inc["tail_sum"] = _dyadic_blocks(phin * n ** (r / p - 2) * _tail_sums(a, nmax, p - 2, p) ** (r / p), J)

    nodes = np.array([2.0 ** j for j in range(J + 1)])
    if spectral:
        om = pmap(lambda m: modulus_l2(f, 1.0 / m, settings.t_steps, tol=settings.sup_tol), nodes)
        E = np.sqrt(np.pi * _tail_sums(a, nmax + 1, 0.0, 2.0)[1:])
    else:
        g = Grid.for_degree(a.N, settings.grid_oversample)
        om = pmap(lambda m: modulus(f, p, 1.0 / m, g, settings.t_steps, settings.sup_tol), nodes)
        ev = pmap(lambda m: best_approx(f, int(m), p, g)[0] if m < a.N else 0.0, nodes)
        E = _loglog_interp(n, nodes, ev)
    omega = _loglog_interp(n, nodes, om)
    inc["omega_sum"] = _dyadic_blocks(phin * n ** (r / p - 2) * omega ** r, J)
    inc["best_approx_sum"] = _dyadic_blocks(phin * n ** (r / p - 2) * E ** r, J)

    xg, wg = np.polynomial.legendre.leggauss(2 * settings.theorem3_nodes)
    lo_edges = np.pi * 2.0 ** -np.arange(1, J + 2)
    xs = ((lo_edges / 2)[:, None] * (xg[None, :] + 1) + lo_edges[:, None])
    ws = (lo_edges / 2)[:, None] * wg[None, :]
    fx = np.abs(f.naive(xs.ravel())).reshape(xs.shape)
    inc["int_Phi"] = list(np.sum(ws * fx ** (r - r / p + 1) * phi.Phi(fx, r, p), axis=1))
    inc["int_phi_abs_f"] = list(np.sum(ws * fx ** r * phi.step(fx), axis=1))
    inc["int_phi_inv_x"] = list(np.sum(ws * fx ** r * phi.step(1.0 / xs), axis=1))

    tg, twg = np.polynomial.legendre.leggauss(settings.theorem3_nodes)
    ts = ((lo_edges / 2)[:, None] * (tg[None, :] + 1) + lo_edges[:, None])
    tw = (lo_edges / 2)[:, None] * twg[None, :]
    if spectral:
        half = 0.5 * l2_difference_norms(f, ts.ravel(), second=True) ** 2
    else:
        half = second_difference_integral(f, p, g, ts.ravel())
    half = half.reshape(ts.shape)
    inc["int_second_diff"] = list(np.sum(tw * phi.step(1.0 / ts) * ts ** (-r / p) * half ** (r / p), axis=1))

    inc = {k: [float(x) for x in v] for k, v in inc.items()}
    conv = {k: geometric_decay(v, settings.decay_ratio, settings.decay_window) for k, v in inc.items()}
    consistent = len(set(conv.values())) == 1
    return Theorem3Result(family.label(), params, inc, conv, consistent)


# ---------------------------------------------------------------------------
# Lipschitz dichotomy: summability of n^{2p-2} a_n^p  <->  Lipschitz  <->  f' in L^p

def endpoint_verdict(ratios, band_limit: float, growth: float) -> str:
    """bounded if max/min < band_limit, growing if last/first >= 1 + growth."""
    if band(ratios) < band_limit:
        return BOUNDED
    if ratios[0] > 0 and ratios[-1] / ratios[0] >= 1 + growth:
        return GROWING
    return INCONCLUSIVE


def _cauchy_increments(f: TrigPoly, p: float, levels, settings: Settings) -> list[float]:
    """||S_{2N} - S_N||_p^p for N = 2^j, j in levels (full period)."""
    top = 2 ** (max(levels) + 1)
    g = Grid.for_degree(top, settings.grid_oversample)
    out = []
    for j in levels:
        N = 2 ** j
        out.append(lp_norm(f.section(N, 2 * N), p, g) ** p)
    return out


@dataclass
class Theorem4Result:
    family: str
    params: dict
    eq28: ConvergenceCurve
    lipschitz: SweepResult
    lipschitz_verdict: str
    derivative_increments: list
    derivative_finite: bool
    consistent: bool

    def rows(self) -> list[Row]:
        ps = fmt_params(self.params)
        out = [Row("theorem4:eq28", self.family, ps, str(self.eq28.schedule[-1]), self.eq28.partial_sums[-1],
                   self.eq28.increments[-1], _last_q(self.eq28.increments), self.eq28.verdict)]
        out += [Row("theorem4:lipschitz", self.family, ps, s, r.lhs, r.rhs, r.ratio, self.lipschitz_verdict)
                for s, r in zip(self.lipschitz.schedule, self.lipschitz.reports)]
        d = self.derivative_increments
        out.append(Row("theorem4:derivative", self.family, ps, str(len(d)), float(np.sum(d)), d[-1], _last_q(d),
                       "finite" if self.derivative_finite else "growing"))
        state = "consistent" if self.consistent else "inconsistent"
        out.append(Row("theorem4:dichotomy", self.family, ps, "-", math.nan, math.nan, math.nan,
                       f"{state} ({self.eq28.verdict}+{self.lipschitz_verdict})"))
        return out


def _last_q(inc) -> float:
    if inc[-2] > 0:
        return inc[-1] / inc[-2]
    return 0.0 if inc[-1] == 0 else math.inf


def verify_theorem4(family: SeqFamily, p: float = 2.0, settings: Settings = DEFAULTS) -> Theorem4Result:
    params = {"p": p}
    a = family_coeffs(family, settings.family_n)
    eq28 = coefficient_condition(a, p, "eq28", settings)
    f = TrigPoly("sine", a)
    g = Grid.for_degree(a.N, settings.grid_oversample)
    ladder = settings.ladder
    om = pmap(lambda n: modulus(f, p, 1.0 / n, g, settings.t_steps, settings.sup_tol), ladder)
    reports = [make_report(w, 1.0 / n) for w, n in zip(om, ladder)]
    lip = SweepResult("theorem4:lipschitz", family.label(), params, tuple(f"h=1/{n}" for n in ladder), reports,
                      trend([r.ratio for r in reports], settings.trend_growth, settings.trend_window))
    lip_verdict = endpoint_verdict([r.ratio for r in reports], settings.lipschitz_band, settings.lipschitz_growth)
    levels = [j for j in settings.cauchy_levels if 2 ** (j + 1) <= a.N] or [0, 1, 2, 3]
    d_inc = _cauchy_increments(f.derivative(), p, levels, settings)
    d_ok = geometric_decay(d_inc, settings.decay_ratio, settings.decay_window)
    consistent = lip_verdict != INCONCLUSIVE and eq28.convergent == (lip_verdict == BOUNDED) == d_ok
    return Theorem4Result(family.label(), params, eq28, lip, lip_verdict, d_inc, d_ok, consistent)


# ---------------------------------------------------------------------------
# Zygmund class => omega_p(f, h) = O(h |log h|^{1/p})

@dataclass
class Theorem5Result:
    family: str
    params: dict
    zygmund: SweepResult
    log_ratio: SweepResult
    plain_growth: float
    lower_45: SweepResult
    coeff_decay: SweepResult
    skipped: str | None = None

    @property
    def passed(self) -> bool:
        return self.skipped is None and self.log_ratio.verdict == BOUNDED and self.lower_45.passed \
            and self.coeff_decay.passed

    def rows(self) -> list[Row]:
        if self.skipped:
            return [Row("theorem5", self.family, fmt_params(self.params), "-", math.nan, math.nan, math.nan,
                        f"skipped: {self.skipped}")]
        out = []
        for sw in (self.zygmund, self.log_ratio, self.lower_45, self.coeff_decay):
            out += sw.rows()
        return out


def verify_theorem5(family: SeqFamily, p: float = 2.0, settings: Settings = DEFAULTS) -> Theorem5Result:
    params = {"p": p}
    reason = nbvs_precondition(family, settings)
    a = family_coeffs(family, settings.family_n)
    f = TrigPoly("cosine", a)
    g = Grid.for_degree(a.N, settings.grid_oversample)
    zl = settings.zygmund_ladder
    stars = pmap(lambda n: modulus_star(f, p, 1.0 / n, g, settings.t_steps, settings.sup_tol), zl)
    zyg = _sweep("theorem5:zygmund", family, params, [f"h=1/{n}" for n in zl],
                 [make_report(w, 1.0 / n) for w, n in zip(stars, zl)], settings)
    if reason is None and zyg.verdict == GROWING:
        reason = "omega* / h grows: not in the Zygmund class"
    if reason is not None:
        empty = _skip("theorem5", family, params, reason)
        return Theorem5Result(family.label(), params, zyg, empty, math.nan, empty, empty, reason)

    oms = pmap(lambda n: modulus(f, p, 1.0 / n, g, settings.t_steps, settings.sup_tol), zl)
    reports = [make_report(w, (1.0 / n) * math.log(n) ** (1 / p)) for w, n in zip(oms, zl)]
    ratios = [r.ratio for r in reports]
    # a rise by more than the band factor anywhere along the ladder
    rises = [ratios[i] / min(ratios[: i + 1]) if min(ratios[: i + 1]) > 0 else (math.inf if ratios[i] > 0 else 1.0)
             for i in range(len(ratios))]
    verdict = GROWING if max(rises) > settings.zygmund_band else BOUNDED
    logr = SweepResult("theorem5:log", family.label(), params, tuple(f"h=1/{n}" for n in zl), reports, verdict,
                       {"K": max(ratios), "band": band(ratios)})
    plain = [w * n for w, n in zip(oms, zl)]
    plain_growth = plain[-1] / plain[0] if plain[0] > 0 else math.nan

    star_at = dict(zip(zl, stars))
    ladder = settings.ladder
    extra = [n for n in ladder if n not in star_at]
    if extra:
        star_at.update(zip(extra, pmap(lambda n: modulus_star(f, p, 1.0 / n, g, settings.t_steps,
                                                              settings.sup_tol), extra)))
    low = _sweep("theorem5:lower", family, params, ladder,
                 [make_report(n ** (1 - 1 / p) * a.at(n), star_at[n]) for n in ladder], settings)
    dec = _sweep("theorem5:coeff", family, params, ladder,
                 [make_report(a.at(n), n ** (-2 + 1 / p)) for n in ladder], settings)
    return Theorem5Result(family.label(), params, zyg, logr, plain_growth, low, dec)


# ---------------------------------------------------------------------------
# L^p membership dichotomy

@dataclass
class Lemma2Result:
    family: str
    params: dict
    eq21: ConvergenceCurve
    cauchy_increments: list
    cauchy_convergent: bool

    @property
    def agree(self) -> bool:
        return self.eq21.convergent == self.cauchy_convergent

    def rows(self) -> list[Row]:
        ps = fmt_params(self.params)
        c = self.cauchy_increments
        return [
            Row("lemma2:eq21", self.family, ps, str(self.eq21.schedule[-1]), self.eq21.partial_sums[-1],
                self.eq21.increments[-1], _last_q(self.eq21.increments), self.eq21.verdict),
            Row("lemma2:cauchy", self.family, ps, str(len(c)), float(np.sum(c)), c[-1], _last_q(c),
                "convergent" if self.cauchy_convergent else "divergent"),
            Row("lemma2:dichotomy", self.family, ps, "-", math.nan, math.nan, math.nan,
                "consistent" if self.agree else "inconsistent"),
        ]


def verify_lemma2_dichotomy(family: SeqFamily, p: float = 2.0, settings: Settings = DEFAULTS) -> Lemma2Result:
    """Summability of n^{p-2} a_n^p against L^p-Cauchy behaviour of partial sums.

    The Cauchy increments are ||S_{2N} - S_N||_p^p, the p-th power being the
    quantity that adds up across dyadic blocks.
    """
    params = {"p": p}
    a = family_coeffs(family, settings.family_n)
    eq21 = coefficient_condition(a, p, "eq21", settings)
    levels = [j for j in settings.cauchy_levels if 2 ** (j + 1) <= a.N] or [0, 1, 2, 3]
    inc = _cauchy_increments(TrigPoly("cosine", a), p, levels, settings)
    ok = geometric_decay(inc, settings.decay_ratio, settings.decay_window)
    return Lemma2Result(family.label(), params, eq21, inc, ok)
