"""Nonnegative coefficient sequences and the variation classes RBVS, CQMS,
GBVS and NBVS.

A :class:`CoeffSeq` is a finite prefix ``a_1..a_N``; everything past ``N`` is
zero unless the sequence carries a power-law tail (``a_n = n**-tail_beta``
for ``n > N``), which the summation routines in :mod:`nbvslab.discrete_ineq`
use to evaluate infinite sums exactly.  Class membership is always judged on
the finite prefix: RBVS uses the zero tail, while the GBVS/NBVS block
conditions are only evaluated for indices ``n`` with ``2n + 1 <= N`` so that
no block difference depends on the artificial cut at ``N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import zeta

from . import _sums
from .config import DEFAULTS, Settings
from .verdicts import safe_ratio

FAMILY_KINDS = ("power", "power_log", "block_witness", "alternating", "monotone_custom", "explicit")
CLASSES = ("RBVS", "CQMS", "GBVS", "NBVS")


@dataclass(frozen=True, eq=False)
class CoeffSeq:
    values: np.ndarray
    tail_beta: float | None = None

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size < 1:
            raise ValueError("a coefficient sequence needs N >= 1")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("coefficients must be finite and nonnegative")
        if self.tail_beta is not None and not self.tail_beta > 0:
            raise ValueError("tail_beta must be positive")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def N(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.N

    def __repr__(self) -> str:
        tail = f", tail_beta={self.tail_beta}" if self.tail_beta is not None else ""
        return f"CoeffSeq(N={self.N}{tail})"

    def at(self, idx) -> np.ndarray | float:
        """``a_idx`` for 1-based indices; index 0 and below read as 0."""
        idx = np.asarray(idx, dtype=np.int64)
        out = np.zeros(idx.shape, dtype=float)
        inside = (idx >= 1) & (idx <= self.N)
        out[inside] = self.values[idx[inside] - 1]
        if self.tail_beta is not None:
            beyond = idx > self.N
            out[beyond] = idx[beyond].astype(float) ** (-self.tail_beta)
        return float(out) if out.ndim == 0 else out

    def extended(self, length: int) -> np.ndarray:
        """``a_1..a_length``, padding with the tail (or zeros)."""
        return self.at(np.arange(1, length + 1))

    def scaled(self, c: float) -> "CoeffSeq":
        if self.tail_beta is not None:
            raise ValueError("cannot scale a sequence with an analytic tail")
        return CoeffSeq(self.values * c)

    def weighted_sum(self, start: int, index_exp: float, power: float) -> float:
        """``sum_{k >= start} k**index_exp * a_k**power`` including the tail.

        Returns ``inf`` when the analytic tail diverges.
        """
        start = max(int(start), 1)
        total = 0.0
        if start <= self.N:
            k = np.arange(start, self.N + 1, dtype=float)
            a = self.values[start - 1:]
            total = _sums.fsum(k ** index_exp * a ** power)
        if self.tail_beta is not None:
            s = power * self.tail_beta - index_exp
            if s <= 1.0:
                return math.inf
            total += float(zeta(s, max(start, self.N + 1)))
        return total


@dataclass(frozen=True)
class SeqFamily:
    kind: str
    params: dict = field(default_factory=dict)
    N: int = 64

    def label(self) -> str:
        if self.kind == "explicit" or self.kind == "monotone_custom":
            return f"{self.kind}(N={self.N})"
        ps = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({ps})" if ps else self.kind

    def with_n(self, N: int) -> "SeqFamily":
        return SeqFamily(self.kind, dict(self.params), N)


def diff_sequence(a: CoeffSeq) -> np.ndarray:
    """Forward differences ``a_n - a_{n+1}`` for n = 1..N, with ``a_{N+1} = 0``."""
    v = a.values
    return v - np.append(v[1:], 0.0)


def _block_witness(rho: float, N: int) -> np.ndarray:
    # block k covers [4**k, 2*4**k] and carries rho**(k+1)
    v = np.zeros(N)
    k = 0
    while 4 ** k <= N:
        lo, hi = 4 ** k, min(2 * 4 ** k, N)
        v[lo - 1:hi] = rho ** (k + 1)
        k += 1
    return v


def generate_family(spec: SeqFamily, tail: bool = False) -> CoeffSeq:
    """Expand a family spec to its first ``spec.N`` terms.

    With ``tail=True`` power families keep their analytic tail.
    """
    N = int(spec.N)
    if N < 1:
        raise ValueError("N must be >= 1")
    p = spec.params
    n = np.arange(1, N + 1, dtype=float)
    kind = spec.kind
    if kind == "power":
        beta = float(p["beta"])
        if beta <= 0:
            raise ValueError("power family needs beta > 0")
        return CoeffSeq(n ** -beta, tail_beta=beta if tail else None)
    if kind == "power_log":
        beta = float(p["beta"])
        gamma = float(p.get("gamma", 1.0))
        if beta <= 0:
            raise ValueError("power_log family needs beta > 0")
        return CoeffSeq(n ** -beta * (1.0 + np.log(n)) ** -gamma)
    if kind == "block_witness":
        rho = float(p.get("rho", 0.5))
        if not 0 < rho < 1:
            raise ValueError("block_witness needs rho in (0, 1)")
        return CoeffSeq(_block_witness(rho, N))
    if kind == "alternating":
        c = float(p.get("c", 1.0))
        if c <= 0:
            raise ValueError("alternating family needs c > 0")
        return CoeffSeq(np.where(n % 2 == 0, c, 0.0))
    if kind in ("explicit", "monotone_custom"):
        vals = np.asarray(p["values"], dtype=float)
        if vals.size != N:
            raise ValueError(f"{kind} family: expected {N} values, got {vals.size}")
        if kind == "monotone_custom" and np.any(np.diff(vals) > 0):
            raise ValueError("monotone_custom values must be nonincreasing")
        return CoeffSeq(vals)
    raise ValueError(f"unknown family kind {kind!r}")


@dataclass(frozen=True)
class ClassConstant:
    k_min: float
    witness_index: int
    stable: bool | None = None


@dataclass(frozen=True)
class ClassReport:
    RBVS: ClassConstant
    CQMS: ClassConstant
    GBVS: ClassConstant
    NBVS: ClassConstant

    def __getitem__(self, name: str) -> ClassConstant:
        return getattr(self, name)

    def chain_ok(self, rtol: float = 1e-12) -> bool:
        """RBVS >= GBVS >= NBVS wherever the larger constant is finite."""
        r, g, nb = self.RBVS.k_min, self.GBVS.k_min, self.NBVS.k_min
        ok = True
        if math.isfinite(r):
            ok &= g <= r * (1 + rtol) + rtol
        if math.isfinite(g):
            ok &= nb <= g * (1 + rtol) + rtol
        return bool(ok)


def _sup(ratios: np.ndarray) -> tuple[float, int]:
    if ratios.size == 0:
        return 0.0, 1
    i = int(np.argmax(ratios))
    return float(ratios[i]), i + 1


def class_ratios(a: CoeffSeq) -> dict[str, np.ndarray]:
    """Per-index defining ratios of each class (index n = 1..N)."""
    N = a.N
    v = a.values
    absd = np.abs(diff_sequence(a))
    tail_var = _sums.rcumsum(absd)
    prefix = np.concatenate(([0.0], _sums.cumsum(absd)))
    # only blocks [n, 2n] whose differences are fully determined by the prefix
    n = np.arange(1, (N - 1) // 2 + 1)
    block = np.maximum(prefix[2 * n] - prefix[n - 1], 0.0)
    a_n = v[n - 1]
    a2n = v[2 * n - 1]

    support = np.nonzero(v)[0]
    last = int(support[-1]) + 1 if support.size else 0
    cq = np.zeros(max(last - 1, 0))
    if last > 1:
        cur, nxt = v[: last - 1], v[1:last]
        idx = np.arange(1, last)
        with np.errstate(divide="ignore", invalid="ignore"):
            cq = np.where(cur > 0, idx * (nxt / np.where(cur > 0, cur, 1.0) - 1.0), np.where(nxt > 0, np.inf, 0.0))
        cq = np.maximum(cq, 0.0)
    return {
        "RBVS": safe_ratio(tail_var, v),
        "CQMS": cq,
        "GBVS": safe_ratio(block, a_n),
        "NBVS": safe_ratio(block, a_n + a2n),
    }


def classify(a: CoeffSeq) -> ClassReport:
    """Minimal class constants of the finite prefix (zero tail)."""
    ratios = class_ratios(a)
    consts = {}
    for name in CLASSES:
        k, w = _sup(np.atleast_1d(ratios[name]))
        consts[name] = ClassConstant(k, w)
    return ClassReport(**consts)


def _is_stable(k_n: float, k_2n: float, factor: float) -> bool:
    if not (math.isfinite(k_n) and math.isfinite(k_2n)):
        return False
    return k_2n <= factor * k_n + 1e-12


def classify_family(spec: SeqFamily, settings: Settings = DEFAULTS) -> ClassReport:
    """Classify at N and 2N; ``stable`` marks constants that did not grow.

    Explicit and monotone_custom families have no continuation past their
    own values, so there stability just means a finite constant.
    """
    r1 = classify(generate_family(spec))
    fixed = spec.kind in ("explicit", "monotone_custom")
    r2 = r1 if fixed else classify(generate_family(spec.with_n(2 * spec.N)))
    consts = {}
    for name in CLASSES:
        c1, c2 = r1[name], r2[name]
        consts[name] = ClassConstant(c1.k_min, c1.witness_index, _is_stable(c1.k_min, c2.k_min, settings.stability_factor))
    return ClassReport(**consts)


def is_nbvs_stable(spec: SeqFamily, settings: Settings = DEFAULTS) -> bool:
    return bool(classify_family(spec, settings).NBVS.stable)


def embedding_audit(a: CoeffSeq) -> tuple[bool, ClassReport]:
    report = classify(a)
    return report.chain_ok(), report
