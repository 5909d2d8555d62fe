"""Ratio conventions and the scale-trend rules shared by every harness."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

BOUNDED = "bounded"
GROWING = "growing"
DECAYING = "decaying"


def safe_ratio(num, den):
    """``num/den`` with 0/0 -> 0 and positive/0 -> +inf.

    Works elementwise on arrays and returns a float for scalar input.
    """
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den > 0, num / np.where(den > 0, den, 1.0), np.where(num > 0, np.inf, 0.0))
    if out.ndim == 0:
        return float(out)
    return out


def _step_factors(values: Sequence[float]) -> list[float]:
    factors = []
    for prev, cur in zip(values[:-1], values[1:]):
        if prev == cur:
            factors.append(1.0)
        elif prev == 0.0:
            factors.append(math.inf)
        elif math.isinf(prev):
            factors.append(1.0 if math.isinf(cur) else 0.0)
        else:
            factors.append(cur / prev)
    return factors


def trend(values: Sequence[float], growth: float = 0.15, window: int = 3) -> str:
    """Classify a ladder of ratios (one value per doubling of scale).

    Only the last ``window`` doublings are inspected.  ``growing`` means the
    ratio rose by at least ``growth`` in two consecutive doublings; any
    infinite ratio also counts as growing.  ``decaying`` is the mirror rule.
    """
    vals = [float(v) for v in values]
    if any(math.isinf(v) or math.isnan(v) for v in vals):
        return GROWING
    tail = vals[-(window + 1):]
    f = _step_factors(tail)
    up = [x >= 1.0 + growth for x in f]
    down = [x <= 1.0 / (1.0 + growth) for x in f]
    for i in range(len(f) - 1):
        if up[i] and up[i + 1]:
            return GROWING
    for i in range(len(f) - 1):
        if down[i] and down[i + 1]:
            return DECAYING
    return BOUNDED


def geometric_decay(increments: Sequence[float], ratio: float = 0.9, window: int = 3) -> bool:
    """True iff each of the last ``window`` increment ratios is <= ``ratio``.

    Increments are the contributions of successive dyadic blocks.  A run of
    exact zeros counts as decaying.
    """
    inc = [abs(float(v)) for v in increments]
    if len(inc) < window + 1:
        raise ValueError(f"need at least {window + 1} increments, got {len(inc)}")
    tail = inc[-(window + 1):]
    for prev, cur in zip(tail[:-1], tail[1:]):
        if cur == 0.0:
            continue
        if prev == 0.0 or cur / prev > ratio:
            return False
    return True


def band(values: Sequence[float]) -> float:
    """max/min of a positive ladder (inf if some entry is 0 and another is not)."""
    vals = np.asarray(values, dtype=float)
    hi, lo = float(vals.max()), float(vals.min())
    if hi == 0.0:
        return 1.0
    return hi / lo if lo > 0 else math.inf
