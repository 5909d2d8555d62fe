"""Compensated summation helpers.

Scalar sums go through :func:`math.fsum` (correctly rounded).  Running sums
use Neumaier's variant of Kahan summation so that prefix sums of long
coefficient vectors stay accurate to a few ulps.
"""

from __future__ import annotations

import math

import numpy as np


def fsum(values) -> float:
    return math.fsum(np.asarray(values, dtype=float).ravel().tolist())


def cumsum(values) -> np.ndarray:
    """Compensated running sum, ascending index."""
    x = np.asarray(values, dtype=float).ravel()
    out = np.empty_like(x)
    s = 0.0
    c = 0.0
    for i, v in enumerate(x.tolist()):
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        out[i] = s + c
    return out


def rcumsum(values) -> np.ndarray:
    """Compensated tail sums: ``out[i] = sum(values[i:])``."""
    x = np.asarray(values, dtype=float).ravel()
    return cumsum(x[::-1])[::-1]


def block_sums(values, starts) -> np.ndarray:
    """Sums of ``values[starts[i]:starts[i+1]]`` (last block runs to the end).

    Each block is summed independently with fsum, so no cancellation from
    differencing prefix sums.
    """
    x = np.asarray(values, dtype=float).ravel().tolist()
    starts = [int(s) for s in starts]
    ends = starts[1:] + [len(x)]
    return np.array([math.fsum(x[s:e]) for s, e in zip(starts, ends)])
