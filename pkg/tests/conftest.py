import numpy as np
import pytest

from nbvslab import CoeffSeq, SeqFamily


def power(beta, N=64):
    return SeqFamily("power", {"beta": beta}, N)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def harmonic(N, tail=False):
    return CoeffSeq(1.0 / np.arange(1, N + 1), tail_beta=1.0 if tail else None)
