"""Numerical checks for Fourier series with NBVS-type coefficients."""

from .config import DEFAULTS, ConfigError, Settings
from .discrete_ineq import (
    IneqReport,
    block_mean_bound,
    coefficient_condition,
    hardy_33,
    hardy_34,
    lemma5_bound,
    lemma6_bound,
    tail_variation_bound,
)
from .seqclass import CoeffSeq, SeqFamily, classify, classify_family, embedding_audit, generate_family
from .theorems import (
    theorem3_functionals,
    verify_lemma2_dichotomy,
    verify_theorem1,
    verify_theorem2,
    verify_theorem4,
    verify_theorem5,
)
from .trigseries import Grid, PhiWeight, TrigPoly, WeightFn, best_approx, lp_norm, modulus, modulus_star

__all__ = [
    "DEFAULTS", "ConfigError", "Settings",
    "IneqReport", "block_mean_bound", "coefficient_condition", "hardy_33", "hardy_34",
    "lemma5_bound", "lemma6_bound", "tail_variation_bound",
    "CoeffSeq", "SeqFamily", "classify", "classify_family", "embedding_audit", "generate_family",
    "theorem3_functionals", "verify_lemma2_dichotomy", "verify_theorem1", "verify_theorem2",
    "verify_theorem4", "verify_theorem5",
    "Grid", "PhiWeight", "TrigPoly", "WeightFn", "best_approx", "lp_norm", "modulus", "modulus_star",
]
