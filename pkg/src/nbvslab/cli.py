"""Command-line entry point.

Exit codes: 0 when every verdict passes, 1 on a failed or falsified
verdict, 2 on invalid input (bad flags, malformed config, unwritable
output).  Precondition skips are reported in the output but do not fail
the run.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .config import SETTING_KEYS, ConfigError, load_config, settings_from
from .discrete_ineq import hardy_suite
from .report import Row, emit_report, fmt_params
from .seqclass import CLASSES, FAMILY_KINDS, CoeffSeq, SeqFamily, classify_family, generate_family
from .theorems import (
    LEMMA_IDS,
    lemma_sweep,
    theorem3_functionals,
    verify_lemma2_dichotomy,
    verify_theorem1,
    verify_theorem2,
    verify_theorem4,
    verify_theorem5,
)
from .trigseries import Grid, PhiWeight, TrigPoly, WeightFn, block_functional, lp_norm, modulus, modulus_star
from .verdicts import GROWING

# run-level keys (everything else must be a Settings field)
RUN_DEFAULTS = {
    "family": "power",
    "beta": 1.0,
    "gamma": 1.0,
    "rho": 0.5,
    "c": 1.0,
    "values": None,
    "n": 64,
    "p": 2.0,
    "r": 2.0,
    "parity": "both",
    "lam_c": 1.0,
    "lam_gamma": 0.5,
    "lam_delta": 0.0,
    "phi_s": 0.0,
    "random": 1000,
    "seed": 0,
    "max_len": 64,
    "ids": ["4", "5", "6", "38", "42"],
    "format": "csv",
    "out": None,
}
RUN_KEYS = frozenset(RUN_DEFAULTS) | SETTING_KEYS

LEMMA_CHOICES = ("3a", "3b") + LEMMA_IDS
THEOREM_CHOICES = ("1", "2", "3", "4", "5", "L2")


class InvalidInput(Exception):
    pass


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="flat 'key = JSON value' file; flags override it")
    parser.add_argument("--family", choices=FAMILY_KINDS)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--gamma", type=float, help="log exponent of power_log")
    parser.add_argument("--rho", type=float)
    parser.add_argument("--c", type=float)
    parser.add_argument("--values", type=json.loads, help="JSON list for explicit/monotone_custom")
    parser.add_argument("--n", type=int, help="truncation length N")
    parser.add_argument("--p", type=float)
    parser.add_argument("--r", type=float)
    parser.add_argument("--parity", choices=("cosine", "sine", "both"))
    parser.add_argument("--lam-c", dest="lam_c", type=float)
    parser.add_argument("--lam-gamma", dest="lam_gamma", type=float)
    parser.add_argument("--lam-delta", dest="lam_delta", type=float)
    parser.add_argument("--phi-s", dest="phi_s", type=float)
    parser.add_argument("--random", type=int, help="trial count for the Hardy suites")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--max-len", dest="max_len", type=int)
    parser.add_argument("--set", action="append", default=[], metavar="KEY=JSON",
                        help="override a tolerance or ladder, e.g. --set ladder=[8,16,32,64]")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nbvslab", description="Coefficient-class and smoothness checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("classify", "variation-class constants of a family"),
                        ("sweep", "run several lemma sweeps on one family"),
                        ("selftest", "quick numerical self-checks")):
        _common(sub.add_parser(name, help=help_))
    lem = sub.add_parser("lemma", help="discrete inequality checks")
    lem.add_argument("--id", required=True, choices=LEMMA_CHOICES)
    _common(lem)
    thm = sub.add_parser("theorem", help="theorem harnesses")
    thm.add_argument("--id", required=True, choices=THEOREM_CHOICES)
    _common(thm)
    return parser


def resolve(args: argparse.Namespace) -> tuple[dict, object]:
    """Merge defaults, config file and flags; split off Settings."""
    values = dict(RUN_DEFAULTS)
    if args.config:
        file_values = load_config(args.config)
        unknown = sorted(set(file_values) - RUN_KEYS)
        if unknown:
            text = open(args.config).read().splitlines()
            for lineno, line in enumerate(text, start=1):
                if line.partition("=")[0].strip() == unknown[0]:
                    raise ConfigError(f"{args.config}:{lineno}: unknown key {unknown[0]!r}")
        values.update(file_values)
    for key in RUN_DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    for item in args.set:
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in RUN_KEYS:
            raise ConfigError(f"--set {item!r}: unknown key {key!r}")
        try:
            values[key] = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--set {item!r}: value is not JSON ({exc.msg})") from None
    try:
        settings = settings_from(values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    return values, settings


def family_from(values: dict) -> SeqFamily:
    kind = values["family"]
    if kind not in FAMILY_KINDS:
        raise InvalidInput(f"unknown family {kind!r}")
    params = {
        "power": lambda: {"beta": values["beta"]},
        "power_log": lambda: {"beta": values["beta"], "gamma": values["gamma"]},
        "block_witness": lambda: {"rho": values["rho"]},
        "alternating": lambda: {"c": values["c"]},
        "explicit": lambda: {"values": values["values"]},
        "monotone_custom": lambda: {"values": values["values"]},
    }[kind]()
    N = int(values["n"])
    if kind in ("explicit", "monotone_custom"):
        if not isinstance(values["values"], list):
            raise InvalidInput(f"{kind} family needs a 'values' list")
        N = len(values["values"])
    fam = SeqFamily(kind, params, N)
    generate_family(fam)  # validates parameters
    return fam


def _summary(check_id, family, params, verdict, lhs=math.nan, rhs=math.nan, ratio=math.nan, scale="-") -> Row:
    return Row(check_id, family, fmt_params(params), scale, lhs, rhs, ratio, verdict)


def cmd_classify(values, settings):
    fam = family_from(values)
    rep = classify_family(fam, settings)
    rows = []
    for name in CLASSES:
        c = rep[name]
        verdict = "stable" if c.stable else "unstable"
        rows.append(_summary(f"classify:{name}", fam.label(), {"witness": c.witness_index}, verdict,
                             ratio=c.k_min, scale=str(fam.N)))
    chain = rep.chain_ok()
    rows.append(_summary("classify:chain", fam.label(), {}, "ok" if chain else "violated"))
    return rows, chain


def cmd_lemma(lemma_id, values, settings):
    p = float(values["p"])
    if lemma_id in ("3a", "3b"):
        reps = hardy_suite(lemma_id, p, int(values["random"]), int(values["max_len"]), int(values["seed"]),
                           settings.rel_tol)
        rows = [Row(f"lemma{lemma_id}", "random", fmt_params({"p": p, "seed": values["seed"]}), str(i),
                    r.lhs, r.rhs, r.ratio, "holds" if r.holds else "fails") for i, r in enumerate(reps)]
        held = sum(r.holds for r in reps)
        rows.append(_summary(f"lemma{lemma_id}:summary", "random", {"p": p, "constant": p ** p},
                             f"{held}/{len(reps)} hold", ratio=max((r.ratio for r in reps), default=0.0)))
        return rows, held == len(reps)
    res = lemma_sweep(lemma_id, family_from(values), p, settings)
    return res.rows(), res.verdict != GROWING


def cmd_theorem(theorem_id, values, settings):
    fam = family_from(values)
    p, r = float(values["p"]), float(values["r"])
    if theorem_id == "1":
        parities = ("cosine", "sine") if values["parity"] == "both" else (values["parity"],)
        results = [verify_theorem1(fam, p, par, settings) for par in parities]
        return [row for res in results for row in res.rows()], all(res.verdict != GROWING for res in results)
    if theorem_id == "2":
        lam = WeightFn(values["lam_c"], values["lam_gamma"], values["lam_delta"])
        fwd, rev, checks = verify_theorem2(fam, lam, r, p, settings)
        rows = fwd.rows() + rev.rows()
        params = {"p": p, "r": r}
        for name, ok in (("monotone", checks.monotone), ("doubling", checks.doubling_ok),
                         ("growth_A", checks.eq25_ok), ("growth_B", checks.eq26_ok)):
            rows.append(_summary(f"theorem2:weight_{name}", fam.label(), params, "pass" if ok else "fail"))
        lp = fwd.extras.get("lp_membership")
        if lp is not None:
            rows.append(_summary("theorem2:lp_membership", fam.label(), params,
                                 "agree" if lp["agree"] else "disagree"))
        return rows, fwd.verdict != GROWING and rev.verdict != GROWING
    if theorem_id == "3":
        res = theorem3_functionals(fam, PhiWeight(values["phi_s"]), r, p, settings)
        return res.rows(), res.skipped is not None or res.consistent
    if theorem_id == "4":
        res = verify_theorem4(fam, p, settings)
        return res.rows(), res.consistent
    if theorem_id == "5":
        res = verify_theorem5(fam, p, settings)
        return res.rows(), res.skipped is not None or res.passed
    res = verify_lemma2_dichotomy(fam, p, settings)
    return res.rows(), res.agree


def cmd_sweep(values, settings):
    ids = [str(i) for i in values["ids"]]
    bad = [i for i in ids if i not in LEMMA_IDS]
    if bad:
        raise InvalidInput(f"sweep ids must be among {', '.join(LEMMA_IDS)}; got {bad}")
    fam = family_from(values)
    results = [lemma_sweep(i, fam, float(values["p"]), settings) for i in ids]
    return [row for res in results for row in res.rows()], all(res.verdict != GROWING for res in results)


def cmd_selftest(values, settings):
    """Small, fast versions of the analytic cross-checks."""
    rows, ok = [], True
    rng = np.random.default_rng(int(values["seed"]))

    def add(check, lhs, rhs, tol):
        nonlocal ok
        err = abs(lhs - rhs) / max(abs(rhs), 1e-300)
        passed = err <= tol
        ok &= passed
        rows.append(_summary(f"selftest:{check}", "-", {"tol": tol}, "pass" if passed else "fail",
                             lhs=lhs, rhs=rhs, ratio=err))

    reps = hardy_suite("3a", 2.0, 100, 32, int(values["seed"])) + hardy_suite("3b", 2.0, 100, 32, int(values["seed"]))
    held = sum(r.holds for r in reps)
    ok &= held == len(reps)
    rows.append(_summary("selftest:hardy", "random", {"p": 2.0}, f"{held}/{len(reps)} hold"))

    g = Grid(2 ** 12)
    for i in range(5):
        f = TrigPoly("cosine" if i % 2 else "sine", CoeffSeq(rng.random(int(rng.integers(1, 200)))))
        add(f"parseval{i}", lp_norm(f, 2.0, g) ** 2, math.pi * math.fsum(f.a ** 2), 1e-8)

    cos1 = TrigPoly("cosine", CoeffSeq([1.0]))
    g = Grid(64)
    for h in (math.pi / 4, math.pi / 16):
        add("modulus", modulus(cos1, 2.0, h, g, settings.t_steps, 1e-10), 2 * math.sin(h / 2) * math.sqrt(math.pi), 1e-6)
        add("modulus_star", modulus_star(cos1, 2.0, h, g, settings.t_steps, 1e-10),
            2 * (1 - math.cos(h)) * math.sqrt(math.pi), 1e-6)

    g = Grid(1024)
    f = TrigPoly("cosine", CoeffSeq(rng.random(40)))
    integral, closed = block_functional(f, 5, 16, math.pi / 8, g)
    add("block_identity", integral, closed, 1e-7)
    return rows, bool(ok)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        values, settings = resolve(args)
        if values["format"] not in ("csv", "json"):
            raise InvalidInput(f"format must be csv or json, got {values['format']!r}")
        if args.command == "classify":
            rows, ok = cmd_classify(values, settings)
        elif args.command == "lemma":
            rows, ok = cmd_lemma(args.id, values, settings)
        elif args.command == "theorem":
            rows, ok = cmd_theorem(args.id, values, settings)
        elif args.command == "sweep":
            rows, ok = cmd_sweep(values, settings)
        else:
            rows, ok = cmd_selftest(values, settings)
    except (ConfigError, InvalidInput, ValueError, KeyError, TypeError) as exc:
        print(f"nbvslab: error: {exc}", file=sys.stderr)
        return 2
    try:
        text = emit_report(rows, values["format"], values["out"])
    except OSError as exc:
        print(f"nbvslab: error: cannot write {values['out']}: {exc.strerror}", file=sys.stderr)
        return 2
    if values["out"] is None:
        sys.stdout.write(text)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())
