"""Tunable thresholds, ladders and tolerances.

Every harness takes a :class:`Settings` instance; nothing numeric that
affects a verdict is hard-coded elsewhere.  Config files are flat
``key = value`` text where each value is a JSON literal, e.g.::

    # theorem 4 run
    family = "power"
    beta = 1.4
    ladder = [8, 16, 32, 64, 128, 256]
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class Settings:
    # scale ladders (n values; h = 1/n)
    ladder: tuple[int, ...] = (8, 16, 32, 64, 128, 256)
    zygmund_ladder: tuple[int, ...] = (8, 16, 32, 64, 128, 256, 512)
    # trend rule: growing iff >= trend_growth rise per doubling twice in a row
    trend_growth: float = 0.15
    trend_window: int = 3
    # convergence rule: last decay_window increment ratios <= decay_ratio
    decay_ratio: float = 0.9
    decay_window: int = 3
    # class membership: stable iff k_min(2N) <= stability_factor * k_min(N)
    stability_factor: float = 1.1
    # relative slack for explicit-constant inequalities
    rel_tol: float = 1e-9
    # sup over shifts
    t_steps: int = 64
    sup_tol: float = 1e-6
    grid_oversample: int = 4
    # truncation used for power families in analytic harnesses
    family_n: int = 2 ** 14
    theorem1_n: int = 2000
    theorem2_ladder: tuple[int, ...] = (8, 16, 32, 64, 128, 256)
    theorem2_t_steps: int = 16
    integral_rel_tol: float = 1e-6
    # theorem 3 truncation
    theorem3_levels: int = 12
    theorem3_spectral_n: int = 2 ** 17
    theorem3_grid_n: int = 2 ** 13
    theorem3_nodes: int = 8
    theorem3_s_offset: float = 0.25
    # theorem 4 / 5 endpoint thresholds
    lipschitz_band: float = 1.2
    lipschitz_growth: float = 0.30
    zygmund_band: float = 2.0
    log_growth: float = 0.25
    # Cauchy / derivative truncation ladders: 2**j for j in range
    cauchy_levels: tuple[int, ...] = (6, 7, 8, 9, 10, 11, 12)

    def replace(self, **changes) -> "Settings":
        return dataclasses.replace(self, **changes)


DEFAULTS = Settings()

SETTING_KEYS = frozenset(f.name for f in dataclasses.fields(Settings))


class ConfigError(ValueError):
    """Malformed or unknown configuration entry."""


def parse_config_text(text: str, source: str = "<config>") -> dict:
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if not key.isidentifier():
            raise ConfigError(f"{source}:{lineno}: invalid key {key!r}")
        if key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            out[key] = json.loads(value.strip())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{source}:{lineno}: value for {key!r} is not JSON ({exc.msg})") from None
    return out


def load_config(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from None
    return parse_config_text(text, str(path))


def settings_from(values: dict, base: Settings = DEFAULTS) -> Settings:
    """Apply the Settings-level keys found in ``values``."""
    changes = {}
    for f in dataclasses.fields(Settings):
        if f.name not in values:
            continue
        v = values[f.name]
        if isinstance(getattr(base, f.name), tuple):
            if not isinstance(v, list) or not v:
                raise ConfigError(f"{f.name}: expected a non-empty list")
            v = tuple(v)
            if not all(isinstance(x, int) and not isinstance(x, bool) and x > 0 for x in v):
                raise ConfigError(f"{f.name}: expected positive integers")
        else:
            kind = type(getattr(base, f.name))
            if isinstance(v, bool) or not isinstance(v, (int, float)) or (kind is int and not isinstance(v, int)):
                raise ConfigError(f"{f.name}: expected {kind.__name__}, got {v!r}")
            v = kind(v)
        changes[f.name] = v
    return base.replace(**changes) if changes else base
