"""CSV / JSON report rows."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import astuple, dataclass
from pathlib import Path
from typing import Iterable

COLUMNS = ("check_id", "family", "params", "scale", "lhs", "rhs", "ratio", "verdict")
NUMERIC = ("lhs", "rhs", "ratio")


@dataclass(frozen=True)
class Row:
    check_id: str
    family: str
    params: str
    scale: str
    lhs: float
    rhs: float
    ratio: float
    verdict: str


def fmt_number(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".12g")


def fmt_params(params: dict) -> str:
    parts = []
    for k, v in params.items():
        if isinstance(v, float):
            v = fmt_number(v)
        parts.append(f"{k}={v}")
    return ";".join(parts)


def _json_number(x: float):
    s = fmt_number(x)
    return float(s) if s not in ("nan", "inf", "-inf") else s


def render(rows: Iterable[Row], fmt: str = "csv") -> str:
    rows = list(rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in rows:
            w.writerow([fmt_number(v) if name in NUMERIC else str(v) for name, v in zip(COLUMNS, astuple(r))])
        return buf.getvalue()
    if fmt == "json":
        out = []
        for r in rows:
            d = {}
            for name, v in zip(COLUMNS, astuple(r)):
                d[name] = _json_number(v) if name in NUMERIC else str(v)
            out.append(d)
        return json.dumps(out, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(rows: Iterable[Row], fmt: str, path: str | Path | None = None) -> str:
    """Render rows and write them to ``path`` (stdout is the caller's job)."""
    text = render(rows, fmt)
    if path is not None:
        Path(path).write_text(text)
    return text


def parse_report(text: str, fmt: str = "csv") -> list[Row]:
    if fmt == "csv":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if tuple(header) != COLUMNS:
            raise ValueError(f"unexpected header {header}")
        records = [dict(zip(COLUMNS, rec)) for rec in reader]
    elif fmt == "json":
        records = json.loads(text)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    rows = []
    for rec in records:
        vals = {name: (float(rec[name]) if name in NUMERIC else str(rec[name])) for name in COLUMNS}
        rows.append(Row(**vals))
    return rows
