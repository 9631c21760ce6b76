"""Bit-exact text formats for arrays, sweeps, defect reports, build reports.

Array file layout (version tagged by the magic line)::

    pca-forge v1
    N k v base
    <N lines of k space-separated symbols>

Lines end with LF and carry no trailing whitespace, so a given array always
serializes to the same bytes.  ``base`` is 0 or 1: base-1 files present
symbols as ``{1, ..., v}`` and are normalized back to 0-based on read.  An
optional ``claims t=.. m=.. epsilon=..`` line may sit between the count line
and the body to record what the array is supposed to satisfy; nothing checks
the claims on load.

CSV outputs are deterministic: same input, same bytes.  Real values print
with 6 significant digits.  OS-level failures raise the builtin ``OSError``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bounds import INFORMATIONAL, BoundSweep
from .construct import BuildReport
from .core import Array, PcaParams
from .coverage import Defect
from .errors import DimensionMismatch, ParseError, SymbolOutOfRange

MAGIC = "pca-forge v1"


@dataclass(frozen=True)
class ArrayFileHeader:
    """Parsed header of an array file."""

    rows: int
    cols: int
    v: int
    base: int
    claims: dict | None = None


def _format_claims(claims: dict) -> str:
    parts = []
    for key in ("t", "m", "epsilon"):
        if key in claims:
            parts.append(f"{key}={claims[key]}")
    return "claims " + " ".join(parts)


def write_array(
    a: Array, path: str | Path, *, base: int = 0, claims: dict | None = None
) -> None:
    """Serialize an array; ``base=1`` shifts symbols up by one on output."""
    if base not in (0, 1):
        raise ValueError(f"base must be 0 or 1, got {base}")
    lines = [MAGIC, f"{a.rows} {a.cols} {a.v} {base}"]
    if claims:
        lines.append(_format_claims(claims))
    body = a.cells + base
    for row in body:
        lines.append(" ".join(str(int(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def _parse_claims(text: str, lineno: int) -> dict:
    claims: dict = {}
    for token in text.split()[1:]:
        key, _, value = token.partition("=")
        if key not in ("t", "m", "epsilon") or not value:
            raise ParseError(lineno, f"bad claims token {token!r}")
        claims[key] = float(value) if key == "epsilon" else int(value)
    return claims


def read_array(path: str | Path) -> tuple[Array, ArrayFileHeader]:
    """Parse and validate an array file; base-1 content is normalized to base 0."""
    text = Path(path).read_text(encoding="ascii")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != MAGIC:
        raise ParseError(1, f"expected magic line {MAGIC!r}")
    if len(lines) < 2:
        raise ParseError(2, "missing count line")
    fields = lines[1].split()
    if len(fields) != 4:
        raise ParseError(2, f"count line needs 'N k v base', got {lines[1]!r}")
    try:
        n, k, v, base = (int(f) for f in fields)
    except ValueError:
        raise ParseError(2, f"count line needs integers, got {lines[1]!r}") from None
    if base not in (0, 1):
        raise ParseError(2, f"base must be 0 or 1, got {base}")
    body_start = 2
    claims = None
    if len(lines) > 2 and lines[2].startswith("claims"):
        claims = _parse_claims(lines[2], 3)
        body_start = 3
    body = lines[body_start:]
    if len(body) != n:
        raise DimensionMismatch(f"declared {n} rows, file has {len(body)}")
    cells = np.zeros((n, k), dtype=np.int64)
    for i, line in enumerate(body):
        parts = line.split()
        if len(parts) != k:
            raise DimensionMismatch(
                f"line {body_start + i + 1}: declared {k} columns, row has {len(parts)}"
            )
        try:
            row = [int(p) for p in parts]
        except ValueError:
            raise ParseError(body_start + i + 1, f"non-integer symbol in {line!r}") from None
        lo, hi = (1, v) if base == 1 else (0, v - 1)
        for value in row:
            if not lo <= value <= hi:
                raise SymbolOutOfRange(
                    f"line {body_start + i + 1}: symbol {value} outside [{lo}, {hi}]"
                )
        cells[i] = row
    if base == 1:
        cells -= 1
    header = ArrayFileHeader(rows=n, cols=k, v=v, base=base, claims=claims)
    return Array(cells, v), header


def _fmt_real(x: float) -> str:
    return f"{x:.6g}"


def sweep_csv_text(sweep: BoundSweep) -> str:
    """CSV body for a sweep: one row per (axis value, formula)."""
    lines = ["axis,formula,real_bound,n_rows,feasible"]
    for point in sweep.points:
        for formula in sweep.formulas:
            result = point.results[formula]
            if result is None:
                lines.append(f"{point.value},{formula},,,0")
            elif formula in INFORMATIONAL:
                lines.append(f"{point.value},{formula},{_fmt_real(result.real_bound)},,1")
            else:
                lines.append(
                    f"{point.value},{formula},{_fmt_real(result.real_bound)},{result.n_rows},1"
                )
    return "\n".join(lines) + "\n"


def write_sweep_csv(sweep: BoundSweep, path: str | Path) -> None:
    Path(path).write_text(sweep_csv_text(sweep), encoding="ascii", newline="\n")


def defects_csv_text(defects: list[Defect], v: int, t: int) -> str:
    """CSV body for a defect report: t-set indices, count, missing tuples."""
    vt = v**t
    lines = ["tset_indices,count,missing"]
    for defect in defects:
        indices = " ".join(str(i) for i in defect.tset)
        lines.append(f"{indices},{defect.count},{vt - defect.count}")
    return "\n".join(lines) + "\n"


def write_defects_csv(defects: list[Defect], v: int, t: int, path: str | Path) -> None:
    Path(path).write_text(defects_csv_text(defects, v, t), encoding="ascii", newline="\n")


def report_json_text(
    report: BuildReport, params: PcaParams, *, include_elapsed: bool = False
) -> str:
    """Structured build record.  Timing is omitted by default so that a fixed
    seed produces byte-identical report files run over run."""
    record = {
        "params": {
            "t": params.t,
            "k": params.k,
            "v": params.v,
            "m": params.m,
            "epsilon": params.epsilon,
        },
        "seed": report.rng_seed,
        "n_rows": report.n_rows,
        "iterations": report.iterations,
        "verifier": report.verifier,
        "bound": {
            "source": report.bound_used.source,
            "real_bound": report.bound_used.real_bound,
            "n_rows": report.bound_used.n_rows,
        },
        "elapsed_ms": round(report.elapsed * 1000, 3) if include_elapsed else None,
    }
    return json.dumps(record, indent=2, sort_keys=True) + "\n"


def write_report_json(
    report: BuildReport,
    params: PcaParams,
    path: str | Path,
    *,
    include_elapsed: bool = False,
) -> None:
    Path(path).write_text(
        report_json_text(report, params, include_elapsed=include_elapsed),
        encoding="ascii",
        newline="\n",
    )
