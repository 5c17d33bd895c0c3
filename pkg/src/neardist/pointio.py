"""Reading and writing point sets and JSON reports.

Point-set text format: a header line ``d n`` (ASCII decimal integers),
then n lines of d whitespace-separated decimal reals.  Writers emit 17
significant digits, so every float round-trips bit-for-bit.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParseError
from .geometry import PointSet


def format_pointset(ps: PointSet) -> str:
    lines = [f"{ps.dim} {len(ps)}"]
    for row in ps.points:
        lines.append(" ".join(f"{x:.17g}" for x in row))
    return "\n".join(lines) + "\n"


def parse_pointset_text(text: str) -> PointSet:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input, expected a 'd n' header", line=1)
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(f"header must be 'd n', got {lines[0]!r}", line=1)
    try:
        dim, n = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(f"header must hold two integers, got {lines[0]!r}", line=1)
    if dim < 1:
        raise ParseError(f"dimension must be positive, got {dim}", line=1)
    if n < 0:
        raise ParseError(f"point count must be non-negative, got {n}", line=1)

    rows = np.empty((n, dim), dtype=float)
    row = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        tokens = raw.split()
        if not tokens:
            continue  # blank separators are tolerated
        if row >= n:
            raise ParseError(f"expected {n} point rows, found extra data", line=lineno)
        if len(tokens) != dim:
            raise ParseError(
                f"expected {dim} coordinates, got {len(tokens)}", line=lineno
            )
        for col, tok in enumerate(tokens):
            try:
                rows[row, col] = float(tok)
            except ValueError:
                raise ParseError(f"non-numeric token {tok!r}", line=lineno)
        row += 1
    if row != n:
        raise ParseError(
            f"expected {n} point rows, file ended after {row}", line=len(lines)
        )
    return PointSet(dim, rows)


def parse_pointset(path) -> PointSet:
    return parse_pointset_text(Path(path).read_text())


def emit_pointset(ps: PointSet, path) -> Path:
    path = Path(path)
    path.write_text(format_pointset(ps))
    return path


def sidecar_path(path) -> Path:
    """Metadata sidecar next to a point-set file."""
    return Path(str(path) + ".meta.json")


def dump_json(obj) -> str:
    """Canonical JSON: sorted keys, stable layout, no timestamps."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(obj, path) -> Path:
    path = Path(path)
    path.write_text(dump_json(obj))
    return path
