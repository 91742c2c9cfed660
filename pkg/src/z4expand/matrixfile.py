"""Plain-text matrix files.

Format::

    # optional comment lines
    z4 n=<n> rows=<m>
    <m lines of n digits from 0..3, no separators>
"""

from __future__ import annotations

import re
from pathlib import Path

from .z4algebra import Z4Matrix

_HEADER = re.compile(r"^z4\s+n=(\d+)\s+rows=(\d+)\s*$")


class MatrixParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_matrix(text: str) -> Z4Matrix:
    header = None
    rows: list[str] = []
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last = lineno
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise MatrixParseError("expected header 'z4 n=<n> rows=<m>'", lineno)
            header = (int(m.group(1)), int(m.group(2)))
            if header[0] < 1 or header[1] < 1:
                raise MatrixParseError("n and rows must be positive", lineno)
            continue
        n, m_rows = header
        indent = len(raw) - len(raw.lstrip())
        if len(rows) == m_rows:
            raise MatrixParseError(f"more than {m_rows} rows", lineno)
        for col, ch in enumerate(line, start=1):
            if ch not in "0123":
                raise MatrixParseError(f"invalid digit {ch!r}", lineno, indent + col)
        if len(line) != n:
            raise MatrixParseError(f"expected {n} digits, found {len(line)}", lineno, indent + min(len(line), n) + 1)
        rows.append(line)
    if header is None:
        raise MatrixParseError("missing header", max(last, 1))
    if len(rows) != header[1]:
        raise MatrixParseError(f"expected {header[1]} rows, found {len(rows)}", last + 1)
    return Z4Matrix(rows)


def render_matrix(g: Z4Matrix, comments: list[str] | None = None) -> str:
    out = [f"# {c}" for c in comments or []]
    out.append(f"z4 n={g.n} rows={g.nrows}")
    out.append(str(g))
    return "\n".join(out) + "\n"


def read_matrix(path: str | Path) -> Z4Matrix:
    return parse_matrix(Path(path).read_text())
