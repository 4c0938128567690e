"""Parsers and writers for the text formats the command line accepts.

Graphs travel as edge lists ("n m" header, then one "i j w" line per edge),
matrices as square CSV, oscillator systems as a header count, an "omega:"
line, and coupling lines. All parsers reject NaN/Inf and report the
offending line number.
"""

from __future__ import annotations

import math

import numpy as np

from .graphs import WeightedGraph
from .kuramoto import KuramotoSystem


class ParseError(ValueError):
    """Input file rejected; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _content_lines(text: str) -> list[tuple[int, str]]:
    """(line number, stripped text) for lines that are not blank or comments."""
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            out.append((no, stripped))
    return out


def _parse_float(token: str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(line, f"not a number: {token!r}") from None
    if not math.isfinite(value):
        raise ParseError(line, f"non-finite value {token!r} rejected")
    return value


def _parse_int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"not an integer: {token!r}") from None


def parse_edge_list(text: str) -> WeightedGraph:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(1, "empty edge-list file")
    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(header_no, f"header must be 'n edge-count', got {header!r}")
    n = _parse_int(parts[0], header_no)
    count = _parse_int(parts[1], header_no)
    body = lines[1:]
    if len(body) != count:
        raise ParseError(header_no, f"header announces {count} edges but file has {len(body)}")
    edges = []
    for no, line in body:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(no, f"edge line must be 'i j w', got {line!r}")
        i = _parse_int(parts[0], no)
        j = _parse_int(parts[1], no)
        w = _parse_float(parts[2], no)
        edges.append((i, j, w))
    try:
        return WeightedGraph(n, tuple(edges))
    except ValueError as exc:
        raise ParseError(header_no, str(exc)) from None


def format_edge_list(g: WeightedGraph) -> str:
    lines = [f"{g.n} {len(g.edges)}"]
    lines += [f"{i} {j} {w!r}" for i, j, w in g.edges]
    return "\n".join(lines) + "\n"


def parse_matrix_csv(text: str) -> np.ndarray:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(1, "empty matrix file")
    rows = []
    width = None
    for no, line in lines:
        values = [_parse_float(tok.strip(), no) for tok in line.split(",")]
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise ParseError(no, f"row has {len(values)} entries, expected {width}")
        rows.append(values)
    if len(rows) != width:
        raise ParseError(lines[-1][0], f"matrix is {len(rows)}x{width}, expected square")
    return np.array(rows)


def format_matrix_csv(a: np.ndarray) -> str:
    a = np.asarray(a, dtype=float)
    return "\n".join(",".join(repr(float(v)) for v in row) for row in a) + "\n"


def parse_kuramoto(text: str) -> KuramotoSystem:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(1, "empty oscillator file")
    header_no, header = lines[0]
    n = _parse_int(header, header_no)
    if n <= 0:
        raise ParseError(header_no, f"oscillator count must be positive, got {n}")
    if len(lines) < 2:
        raise ParseError(header_no, "missing 'omega:' line")
    omega_no, omega_line = lines[1]
    if not omega_line.startswith("omega:"):
        raise ParseError(omega_no, f"expected 'omega: ...', got {omega_line!r}")
    tokens = omega_line[len("omega:"):].split()
    if len(tokens) != n:
        raise ParseError(omega_no, f"expected {n} frequencies, got {len(tokens)}")
    omega = [_parse_float(tok, omega_no) for tok in tokens]
    b = np.zeros((n, n))
    seen = set()
    for no, line in lines[2:]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(no, f"coupling line must be 'i j w', got {line!r}")
        i = _parse_int(parts[0], no)
        j = _parse_int(parts[1], no)
        w = _parse_float(parts[2], no)
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ParseError(no, f"invalid oscillator pair ({i},{j})")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ParseError(no, f"duplicate coupling ({key[0]},{key[1]})")
        seen.add(key)
        if w <= 0:
            raise ParseError(no, f"coupling weight must be positive, got {w}")
        b[i - 1, j - 1] = w
        b[j - 1, i - 1] = w
    return KuramotoSystem(np.array(omega), b)


def format_kuramoto(sys: KuramotoSystem) -> str:
    lines = [str(sys.n), "omega: " + " ".join(repr(float(w)) for w in sys.omega)]
    lines += [f"{i} {j} {w!r}" for i, j, w in sys.coupling_edges()]
    return "\n".join(lines) + "\n"


def parse_phases(text: str, n: int) -> np.ndarray:
    values = []
    for no, line in _content_lines(text):
        values += [_parse_float(tok, no) for tok in line.split()]
    if len(values) != n:
        raise ParseError(1, f"expected {n} phases, got {len(values)}")
    return np.array(values)

