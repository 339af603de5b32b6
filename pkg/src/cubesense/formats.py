"""Plain-text formats for vertex sets and truth tables.

Vertex set::

    n=3
    000
    110

or, compact, a single ``2**n`` character bitmap on line 2 indexed by vertex
index. Truth table::

    n=2
    0111

where character ``v`` is ``f`` at vertex index ``v``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .hypercube import MAX_N, VertexSet, vertex_from_string

PathLike = Union[str, Path]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _header(lines: list[str]) -> int:
    if not lines:
        raise ParseError("empty input, expected 'n=<dim>'", 1)
    head = lines[0].strip()
    if not head.startswith("n="):
        raise ParseError("expected 'n=<dim>'", 1)
    try:
        n = int(head[2:])
    except ValueError:
        raise ParseError(f"bad dimension {head[2:]!r}", 1, 3) from None
    if not 0 <= n <= MAX_N:
        raise ParseError(f"dimension {n} outside [0, {MAX_N}]", 1, 3)
    return n


def _bitmap(text: str, n: int, line: int) -> int:
    if len(text) != 1 << n:
        raise ParseError(f"expected {1 << n} characters, got {len(text)}", line, min(len(text), 1 << n) + 1)
    for col, ch in enumerate(text, start=1):
        if ch not in "01":
            raise ParseError(f"unexpected character {ch!r}", line, col)
    # character v is bit v
    return int(text[::-1], 2) if text else 0


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines()]


def parse_vertex_set(text: str) -> VertexSet:
    lines = _content_lines(text)
    n = _header(lines)
    body = [(k, ln) for k, ln in enumerate(lines[1:], start=2) if ln and not ln.startswith("#")]
    if len(body) == 1 and len(body[0][1]) == 1 << n != n:
        k, ln = body[0]
        return VertexSet(n, _bitmap(ln, n, k))
    bits = 0
    for k, ln in body:
        if len(ln) != n:
            raise ParseError(f"vertex string must have length {n}", k, min(len(ln), n) + 1)
        for col, ch in enumerate(ln, start=1):
            if ch not in "01":
                raise ParseError(f"unexpected character {ch!r}", k, col)
        bits |= 1 << vertex_from_string(ln)
    return VertexSet(n, bits)


def format_vertex_set(s: VertexSet) -> str:
    if s.n == 0:
        # the only vertex of Q_0 renders as an empty line
        return format_vertex_set_compact(s)
    return "\n".join([f"n={s.n}", *s.to_strings()]) + "\n"


def format_vertex_set_compact(s: VertexSet) -> str:
    return f"n={s.n}\n" + "".join("1" if (s.bits >> v) & 1 else "0" for v in range(1 << s.n)) + "\n"


def read_vertex_set(path: PathLike) -> VertexSet:
    return parse_vertex_set(Path(path).read_text())


def write_vertex_set(s: VertexSet, path: PathLike) -> None:
    Path(path).write_text(format_vertex_set(s))


def parse_truth_table_bits(text: str) -> tuple[int, int]:
    """Return ``(n, outputs)`` from the truth-table format."""
    lines = _content_lines(text)
    n = _header(lines)
    if len(lines) < 2 or not lines[1]:
        raise ParseError(f"missing {1 << n}-character output line", 2)
    extra = [k for k, ln in enumerate(lines[2:], start=3) if ln]
    if extra:
        raise ParseError("unexpected content after the output line", extra[0])
    return n, _bitmap(lines[1], n, 2)


def format_truth_table_bits(n: int, outputs: int) -> str:
    return f"n={n}\n" + "".join("1" if (outputs >> v) & 1 else "0" for v in range(1 << n)) + "\n"
