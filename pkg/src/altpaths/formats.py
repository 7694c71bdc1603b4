"""Text formats for colorings, codes and path families.

Coloring files::

    bipartite m n r        complete n r
    <m lines of n ids>     <n-1 lines: row i lists colors (i, i+1..n-1)>

Code files hold one word per line, letters separated by spaces. Blank lines
and ``#`` comments are ignored; a ``# r=<int>`` comment fixes the alphabet of a
code.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable

import numpy as np

from .core import Code, ColoringMatrix, CompleteColoring, PathRecord


class FormatError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


_R_DIRECTIVE = re.compile(r"#\s*r\s*=\s*(\d+)")


def _content_lines(text: str):
    """Yield (line number, tokens) for lines that carry data."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _int_token(tok: str, lineno: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", lineno, col) from None


def dumps_coloring(coloring) -> str:
    out = []
    if isinstance(coloring, CompleteColoring):
        out.append(f"complete {coloring.n} {coloring.r}")
        for i in range(coloring.n - 1):
            out.append(" ".join(str(int(x)) for x in coloring.colors[i, i + 1:]))
    else:
        out.append(f"bipartite {coloring.m} {coloring.n} {coloring.r}")
        for row in coloring.colors:
            out.append(" ".join(str(int(x)) for x in row))
    return "\n".join(out) + "\n"


def loads_coloring(text: str):
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty coloring file", 1)
    lineno, head = lines[0]
    kind = head[0]
    if kind == "bipartite":
        if len(head) != 4:
            raise FormatError("header must be 'bipartite m n r'", lineno)
        m, n, r = (_int_token(t, lineno, i + 2) for i, t in enumerate(head[1:]))
        if m < 1 or n < 1 or r < 2:
            raise FormatError(f"invalid sizes m={m} n={n} r={r}", lineno)
        rows = lines[1:]
        if len(rows) != m:
            last = rows[-1][0] if rows else lineno
            raise FormatError(f"expected {m} table rows, found {len(rows)}", last)
        table = np.zeros((m, n), dtype=np.int64)
        for u, (ln, toks) in enumerate(rows):
            if len(toks) != n:
                raise FormatError(f"expected {n} entries, found {len(toks)}", ln)
            for v, tok in enumerate(toks):
                x = _int_token(tok, ln, v + 1)
                if not 1 <= x <= r:
                    raise FormatError(f"color {x} outside [1, {r}]", ln, v + 1)
                table[u, v] = x
        return ColoringMatrix(table, r)
    if kind == "complete":
        if len(head) != 3:
            raise FormatError("header must be 'complete n r'", lineno)
        n, r = (_int_token(t, lineno, i + 2) for i, t in enumerate(head[1:]))
        if n < 1 or r < 2:
            raise FormatError(f"invalid sizes n={n} r={r}", lineno)
        rows = lines[1:]
        if len(rows) != n - 1:
            last = rows[-1][0] if rows else lineno
            raise FormatError(f"expected {n - 1} table rows, found {len(rows)}", last)
        table = np.zeros((n, n), dtype=np.int64)
        for i, (ln, toks) in enumerate(rows):
            if len(toks) != n - 1 - i:
                raise FormatError(f"row {i} needs {n - 1 - i} entries, found {len(toks)}", ln)
            for j, tok in enumerate(toks):
                x = _int_token(tok, ln, j + 1)
                if not 1 <= x <= r:
                    raise FormatError(f"color {x} outside [1, {r}]", ln, j + 1)
                table[i, i + 1 + j] = table[i + 1 + j, i] = x
        return CompleteColoring(table, r)
    raise FormatError(f"unknown coloring kind {kind!r}", lineno, 1)


def dumps_code(code: Code) -> str:
    body = "\n".join(" ".join(str(x) for x in w) for w in code.words)
    return f"# r={code.r}\n{body}\n"


def loads_code(text: str, r: int | None = None) -> Code:
    if r is None:
        for raw in text.splitlines():
            match = _R_DIRECTIVE.match(raw.strip())
            if match:
                r = int(match.group(1))
                break
    words = []
    length = None
    for ln, toks in _content_lines(text):
        word = tuple(_int_token(t, ln, i + 1) for i, t in enumerate(toks))
        if length is None:
            length = len(word)
        elif len(word) != length:
            raise FormatError(f"word has {len(word)} letters, expected {length}", ln)
        for i, x in enumerate(word):
            if x < 1 or (r is not None and x > r):
                raise FormatError(f"letter {x} outside the alphabet", ln, i + 1)
        words.append(word)
    if not words:
        raise FormatError("code file has no words", 1)
    if r is None:
        r = max(2, max(max(w) for w in words))
    return Code(tuple(words), r)


def read_coloring(path):
    return loads_coloring(Path(path).read_text())


def write_coloring(coloring, path) -> None:
    Path(path).write_text(dumps_coloring(coloring))


def read_code(path, r: int | None = None) -> Code:
    return loads_code(Path(path).read_text(), r)


def write_code(code: Code, path) -> None:
    Path(path).write_text(dumps_code(code))


def dumps_paths(paths: Iterable[PathRecord]) -> str:
    """One JSON object per line."""
    return "".join(json.dumps(p.to_json(), sort_keys=True) + "\n" for p in paths)


def loads_paths(text: str) -> list[PathRecord]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
            out.append(PathRecord(tuple(obj["vertices"]), tuple(obj["colors"]),
                                  obj.get("start", "N"), bool(obj.get("walk", False))))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise FormatError(f"bad path record: {exc}", lineno) from None
    return out
