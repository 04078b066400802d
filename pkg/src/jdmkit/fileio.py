"""Plain-text formats for graphs, matrices, swap traces, and sampled multigraphs."""

from __future__ import annotations

from typing import List, Sequence

from .core import GraphError, Jdm, LabeledGraph, NotRealizationError, Rso

__all__ = [
    "FileFormatError",
    "dumps_graph",
    "loads_graph",
    "save_graph",
    "load_graph",
    "dumps_jdm",
    "loads_jdm",
    "save_jdm",
    "load_jdm",
    "dumps_trace",
    "loads_trace",
    "save_trace",
    "load_trace",
    "dumps_multigraph",
]


class FileFormatError(ValueError):
    """Malformed input file; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _ints(text: str, count: int, line: int) -> List[int]:
    parts = text.split()
    if len(parts) != count:
        raise FileFormatError(f"expected {count} integers, got {text!r}", line)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FileFormatError(f"expected integers, got {text!r}", line) from None


def _lines(text: str) -> List[str]:
    return [ln for ln in text.splitlines()]


def dumps_graph(g: LabeledGraph) -> str:
    """Canonical text: `n m` then sorted `u v` lines; classes are the degrees."""
    if not g.is_realization():
        raise NotRealizationError(
            "only graphs whose classes equal their degrees round-trip this format"
        )
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def loads_graph(text: str) -> LabeledGraph:
    lines = _lines(text)
    if not lines or not lines[0].strip():
        raise FileFormatError("missing `n m` header", 1)
    n, m = _ints(lines[0], 2, 1)
    if n < 0 or m < 0:
        raise FileFormatError("vertex and edge counts must be non-negative", 1)
    edges = []
    seen = set()
    verts = set()
    if len([ln for ln in lines[1:] if ln.strip()]) != m:
        raise FileFormatError(f"expected {m} edge lines", len(lines))
    for idx, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        u, v = _ints(ln, 2, idx)
        if u == v:
            raise FileFormatError(f"loop {u} {v} not allowed", idx)
        if u < 0 or v < 0:
            raise FileFormatError("vertex labels must be non-negative", idx)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise FileFormatError(f"duplicate edge {u} {v}", idx)
        seen.add(key)
        verts.update(key)
        edges.append(key)
    if len(verts) != n:
        raise FileFormatError(
            f"header says {n} vertices but edges name {len(verts)}", 1
        )
    return LabeledGraph.from_edges(edges)


def save_graph(g: LabeledGraph, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_graph(g))


def load_graph(path: str) -> LabeledGraph:
    with open(path, "r", encoding="ascii") as fh:
        return loads_graph(fh.read())


def dumps_jdm(j: Jdm) -> str:
    out = [str(j.k)]
    out.extend(" ".join(str(x) for x in row) for row in j.rows)
    return "\n".join(out) + "\n"


def loads_jdm(text: str) -> Jdm:
    lines = _lines(text)
    if not lines or not lines[0].strip():
        raise FileFormatError("missing matrix size header", 1)
    (k,) = _ints(lines[0], 1, 1)
    if k < 0:
        raise FileFormatError("matrix size must be non-negative", 1)
    rows = []
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != k:
        raise FileFormatError(f"expected {k} matrix rows", len(lines))
    for idx, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        rows.append(_ints(ln, k, idx))
    try:
        return Jdm(rows)
    except GraphError as exc:
        raise FileFormatError(str(exc)) from exc


def save_jdm(j: Jdm, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_jdm(j))


def load_jdm(path: str) -> Jdm:
    with open(path, "r", encoding="ascii") as fh:
        return loads_jdm(fh.read())


def dumps_trace(swaps: Sequence[Rso]) -> str:
    """One swap per line: `a b c d pivot_class`."""
    return "".join(str(s) + "\n" for s in swaps)


def loads_trace(text: str) -> List[Rso]:
    swaps = []
    for idx, ln in enumerate(_lines(text), start=1):
        if not ln.strip():
            continue
        a, b, c, d, pivot = _ints(ln, 5, idx)
        swaps.append(Rso(a, b, c, d, pivot))
    return swaps


def save_trace(swaps: Sequence[Rso], path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_trace(swaps))


def load_trace(path: str) -> List[Rso]:
    with open(path, "r", encoding="ascii") as fh:
        return loads_trace(fh.read())


def dumps_multigraph(mg) -> str:
    """Sampled-output extension of the graph format: `u u` marks a loop and a
    repeated `u v` line marks each extra parallel edge; not round-trippable."""
    lines = []
    total = 0
    for (u, v), mult in sorted(mg.pair_counts.items()):
        for _ in range(mult):
            lines.append(f"{u} {v}")
            total += 1
    return "\n".join([f"{len(mg.classes)} {total}"] + lines) + "\n"
