"""Strata scramblers: matrix-weighted directed multigraphs.

Vertices stand for mapping-class orbits of multicurves and carry the
dimension of the span of the multicurve.  An edge ``src -> dst`` carries a
nonnegative rational matrix with ``dim(dst)`` rows and ``dim(src)``
columns (column-vector convention), or the symbolic zero weight when the
pulled-back multicurve is empty.  The reserved vertex ``empty`` has
dimension 0 and is present in every scrambler.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .exactmath.matrix import (
    Matrix,
    NegativeEntry,
    as_matrix,
    format_matrix,
    format_matrix_compact,
    identity,
    matmul,
)

EMPTY = "empty"

__all__ = [
    "EMPTY",
    "ZERO",
    "BudgetExceeded",
    "Cycle",
    "Diagnostic",
    "DimensionMismatch",
    "Edge",
    "Path",
    "Scrambler",
    "ScramblerError",
    "ScramblerSyntaxError",
    "UnknownEdge",
    "UnknownVertex",
    "Vertex",
    "compose_along_path",
    "elementary_cycles",
    "export_dot",
    "format_weight",
    "parse_scrambler",
    "serialize_scrambler",
    "validate",
]


class ScramblerError(ValueError):
    pass


class ScramblerSyntaxError(ScramblerError, SyntaxError):
    def __init__(self, message: str, lineno: int | None = None):
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)
        self.lineno = lineno


class DimensionMismatch(ScramblerError):
    pass


class UnknownVertex(ScramblerError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


class UnknownEdge(ScramblerError, IndexError):
    pass


class BudgetExceeded(RuntimeError):
    """An enumeration exceeded its configured cap."""


class _ZeroWeight:
    """The symbolic zero weight (no matrix brackets)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"

    def __str__(self) -> str:
        return "0"

    def __reduce__(self):
        return (_ZeroWeight, ())


ZERO = _ZeroWeight()
Weight = Union[Matrix, _ZeroWeight]


def format_weight(w: Weight, compact: bool = False) -> str:
    if w is ZERO:
        return "0"
    return format_matrix_compact(w) if compact else format_matrix(w)


@dataclass(frozen=True)
class Vertex:
    name: str
    dim: int
    curve_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.dim < 0:
            raise ScramblerError(f"vertex {self.name!r} has negative dimension")
        if self.name == EMPTY and self.dim != 0:
            raise DimensionMismatch("the reserved vertex 'empty' must have dimension 0")
        if self.curve_names is not None and len(self.curve_names) != self.dim:
            raise DimensionMismatch(
                f"vertex {self.name!r}: {len(self.curve_names)} curve names for dimension {self.dim}"
            )


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    weight: Weight
    count: int | None = None

    @property
    def is_zero(self) -> bool:
        return self.weight is ZERO


@dataclass(frozen=True)
class Scrambler:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        if not any(v.name == EMPTY for v in verts):
            verts = verts + (Vertex(EMPTY, 0),)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(self.edges))
        index = {}
        for v in verts:
            if v.name in index:
                raise ScramblerError(f"duplicate vertex {v.name!r}")
            index[v.name] = v
        object.__setattr__(self, "_index", index)
        for k, e in enumerate(self.edges):
            self._check_edge(k, e)

    def _check_edge(self, k: int, e: Edge) -> None:
        for name in (e.src, e.dst):
            if name not in self._index:
                raise UnknownVertex(f"edge {k}: unknown vertex {name!r}")
        if e.weight is ZERO:
            return
        if e.dst == EMPTY:
            raise DimensionMismatch(f"edge {k}: edges into 'empty' carry the zero weight")
        rows, cols = self.dim(e.dst), self.dim(e.src)
        if len(e.weight) != rows or any(len(r) != cols for r in e.weight):
            got = f"{len(e.weight)}x{len(e.weight[0]) if e.weight else 0}"
            raise DimensionMismatch(f"edge {k} ({e.src} -> {e.dst}): matrix is {got}, expected {rows}x{cols}")
        for row in e.weight:
            for x in row:
                if x < 0:
                    raise NegativeEntry(f"edge {k} ({e.src} -> {e.dst}): negative entry {x}")

    # -- lookups -------------------------------------------------------

    def vertex(self, name: str) -> Vertex:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {name!r}") from None

    def dim(self, name: str) -> int:
        return self.vertex(name).dim

    @property
    def vertex_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vertices)

    def edge(self, k: int) -> Edge:
        if not 0 <= k < len(self.edges):
            raise UnknownEdge(f"no edge with index {k}")
        return self.edges[k]

    def out_edges(self, name: str) -> list[int]:
        return [k for k, e in enumerate(self.edges) if e.src == name]

    def successors(self) -> dict[str, list[int]]:
        table: dict[str, list[int]] = {v.name: [] for v in self.vertices}
        for k, e in enumerate(self.edges):
            table[e.src].append(k)
        return table

    # -- the ambient space V -------------------------------------------

    def offsets(self) -> dict[str, int]:
        """Start of each vertex block in the ordered basis of V."""
        out, pos = {}, 0
        for v in self.vertices:
            out[v.name] = pos
            pos += v.dim
        return out

    @property
    def total_dim(self) -> int:
        return sum(v.dim for v in self.vertices)

    def embed(self, weight: Weight, src: str, dst: str) -> Matrix:
        """The endomorphism of V induced by a block map ``src -> dst``."""
        n = self.total_dim
        out = [[Fraction(0)] * n for _ in range(n)]
        if weight is not ZERO:
            off = self.offsets()
            r0, c0 = off[dst], off[src]
            for i, row in enumerate(weight):
                for j, x in enumerate(row):
                    out[r0 + i][c0 + j] = x
        return tuple(tuple(r) for r in out)

    def edge_endomorphism(self, k: int) -> Matrix:
        e = self.edge(k)
        return self.embed(e.weight, e.src, e.dst)

    def scaled(self, c: Fraction | int) -> Scrambler:
        """Every matrix weight multiplied by ``c``."""
        c = Fraction(c)
        edges = []
        for e in self.edges:
            w = e.weight if e.weight is ZERO else tuple(tuple(c * x for x in row) for row in e.weight)
            edges.append(Edge(e.src, e.dst, w, e.count))
        return Scrambler(self.vertices, tuple(edges))


@dataclass(frozen=True)
class Path:
    """A sequence of edge indices with the vertices it visits."""

    edges: tuple[int, ...]
    vertices: tuple[str, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise ValueError("a path visits one more vertex than it has edges")

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_closed(self) -> bool:
        return bool(self.edges) and self.vertices[0] == self.vertices[-1]

    def describe(self) -> str:
        return " -> ".join(self.vertices)

    @classmethod
    def from_edges(cls, s: Scrambler, edges: Sequence[int]) -> Path:
        edges = tuple(edges)
        if not edges:
            raise ValueError("a path needs at least one edge")
        es = [s.edge(k) for k in edges]
        for a, b in zip(es, es[1:]):
            if a.dst != b.src:
                raise ValueError(f"edges not composable at {a.dst!r} / {b.src!r}")
        return cls(edges, tuple([es[0].src] + [e.dst for e in es]))


class Cycle(Path):
    def __post_init__(self):
        super().__post_init__()
        if not self.is_closed:
            raise ValueError("a cycle must end where it starts")


# -- composition --------------------------------------------------------


def compose_along_path(s: Scrambler, edges: Sequence[int], start: str | None = None) -> Weight:
    """Product of the weights along ``edges``, later edges applied last.

    A non-composable junction gives ``ZERO``; so does any zero weight.
    The empty sequence at vertex ``start`` gives the identity there.
    """
    edges = list(edges)
    if not edges:
        if start is None:
            raise ValueError("an empty path needs a start vertex")
        return identity(s.dim(start))
    es = [s.edge(k) for k in edges]
    for a, b in zip(es, es[1:]):
        if a.dst != b.src:
            return ZERO
    acc: Weight = es[0].weight
    for e in es[1:]:
        if acc is ZERO or e.weight is ZERO:
            return ZERO
        acc = matmul(e.weight, acc)
    return acc


def compose_weights(later: Weight, earlier: Weight) -> Weight:
    if later is ZERO or earlier is ZERO:
        return ZERO
    return matmul(later, earlier)


# -- validation ---------------------------------------------------------


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    edge: int | None = None
    vertex: str | None = None

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def validate(s: Scrambler) -> list[Diagnostic]:
    """Soft invariants: no zero rows on live edges, distinct parallel weights."""
    out: list[Diagnostic] = []
    seen: dict[tuple[str, str], dict[object, int]] = defaultdict(dict)
    for k, e in enumerate(s.edges):
        label = f"edge {k} ({e.src} -> {e.dst})"
        if e.dst != EMPTY and s.dim(e.dst) > 0:
            if e.weight is ZERO:
                out.append(Diagnostic("ZeroRow", f"{label} has the zero weight into a nonempty vertex", edge=k))
            else:
                for i, row in enumerate(e.weight):
                    if all(x == 0 for x in row):
                        out.append(Diagnostic("ZeroRow", f"{label} has zero row {i}", edge=k))
        if e.count is not None and e.count < 1:
            out.append(Diagnostic("BadCount", f"{label} has count {e.count}", edge=k))
        first = seen[(e.src, e.dst)].setdefault(e.weight, k)
        if first != k:
            out.append(
                Diagnostic(
                    "DuplicateParallelWeight",
                    f"{label} repeats the weight {format_weight(e.weight, True)} of edge {first}",
                    edge=k,
                )
            )
    return out


# -- cycles -------------------------------------------------------------


def elementary_cycles(s: Scrambler, max_len: int, max_cycles: int = 100_000) -> list[Cycle]:
    """All elementary cycles with at most ``max_len`` edges.

    Each cycle is reported once, rotated to start at its lexicographically
    least vertex; parallel edges give distinct cycles.  The search from a
    start vertex only enters vertices with larger names, which is what
    makes the rotation canonical.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    succ = s.successors()
    found: list[Cycle] = []

    for root in sorted(s.vertex_names):
        edge_stack: list[int] = []
        vert_stack = [root]
        on_path = {root}

        def walk(v: str) -> None:
            for k in succ[v]:
                w = s.edges[k].dst
                if w == root:
                    edge_stack.append(k)
                    found.append(Cycle(tuple(edge_stack), tuple(vert_stack + [root])))
                    edge_stack.pop()
                    if len(found) > max_cycles:
                        raise BudgetExceeded(f"more than {max_cycles} elementary cycles")
                elif w > root and w not in on_path and len(edge_stack) + 1 < max_len:
                    edge_stack.append(k)
                    vert_stack.append(w)
                    on_path.add(w)
                    walk(w)
                    on_path.discard(w)
                    vert_stack.pop()
                    edge_stack.pop()

        walk(root)
    return found


# -- text format --------------------------------------------------------

_NAME = r"[^\s\[\];:#]+"
_VERTEX_RE = re.compile(rf"^vertex\s+({_NAME})\s+dim\s+(\d+)$")
_CURVES_RE = re.compile(rf"^curves\s+({_NAME})\s*:\s*(.*)$")
_EDGE_RE = re.compile(rf"^edge\s+({_NAME})\s*->\s*({_NAME})\s+(.*)$")
_ENTRY_RE = re.compile(r"^-?\d+(/\d+)?$")
_COUNT_RE = re.compile(r"^count\s+(\d+)$")


def _parse_entry(tok: str, lineno: int) -> Fraction:
    if not _ENTRY_RE.match(tok):
        raise ScramblerSyntaxError(f"bad matrix entry {tok!r}", lineno)
    value = Fraction(tok)
    if value < 0:
        raise NegativeEntry(f"line {lineno}: negative entry {tok}")
    return value


def _parse_weight(text: str, lineno: int) -> tuple[Weight, str]:
    text = text.strip()
    if text.startswith("["):
        close = text.find("]")
        if close < 0:
            raise ScramblerSyntaxError("unterminated matrix", lineno)
        body, rest = text[1:close], text[close + 1 :]
        rows = []
        for row_text in body.split(";"):
            toks = row_text.split()
            if not toks:
                raise ScramblerSyntaxError("empty matrix row", lineno)
            rows.append([_parse_entry(t, lineno) for t in toks])
        if len({len(r) for r in rows}) != 1:
            raise DimensionMismatch(f"line {lineno}: ragged matrix rows")
        return as_matrix(rows), rest.strip()
    head, _, rest = text.partition(" ")
    if head != "0":
        raise ScramblerSyntaxError(f"expected a bracketed matrix or 0, got {head!r}", lineno)
    return ZERO, rest.strip()


def parse_scrambler(text: str) -> Scrambler:
    """Parse the ``scrambler v1`` line format."""
    vertices: dict[str, Vertex] = {}
    curves: dict[str, tuple[str, ...]] = {}
    raw_edges: list[tuple[int, Edge]] = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line.split() != ["scrambler", "v1"]:
                raise ScramblerSyntaxError("expected header 'scrambler v1'", lineno)
            header_seen = True
            continue
        if line.startswith("vertex"):
            m = _VERTEX_RE.match(line)
            if not m:
                raise ScramblerSyntaxError(f"malformed vertex line {line!r}", lineno)
            name, dim = m.group(1), int(m.group(2))
            if name in vertices:
                raise ScramblerSyntaxError(f"duplicate vertex {name!r}", lineno)
            if name == EMPTY and dim != 0:
                raise DimensionMismatch(f"line {lineno}: the reserved vertex 'empty' must have dimension 0")
            vertices[name] = Vertex(name, dim)
        elif line.startswith("curves"):
            m = _CURVES_RE.match(line)
            if not m:
                raise ScramblerSyntaxError(f"malformed curves line {line!r}", lineno)
            name = m.group(1)
            if name not in vertices:
                raise ScramblerSyntaxError(f"curves for undeclared vertex {name!r}", lineno)
            names = tuple(m.group(2).split())
            if len(names) != vertices[name].dim:
                raise DimensionMismatch(
                    f"line {lineno}: {len(names)} curve names for vertex {name!r} of dimension {vertices[name].dim}"
                )
            curves[name] = names
        elif line.startswith("edge"):
            m = _EDGE_RE.match(line)
            if not m:
                raise ScramblerSyntaxError(f"malformed edge line {line!r}", lineno)
            weight, rest = _parse_weight(m.group(3), lineno)
            count = None
            if rest:
                cm = _COUNT_RE.match(rest)
                if not cm:
                    raise ScramblerSyntaxError(f"unexpected trailing text {rest!r}", lineno)
                count = int(cm.group(1))
            raw_edges.append((lineno, Edge(m.group(1), m.group(2), weight, count)))
        else:
            raise ScramblerSyntaxError(f"unrecognized line {line!r}", lineno)
    if not header_seen:
        raise ScramblerSyntaxError("missing header 'scrambler v1'", 1)
    verts = tuple(Vertex(v.name, v.dim, curves.get(v.name)) for v in vertices.values())
    for lineno, e in raw_edges:
        for name in (e.src, e.dst):
            if name not in vertices and name != EMPTY:
                raise UnknownVertex(f"line {lineno}: unknown vertex {name!r}")
        if e.weight is not ZERO:
            if e.dst == EMPTY:
                raise DimensionMismatch(f"line {lineno}: edges into 'empty' carry the weight 0")
            rows, cols = vertices[e.dst].dim, vertices[e.src].dim if e.src in vertices else 0
            if len(e.weight) != rows or len(e.weight[0]) != cols:
                raise DimensionMismatch(
                    f"line {lineno}: matrix is {len(e.weight)}x{len(e.weight[0])}, "
                    f"expected {rows}x{cols} for {e.src} -> {e.dst}"
                )
    return Scrambler(verts, tuple(e for _, e in raw_edges))


def serialize_scrambler(s: Scrambler) -> str:
    lines = ["scrambler v1"]
    for v in s.vertices:
        lines.append(f"vertex {v.name} dim {v.dim}")
        if v.curve_names is not None and v.dim > 0:
            lines.append(f"curves {v.name}: {' '.join(v.curve_names)}")
    for e in s.edges:
        line = f"edge {e.src} -> {e.dst} {format_weight(e.weight)}"
        if e.count is not None:
            line += f" count {e.count}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(s: Scrambler, name: str = "scrambler") -> str:
    """Deterministic Graphviz digraph; vertices ``name(dim)``, edges by weight."""
    lines = [f"digraph {_dot_id(name)} {{"]
    for v in s.vertices:
        lines.append(f"  {_dot_id(v.name)} [label={_dot_id(f'{v.name}({v.dim})')}];")
    for e in s.edges:
        lines.append(f"  {_dot_id(e.src)} -> {_dot_id(e.dst)} [label={_dot_id(format_weight(e.weight, True))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def iter_walks(s: Scrambler, length: int) -> Iterator[tuple[int, ...]]:
    """Every composable edge sequence of the given length (brute force)."""
    succ = s.successors()

    def extend(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for k in succ[s.edges[prefix[-1]].dst]:
            prefix.append(k)
            yield from extend(prefix)
            prefix.pop()

    for k in range(len(s.edges)):
        yield from extend([k])
