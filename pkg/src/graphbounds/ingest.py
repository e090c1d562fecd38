"""Reading graphs and correlation matrices, and thresholding correlations.

Edge-list text: a header line ``n m`` followed by ``m`` lines ``u v``
(0-indexed, whitespace separated). Adjacency CSV: ``n`` rows of ``n``
comma-separated 0/1 entries, no header. Correlation CSV: ``n`` rows of
``n`` reals in [-1, 1] with an optional header row of region labels.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AsymmetricAdjacency,
    AsymmetryTooLarge,
    IndexOutOfRange,
    InvalidDiagonal,
    MalformedLine,
    NonBinaryEntry,
    NotSquare,
    OutOfRangeEntry,
    SelfLoop,
    SelfLoopEntry,
)
from .graph import Graph, from_edge_list

RANGE_TOLERANCE = 1e-9
ASYMMETRY_TOLERANCE = 1e-6


def _text(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        return data.decode("utf-8-sig")
    return data


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    n: int
    r: np.ndarray = field(repr=False)
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        self.r.flags.writeable = False


def _parse_float(token: str, line: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise MalformedLine(f"not a number: {token.strip()!r}", line) from None


def parse_correlation_csv(data) -> CorrelationMatrix:
    """Parse a square correlation matrix.

    Asymmetry up to 1e-6 is averaged away; anything larger, any NaN, any
    entry outside [-1, 1] beyond rounding noise, or a diagonal entry other
    than 1 is rejected.
    """
    rows = [row for row in csv.reader(io.StringIO(_text(data))) if any(c.strip() for c in row)]
    if not rows:
        raise NotSquare("empty correlation matrix")
    labels = None
    first_line = 1
    try:
        [float(c) for c in rows[0]]
    except ValueError:
        labels = tuple(c.strip() for c in rows[0])
        rows = rows[1:]
        first_line = 2
    n = len(rows)
    values = np.empty((n, n))
    for i, row in enumerate(rows):
        line = first_line + i
        if len(row) != n:
            raise NotSquare(f"expected {n} columns, found {len(row)}", line)
        for j, token in enumerate(row):
            x = _parse_float(token, line)
            if math.isnan(x):
                raise OutOfRangeEntry(f"NaN entry in column {j + 1}", line)
            if abs(x) > 1 + RANGE_TOLERANCE:
                raise OutOfRangeEntry(f"entry {x} in column {j + 1} outside [-1, 1]", line)
            values[i, j] = x
    if labels is not None and len(labels) != n:
        raise NotSquare(f"{len(labels)} labels for a {n}x{n} matrix", 1)
    skew = np.abs(values - values.T)
    if n and skew.max() > ASYMMETRY_TOLERANCE:
        i, j = np.unravel_index(int(np.argmax(skew)), skew.shape)
        raise AsymmetryTooLarge(
            f"r[{i}][{j}] and r[{j}][{i}] differ by {skew[i, j]:.3g}", first_line + int(i)
        )
    values = np.clip((values + values.T) / 2, -1.0, 1.0)
    diag = np.abs(np.diagonal(values) - 1.0)
    if n and diag.max() > ASYMMETRY_TOLERANCE:
        i = int(np.argmax(diag))
        raise InvalidDiagonal(f"diagonal entry {values[i, i]} is not 1", first_line + i)
    np.fill_diagonal(values, 1.0)
    return CorrelationMatrix(n, values, labels)


def binarize(c: CorrelationMatrix, threshold: float = 0.0, inclusive: bool = False) -> Graph:
    """Keep pair ``(i, j)``, ``i != j``, when ``r > threshold`` (``>=`` if inclusive)."""
    if not -1.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [-1, 1], got {threshold}")
    keep = c.r >= threshold if inclusive else c.r > threshold
    keep = keep.copy()
    np.fill_diagonal(keep, False)
    return Graph.from_adjacency_matrix(keep)


def parse_edge_list(data) -> Graph:
    lines = _text(data).splitlines()
    body = [(i + 1, ln.split()) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise MalformedLine("missing 'n m' header", 1)
    line, head = body[0]
    n, m = _int_pair(head, line)
    if n < 0 or m < 0:
        raise MalformedLine("header counts must be nonnegative", line)
    if len(body) - 1 != m:
        raise MalformedLine(f"header declares {m} edges but {len(body) - 1} edge lines follow", line)
    edges = []
    for line, parts in body[1:]:
        u, v = _int_pair(parts, line)
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedLine(f"endpoint outside [0, {n})", line)
        if u == v:
            raise MalformedLine(f"self-loop at vertex {u}", line)
        edges.append((u, v))
    try:
        return from_edge_list(n, edges)
    except (IndexOutOfRange, SelfLoop) as exc:  # pragma: no cover - guarded above
        raise MalformedLine(str(exc)) from exc


def _int_pair(parts: list[str], line: int) -> tuple[int, int]:
    if len(parts) != 2:
        raise MalformedLine(f"expected two integers, found {len(parts)} fields", line)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise MalformedLine(f"expected two integers, got {' '.join(parts)!r}", line) from None


def serialize_edge_list(g: Graph, one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    out = [f"{g.n} {g.m}"]
    out += [f"{u + shift} {v + shift}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def parse_adjacency_csv(data) -> Graph:
    rows = [row for row in csv.reader(io.StringIO(_text(data))) if any(c.strip() for c in row)]
    n = len(rows)
    a = np.zeros((n, n), dtype=bool)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotSquare(f"expected {n} columns, found {len(row)}", i + 1)
        for j, token in enumerate(row):
            token = token.strip()
            if token not in ("0", "1"):
                raise NonBinaryEntry(f"entry {token!r} in column {j + 1} is not 0 or 1", i + 1)
            a[i, j] = token == "1"
    for i in range(n):
        if a[i, i]:
            raise SelfLoopEntry(f"diagonal entry {i + 1} is 1", i + 1)
    asym = np.argwhere(a != a.T)
    if asym.size:
        i, j = (int(x) for x in asym[0])
        raise AsymmetricAdjacency(f"A[{i}][{j}] != A[{j}][{i}]", i + 1)
    return Graph.from_adjacency_matrix(a)


def serialize_adjacency_csv(g: Graph) -> str:
    a = g.adjacency_matrix
    return "".join(",".join("1" if x else "0" for x in row) + "\n" for row in a)


def read_graph(path, fmt: str | None = None) -> Graph:
    """Load a graph file; ``fmt`` is ``edgelist`` or ``adjacency`` (guessed from a ``.csv`` suffix)."""
    path = str(path)
    if fmt is None:
        fmt = "adjacency" if path.lower().endswith(".csv") else "edgelist"
    with open(path, "rb") as fh:
        data = fh.read()
    if fmt == "adjacency":
        return parse_adjacency_csv(data)
    if fmt == "edgelist":
        return parse_edge_list(data)
    raise ValueError(f"unknown graph format {fmt!r}")
