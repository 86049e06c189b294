"""Problem instances, node addressing and graph construction for hammock
resistor networks.

A hammock is an M x N rectangular resistor grid with two extra hub nodes.
Interior nodes sit at integer coordinates (x, y) with column x = 1..N and
row y = 1..M; (1, 1) is the lower-left corner. Links along a row have
resistance r, links along a column have resistance s. Hub O hangs below
the grid, wired to every bottom-row node (y = 1) through one extra s-link,
and hub OP sits above it, wired to every top-row node (y = M) the same
way. The left and right columns are open boundaries.

All types here are frozen dataclasses: immutable after construction and
safe to share between threads. Public coordinates are 1-based throughout.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, NamedTuple, Tuple, Union


class LatticeError(ValueError):
    """Invalid node, coordinate or problem-instance parameter."""


class UnsupportedNodeError(LatticeError):
    """A hub terminal was passed to a routine that needs interior nodes."""


class SizeCapError(LatticeError):
    """A dense computation was requested above its configured size cap."""


class Terminal(enum.Enum):
    """The two hub nodes. Wire encoding is "O" (bottom) and "OP" (top)."""

    BOTTOM = "O"
    TOP = "OP"

    @property
    def code(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class GridNode:
    """Interior node at column ``x`` (1..N) and row ``y`` (1..M)."""

    x: int
    y: int


Node = Union[GridNode, Terminal]
NodeLike = Union[GridNode, Terminal, Tuple[int, int], str]


def as_node(value: NodeLike) -> Node:
    """Coerce ``(x, y)`` tuples and ``"O"``/``"OP"`` strings to nodes."""
    if isinstance(value, (GridNode, Terminal)):
        return value
    if isinstance(value, str):
        return parse_node(value)
    if isinstance(value, tuple) and len(value) == 2:
        x, y = value
        return GridNode(int(x), int(y))
    raise LatticeError(f"cannot interpret {value!r} as a lattice node")


def parse_node(text: str) -> Node:
    """Parse CLI node syntax: ``x,y`` for interior nodes, ``O`` / ``OP``."""
    token = text.strip()
    upper = token.upper()
    if upper == Terminal.BOTTOM.code:
        return Terminal.BOTTOM
    if upper == Terminal.TOP.code:
        return Terminal.TOP
    parts = token.split(",")
    if len(parts) != 2:
        raise LatticeError(
            f"node {text!r} is neither 'x,y' nor a terminal ('O'/'OP')"
        )
    try:
        return GridNode(int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise LatticeError(f"non-integer coordinate in node {text!r}") from exc


def node_code(node: NodeLike) -> str:
    """Wire encoding of a node: ``"x,y"``, ``"O"`` or ``"OP"``."""
    node = as_node(node)
    if isinstance(node, Terminal):
        return node.code
    return f"{node.x},{node.y}"


def _positive_resistance(name: str, value) -> None:
    try:
        as_float = float(value)
    except (TypeError, ValueError) as exc:
        raise LatticeError(f"{name} must be a number, got {value!r}") from exc
    if not math.isfinite(as_float) or as_float <= 0.0:
        raise LatticeError(f"{name} must be finite and positive, got {value!r}")


@dataclass(frozen=True)
class HammockSpec:
    """Dimensions and link resistances of one hammock instance.

    ``rows`` (M) counts interior rows, ``cols`` (N) counts columns. ``r``
    is the resistance of every horizontal link, ``s`` the resistance of
    every vertical link and of the hub spokes. ``r`` and ``s`` may be any
    positive numbers; exact ``fractions.Fraction`` values are honoured by
    the rational oracle.
    """

    rows: int
    cols: int
    r: float = 1.0
    s: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.rows, int) or self.rows < 1:
            raise LatticeError(f"rows must be a positive integer, got {self.rows!r}")
        if not isinstance(self.cols, int) or self.cols < 1:
            raise LatticeError(f"cols must be a positive integer, got {self.cols!r}")
        _positive_resistance("r", self.r)
        _positive_resistance("s", self.s)

    @property
    def ratio(self) -> float:
        """Horizontal-to-vertical resistance ratio r/s."""
        return float(self.r) / float(self.s)

    @property
    def interior_count(self) -> int:
        return self.rows * self.cols

    @property
    def node_count(self) -> int:
        """Interior nodes plus the two hubs."""
        return self.rows * self.cols + 2

    def interior_nodes(self) -> Iterator[GridNode]:
        """All interior nodes in flat-index order."""
        for y in range(1, self.rows + 1):
            for x in range(1, self.cols + 1):
                yield GridNode(x, y)

    def contains(self, node: Node) -> bool:
        if isinstance(node, Terminal):
            return True
        return 1 <= node.x <= self.cols and 1 <= node.y <= self.rows

    def as_dict(self) -> dict:
        return {"M": self.rows, "N": self.cols, "r": float(self.r), "s": float(self.s)}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "HammockSpec":
        return cls(rows=int(data["M"]), cols=int(data["N"]),
                   r=float(data.get("r", 1.0)), s=float(data.get("s", 1.0)))

    @classmethod
    def from_json(cls, text: str) -> "HammockSpec":
        return cls.from_dict(json.loads(text))


def require_interior(spec: HammockSpec, node: NodeLike) -> GridNode:
    """Coerce and bounds-check an interior node.

    Hub terminals raise :class:`UnsupportedNodeError`; only the dense
    oracle accepts them.
    """
    node = as_node(node)
    if isinstance(node, Terminal):
        raise UnsupportedNodeError(
            f"hub terminal {node.code!r} is not an interior node; "
            "use hammocknet.oracle.resistance_dense for terminal queries"
        )
    if not 1 <= node.x <= spec.cols:
        raise LatticeError(
            f"column x={node.x} outside 1..{spec.cols} for a "
            f"{spec.rows}x{spec.cols} hammock"
        )
    if not 1 <= node.y <= spec.rows:
        raise LatticeError(
            f"row y={node.y} outside 1..{spec.rows} for a "
            f"{spec.rows}x{spec.cols} hammock"
        )
    return node


@dataclass(frozen=True)
class SpanCoords:
    """Column-span frame for a pair of interior nodes.

    Columns are relabelled k = -span_left .. span_right with
    ``cols = span_left + span_right + 1``. The input node sits on column
    ``k = -p_offset`` at height ``y_in``, the output node on ``k = q_offset``
    at height ``y_out``. The origin is centred between the two columns, so
    ``p_offset`` and ``q_offset`` differ by at most one and are equal when
    the column separation is even.
    """

    span_left: int
    span_right: int
    p_offset: int
    q_offset: int
    y_in: int
    y_out: int
    swapped: bool = False

    @property
    def cols(self) -> int:
        return self.span_left + self.span_right + 1

    @property
    def x_in(self) -> int:
        return self.span_left - self.p_offset + 1

    @property
    def x_out(self) -> int:
        return self.span_left + self.q_offset + 1

    @property
    def separation(self) -> int:
        """Column distance x_out - x_in (never negative)."""
        return self.p_offset + self.q_offset


def span_coords(spec: HammockSpec, a: NodeLike, b: NodeLike) -> SpanCoords:
    """Map an interior node pair to its column-span frame.

    Pairs are normalised so the input column is never right of the output
    column: if ``a`` lies right of ``b`` (ties broken on y) the pair is
    swapped and the ``swapped`` flag records it. The round trip through
    ``x_in``/``x_out`` is exact.
    """
    a = require_interior(spec, a)
    b = require_interior(spec, b)
    swapped = (a.x, a.y) > (b.x, b.y)
    if swapped:
        a, b = b, a
    span_left = (a.x + b.x) // 2 - 1
    return SpanCoords(
        span_left=span_left,
        span_right=spec.cols - 1 - span_left,
        p_offset=span_left - a.x + 1,
        q_offset=b.x - span_left - 1,
        y_in=a.y,
        y_out=b.y,
        swapped=swapped,
    )


def flat_index(spec: HammockSpec, node: NodeLike) -> int:
    """Flat position of an interior node: x + (y - 1) * cols, in 1..M*N."""
    node = require_interior(spec, node)
    return node.x + (node.y - 1) * spec.cols


def node_from_flat(spec: HammockSpec, index: int) -> GridNode:
    """Inverse of :func:`flat_index`."""
    if not 1 <= index <= spec.interior_count:
        raise LatticeError(
            f"flat index {index} outside 1..{spec.interior_count}"
        )
    return GridNode((index - 1) % spec.cols + 1, (index - 1) // spec.cols + 1)


class Edge(NamedTuple):
    a: Node
    b: Node
    ohms: float


def build_edge_list(spec: HammockSpec) -> list[Edge]:
    """Weighted edge list of the hammock graph over M*N + 2 nodes.

    Horizontal links (x,y)-(x+1,y) carry r, vertical links (x,y)-(x,y+1)
    carry s, and each column is closed off by hub spokes O-(x,1) and
    OP-(x,M) of resistance s. Total edge count is
    M*(N-1) + N*(M-1) + 2*N.
    """
    edges: list[Edge] = []
    r, s = float(spec.r), float(spec.s)
    for y in range(1, spec.rows + 1):
        for x in range(1, spec.cols):
            edges.append(Edge(GridNode(x, y), GridNode(x + 1, y), r))
    for x in range(1, spec.cols + 1):
        for y in range(1, spec.rows):
            edges.append(Edge(GridNode(x, y), GridNode(x, y + 1), s))
    for x in range(1, spec.cols + 1):
        edges.append(Edge(Terminal.BOTTOM, GridNode(x, 1), s))
    for x in range(1, spec.cols + 1):
        edges.append(Edge(GridNode(x, spec.rows), Terminal.TOP, s))
    return edges


def edge_list_csv(spec: HammockSpec) -> str:
    """Edge list as CSV text with header ``node_a,node_b,resistance``."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["node_a", "node_b", "resistance"])
    for edge in build_edge_list(spec):
        writer.writerow([node_code(edge.a), node_code(edge.b), repr(edge.ohms)])
    return buf.getvalue()


@dataclass(frozen=True)
class ResistanceResult:
    """Two-point resistance in ohms with its method tag and diagnostics."""

    ohms: float
    method: str
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __float__(self) -> float:
        return self.ohms


def env_cap(name: str, default: int) -> int:
    """Read a size cap from the environment, falling back to ``default``."""
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise LatticeError(f"environment variable {name}={raw!r} is not an integer") from exc
    if value < 1:
        raise LatticeError(f"environment variable {name} must be positive")
    return value
