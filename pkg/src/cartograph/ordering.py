"""Column sequences (edges and deliberate gaps) and vertex permutations."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Sequence

from .graph import EdgeKey, Graph, GraphError, Vertex, degrees, format_key
from .incidence import canonical_slot_index, edge_slot, row_length


class OrderingError(GraphError):
    pass


class UnknownEdge(OrderingError):
    pass


class DuplicateEdge(OrderingError):
    pass


class MissingEdge(OrderingError):
    pass


class MissingWeight(OrderingError):
    pass


class NotAPermutation(OrderingError):
    pass


class ColumnKind(enum.Enum):
    EDGE = "edge"
    ABSENT = "absent"
    SEPARATOR = "separator"


@dataclass(frozen=True, slots=True)
class Column:
    kind: ColumnKind
    key: EdgeKey | None = None  # edge, or the missing pair of an absent gap

    @property
    def is_edge(self) -> bool:
        return self.kind is ColumnKind.EDGE


SEPARATOR = Column(ColumnKind.SEPARATOR)
GAP = None  # marker accepted by order_custom


@dataclass(frozen=True)
class EdgeOrdering:
    columns: tuple[Column, ...]
    strategy: str

    def __len__(self) -> int:
        return len(self.columns)

    def edge_keys(self) -> list[EdgeKey]:
        return [c.key for c in self.columns if c.kind is ColumnKind.EDGE]

    def count(self, kind: ColumnKind) -> int:
        return sum(1 for c in self.columns if c.kind is kind)


def _sorted_keys(g: Graph) -> list[EdgeKey]:
    pos = g.positions
    n = len(g)
    kind = g.kind
    return sorted(g.edge_keys(), key=lambda k: canonical_slot_index(pos[k[0]], pos[k[1]], n, kind))


def join_groups(groups: Iterable[list[Column]], separator_width: int) -> list[Column]:
    out: list[Column] = []
    for group in groups:
        if not group:
            continue
        if out:
            out.extend([SEPARATOR] * separator_width)
        out.extend(group)
    return out


def order_canonical(
    g: Graph,
    show_absent: bool = False,
    group_gaps: bool = False,
    separator_width: int = 1,
) -> EdgeOrdering:
    """Edges in row-major adjacency-matrix order.

    With ``show_absent`` every slot of the complete graph gets a column and
    the missing ones become absent-edge gaps.  With ``group_gaps`` a
    separator goes between the slot groups of consecutive matrix rows;
    rows that contribute no columns are skipped rather than doubled up.
    """
    if separator_width < 0:
        raise ValueError("separator_width must be non-negative")
    vs = g.vertices
    n = len(vs)
    rows: list[list[Column]] = []
    if show_absent:
        present = g.edge_keys()
        kind = g.kind
        for i, u in enumerate(vs):
            start = 0 if kind.directed else i
            row: list[Column] = []
            for j in range(start, n):
                if i == j and not kind.loops_allowed:
                    continue
                key = (u, vs[j])
                row.append(Column(ColumnKind.EDGE if key in present else ColumnKind.ABSENT, key))
            assert len(row) == row_length(i, n, kind)
            rows.append(row)
    else:
        pos = g.positions
        keys = _sorted_keys(g)
        rows = [
            [Column(ColumnKind.EDGE, k) for k in grp]
            for _, grp in groupby(keys, key=lambda k: pos[k[0]])
        ]
    if group_gaps:
        columns = join_groups(rows, separator_width)
    else:
        columns = [c for row in rows for c in row]
    return EdgeOrdering(tuple(columns), "canonical")


def order_by_degree(g: Graph, endpoint: str = "origin", separator_width: int = 1) -> EdgeOrdering:
    """Group edges by an endpoint vertex, busiest vertices first.

    ``endpoint="origin"`` groups by source vertex ranked by out-degree,
    ``"destination"`` by target vertex ranked by in-degree.  Groups are
    separated by gap columns; absent edges are never shown.  For undirected
    graphs both choices group by the endpoint earlier in vertex order.
    """
    if endpoint not in ("origin", "destination"):
        raise ValueError(f"endpoint must be 'origin' or 'destination', not {endpoint!r}")
    pos = g.positions
    deg = degrees(g)
    if g.directed and endpoint == "destination":
        side, which = 1, 0
    else:
        side, which = 0, 1
    groups: dict[str, list[EdgeKey]] = {}
    for key in _sorted_keys(g):
        groups.setdefault(key[side], []).append(key)
    order = sorted(groups, key=lambda v: (-deg[v][which], pos[v]))
    columns = join_groups(
        ([Column(ColumnKind.EDGE, k) for k in groups[v]] for v in order), separator_width
    )
    return EdgeOrdering(tuple(columns), "out_degree" if endpoint == "origin" else "in_degree")


def order_by_weight(g: Graph, direction: str = "ascending") -> EdgeOrdering:
    if direction not in ("ascending", "descending"):
        raise ValueError(f"direction must be 'ascending' or 'descending', not {direction!r}")
    keys = _sorted_keys(g)  # canonical order, the tie-break
    weighted = []
    for key in keys:
        w = g.edge(*key).weight
        if w is None:
            raise MissingWeight(f"edge {format_key(key, g.directed)} has no weight")
        weighted.append((w, key))
    # sort is stable, so equal weights keep canonical order either way
    weighted.sort(key=lambda t: t[0], reverse=direction == "descending")
    return EdgeOrdering(tuple(Column(ColumnKind.EDGE, k) for _, k in weighted), "weight")


def order_custom(g: Graph, spec: Sequence[EdgeKey | None]) -> EdgeOrdering:
    """Columns exactly as listed; ``None`` entries become separator gaps.

    Every edge must be listed exactly once.  Undirected keys may name their
    endpoints in either order.
    """
    seen: set[EdgeKey] = set()
    columns: list[Column] = []
    for item in spec:
        if item is None:
            columns.append(SEPARATOR)
            continue
        u, v = item
        text = format_key((u, v), g.directed)
        if not g.has_edge(u, v):
            raise UnknownEdge(f"unknown edge {text}")
        key = g.normalize_key(u, v)
        if key in seen:
            raise DuplicateEdge(f"edge {text} listed twice")
        seen.add(key)
        columns.append(Column(ColumnKind.EDGE, key))
    if len(seen) != g.n_edges:
        missing = sorted(g.edge_keys() - seen, key=lambda k: edge_slot(g, k))
        raise MissingEdge(f"edge {format_key(missing[0], g.directed)} is not listed")
    return EdgeOrdering(tuple(columns), "custom")


def check_permutation(g: Graph, order: Sequence[str]) -> tuple[str, ...]:
    order = tuple(order)
    if len(order) != len(g) or set(order) != set(g.vertices):
        extra = [v for v in order if v not in g.positions]
        if extra:
            raise NotAPermutation(f"{extra[0]!r} is not a vertex of the graph")
        missing = [v for v in g.vertices if v not in set(order)]
        if missing:
            raise NotAPermutation(f"vertex {missing[0]!r} is missing from the order")
        raise NotAPermutation("vertex order lists a vertex more than once")
    return order


def permute_vertices(g: Graph, order: Sequence[str]) -> Graph:
    """Same graph with its vertex list reordered (slots are re-derived)."""
    order = check_permutation(g, order)
    labels = g.labels
    return Graph([Vertex(v, labels.get(v)) for v in order], g.iter_edges(), kind=g.kind)
