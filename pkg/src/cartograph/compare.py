"""Boolean operations on pairs of graphs and the one-figure comparison drawing.

All five operations live on the union of the two vertex sets.  Edges only in
A form Q, edges in both form R, edges only in B form S; then

    A \\ B = Q,  A ∩ B = R,  B \\ A = S,  A ∪ B = Q ∪ R ∪ S,  A Δ B = Q ∪ S.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .graph import Edge, EdgeKey, Graph, GraphError, GraphKind, Vertex
from .incidence import canonical_slot_index
from .layout import CartographicLayout, LayoutOptions, assemble_layout
from .ordering import Column, ColumnKind, EdgeOrdering, join_groups


class KindMismatch(GraphError):
    pass


class Membership(enum.Enum):
    A_ONLY = "A_only"
    B_ONLY = "B_only"
    BOTH = "both"


BOOLEAN_OPS = ("difference_ab", "intersection", "difference_ba", "union", "symmetric_difference")


@dataclass(frozen=True)
class ComparisonResult:
    kind: GraphKind
    union_vertices: tuple[str, ...]
    q_edges: frozenset[EdgeKey]
    r_edges: frozenset[EdgeKey]
    s_edges: frozenset[EdgeKey]
    membership: Mapping[str, Membership]
    names: tuple[str, str] = ("A", "B")
    edge_data: Mapping[EdgeKey, Edge] | None = None
    labels: Mapping[str, str] | None = None

    def graph(self, keys) -> Graph:
        data = self.edge_data or {}
        labels = self.labels or {}
        return Graph(
            [Vertex(v, labels.get(v)) for v in self.union_vertices],
            (data.get(k) or Edge(*k) for k in keys),
            kind=self.kind,
        )


def compare(a: Graph, b: Graph, names: tuple[str, str] = ("A", "B")) -> ComparisonResult:
    """Split the edges of two same-kind graphs into Q (A only), R (both), S (B only).

    Vertices are matched by id.  Union vertex order is A's order followed by
    B's new vertices in B's order.  Shared edges keep A's weight and label.
    """
    if a.kind != b.kind:
        raise KindMismatch(f"cannot compare a {a.kind} graph with a {b.kind} graph")
    union = list(a.vertices)
    seen = set(union)
    union.extend(v for v in b.vertices if v not in seen)
    pos = {v: i for i, v in enumerate(union)}
    directed = a.directed

    def norm(e: Edge) -> Edge:
        if directed or pos[e.source] <= pos[e.target]:
            return e
        return Edge(e.target, e.source, e.weight, e.label)

    data: dict[EdgeKey, Edge] = {}
    f_keys = set()
    for e in b.iter_edges():
        e = norm(e)
        f_keys.add(e.key)
        data[e.key] = e
    e_keys = set()
    for e in a.iter_edges():
        e = norm(e)
        e_keys.add(e.key)
        data[e.key] = e

    in_a, in_b = set(a.vertices), set(b.vertices)
    membership = {
        v: Membership.BOTH if v in in_a and v in in_b else Membership.A_ONLY if v in in_a else Membership.B_ONLY
        for v in union
    }
    labels = dict(b.labels)
    labels.update(a.labels)
    return ComparisonResult(
        a.kind,
        tuple(union),
        frozenset(e_keys - f_keys),
        frozenset(e_keys & f_keys),
        frozenset(f_keys - e_keys),
        membership,
        tuple(names),
        data,
        labels,
    )


def derive_boolean(result: ComparisonResult, op: str) -> Graph:
    q, r, s = result.q_edges, result.r_edges, result.s_edges
    try:
        keys = {
            "difference_ab": q,
            "intersection": r,
            "difference_ba": s,
            "union": q | r | s,
            "symmetric_difference": q | s,
        }[op]
    except KeyError:
        raise ValueError(f"unknown Boolean operation {op!r}; expected one of {', '.join(BOOLEAN_OPS)}") from None
    return result.graph(keys)


def comparison_ordering(result: ComparisonResult, separator_width: int = 1) -> EdgeOrdering:
    pos = {v: i for i, v in enumerate(result.union_vertices)}
    n = len(pos)
    kind = result.kind

    def group(keys):
        ordered = sorted(keys, key=lambda k: canonical_slot_index(pos[k[0]], pos[k[1]], n, kind))
        return [Column(ColumnKind.EDGE, k) for k in ordered]

    groups = (group(result.q_edges), group(result.r_edges), group(result.s_edges))
    return EdgeOrdering(tuple(join_groups(groups, separator_width)), "comparison")


def comparison_layout(
    result: ComparisonResult,
    vorder: Sequence[str] | None = None,
    opts: LayoutOptions | None = None,
    separator_width: int = 1,
) -> CartographicLayout:
    """A-only edges dark on the left, shared edges light in the middle,
    B-only edges dark on the right.  Vertices missing from one graph get a
    right-margin note saying which."""
    g = result.graph(result.q_edges | result.r_edges | result.s_edges)
    ink = dict.fromkeys(result.r_edges, "light")
    name_a, name_b = result.names
    notes = {}
    for v in result.union_vertices:
        m = result.membership[v]
        if m is Membership.A_ONLY:
            notes[v] = f"absent from {name_b}"
        elif m is Membership.B_ONLY:
            notes[v] = f"absent from {name_a}"
    return assemble_layout(g, comparison_ordering(result, separator_width), vorder, opts, ink, notes)
