"""Graph data model: vertices, edges, complement, degrees, density class."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

EdgeKey = tuple[str, str]


class GraphError(ValueError):
    """Base class for graph construction and validation failures."""


class DuplicateVertex(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class LoopNotAllowed(GraphError):
    pass


class ParallelEdge(GraphError):
    """Raised when an edge slot would be occupied twice."""


class InvalidWeight(GraphError):
    pass


@dataclass(frozen=True, slots=True)
class GraphKind:
    directed: bool = False
    loops_allowed: bool = False

    def __str__(self) -> str:
        base = "directed" if self.directed else "undirected"
        return base + (" with loops" if self.loops_allowed else "")


@dataclass(frozen=True, slots=True)
class Vertex:
    id: str
    label: str | None = None


@dataclass(frozen=True, slots=True)
class Edge:
    source: str
    target: str
    weight: float | None = None
    label: str | None = None

    @property
    def key(self) -> EdgeKey:
        return (self.source, self.target)

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


class DensityClass(enum.Enum):
    BIG_DENSE = "BigDense"
    OTHER = "Other"

    def __str__(self) -> str:
        return self.value


def format_key(key: EdgeKey, directed: bool) -> str:
    return f"{key[0]} {'->' if directed else '--'} {key[1]}"


class Graph:
    """An immutable simple graph (optionally directed, optionally with loops).

    Vertex order is significant: it is the default top-to-bottom latitude
    order and fixes the canonical edge slot numbering.  Undirected edges are
    stored with their endpoints ordered by vertex position, so
    ``Graph(["a", "b"], [("b", "a")]).has_edge("a", "b")`` holds.
    """

    __slots__ = ("kind", "_vertices", "_labels", "_pos", "_edges")

    def __init__(
        self,
        vertices: Iterable[str | Vertex],
        edges: Iterable[Edge | tuple] = (),
        *,
        directed: bool = False,
        loops: bool = False,
        kind: GraphKind | None = None,
    ) -> None:
        self.kind = kind if kind is not None else GraphKind(directed, loops)
        ids: list[str] = []
        labels: dict[str, str] = {}
        pos: dict[str, int] = {}
        for v in vertices:
            if isinstance(v, Vertex):
                vid, label = v.id, v.label
            else:
                vid, label = v, None
            if not isinstance(vid, str) or not vid:
                raise GraphError(f"vertex id must be a non-empty string, got {vid!r}")
            if vid in pos:
                raise DuplicateVertex(f"duplicate vertex {vid!r}")
            pos[vid] = len(ids)
            ids.append(vid)
            if label is not None:
                labels[vid] = label
        self._vertices = tuple(ids)
        self._labels = labels
        self._pos = pos

        directed_ = self.kind.directed
        loops_ = self.kind.loops_allowed
        store: dict[EdgeKey, Edge] = {}
        for item in edges:
            e = item if isinstance(item, Edge) else Edge(*item)
            u, v = e.source, e.target
            if u not in pos:
                raise UnknownVertex(f"edge endpoint {u!r} is not a vertex")
            if v not in pos:
                raise UnknownVertex(f"edge endpoint {v!r} is not a vertex")
            if u == v and not loops_:
                raise LoopNotAllowed(f"loop at {u!r} but the graph does not allow loops")
            if e.weight is not None:
                if isinstance(e.weight, bool) or not math.isfinite(e.weight):
                    raise InvalidWeight(f"weight of {u!r}-{v!r} must be a finite number")
            if not directed_ and pos[u] > pos[v]:
                e = Edge(v, u, e.weight, e.label)
            key = (e.source, e.target)
            if key in store:
                raise ParallelEdge(f"parallel edge {format_key(key, directed_)}")
            store[key] = e
        self._edges = store

    # -- basic accessors -------------------------------------------------

    @property
    def directed(self) -> bool:
        return self.kind.directed

    @property
    def loops_allowed(self) -> bool:
        return self.kind.loops_allowed

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def labels(self) -> Mapping[str, str]:
        return self._labels

    def vertex_objects(self) -> list[Vertex]:
        return [Vertex(v, self._labels.get(v)) for v in self._vertices]

    def position(self, vertex: str) -> int:
        try:
            return self._pos[vertex]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {vertex!r}") from None

    @property
    def positions(self) -> Mapping[str, int]:
        return self._pos

    @property
    def edges(self) -> Sequence[Edge]:
        return tuple(self._edges.values())

    def iter_edges(self) -> Iterator[Edge]:
        return iter(self._edges.values())

    def edge_keys(self) -> frozenset[EdgeKey]:
        return frozenset(self._edges)

    def normalize_key(self, u: str, v: str) -> EdgeKey:
        """Return the stored key for the pair (u, v) in this graph's kind."""
        if not self.kind.directed and self.position(u) > self.position(v):
            return (v, u)
        return (u, v)

    def has_edge(self, u: str, v: str) -> bool:
        if u not in self._pos or v not in self._pos:
            return False
        return self.normalize_key(u, v) in self._edges

    def edge(self, u: str, v: str) -> Edge:
        return self._edges[self.normalize_key(u, v)]

    def __len__(self) -> int:
        return len(self._vertices)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.kind == other.kind
            and self._vertices == other._vertices
            and self._labels == other._labels
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self.kind, self._vertices, frozenset(self._edges)))

    def __repr__(self) -> str:
        return f"Graph({len(self._vertices)} vertices, {len(self._edges)} edges, {self.kind})"

    def structure(self) -> tuple[GraphKind, tuple[str, ...], frozenset[EdgeKey]]:
        """Kind, vertex order and edge keys; ignores weights and labels."""
        return (self.kind, self._vertices, frozenset(self._edges))

    def with_edges(self, edges: Iterable[Edge | tuple]) -> Graph:
        """A graph on the same vertices and kind with a different edge set."""
        return Graph(self.vertex_objects(), edges, kind=self.kind)


def complete_pairs(vertices: Sequence[str], kind: GraphKind) -> Iterator[EdgeKey]:
    """All admissible endpoint pairs, in row-major adjacency-matrix order."""
    n = len(vertices)
    for i in range(n):
        if kind.directed:
            cols: Iterable[int] = range(n)
        else:
            cols = range(i, n)
        for j in cols:
            if i == j and not kind.loops_allowed:
                continue
            yield (vertices[i], vertices[j])


def complete_graph(vertices: Iterable[str], kind: GraphKind | None = None) -> Graph:
    vs = list(vertices)
    kind = kind or GraphKind()
    return Graph(vs, complete_pairs(vs, kind), kind=kind)


def complement(g: Graph) -> Graph:
    """Graph on the same vertices holding exactly the edges ``g`` lacks.

    The universe is the complete graph of ``g``'s kind: loop slots are part
    of it iff loops are allowed, ordered pairs iff directed.  Weights and
    labels do not carry over.
    """
    present = g.edge_keys()
    return Graph(
        g.vertex_objects(),
        (p for p in complete_pairs(g.vertices, g.kind) if p not in present),
        kind=g.kind,
    )


def degrees(g: Graph) -> dict[str, tuple[int, int]]:
    """Map each vertex to ``(in_degree, out_degree)``.

    For undirected graphs both components equal the number of incident edge
    ends, so a loop counts twice.
    """
    ins = dict.fromkeys(g.vertices, 0)
    outs = dict.fromkeys(g.vertices, 0)
    if g.directed:
        for u, v in g.edge_keys():
            outs[u] += 1
            ins[v] += 1
        return {v: (ins[v], outs[v]) for v in g.vertices}
    for u, v in g.edge_keys():
        ins[u] += 1
        ins[v] += 1
    return {v: (ins[v], ins[v]) for v in g.vertices}


def classify_counts(v: int, e: int) -> DensityClass:
    cube = v**3
    if 10**6 < cube and cube < e * e:
        return DensityClass.BIG_DENSE
    return DensityClass.OTHER


def classify_density(g: Graph) -> DensityClass:
    """Big dense graphs are those with 10^6 < v^3 < e^2 (both strict)."""
    return classify_counts(len(g), g.n_edges)


def random_graph(
    rng,
    n: int,
    kind: GraphKind,
    p: float = 0.5,
    prefix: str = "",
) -> Graph:
    """Bernoulli random graph on vertices ``prefix+"0" .. prefix+str(n-1)``.

    ``rng`` is a :class:`random.Random`; the library itself never creates one.
    """
    vs = [f"{prefix}{i}" for i in range(n)]
    return Graph(vs, (pr for pr in complete_pairs(vs, kind) if rng.random() < p), kind=kind)


ALL_KINDS = tuple(GraphKind(d, l) for d, l in product((False, True), repeat=2))
