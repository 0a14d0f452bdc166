"""Augmented incidence matrix: edge slots of K_n and which of them G occupies.

Slots are the columns of the complete graph's incidence matrix, numbered by
a row-major walk of the stored region of the adjacency matrix (upper
triangle for undirected kinds, the full matrix for directed ones, diagonal
included iff loops are allowed).  Nothing here is ever materialised densely.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .graph import EdgeKey, Graph, GraphError, GraphKind


class EmptyUniverse(GraphError):
    pass


class SlotError(GraphError):
    pass


def edge_slot_count(n: int, kind: GraphKind) -> int:
    if n < 1:
        raise EmptyUniverse("the complete graph needs at least one vertex")
    if kind.directed:
        return n * n if kind.loops_allowed else n * (n - 1)
    return n * (n + 1) // 2 if kind.loops_allowed else n * (n - 1) // 2


def _row_offset(u: int, n: int, kind: GraphKind) -> int:
    # number of slots in rows 0 .. u-1
    if kind.directed:
        return u * (n if kind.loops_allowed else n - 1)
    if kind.loops_allowed:
        return u * n - u * (u - 1) // 2
    return u * (n - 1) - u * (u - 1) // 2


def row_length(u: int, n: int, kind: GraphKind) -> int:
    if kind.directed:
        return n if kind.loops_allowed else n - 1
    return n - u if kind.loops_allowed else n - 1 - u


def canonical_slot_index(u_pos: int, v_pos: int, n: int, kind: GraphKind) -> int:
    """Rank of the pair (u_pos, v_pos) in row-major slot order."""
    if not (0 <= u_pos < n and 0 <= v_pos < n):
        raise SlotError(f"vertex position out of range for n={n}: ({u_pos}, {v_pos})")
    if u_pos == v_pos and not kind.loops_allowed:
        raise SlotError(f"loop slot ({u_pos}, {v_pos}) but loops are not allowed")
    if not kind.directed and u_pos > v_pos:
        u_pos, v_pos = v_pos, u_pos
    base = _row_offset(u_pos, n, kind)
    if kind.directed:
        if kind.loops_allowed:
            return base + v_pos
        return base + (v_pos if v_pos < u_pos else v_pos - 1)
    if kind.loops_allowed:
        return base + (v_pos - u_pos)
    return base + (v_pos - u_pos - 1)


def slot_positions(index: int, n: int, kind: GraphKind) -> tuple[int, int]:
    """Inverse of :func:`canonical_slot_index`."""
    total = edge_slot_count(n, kind)
    if not 0 <= index < total:
        raise SlotError(f"slot index {index} out of range [0, {total})")
    if kind.directed:
        width = n if kind.loops_allowed else n - 1
        u, r = divmod(index, width)
        if kind.loops_allowed:
            return u, r
        return u, (r if r < u else r + 1)
    # largest row u whose offset is <= index
    lo, hi = 0, n - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _row_offset(mid, n, kind) <= index:
            lo = mid
        else:
            hi = mid - 1
    r = index - _row_offset(lo, n, kind)
    return lo, lo + r + (0 if kind.loops_allowed else 1)


class SlotTable(Sequence):
    """Read-only, lazily computed map from slot index to endpoint pair."""

    def __init__(self, vertices: Sequence[str], kind: GraphKind) -> None:
        self._vertices = tuple(vertices)
        self._kind = kind
        self._len = edge_slot_count(len(self._vertices), kind)
        self._pos = {v: i for i, v in enumerate(self._vertices)}

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(self._len))]
        if index < 0:
            index += self._len
        u, v = slot_positions(index, len(self._vertices), self._kind)
        return (self._vertices[u], self._vertices[v])

    def index_of(self, u: str, v: str) -> int:
        try:
            pu, pv = self._pos[u], self._pos[v]
        except KeyError as exc:
            raise SlotError(f"unknown vertex {exc.args[0]!r}") from None
        return canonical_slot_index(pu, pv, len(self._vertices), self._kind)

    # Sequence.index would scan linearly
    def index(self, pair, start=0, stop=None) -> int:  # type: ignore[override]
        return self.index_of(*pair)

    def __contains__(self, pair) -> bool:
        try:
            self.index_of(*pair)
        except (SlotError, TypeError, ValueError):
            return False
        return True


def edge_slot(g: Graph, key: EdgeKey) -> int:
    pos = g.positions
    return canonical_slot_index(pos[key[0]], pos[key[1]], len(g), g.kind)


@dataclass(frozen=True)
class AugmentedIncidenceMatrix:
    """Sparse augmented incidence matrix: occupied columns of K_n's matrix."""

    n: int
    kind: GraphKind
    occupied: frozenset[int]
    slot_table: SlotTable

    def __len__(self) -> int:
        return len(self.slot_table)

    def column(self, index: int) -> tuple[str, str] | None:
        """Endpoint pair of an occupied column, ``None`` for a zero column."""
        return self.slot_table[index] if index in self.occupied else None

    def entries(self, index: int) -> dict[str, int]:
        """Nonzero entries of one column, keyed by vertex (loops give 2)."""
        pair = self.column(index)
        if pair is None:
            return {}
        u, v = pair
        return {u: 2} if u == v else {u: 1, v: 1}


def build_augmented_incidence(g: Graph) -> AugmentedIncidenceMatrix:
    table = SlotTable(g.vertices, g.kind)
    n = len(g)
    pos = g.positions
    kind = g.kind
    occupied = frozenset(canonical_slot_index(pos[u], pos[v], n, kind) for u, v in g.edge_keys())
    return AugmentedIncidenceMatrix(n, kind, occupied, table)
