"""Geometry: latitudes for vertices, longitudes for edges, gaps and canvas."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Mapping, Sequence, TypeVar

from .graph import EdgeKey, Graph, GraphError, format_key
from .incidence import canonical_slot_index
from .ordering import ColumnKind, EdgeOrdering, check_permutation

VERTEX_LABEL_PLACEMENTS = ("on-band", "left-margin", "right-margin")
EDGE_LABEL_PLACEMENTS = ("on-band", "top-margin", "bottom-margin")
THICKNESSES = ("thin", "thick")
GLYPHS = ("arrowhead", "diamond")

THIN_BAND = 1.0
THICK_FRACTION = 0.6
LOOP_STUB_FRACTION = 0.6
# rough advance width of a label character, in row pitches
CHAR_WIDTH_FRACTION = 0.6


class LayoutError(GraphError):
    pass


@dataclass(frozen=True)
class LayoutOptions:
    row_pitch: float = 10.0
    col_pitch: float = 4.0
    latitude_thickness: str = "thin"
    longitude_thickness: str = "thin"
    margin_top: float | None = None
    margin_bottom: float | None = None
    margin_left: float | None = None
    margin_right: float | None = None
    vertex_labels: str = "left-margin"
    edge_labels: str = "top-margin"
    destination_glyph: str = "arrowhead"
    trim_underlays: bool = False

    def __post_init__(self) -> None:
        if not (self.row_pitch > 0 and self.col_pitch > 0):
            raise ValueError("row_pitch and col_pitch must be positive")
        for name, value, allowed in (
            ("latitude_thickness", self.latitude_thickness, THICKNESSES),
            ("longitude_thickness", self.longitude_thickness, THICKNESSES),
            ("vertex_labels", self.vertex_labels, VERTEX_LABEL_PLACEMENTS),
            ("edge_labels", self.edge_labels, EDGE_LABEL_PLACEMENTS),
            ("destination_glyph", self.destination_glyph, GLYPHS),
        ):
            if value not in allowed:
                raise ValueError(f"{name} must be one of {', '.join(allowed)}; got {value!r}")
        if self.latitude_band >= self.row_pitch:
            raise ValueError("latitude band must be thinner than row_pitch")
        if self.longitude_band >= self.col_pitch:
            raise ValueError("longitude band must be thinner than col_pitch")
        for side in ("top", "bottom", "left", "right"):
            m = getattr(self, "margin_" + side)
            if m is not None and m < 0:
                raise ValueError(f"margin_{side} must be non-negative")

    @property
    def latitude_band(self) -> float:
        return THIN_BAND if self.latitude_thickness == "thin" else THICK_FRACTION * self.row_pitch

    @property
    def longitude_band(self) -> float:
        return THIN_BAND if self.longitude_thickness == "thin" else THICK_FRACTION * self.col_pitch

    def margin(self, side: str) -> float:
        m = getattr(self, "margin_" + side)
        return 2 * self.row_pitch if m is None else m


@dataclass(frozen=True, slots=True)
class Latitude:
    vertex: str
    y_center: float
    band_height: float
    x_start: float  # extent of the gray underlay
    x_end: float
    label: str
    label_anchor: tuple[float, float]


@dataclass(frozen=True, slots=True)
class Marker:
    y: float
    glyph: str
    pointing: str  # "up" or "down": the side the destination end is on


@dataclass(frozen=True, slots=True)
class Longitude:
    edge: EdgeKey
    x_center: float
    band_width: float
    y_top: float
    y_bottom: float
    destination_marker: Marker | None
    ink_class: str = "dark"
    is_loop: bool = False
    slot: int = 0
    weight: float | None = None
    label: str | None = None


@dataclass(frozen=True, slots=True)
class Gap:
    x_center: float
    purpose: str  # "absent" or "separator"
    key: EdgeKey | None = None
    underlay: tuple[float, float] | None = None  # y extent of the gray column, if any


@dataclass(frozen=True, slots=True)
class Annotation:
    vertex: str
    text: str
    position: tuple[float, float]


@dataclass(frozen=True)
class CartographicLayout:
    latitudes: tuple[Latitude, ...]
    longitudes: tuple[Longitude, ...]
    gaps: tuple[Gap, ...]
    width: float
    height: float
    directed: bool
    options: LayoutOptions
    n_columns: int
    annotations: tuple[Annotation, ...] = ()
    edge_label_anchors: Mapping[EdgeKey, tuple[float, float]] = field(default_factory=dict)

    @property
    def canvas(self) -> tuple[float, float]:
        return (self.width, self.height)

    def latitude_of(self, vertex: str) -> Latitude:
        for lat in self.latitudes:
            if lat.vertex == vertex:
                return lat
        raise KeyError(vertex)


def _check_ordering(g: Graph, ordering: EdgeOrdering) -> None:
    keys = ordering.edge_keys()
    counts = Counter(keys)
    dup = next((k for k, c in counts.items() if c > 1), None)
    if dup is not None:
        raise LayoutError(f"ordering lists {format_key(dup, g.directed)} more than once")
    present = g.edge_keys()
    if len(counts) != len(present) or counts.keys() != present:
        extra = sorted(counts.keys() - present)
        if extra:
            raise LayoutError(f"ordering has edge {format_key(extra[0], g.directed)} not in the graph")
        missing = sorted(present - counts.keys())
        raise LayoutError(f"ordering omits edge {format_key(missing[0], g.directed)}")


def compute_layout(
    g: Graph,
    ordering: EdgeOrdering,
    vorder: Sequence[str] | None = None,
    opts: LayoutOptions | None = None,
) -> CartographicLayout:
    """Place latitudes top to bottom in ``vorder`` and columns left to right.

    Latitude ``i`` sits at ``margin_top + i * row_pitch`` and column ``j`` at
    ``margin_left + j * col_pitch``; gap columns consume positions too.
    """
    _check_ordering(g, ordering)
    return assemble_layout(g, ordering, vorder, opts)


def assemble_layout(
    g: Graph,
    ordering: EdgeOrdering,
    vorder: Sequence[str] | None = None,
    opts: LayoutOptions | None = None,
    ink: Mapping[EdgeKey, str] | None = None,
    annotations: Mapping[str, str] | None = None,
) -> CartographicLayout:
    """Layout without the ordering/graph consistency check.

    ``ink`` overrides the default dark ink per edge; ``annotations`` maps
    vertices to a note written in the right margin of their latitude.
    """
    opts = opts or LayoutOptions()
    order = g.vertices if vorder is None else check_permutation(g, vorder)
    rp, cp = opts.row_pitch, opts.col_pitch
    top, left = opts.margin("top"), opts.margin("left")
    lat_band, lon_band = opts.latitude_band, opts.longitude_band

    ys = {v: top + i * rp for i, v in enumerate(order)}
    y_first = top
    y_last = top + max(len(order) - 1, 0) * rp

    pos = g.positions
    n = len(g)
    kind = g.kind
    directed = g.directed
    glyph = opts.destination_glyph
    edge_of = g.edge
    longitudes: list[Longitude] = []
    gaps: list[Gap] = []
    span: dict[str, list[float]] = {}
    for j, col in enumerate(ordering.columns):
        x = left + j * cp
        if col.kind is ColumnKind.EDGE:
            u, v = col.key
            yu, yv = ys[u], ys[v]
            marker = None
            if directed:
                marker = Marker(yv, glyph, "down" if yv >= yu else "up")
            e = edge_of(u, v)
            longitudes.append(
                Longitude(
                    col.key,
                    x,
                    lon_band,
                    yu if yu <= yv else yv,
                    yv if yu <= yv else yu,
                    marker,
                    "dark" if ink is None else ink.get(col.key, "dark"),
                    u == v,
                    canonical_slot_index(pos[u], pos[v], n, kind),
                    e.weight,
                    e.label,
                )
            )
            if opts.trim_underlays:
                for w in (u, v):
                    s = span.get(w)
                    if s is None:
                        span[w] = [x, x]
                    else:
                        s[1] = x
        elif col.kind is ColumnKind.ABSENT:
            gaps.append(Gap(x, "absent", col.key, (y_first, y_last)))
        else:
            gaps.append(Gap(x, "separator"))

    n_cols = len(ordering.columns)
    x_first = left
    x_last = left + max(n_cols - 1, 0) * cp
    half = cp / 2
    right_edge = x_last + half

    labels = g.labels
    latitudes = []
    for v in order:
        y = ys[v]
        if opts.trim_underlays:
            s = span.get(v, (x_first, x_first))
            x0, x1 = s[0] - half, s[1] + half
        else:
            x0, x1 = x_first - half, right_edge
        text = labels.get(v, v)
        if opts.vertex_labels == "left-margin":
            anchor = (x_first - half - rp / 2, y)
        elif opts.vertex_labels == "right-margin":
            anchor = (right_edge + rp / 2, y)
        else:
            anchor = (x0, y - lat_band / 2 - rp / 10)
        latitudes.append(Latitude(v, y, lat_band, x0, x1, text, anchor))

    edge_anchor: dict[EdgeKey, tuple[float, float]] = {}
    for lon in longitudes:
        if lon.label is None:
            continue
        if opts.edge_labels == "top-margin":
            edge_anchor[lon.edge] = (lon.x_center, y_first - rp / 2)
        elif opts.edge_labels == "bottom-margin":
            edge_anchor[lon.edge] = (lon.x_center, y_last + rp / 2)
        else:
            edge_anchor[lon.edge] = (lon.x_center, (lon.y_top + lon.y_bottom) / 2)

    width = right_edge + opts.margin("right")
    height = y_last + rp / 2 + opts.margin("bottom")

    notes = []
    if annotations:
        note_x = right_edge + rp / 2
        if opts.vertex_labels == "right-margin":
            longest = max(len(lat.label) for lat in latitudes)
            note_x += (longest + 1) * CHAR_WIDTH_FRACTION * rp
        for v in order:
            if v in annotations:
                text = annotations[v]
                notes.append(Annotation(v, text, (note_x, ys[v])))
                width = max(width, note_x + len(text) * CHAR_WIDTH_FRACTION * rp + rp / 2)

    if n_cols >= len(order) and width < height:
        width = height  # keep the landscape shape

    return CartographicLayout(
        tuple(latitudes),
        tuple(longitudes),
        tuple(gaps),
        width,
        height,
        directed,
        opts,
        n_cols,
        tuple(notes),
        edge_anchor,
    )


Number = TypeVar("Number", int, float, Decimal, Fraction)


def estimate_canvas(n_vertices: int, n_columns: int, resolution: Number) -> tuple[Number, Number]:
    """Bare drawing size ``(height, width)`` at one band per ``resolution``.

    Margins are ignored.  Pass a :class:`~decimal.Decimal` or
    :class:`~fractions.Fraction` resolution for exact arithmetic.
    """
    if not resolution > 0:
        raise ValueError("resolution must be positive")
    return (n_vertices * resolution, n_columns * resolution)
