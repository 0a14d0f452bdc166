"""Reading and writing graphs, ordering files, config files and layout exports."""

from __future__ import annotations

import dataclasses
import json
import math
import re
from dataclasses import dataclass, field
from typing import Any, Iterator

from .graph import Edge, EdgeKey, Graph, GraphError, Vertex
from .incidence import edge_slot
from .layout import CartographicLayout, LayoutOptions
from .render import RenderStyle

DIRECTIVES = ("directed", "undirected", "loops")
_TOKEN = re.compile(r"\S+")


class ParseError(GraphError):
    """Input text could not be read; ``line``/``column`` are 1-based."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class GraphDocument:
    name: str
    graph: Graph


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def parse_edge_list(text: str) -> Graph:
    """Parse ``u -- v [weight]`` / ``u -> v [weight]`` lines.

    Optional leading directives ``directed``, ``undirected`` and ``loops``
    fix the graph kind.  A line holding a single id declares a vertex.
    Vertices are ordered by first appearance; ``#`` starts a comment.
    """
    directed = loops = False
    header = True
    order: list[str] = []
    pos: dict[str, int] = {}
    edges: list[Edge] = []
    seen: dict[EdgeKey, int] = {}

    def vertex(v: str) -> int:
        p = pos.get(v)
        if p is None:
            p = pos[v] = len(order)
            order.append(v)
        return p

    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(_strip_comment(raw))
        if not toks:
            continue
        if len(toks) == 1:
            word, col = toks[0]
            if header and word in DIRECTIVES:
                if word == "loops":
                    loops = True
                else:
                    directed = word == "directed"
                continue
            if word in ("--", "->"):
                raise ParseError(f"edge operator {word!r} without endpoints", lineno, col)
            header = False
            vertex(word)
            continue
        header = False
        if len(toks) not in (3, 4):
            raise ParseError("expected 'u -- v [weight]' or 'u -> v [weight]'", lineno, toks[0][1])
        (u, _), (op, op_col), (v, _) = toks[:3]
        if op not in ("--", "->"):
            raise ParseError(f"expected '--' or '->', found {op!r}", lineno, op_col)
        if op == "->" and not directed:
            raise ParseError("'->' edge in an undirected graph (add a 'directed' header line)", lineno, op_col)
        if op == "--" and directed:
            raise ParseError("'--' edge in a directed graph", lineno, op_col)
        weight = None
        if len(toks) == 4:
            wtext, wcol = toks[3]
            try:
                weight = float(wtext)
            except ValueError:
                raise ParseError(f"weight {wtext!r} is not a number", lineno, wcol) from None
            if not math.isfinite(weight):
                raise ParseError(f"weight {wtext!r} is not finite", lineno, wcol)
        if u == v and not loops:
            raise ParseError(f"loop at {u!r} but loops are not allowed (add a 'loops' header line)", lineno, 1)
        pu, pv = vertex(u), vertex(v)
        key = (u, v) if directed or pu <= pv else (v, u)
        if key in seen:
            raise ParseError(f"duplicate edge {u} {op} {v} (first given on line {seen[key]})", lineno, 1)
        seen[key] = lineno
        edges.append(Edge(u, v, weight))
    return Graph(order, edges, directed=directed, loops=loops)


def parse_json_document(text: str) -> GraphDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("graph document must be a JSON object", 1, 1)
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError("'name' must be a string")
    kind_doc = doc.get("kind", {})
    if not isinstance(kind_doc, dict):
        raise ParseError("'kind' must be an object")
    directed = kind_doc.get("directed", False)
    loops = kind_doc.get("loops", False)
    if not isinstance(directed, bool) or not isinstance(loops, bool):
        raise ParseError("'kind.directed' and 'kind.loops' must be booleans")

    vertices = []
    for i, item in enumerate(doc.get("vertices", [])):
        if isinstance(item, str):
            vertices.append(Vertex(item))
        elif isinstance(item, dict) and isinstance(item.get("id"), str):
            label = item.get("label")
            if label is not None and not isinstance(label, str):
                raise ParseError(f"vertices[{i}]: 'label' must be a string")
            vertices.append(Vertex(item["id"], label))
        else:
            raise ParseError(f"vertices[{i}]: expected a string id or an object with 'id'")
    pos: dict[str, int] = {}
    for i, v in enumerate(vertices):
        if not v.id:
            raise ParseError(f"vertices[{i}]: id must be non-empty")
        if v.id in pos:
            raise ParseError(f"vertices[{i}]: duplicate vertex {v.id!r}")
        pos[v.id] = i

    edges = []
    seen: dict[EdgeKey, int] = {}
    for i, item in enumerate(doc.get("edges", [])):
        if not isinstance(item, dict):
            raise ParseError(f"edges[{i}]: expected an object")
        u, v = item.get("source"), item.get("target")
        if not isinstance(u, str) or not isinstance(v, str):
            raise ParseError(f"edges[{i}]: 'source' and 'target' must be strings")
        for end in (u, v):
            if end not in pos:
                raise ParseError(f"edges[{i}]: {end!r} is not a listed vertex")
        if u == v and not loops:
            raise ParseError(f"edges[{i}]: loop at {u!r} but loops are not allowed")
        w = item.get("weight")
        if w is not None and (isinstance(w, bool) or not isinstance(w, (int, float)) or not math.isfinite(w)):
            raise ParseError(f"edges[{i}]: 'weight' must be a finite number")
        label = item.get("label")
        if label is not None and not isinstance(label, str):
            raise ParseError(f"edges[{i}]: 'label' must be a string")
        key = (u, v) if directed or pos[u] <= pos[v] else (v, u)
        if key in seen:
            raise ParseError(f"edges[{i}]: duplicate of edges[{seen[key]}] ({u}, {v})")
        seen[key] = i
        edges.append(Edge(u, v, None if w is None else float(w), label))
    return GraphDocument(name, Graph(vertices, edges, directed=directed, loops=loops))


def parse_graph(text: str, format: str = "edge_list") -> Graph:
    if format == "json":
        return parse_json_document(text).graph
    if format == "edge_list":
        return parse_edge_list(text)
    raise ValueError(f"unknown graph format {format!r}")


def _canonical_edges(g: Graph) -> list[Edge]:
    return sorted(g.iter_edges(), key=lambda e: edge_slot(g, e.key))


def emit_json(g: Graph, name: str = "") -> str:
    vertices: list[Any] = []
    for v in g.vertex_objects():
        vertices.append({"id": v.id} if v.label is None else {"id": v.id, "label": v.label})
    edges = []
    for e in _canonical_edges(g):
        item: dict[str, Any] = {"source": e.source, "target": e.target}
        if e.weight is not None:
            item["weight"] = e.weight
        if e.label is not None:
            item["label"] = e.label
        edges.append(item)
    doc = {
        "name": name,
        "kind": {"directed": g.directed, "loops": g.loops_allowed},
        "vertices": vertices,
        "edges": edges,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _check_token(v: str) -> str:
    if not _TOKEN.fullmatch(v) or "#" in v or v in ("--", "->") or v in DIRECTIVES:
        raise ValueError(f"vertex id {v!r} cannot be written in edge-list format")
    return v


def emit_edge_list(g: Graph) -> str:
    """Edge-list text for ``g``.  Vertex and edge labels are not representable
    in this format and are dropped."""
    lines = ["directed" if g.directed else "undirected"]
    if g.loops_allowed:
        lines.append("loops")
    lines.extend(_check_token(v) for v in g.vertices)
    op = "->" if g.directed else "--"
    for e in _canonical_edges(g):
        line = f"{e.source} {op} {e.target}"
        if e.weight is not None:
            line += f" {e.weight!r}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def emit_graph(g: Graph, format: str = "edge_list", name: str = "") -> str:
    if format == "json":
        return emit_json(g, name)
    if format == "edge_list":
        return emit_edge_list(g)
    raise ValueError(f"unknown graph format {format!r}")


def parse_ordering_spec(text: str, directed: bool) -> list[EdgeKey | None]:
    """One ``u -> v`` / ``u -- v`` per line; a line of ``---`` is a gap."""
    out: list[EdgeKey | None] = []
    want = "->" if directed else "--"
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(_strip_comment(raw))
        if not toks:
            continue
        if len(toks) == 1 and toks[0][0] == "---":
            out.append(None)
            continue
        if len(toks) != 3 or toks[1][0] not in ("--", "->"):
            raise ParseError("expected 'u -- v', 'u -> v' or '---'", lineno, toks[0][1])
        if toks[1][0] != want:
            raise ParseError(f"expected '{want}' for a {'directed' if directed else 'undirected'} graph", lineno, toks[1][1])
        out.append((toks[0][0], toks[2][0]))
    return out


def parse_vertex_order(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        v = _strip_comment(raw).strip()
        if v:
            out.append(v)
    return out


# -- config ---------------------------------------------------------------

ORDER_CHOICES = ("canonical", "outdeg", "indeg", "weight")


@dataclass(frozen=True)
class Config:
    layout: LayoutOptions = field(default_factory=LayoutOptions)
    style: RenderStyle = field(default_factory=RenderStyle)
    order: str = "canonical"
    weight_direction: str = "ascending"
    separator_width: int = 1
    show_absent: bool = False
    group_gaps: bool = False
    complement: bool = False

    @property
    def trim_underlays(self) -> bool:
        return self.layout.trim_underlays


_OWN_FIELDS = ("order", "weight_direction", "separator_width", "show_absent", "group_gaps", "complement")
_TRUE = ("true", "yes", "on", "1")
_FALSE = ("false", "no", "off", "0")


def _coerce(name: str, raw: str, default: Any) -> Any:
    if isinstance(default, bool):
        low = raw.lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ValueError(f"{name}: expected true or false, got {raw!r}")
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, float) or (default is None and name.startswith("margin_")):
        return float(raw)
    if isinstance(default, tuple):
        return tuple(part.strip() for part in raw.split(","))
    return raw


def parse_config(text: str, base: Config | None = None) -> Config:
    """Read ``key = value`` lines over ``base`` (defaults if omitted).

    Keys are the field names of :class:`LayoutOptions`, :class:`RenderStyle`
    and :class:`Config`'s own flags.
    """
    base = base or Config()
    layout_defaults = {f.name: getattr(base.layout, f.name) for f in dataclasses.fields(LayoutOptions)}
    style_defaults = {f.name: getattr(base.style, f.name) for f in dataclasses.fields(RenderStyle)}
    own_defaults = {k: getattr(base, k) for k in _OWN_FIELDS}
    layout_kw: dict[str, Any] = {}
    style_kw: dict[str, Any] = {}
    own_kw: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1)
        key, _, value = (part.strip() for part in line.partition("="))
        value = value.strip().strip('"')
        for defaults, target in ((layout_defaults, layout_kw), (style_defaults, style_kw), (own_defaults, own_kw)):
            if key in defaults:
                try:
                    target[key] = _coerce(key, value, defaults[key])
                except ValueError as exc:
                    raise ParseError(str(exc), lineno, raw.find("=") + 2) from None
                break
        else:
            raise ParseError(f"unknown config key {key!r}", lineno, raw.find(key) + 1)
    try:
        cfg = Config(
            dataclasses.replace(base.layout, **layout_kw),
            dataclasses.replace(base.style, **style_kw),
            **{**own_defaults, **own_kw},
        )
    except ValueError as exc:
        raise ParseError(f"invalid config: {exc}") from None
    if cfg.order not in ORDER_CHOICES:
        raise ParseError(f"order must be one of {', '.join(ORDER_CHOICES)}")
    if cfg.weight_direction not in ("ascending", "descending"):
        raise ParseError("weight_direction must be ascending or descending")
    if cfg.separator_width < 0:
        raise ParseError("separator_width must be non-negative")
    return cfg


# -- layout export ----------------------------------------------------------

LAYOUT_HEADER = "# cartograph layout v1"


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unesc(s: str) -> str:
    return re.sub(r"\\(.)", lambda m: {"t": "\t", "n": "\n"}.get(m.group(1), m.group(1)), s)


def _n(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def iter_layout_export(layout: CartographicLayout) -> Iterator[str]:
    """Tab-separated records, one per line, in drawing order."""
    yield LAYOUT_HEADER + "\n"
    yield f"canvas\t{_n(layout.width)}\t{_n(layout.height)}\n"
    for lat in layout.latitudes:
        yield f"latitude\t{_esc(lat.vertex)}\t{_n(lat.y_center)}\t{_n(lat.band_height)}\t{_n(lat.x_start)}\t{_n(lat.x_end)}\n"
    for lon in layout.longitudes:
        m = lon.destination_marker
        yield (
            f"longitude\t{_esc(lon.edge[0])}\t{_esc(lon.edge[1])}\t{_n(lon.x_center)}\t"
            f"{_n(lon.y_top)}\t{_n(lon.y_bottom)}\t{_n(lon.band_width)}\t{lon.ink_class}\t"
            f"{'-' if m is None else _n(m.y)}\t{'loop' if lon.is_loop else 'edge'}\n"
        )
    for gap in layout.gaps:
        key = "-\t-" if gap.key is None else f"{_esc(gap.key[0])}\t{_esc(gap.key[1])}"
        yield f"gap\t{_n(gap.x_center)}\t{gap.purpose}\t{key}\n"
    for note in layout.annotations:
        x, y = note.position
        yield f"annotation\t{_esc(note.vertex)}\t{_n(x)}\t{_n(y)}\t{_esc(note.text)}\n"


def export_layout(layout: CartographicLayout) -> str:
    return "".join(iter_layout_export(layout))


def read_layout_export(text: str) -> dict[str, list[dict[str, Any]]]:
    """Parse an exported layout back into plain records grouped by type."""
    out: dict[str, list[dict[str, Any]]] = {"canvas": [], "latitude": [], "longitude": [], "gap": [], "annotation": []}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line or line.startswith("#"):
            continue
        rec, *f = line.split("\t")
        if rec == "canvas":
            out[rec].append({"width": float(f[0]), "height": float(f[1])})
        elif rec == "latitude":
            out[rec].append(
                {"vertex": _unesc(f[0]), "y": float(f[1]), "band": float(f[2]), "x_start": float(f[3]), "x_end": float(f[4])}
            )
        elif rec == "longitude":
            out[rec].append(
                {
                    "source": _unesc(f[0]),
                    "target": _unesc(f[1]),
                    "x": float(f[2]),
                    "y_top": float(f[3]),
                    "y_bottom": float(f[4]),
                    "band": float(f[5]),
                    "ink": f[6],
                    "marker_y": None if f[7] == "-" else float(f[7]),
                    "loop": f[8] == "loop",
                }
            )
        elif rec == "gap":
            key = None if f[2] == "-" else (_unesc(f[2]), _unesc(f[3]))
            out[rec].append({"x": float(f[0]), "purpose": f[1], "key": key})
        elif rec == "annotation":
            out[rec].append({"vertex": _unesc(f[0]), "x": float(f[1]), "y": float(f[2]), "text": _unesc(f[3])})
        else:
            raise ParseError(f"unknown record type {rec!r}", lineno, 1)
    return out
