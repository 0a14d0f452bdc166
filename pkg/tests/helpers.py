"""Independent checks shared by unit and acceptance tests."""

from __future__ import annotations

from itertools import combinations, product
from xml.etree import ElementTree as ET

from cartograph.graph import Graph
from cartograph.layout import CartographicLayout

SVG = "{http://www.w3.org/2000/svg}"


def layout_violations(g: Graph, layout: CartographicLayout) -> list[str]:
    """Return every broken drawing rule (empty when the layout is sound)."""
    bad: list[str] = []
    lats = layout.latitudes
    lons = layout.longitudes
    ys = {lat.vertex: lat.y_center for lat in lats}

    if sorted(ys) != sorted(g.vertices):
        bad.append("latitudes do not match the vertex set")
    if len(set(ys.values())) != len(lats):
        bad.append("two latitudes share a y coordinate")
    # sort by position, then neighbours are the only candidates for contact
    by_y = sorted(lats, key=lambda lat: lat.y_center)
    for a, b in zip(by_y, by_y[1:]):
        if a.y_center + a.band_height / 2 >= b.y_center - b.band_height / 2:
            bad.append(f"latitude bands of {a.vertex!r} and {b.vertex!r} touch")

    xs = [lon.x_center for lon in lons]
    if len(set(xs)) != len(xs):
        bad.append("two longitudes share an x coordinate")
    by_x = sorted(lons, key=lambda lon: lon.x_center)
    for a, b in zip(by_x, by_x[1:]):
        if a.x_center + a.band_width / 2 >= b.x_center - b.band_width / 2:
            bad.append(f"longitude bands of {a.edge} and {b.edge} touch")

    if sorted(lon.edge for lon in lons) != sorted(g.edge_keys()):
        bad.append("longitudes do not match the edge set")
    for lon in lons:
        u, v = lon.edge
        ends = {lon.y_top, lon.y_bottom}
        if ends != {ys.get(u), ys.get(v)}:
            bad.append(f"longitude {lon.edge} ends are not on its endpoint latitudes")
        if lon.y_top > lon.y_bottom:
            bad.append(f"longitude {lon.edge} is upside down")
        if lon.is_loop != (u == v):
            bad.append(f"longitude {lon.edge} has a wrong loop flag")
        marker = lon.destination_marker
        if g.directed:
            if marker is None or marker.y != ys.get(v):
                bad.append(f"longitude {lon.edge} lacks a marker on its destination")
        elif marker is not None:
            bad.append(f"undirected longitude {lon.edge} carries a marker")

    if lons:
        right = max(lon.x_center + lon.band_width / 2 for lon in lons)
        if layout.width < right + layout.options.margin("right"):
            bad.append("canvas narrower than the drawing plus margin")
    if lats:
        low = max(lat.y_center + lat.band_height / 2 for lat in lats)
        if layout.height < low + layout.options.margin("bottom"):
            bad.append("canvas shorter than the drawing plus margin")
    if layout.n_columns >= len(lats) and layout.width < layout.height:
        bad.append("canvas is portrait although columns outnumber latitudes")
    return bad


def svg_groups(svg_text: str) -> dict[str, ET.Element]:
    root = ET.fromstring(svg_text)
    return {g.get("id"): g for g in root.iter(SVG + "g")}


def svg_lines(group: ET.Element) -> list[tuple[float, float, float, float]]:
    return [
        tuple(float(el.get(k)) for k in ("x1", "y1", "x2", "y2"))
        for el in group.iter(SVG + "line")
    ]


def brute_edge_set(g: Graph) -> set[tuple[str, str]]:
    """Edges as endpoint pairs, rebuilt from has_edge over every vertex pair.

    Undirected edges come back as frozenset-like sorted tuples so graphs with
    different vertex orders compare equal.
    """
    out = set()
    for u, v in product(g.vertices, repeat=2):
        if g.has_edge(u, v):
            out.add((u, v) if g.directed else tuple(sorted((u, v))))
    return out


def pairwise_disjoint(*sets) -> bool:
    return all(a.isdisjoint(b) for a, b in combinations(sets, 2))
