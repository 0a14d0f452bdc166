"""Deterministic SVG 1.1 output for cartographic layouts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence
from xml.sax.saxutils import escape, quoteattr

from .graph import EdgeKey, format_key
from .layout import LOOP_STUB_FRACTION, CartographicLayout, Longitude
from .ordering import MissingWeight

WEIGHT_MODES = ("none", "color_ramp", "annotation", "proportional_width")
WIDTH_SCALES = ("linear", "logarithmic")


@dataclass(frozen=True)
class RenderStyle:
    latitude_color: str = "#808080"
    longitude_dark_color: str = "#000000"
    longitude_light_color: str = "#b3b3b3"
    gap_underlay_color: str = "#808080"
    weight_mode: str = "none"
    width_scale: str = "linear"
    ramp_buckets: tuple[str, str, str, str] = ("lightgray", "darkgray", "darkred", "red")
    font_family: str = "sans-serif"
    font_size: float = 8.0
    min_width: float = 0.5
    max_width: float = 3.0

    def __post_init__(self) -> None:
        if self.weight_mode not in WEIGHT_MODES:
            raise ValueError(f"weight_mode must be one of {', '.join(WEIGHT_MODES)}")
        if self.width_scale not in WIDTH_SCALES:
            raise ValueError(f"width_scale must be one of {', '.join(WIDTH_SCALES)}")
        if len(self.ramp_buckets) != 4:
            raise ValueError("ramp_buckets needs exactly 4 colors")
        if not 0 < self.min_width <= self.max_width:
            raise ValueError("need 0 < min_width <= max_width")
        if self.font_size <= 0:
            raise ValueError("font_size must be positive")


@dataclass(frozen=True, slots=True)
class WeightStyle:
    color: str | None = None
    width: float | None = None
    text: str | None = None


def _weights(longitudes: Sequence[Longitude], directed: bool) -> list[float]:
    out = []
    for lon in longitudes:
        if lon.weight is None:
            raise MissingWeight(f"edge {format_key(lon.edge, directed)} has no weight")
        out.append(lon.weight)
    return out


def format_weight(w: float) -> str:
    # repr gives the shortest string that round-trips
    return repr(float(w))


def width_fraction(w: float, w_min: float, w_max: float, scale: str) -> float:
    if w_max == w_min:
        return 1.0
    if scale == "linear":
        return (w - w_min) / (w_max - w_min)
    return math.log1p(w - w_min) / math.log1p(w_max - w_min)


def apply_weight_style(
    longitudes: Sequence[Longitude], style: RenderStyle, directed: bool = False
) -> dict[EdgeKey, WeightStyle]:
    """Per-edge visual attributes for the style's weight mode.

    ``color_ramp`` ranks edges by (weight, slot) and splits the ranking into
    quartiles, lightest color first.
    """
    mode = style.weight_mode
    if mode == "none" or not longitudes:
        return {}
    weights = _weights(longitudes, directed)
    if mode == "annotation":
        return {lon.edge: WeightStyle(text=format_weight(w)) for lon, w in zip(longitudes, weights)}
    if mode == "color_ramp":
        m = len(longitudes)
        ranked = sorted(range(m), key=lambda i: (weights[i], longitudes[i].slot))
        return {
            longitudes[i].edge: WeightStyle(color=style.ramp_buckets[rank * 4 // m])
            for rank, i in enumerate(ranked)
        }
    w_min, w_max = min(weights), max(weights)
    span = style.max_width - style.min_width
    return {
        lon.edge: WeightStyle(
            width=style.min_width + span * width_fraction(w, w_min, w_max, style.width_scale)
        )
        for lon, w in zip(longitudes, weights)
    }


def _f(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def iter_svg(layout: CartographicLayout, style: RenderStyle | None = None) -> Iterator[str]:
    """Yield the SVG document in chunks; ``"".join`` gives :func:`render_svg`."""
    style = style or RenderStyle()
    opts = layout.options
    rp, cp = opts.row_pitch, opts.col_pitch
    # comparison ink and weight styling would fight over stroke color
    if style.weight_mode != "none" and any(lon.ink_class != "dark" for lon in layout.longitudes):
        raise ValueError("weight styling cannot be combined with a comparison drawing")
    weighted = apply_weight_style(layout.longitudes, style, layout.directed)
    if style.weight_mode == "proportional_width" and style.max_width >= cp:
        raise ValueError("max_width must be narrower than the column pitch")

    yield '<?xml version="1.0" encoding="UTF-8"?>\n'
    yield (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(layout.width)}" height="{_f(layout.height)}" '
        f'viewBox="0 0 {_f(layout.width)} {_f(layout.height)}">\n'
    )

    yield f'<g id="latitudes" stroke={quoteattr(style.latitude_color)} fill="none">\n'
    for lat in layout.latitudes:
        y = _f(lat.y_center)
        yield (
            f'<line x1="{_f(lat.x_start)}" y1="{y}" x2="{_f(lat.x_end)}" y2="{y}" '
            f'stroke-width="{_f(lat.band_height)}"/>\n'
        )
    yield "</g>\n"

    underlays = [g for g in layout.gaps if g.underlay is not None]
    yield f'<g id="column-underlays" stroke={quoteattr(style.gap_underlay_color)} stroke-width="{_f(opts.longitude_band)}" fill="none">\n'
    for gap in underlays:
        x = _f(gap.x_center)
        y0, y1 = gap.underlay
        yield f'<line x1="{x}" y1="{_f(y0)}" x2="{x}" y2="{_f(y1)}"/>\n'
    yield "</g>\n"

    stub = rp * LOOP_STUB_FRACTION / 2
    for ink, color in (("light", style.longitude_light_color), ("dark", style.longitude_dark_color)):
        yield f'<g id="{ink}-longitudes" stroke={quoteattr(color)} stroke-width="{_f(opts.longitude_band)}" fill="none">\n'
        for lon in layout.longitudes:
            if lon.ink_class != ink:
                continue
            x = _f(lon.x_center)
            if lon.is_loop:
                y0, y1 = lon.y_top - stub, lon.y_bottom + stub
            else:
                y0, y1 = lon.y_top, lon.y_bottom
            extra = ""
            ws = weighted.get(lon.edge)
            if ws is not None:
                if ws.color is not None:
                    extra += f" stroke={quoteattr(ws.color)}"
                if ws.width is not None:
                    extra += f' stroke-width="{_f(ws.width)}"'
            yield f'<line x1="{x}" y1="{_f(y0)}" x2="{x}" y2="{_f(y1)}"{extra}/>\n'
        yield "</g>\n"

    # both ends of a loop sit on one latitude; a ring marks them
    yield f'<g id="loop-ends" stroke={quoteattr(style.longitude_dark_color)} stroke-width="{_f(opts.longitude_band / 2)}" fill="none">\n'
    ring = cp * 0.3
    for lon in layout.longitudes:
        if lon.is_loop:
            yield f'<circle cx="{_f(lon.x_center)}" cy="{_f(lon.y_top)}" r="{_f(ring)}"/>\n'
    yield "</g>\n"

    yield f'<g id="markers" fill={quoteattr(style.longitude_dark_color)} stroke="none">\n'
    hw, h = cp * 0.4, rp * 0.4
    for lon in layout.longitudes:
        m = lon.destination_marker
        if m is None:
            continue
        x, y = lon.x_center, m.y
        if m.glyph == "diamond":
            pts = ((x, y - h / 2), (x + hw, y), (x, y + h / 2), (x - hw, y))
        elif m.pointing == "down":
            pts = ((x - hw, y - h), (x + hw, y - h), (x, y))
        else:
            pts = ((x - hw, y + h), (x + hw, y + h), (x, y))
        fill = ""
        if lon.ink_class == "light":
            fill = f" fill={quoteattr(style.longitude_light_color)}"
        yield f'<polygon points="{" ".join(_f(a) + "," + _f(b) for a, b in pts)}"{fill}/>\n'
    yield "</g>\n"

    font = f'font-family={quoteattr(style.font_family)} font-size="{_f(style.font_size)}"'
    anchor = {"left-margin": "end", "right-margin": "start", "on-band": "start"}[opts.vertex_labels]
    baseline = "" if opts.vertex_labels == "on-band" else ' dominant-baseline="central"'
    yield f'<g id="vertex-labels" {font} text-anchor="{anchor}"{baseline}>\n'
    for lat in layout.latitudes:
        x, y = lat.label_anchor
        yield f'<text x="{_f(x)}" y="{_f(y)}">{escape(lat.label)}</text>\n'
    yield "</g>\n"

    yield from _rotated_texts(
        "edge-labels",
        font,
        ((layout.edge_label_anchors[lon.edge], lon.label) for lon in layout.longitudes if lon.label is not None),
        upward=opts.edge_labels == "top-margin",
    )
    if style.weight_mode == "annotation":
        y_below = max((lat.y_center for lat in layout.latitudes), default=opts.margin("top")) + rp / 2
        if opts.edge_labels == "bottom-margin":
            y_below += rp
        yield from _rotated_texts(
            "weight-labels",
            font,
            (((lon.x_center, y_below), weighted[lon.edge].text) for lon in layout.longitudes),
            upward=False,
        )

    yield f'<g id="annotations" {font} text-anchor="start" dominant-baseline="central">\n'
    for note in layout.annotations:
        x, y = note.position
        yield f'<text x="{_f(x)}" y="{_f(y)}">{escape(note.text)}</text>\n'
    yield "</g>\n"
    yield "</svg>\n"


def _rotated_texts(
    group: str, font: str, items: Iterable[tuple[tuple[float, float], str]], upward: bool
) -> Iterator[str]:
    # column labels run vertically so neighbouring columns never collide
    angle = -90 if upward else 90
    yield f'<g id="{group}" {font} text-anchor="start" dominant-baseline="central">\n'
    for (x, y), text in items:
        xs, ys = _f(x), _f(y)
        yield f'<text x="{xs}" y="{ys}" transform="rotate({angle} {xs} {ys})">{escape(text)}</text>\n'
    yield "</g>\n"


def render_svg(layout: CartographicLayout, style: RenderStyle | None = None) -> str:
    return "".join(iter_svg(layout, style))


def write_svg(layout: CartographicLayout, fp: IO[str], style: RenderStyle | None = None) -> None:
    buf: list[str] = []
    for chunk in iter_svg(layout, style):
        buf.append(chunk)
        if len(buf) >= 4096:
            fp.write("".join(buf))
            buf.clear()
    fp.write("".join(buf))
