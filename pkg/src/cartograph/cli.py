"""Command-line interface: ``cartograph draw|compare|stats|estimate``."""

from __future__ import annotations

import argparse
import os
import re
import sys
import tempfile
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Callable, Sequence

from .compare import compare, comparison_layout, derive_boolean
from .graph import Graph, GraphError, classify_density, complement, degrees
from .incidence import edge_slot_count
from .io import (
    Config,
    GraphDocument,
    emit_graph,
    iter_layout_export,
    parse_config,
    parse_edge_list,
    parse_json_document,
    parse_ordering_spec,
    parse_vertex_order,
)
from .layout import CartographicLayout, compute_layout, estimate_canvas
from .ordering import (
    order_by_degree,
    order_by_weight,
    order_canonical,
    order_custom,
    permute_vertices,
)
from .render import iter_svg

CONFIG_ENV = "CARTOGRAPH_CONFIG"

EMIT_OPS = {
    "union": "union",
    "intersection": "intersection",
    "symdiff": "symmetric_difference",
    "diff-ab": "difference_ab",
    "diff-ba": "difference_ba",
}

UNITS = {"m": Decimal(1), "cm": Decimal("0.01"), "mm": Decimal("0.001"), "um": Decimal("0.000001")}


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise CliError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None


def _format_for(path: str) -> str:
    return "json" if path.lower().endswith(".json") else "edge_list"


def load_document(path: str) -> GraphDocument:
    text = _read(path)
    try:
        if _format_for(path) == "json":
            doc = parse_json_document(text)
            if doc.name:
                return doc
            return GraphDocument(Path(path).stem, doc.graph)
        return GraphDocument(Path(path).stem, parse_edge_list(text))
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None


def load_config(path: str | None) -> Config:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    try:
        return parse_config(_read(path))
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None


def parse_length(text: str) -> Decimal:
    """``"0.5mm"`` -> ``Decimal("0.0005")`` (meters; bare numbers are meters)."""
    m = re.fullmatch(r"\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*([a-z]*)\s*", text)
    if not m or m.group(2) not in ("",) + tuple(UNITS):
        raise CliError(f"cannot read length {text!r}; use e.g. 0.5mm, 2cm or 0.001m")
    try:
        value = Decimal(m.group(1))
    except InvalidOperation:
        raise CliError(f"cannot read length {text!r}") from None
    return value * UNITS[m.group(2) or "m"]


class _Outputs:
    """Collects output files and moves them into place only once all succeed."""

    def __init__(self) -> None:
        self._pending: list[tuple[str, str]] = []
        self.stdout: str | None = None

    def add(self, path: str, chunks) -> None:
        target = Path(path)
        fd, tmp = tempfile.mkstemp(prefix=".cartograph-", dir=target.parent)
        self._pending.append((tmp, path))
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fp:
            buf: list[str] = []
            for chunk in chunks:
                buf.append(chunk)
                if len(buf) >= 4096:
                    fp.write("".join(buf))
                    buf.clear()
            fp.write("".join(buf))

    def commit(self) -> None:
        for tmp, path in self._pending:
            os.replace(tmp, path)
        self._pending.clear()

    def discard(self) -> None:
        for tmp, _ in self._pending:
            try:
                os.unlink(tmp)
            except OSError:
                pass
        self._pending.clear()


def _write_layout(
    layout: CartographicLayout, cfg: Config, out: str | None, layout_out: str | None, outputs: _Outputs
) -> None:
    svg = iter_svg(layout, cfg.style)
    if out:
        outputs.add(out, svg)
    else:
        # render fully before printing so errors never leave half a document
        text = "".join(svg)
        outputs.stdout = text
    if layout_out:
        outputs.add(layout_out, iter_layout_export(layout))


def _apply_vertex_order(g: Graph, path: str | None) -> Graph:
    if not path:
        return g
    return permute_vertices(g, parse_vertex_order(_read(path)))


def cmd_draw(args, cfg: Config, outputs: _Outputs) -> None:
    doc = load_document(args.graph)
    g = doc.graph
    if args.complement or cfg.complement:
        g = complement(g)
    g = _apply_vertex_order(g, args.vertex_order)
    order = args.order or cfg.order
    show_absent = args.show_absent or cfg.show_absent
    group_gaps = args.group_gaps or cfg.group_gaps
    if order != "canonical" and (show_absent or group_gaps):
        raise CliError("--show-absent and --group-gaps apply only to the canonical ordering")
    sep = cfg.separator_width
    if order == "canonical":
        ordering = order_canonical(g, show_absent, group_gaps, sep)
    elif order == "outdeg":
        ordering = order_by_degree(g, "origin", sep)
    elif order == "indeg":
        ordering = order_by_degree(g, "destination", sep)
    elif order == "weight":
        ordering = order_by_weight(g, cfg.weight_direction)
    elif order.startswith("custom="):
        spec_path = order[len("custom="):]
        try:
            spec = parse_ordering_spec(_read(spec_path), g.directed)
        except GraphError as exc:
            raise CliError(f"{spec_path}: {exc}") from None
        ordering = order_custom(g, spec)
    else:
        raise CliError(f"unknown ordering {order!r}")
    layout = compute_layout(g, ordering, None, cfg.layout)
    _write_layout(layout, cfg, args.out, args.layout_out, outputs)


def cmd_compare(args, cfg: Config, outputs: _Outputs) -> None:
    a, b = load_document(args.graph_a), load_document(args.graph_b)
    names = (a.name, b.name)
    if names[0] == names[1]:
        names = ("A", "B")
    result = compare(a.graph, b.graph, names)
    vorder = None
    if args.vertex_order:
        vorder = parse_vertex_order(_read(args.vertex_order))
    layout = comparison_layout(result, vorder, cfg.layout, cfg.separator_width)
    for item in args.emit:
        op, sep, path = item.partition("=")
        if not sep or not path or op not in EMIT_OPS:
            raise CliError(f"--emit expects one of {'|'.join(EMIT_OPS)}=<file>, got {item!r}")
        g = derive_boolean(result, EMIT_OPS[op])
        outputs.add(path, [emit_graph(g, _format_for(path), f"{op}({names[0]}, {names[1]})")])
    _write_layout(layout, cfg, args.out, args.layout_out, outputs)


def stats_lines(g: Graph) -> list[str]:
    lines = [
        f"vertices\t{len(g)}",
        f"edges\t{g.n_edges}",
        f"slots\t{edge_slot_count(len(g), g.kind) if len(g) else 0}",
        f"density\t{classify_density(g)}",
        f"kind\t{g.kind}",
        "vertex\tin\tout",
    ]
    for v, (i, o) in degrees(g).items():
        lines.append(f"{v}\t{i}\t{o}")
    return lines


def cmd_stats(args, cfg: Config, outputs: _Outputs) -> None:
    outputs.stdout = "\n".join(stats_lines(load_document(args.graph).graph)) + "\n"


def cmd_estimate(args, cfg: Config, outputs: _Outputs) -> None:
    if args.n < 0 or args.columns < 0:
        raise CliError("counts must be non-negative")
    resolution = parse_length(args.resolution)
    if resolution <= 0:
        raise CliError("resolution must be positive")
    height, width = estimate_canvas(args.n, args.columns, resolution)
    outputs.stdout = f"{height:.4f} m\t{width:.4f} m\n"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cartograph", description="Draw graphs with vertices as latitudes and edges as longitudes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("draw", help="draw one graph as SVG")
    d.add_argument("graph")
    d.add_argument("--order", help="canonical | outdeg | indeg | weight | custom=<file>")
    d.add_argument("--complement", action="store_true")
    d.add_argument("--show-absent", action="store_true")
    d.add_argument("--group-gaps", action="store_true")
    d.add_argument("--vertex-order", metavar="FILE")
    d.add_argument("--config", metavar="FILE")
    d.add_argument("--out", metavar="SVG")
    d.add_argument("--layout-out", metavar="FILE")
    d.set_defaults(func=cmd_draw)

    c = sub.add_parser("compare", help="draw two graphs in one comparison figure")
    c.add_argument("graph_a")
    c.add_argument("graph_b")
    c.add_argument("--vertex-order", metavar="FILE")
    c.add_argument("--config", metavar="FILE")
    c.add_argument("--out", metavar="SVG")
    c.add_argument("--layout-out", metavar="FILE")
    c.add_argument("--emit", action="append", default=[], metavar="OP=FILE")
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("stats", help="print counts, density class and degrees")
    s.add_argument("graph")
    s.set_defaults(func=cmd_stats, config=None)

    e = sub.add_parser("estimate", help="bare drawing size at a given resolution")
    e.add_argument("n", type=int)
    e.add_argument("columns", type=int)
    e.add_argument("resolution")
    e.set_defaults(func=cmd_estimate, config=None)
    return p


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    outputs = _Outputs()
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(getattr(args, "config", None))
        func: Callable = args.func
        func(args, cfg, outputs)
        outputs.commit()
    except (CliError, GraphError, ValueError, OSError) as exc:
        outputs.discard()
        msg = str(exc).replace("\n", " ")
        stderr.write(f"cartograph: error: {msg}\n")
        return 1
    if outputs.stdout is not None:
        stdout.write(outputs.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
