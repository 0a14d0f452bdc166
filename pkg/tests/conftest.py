from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cartograph.graph import ALL_KINDS, Edge, Graph, GraphKind, complete_pairs

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

kinds = st.sampled_from(ALL_KINDS)


@st.composite
def graphs(draw, kind: GraphKind | None = None, min_n: int = 1, max_n: int = 12, weighted: bool = False):
    kind = kind or draw(kinds)
    n = draw(st.integers(min_n, max_n))
    vs = [f"v{i}" for i in range(n)]
    pairs = list(complete_pairs(vs, kind))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = []
    for (u, v), keep in zip(pairs, mask):
        if keep:
            w = draw(st.floats(-1e3, 1e3, allow_nan=False)) if weighted else None
            edges.append(Edge(u, v, w))
    # shuffle vertex order so positions are not sorted by name
    order = draw(st.permutations(vs))
    return Graph(order, edges, kind=kind)


@st.composite
def graph_pairs(draw, max_n: int = 10):
    kind = draw(kinds)
    a = draw(graphs(kind=kind, max_n=max_n))
    # B shares a random subset of A's vertex names plus some of its own
    shared = draw(st.lists(st.sampled_from(a.vertices), unique=True))
    own = [f"w{i}" for i in range(draw(st.integers(0, 4)))]
    vs = shared + own
    if not vs:
        vs = ["w0"]
    pairs = list(complete_pairs(vs, kind))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    b = Graph(vs, [p for p, keep in zip(pairs, mask) if keep], kind=kind)
    return a, b


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
