import functools

import networkx as nx
import pytest

from raagext.extension import grow
from raagext.graphs import Graph

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}


def from_nx(G: nx.Graph, prefix: str = "x") -> Graph:
    return Graph([f"{prefix}{v}" for v in G.nodes], [(f"{prefix}{a}", f"{prefix}{b}") for a, b in G.edges])


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges())
    return G


def atlas(max_n: int, connected: bool = False) -> list[Graph]:
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() > max_n:
            break
        if connected and not nx.is_connected(G):
            continue
        out.append(from_nx(G))
    return out


@pytest.fixture(scope="session")
def small_graphs():
    return atlas(5)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        name, ok, info = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {name}  {info}")


@functools.lru_cache(maxsize=None)
def grown(g: Graph, radius: int):
    """Radius approximations shared between test modules."""
    return grow(g, radius=radius, budget=100_000)


@functools.lru_cache(maxsize=None)
def trees(n: int) -> tuple[nx.Graph, ...]:
    """All unlabelled trees on ``n`` vertices."""
    if n == 1:
        G = nx.Graph()
        G.add_node(0)
        return (G,)
    return tuple(nx.nonisomorphic_trees(n))


def forests(max_n: int) -> list[Graph]:
    """All unlabelled forests on 1..max_n vertices, as multisets of trees."""
    pool = [(n, i) for n in range(1, max_n + 1) for i in range(len(trees(n)))]
    out = []

    def rec(start: int, size: int, parts: list):
        if parts:
            G = nx.disjoint_union_all([trees(n)[i] for n, i in parts])
            out.append(from_nx(nx.convert_node_labels_to_integers(G)))
        for k in range(start, len(pool)):
            n, i = pool[k]
            if size + n <= max_n:
                rec(k, size + n, parts + [pool[k]])

    rec(0, 0, [])
    return out
