"""Finite simple graphs, constructions and exact recognizers.

Graphs are immutable values with string vertex labels.  Adjacency is stored
as one integer bitmask per vertex so that the exponential solvers used
throughout the package (induced-subgraph search, clique number, chromatic
number) stay fast at desk scale.

Every exact solver takes a ``budget`` on the number of search nodes and
raises :class:`SearchBudgetExceeded` instead of returning an approximation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Graph",
    "GraphClassReport",
    "SearchBudgetExceeded",
    "DEFAULT_BUDGET",
    "standard_graph",
    "combine",
    "complement",
    "induced_subgraph",
    "double_along_star",
    "find_induced_embedding",
    "iter_induced_embeddings",
    "is_isomorphic",
    "classify",
    "cocontract",
    "clique_graph",
    "mycielskian",
    "max_clique",
    "clique_number",
    "chromatic_number",
    "coloring",
    "connected_components",
    "is_connected",
    "is_anticonnected",
    "is_bipartite",
    "odd_cycle",
    "is_forest",
    "is_weakly_chordal",
    "is_complete",
    "shortest_induced_long_cycle",
    "diameter",
    "parse_edge_list",
    "format_edge_list",
    "to_dot",
]

DEFAULT_BUDGET = 5_000_000


class SearchBudgetExceeded(RuntimeError):
    """An exact search ran out of its node budget."""


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """A finite simple graph with unique string labels.

    Parameters
    ----------
    vertices : sequence of str
        Vertex labels, in the order that defines vertex indices.
    edges : iterable of pairs of str
        Undirected edges.  Self-loops are rejected; repeated edges collapse.
    """

    __slots__ = ("_labels", "_index", "_adj", "_hash")

    def __init__(self, vertices: Sequence[str], edges: Iterable[tuple[str, str]] = ()):
        labels = tuple(str(v) for v in vertices)
        index = {v: i for i, v in enumerate(labels)}
        if len(index) != len(labels):
            raise ValueError("vertex labels must be unique")
        adj = [0] * len(labels)
        for u, v in edges:
            try:
                i, j = index[u], index[v]
            except KeyError as exc:
                raise KeyError(f"edge endpoint {exc.args[0]!r} is not a vertex") from None
            if i == j:
                raise ValueError(f"self-loop at {u!r}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self._labels = labels
        self._index = index
        self._adj = tuple(adj)
        self._hash = None

    @classmethod
    def _from_masks(cls, labels: Sequence[str], adj: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        g._labels = tuple(labels)
        g._index = {v: i for i, v in enumerate(g._labels)}
        if len(g._index) != len(g._labels):
            raise ValueError("vertex labels must be unique")
        g._adj = tuple(adj)
        g._hash = None
        return g

    # -- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> tuple[str, ...]:
        return self._labels

    @property
    def masks(self) -> tuple[int, ...]:
        """Adjacency bitmask of each vertex, indexed like :attr:`vertices`."""
        return self._adj

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown vertex {label!r}") from None

    def has_edge(self, u: str, v: str) -> bool:
        return bool(self._adj[self.index(u)] >> self.index(v) & 1)

    def neighbors(self, v: str) -> frozenset[str]:
        return frozenset(self._labels[j] for j in _bits(self._adj[self.index(v)]))

    def link(self, v: str) -> frozenset[str]:
        return self.neighbors(v)

    def star(self, v: str) -> frozenset[str]:
        return self.neighbors(v) | {v}

    def degree(self, v: str) -> int:
        return bin(self._adj[self.index(v)]).count("1")

    def edges(self) -> list[tuple[str, str]]:
        out = []
        for i, m in enumerate(self._adj):
            for j in _bits(m >> (i + 1)):
                out.append((self._labels[i], self._labels[i + 1 + j]))
        return out

    def edge_set(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(e) for e in self.edges())

    @property
    def num_edges(self) -> int:
        return sum(bin(m).count("1") for m in self._adj) // 2

    def mask_of(self, labels: Iterable[str]) -> int:
        m = 0
        for v in labels:
            m |= 1 << self.index(v)
        return m

    def labels_of(self, mask: int) -> list[str]:
        return [self._labels[i] for i in _bits(mask)]

    def relabel(self, mapping: Mapping[str, str]) -> "Graph":
        return Graph._from_masks([mapping.get(v, v) for v in self._labels], self._adj)

    # -- value semantics --------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        if set(self._labels) != set(other._labels):
            return False
        return self.edge_set() == other.edge_set()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._labels), self.edge_set()))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self._labels)!r}, edges={self.edges()!r})"


# ---------------------------------------------------------------------------
# constructors and transforms
# ---------------------------------------------------------------------------

def standard_graph(kind: str, *params: int) -> Graph:
    """Build a named graph with labels ``v0 .. v{n-1}``.

    ``kind`` is one of ``path``, ``cycle``, ``complete``, ``discrete``
    (one parameter ``n``) or ``complete_bipartite`` (parameters ``p, q``;
    the first ``p`` labels form one side).
    """
    if any(p < 0 for p in params):
        raise ValueError("graph parameters must be non-negative")
    if kind == "complete_bipartite":
        if len(params) != 2:
            raise ValueError("complete_bipartite takes two parameters")
        p, q = params
        labels = [f"v{i}" for i in range(p + q)]
        edges = [(labels[i], labels[p + j]) for i in range(p) for j in range(q)]
        return Graph(labels, edges)
    if len(params) != 1:
        raise ValueError(f"{kind} takes one parameter")
    (n,) = params
    if n < 1:
        raise ValueError(f"{kind} needs at least one vertex")
    labels = [f"v{i}" for i in range(n)]
    if kind == "path":
        edges = [(labels[i], labels[i + 1]) for i in range(n - 1)]
    elif kind == "cycle":
        if n < 3:
            raise ValueError("a cycle needs at least three vertices")
        edges = [(labels[i], labels[(i + 1) % n]) for i in range(n)]
    elif kind == "complete":
        edges = list(combinations(labels, 2))
    elif kind == "discrete":
        edges = []
    else:
        raise ValueError(f"unknown graph kind {kind!r}")
    return Graph(labels, edges)


def _disjoint_labels(g1: Graph, g2: Graph) -> tuple[list[str], list[str]]:
    if set(g1.vertices).isdisjoint(g2.vertices):
        return list(g1.vertices), list(g2.vertices)
    return [f"1.{v}" for v in g1.vertices], [f"2.{v}" for v in g2.vertices]


def combine(mode: str, g1: Graph, g2: Graph) -> Graph:
    """Join or disjoint union of two graphs.

    Colliding labels are disambiguated by prefixing ``1.`` and ``2.``.
    """
    if mode not in ("join", "disjoint_union"):
        raise ValueError(f"unknown combine mode {mode!r}")
    l1, l2 = _disjoint_labels(g1, g2)
    n1 = len(l1)
    full1 = (1 << n1) - 1
    full2 = ((1 << len(l2)) - 1) << n1
    adj = []
    for m in g1.masks:
        adj.append(m | (full2 if mode == "join" else 0))
    for m in g2.masks:
        adj.append((m << n1) | (full1 if mode == "join" else 0))
    return Graph._from_masks(l1 + l2, adj)


def complement(g: Graph) -> Graph:
    full = (1 << len(g)) - 1
    return Graph._from_masks(g.vertices, [full & ~m & ~(1 << i) for i, m in enumerate(g.masks)])


def induced_subgraph(g: Graph, u: Iterable[str]) -> Graph:
    """Induced subgraph on ``u``, keeping the order of ``g``."""
    keep = g.mask_of(u)
    idx = [i for i in range(len(g)) if keep >> i & 1]
    pos = {i: k for k, i in enumerate(idx)}
    adj = []
    for i in idx:
        m = 0
        for j in _bits(g.masks[i] & keep):
            m |= 1 << pos[j]
        adj.append(m)
    return Graph._from_masks([g.vertices[i] for i in idx], adj)


def _primed(label: str, taken: set[str]) -> str:
    cand = label + "'"
    k = 2
    while cand in taken:
        cand = f"{label}'{k}"
        k += 1
    return cand


def double_along_star(g: Graph, t: str) -> Graph:
    """Two copies of ``g`` glued along the closed star of ``t``.

    Vertices outside ``st(t)`` are duplicated; the copy of ``v`` is labelled
    ``v'`` (with a counter appended if that label is taken).
    """
    star = g.star(t)
    taken = set(g.vertices)
    copy: dict[str, str] = {}
    for v in g.vertices:
        if v not in star:
            copy[v] = _primed(v, taken)
            taken.add(copy[v])
    labels = list(g.vertices) + [copy[v] for v in g.vertices if v not in star]
    edges = list(g.edges())
    for u, v in g.edges():
        if u in copy or v in copy:
            edges.append((copy.get(u, u), copy.get(v, v)))
    return Graph(labels, edges)


def mycielskian(g: Graph) -> Graph:
    """Mycielski's construction: ``2n + 1`` vertices, chromatic number + 1."""
    taken = set(g.vertices)
    shadow = {}
    for v in g.vertices:
        shadow[v] = _primed(v, taken)
        taken.add(shadow[v])
    apex = "w"
    k = 2
    while apex in taken:
        apex = f"w{k}"
        k += 1
    edges = list(g.edges())
    for u, v in g.edges():
        edges.append((shadow[u], v))
        edges.append((shadow[v], u))
    edges.extend((shadow[v], apex) for v in g.vertices)
    return Graph(list(g.vertices) + [shadow[v] for v in g.vertices] + [apex], edges)


def _cliques_masks(g: Graph) -> list[int]:
    out = []

    def extend(clique: int, cand: int) -> None:
        for i in _bits(cand):
            c = clique | (1 << i)
            out.append(c)
            extend(c, cand & g.masks[i] & ~((1 << (i + 1)) - 1))

    extend(0, (1 << len(g)) - 1)
    return out


def clique_graph(g: Graph) -> Graph:
    """Graph on the nonempty cliques of ``g``.

    Two cliques are adjacent when their union is again a clique.
    """
    cliques = sorted(_cliques_masks(g), key=lambda m: (bin(m).count("1"), g.labels_of(m)))
    labels = ["{" + ",".join(g.labels_of(c)) + "}" for c in cliques]

    def is_clique(m: int) -> bool:
        return all((g.masks[i] | (1 << i)) & m == m for i in _bits(m))

    edges = []
    for a, b in combinations(range(len(cliques)), 2):
        if is_clique(cliques[a] | cliques[b]):
            edges.append((labels[a], labels[b]))
    return Graph(labels, edges)


def is_anticonnected(g: Graph, b: Iterable[str]) -> bool:
    b = list(b)
    if not b:
        return False
    return is_connected(complement(induced_subgraph(g, b)))


def cocontract(g: Graph, b: Iterable[str], label: str | None = None) -> Graph:
    """Co-contract an anticonnected vertex set ``b`` to a single vertex.

    The new vertex is adjacent to ``x`` exactly when ``b`` lies in the link
    of ``x``.  Its label defaults to ``[b1,b2,...]``.
    """
    b = list(dict.fromkeys(b))
    if not b:
        raise ValueError("cannot co-contract an empty set")
    for v in b:
        g.index(v)
    if not is_anticonnected(g, b):
        raise ValueError(f"{b!r} is not anticonnected")
    bset = set(b)
    rest = [v for v in g.vertices if v not in bset]
    if label is None:
        label = "[" + ",".join(b) + "]"
    if label in rest:
        raise ValueError(f"label {label!r} already used")
    bmask = g.mask_of(b)
    edges = [e for e in g.edges() if e[0] not in bset and e[1] not in bset]
    edges += [(label, x) for x in rest if g.masks[g.index(x)] & bmask == bmask]
    return Graph(rest + [label], edges)


# ---------------------------------------------------------------------------
# connectivity helpers
# ---------------------------------------------------------------------------

def _component_masks(adj: Sequence[int], within: int) -> list[int]:
    comps = []
    left = within
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for i in _bits(frontier):
                nxt |= adj[i]
            nxt &= within & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        left &= ~comp
    return comps


def connected_components(g: Graph) -> list[list[str]]:
    return [g.labels_of(c) for c in _component_masks(g.masks, (1 << len(g)) - 1)]


def is_connected(g: Graph) -> bool:
    return len(g) > 0 and len(_component_masks(g.masks, (1 << len(g)) - 1)) == 1


def _bfs_dist(adj: Sequence[int], src: int) -> dict[int, int]:
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for w in _bits(adj[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def diameter(g: Graph) -> int:
    """Largest finite distance between two vertices (0 for edgeless graphs)."""
    best = 0
    for i in range(len(g)):
        best = max(best, max(_bfs_dist(g.masks, i).values()))
    return best


def is_bipartite(g: Graph) -> bool:
    return odd_cycle(g) is None


def odd_cycle(g: Graph) -> list[str] | None:
    """An odd cycle (as a closed vertex walk without repeats), or None."""
    color: dict[int, int] = {}
    parent: dict[int, int] = {}
    for s in range(len(g)):
        if s in color:
            continue
        color[s] = 0
        parent[s] = -1
        q = deque([s])
        while q:
            u = q.popleft()
            for w in _bits(g.masks[u]):
                if w not in color:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    q.append(w)
                elif color[w] == color[u]:
                    pu, pw = [u], [w]
                    while parent[pu[-1]] != -1:
                        pu.append(parent[pu[-1]])
                    while parent[pw[-1]] != -1:
                        pw.append(parent[pw[-1]])
                    while len(pu) > 1 and len(pw) > 1 and pu[-2] == pw[-2]:
                        pu.pop()
                        pw.pop()
                    cyc = pu + pw[-2::-1]
                    return [g.vertices[i] for i in cyc]
    return None


def is_forest(g: Graph) -> bool:
    return g.num_edges == len(g) - len(connected_components(g))


# ---------------------------------------------------------------------------
# induced subgraph search
# ---------------------------------------------------------------------------

def _search_order(lam: Graph) -> list[int]:
    """Connected-first ordering: each vertex is adjacent to an earlier one if possible."""
    n = len(lam)
    order: list[int] = []
    placed = 0
    while len(order) < n:
        left = [i for i in range(n) if not placed >> i & 1]
        touching = [i for i in left if lam.masks[i] & placed]
        pool = touching or left
        nxt = max(pool, key=lambda i: (bin(lam.masks[i] & placed).count("1"),
                                       bin(lam.masks[i]).count("1"), -i))
        order.append(nxt)
        placed |= 1 << nxt
    return order


def iter_induced_embeddings(lam: Graph, g: Graph, budget: int = DEFAULT_BUDGET,
                            candidates: Mapping[str, Iterable[str]] | None = None):
    """Yield every injective map ``V(lam) -> V(g)`` preserving adjacency and non-adjacency.

    ``candidates`` optionally restricts the image of individual vertices.
    Raises :class:`SearchBudgetExceeded` after ``budget`` search nodes.
    """
    n, N = len(lam), len(g)
    if n == 0:
        yield {}
        return
    if n > N:
        return
    order = _search_order(lam)
    full = (1 << N) - 1
    gdeg = [bin(m).count("1") for m in g.masks]
    ldeg = [bin(m).count("1") for m in lam.masks]
    allowed = [full] * n
    if candidates:
        for v, cs in candidates.items():
            allowed[lam.index(v)] = g.mask_of(cs)
    for i in range(n):
        ok = 0
        for j in _bits(allowed[i]):
            if gdeg[j] >= ldeg[i]:
                ok |= 1 << j
        allowed[i] = ok
    image = [0] * n
    nodes = 0
    lmask = lam.masks

    def rec(k: int, used: int):
        nonlocal nodes
        if k == n:
            yield dict((lam.vertices[i], g.vertices[image[i]]) for i in range(n))
            return
        i = order[k]
        cand = allowed[i] & ~used
        for p in range(k):
            j = order[p]
            if lmask[i] >> j & 1:
                cand &= g.masks[image[j]]
            else:
                cand &= ~g.masks[image[j]]
            if not cand:
                return
        for c in _bits(cand):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"induced-subgraph search exceeded {budget} nodes")
            image[i] = c
            yield from rec(k + 1, used | (1 << c))

    yield from rec(0, 0)


def find_induced_embedding(lam: Graph, g: Graph, budget: int = DEFAULT_BUDGET,
                           candidates: Mapping[str, Iterable[str]] | None = None
                           ) -> dict[str, str] | None:
    """Find an induced copy of ``lam`` inside ``g``.

    Returns a vertex map, or None when exhaustive search proves there is none.
    """
    for emb in iter_induced_embeddings(lam, g, budget, candidates):
        return emb
    return None


def is_isomorphic(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    if len(g) != len(h) or g.num_edges != h.num_edges:
        return False
    if sorted(bin(m).count("1") for m in g.masks) != sorted(bin(m).count("1") for m in h.masks):
        return False
    return find_induced_embedding(g, h, budget) is not None


# ---------------------------------------------------------------------------
# cliques and colourings
# ---------------------------------------------------------------------------

def max_clique(g: Graph, budget: int = DEFAULT_BUDGET) -> list[str]:
    """A maximum clique, by branch and bound with a greedy-colouring bound."""
    adj = g.masks
    best = 0
    best_size = 0
    nodes = 0

    def colour_bound(cand: int) -> list[tuple[int, int]]:
        # greedy colour classes; returns (vertex, colour) in increasing colour
        out = []
        colour = 0
        left = cand
        while left:
            colour += 1
            q = left
            while q:
                v = (q & -q).bit_length() - 1
                q &= ~adj[v] & ~(1 << v)
                left &= ~(1 << v)
                out.append((v, colour))
        return out

    def expand(clique: int, size: int, cand: int) -> None:
        nonlocal best, best_size, nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"clique search exceeded {budget} nodes")
        order = colour_bound(cand)
        for v, c in reversed(order):
            if size + c <= best_size:
                return
            nc = clique | (1 << v)
            ncand = cand & adj[v]
            if ncand:
                expand(nc, size + 1, ncand)
            elif size + 1 > best_size:
                best, best_size = nc, size + 1
            cand &= ~(1 << v)

    if len(g):
        expand(0, 0, (1 << len(g)) - 1)
    return g.labels_of(best)


def clique_number(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    return len(max_clique(g, budget))


def _dsatur_greedy(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    colour = [-1] * n
    sat = [0] * n  # bitmask of neighbour colours
    deg = [bin(m).count("1") for m in adj]
    for _ in range(n):
        v = max((i for i in range(n) if colour[i] < 0),
                key=lambda i: (bin(sat[i]).count("1"), deg[i], -i))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        colour[v] = c
        for w in _bits(adj[v]):
            sat[w] |= 1 << c
    return colour


def _k_colouring(adj: Sequence[int], k: int, seed_clique: Sequence[int],
                 budget: int) -> list[int] | None:
    """Exact k-colourability by DSATUR backtracking."""
    n = len(adj)
    colour = [-1] * n
    sat = [[0] * k for _ in range(n)]  # count of neighbours per colour
    nodes = 0

    def assign(v: int, c: int, delta: int) -> None:
        for w in _bits(adj[v]):
            sat[w][c] += delta

    uncoloured = set(range(n))
    for c, v in enumerate(seed_clique):
        if c >= k:
            return None
        colour[v] = c
        uncoloured.discard(v)
        assign(v, c, 1)
    used = len(seed_clique)
    degree = [bin(m).count("1") for m in adj]

    def rec(used: int) -> bool:
        nonlocal nodes
        if not uncoloured:
            return True
        best = None
        best_key = None
        for v in uncoloured:
            free = sum(1 for c in range(k) if sat[v][c] == 0)
            key = (free, -degree[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
                if free == 0:
                    break
        v = best
        if best_key[0] == 0:
            return False
        uncoloured.discard(v)
        for c in range(min(k, used + 1)):
            if sat[v][c]:
                continue
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"colouring search exceeded {budget} nodes")
            colour[v] = c
            assign(v, c, 1)
            if rec(max(used, c + 1)):
                return True
            assign(v, c, -1)
            colour[v] = -1
        uncoloured.add(v)
        return False

    return colour if rec(used) else None


def coloring(g: Graph, budget: int = DEFAULT_BUDGET) -> dict[str, int]:
    """An optimal proper colouring (colours ``0 .. chi-1``)."""
    n = len(g)
    if n == 0:
        return {}
    adj = g.masks
    clique = [g.index(v) for v in max_clique(g, budget)]
    greedy = _dsatur_greedy(adj)
    upper = max(greedy) + 1
    best = greedy
    # components are coloured independently by the backtracking search anyway;
    # try the smallest k first so a failure is a proof of the lower bound.
    for k in range(len(clique), upper):
        found = _k_colouring(adj, k, clique, budget)
        if found is not None:
            best = found
            break
    return {g.vertices[i]: c for i, c in enumerate(best)}


def chromatic_number(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    if len(g) == 0:
        return 0
    return max(coloring(g, budget).values()) + 1


def _by_degree(masks: Sequence[int], descending: bool = True) -> tuple[list[int], list[int]]:
    """Masks relabelled in order of degree; also the old index of each new vertex."""
    sign = -1 if descending else 1
    order = sorted(range(len(masks)), key=lambda i: sign * masks[i].bit_count())
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        m = 0
        for u in _bits(masks[v]):
            m |= 1 << pos[u]
        out.append(m)
    return out, order


def _induced_cycle(masks: Sequence[int], length: int, budget: int) -> list[int] | None:
    """An induced cycle of exactly ``length`` vertices, grown as an induced path.

    The path starts at its smallest vertex and only uses larger ones, so each
    cycle is met at most twice.  Vertices are taken in decreasing degree, which
    keeps the later searches small.
    """
    masks, order = _by_degree(masks)
    n = len(masks)
    nodes = 0
    path: list[int] = []

    # ``inner``: closed neighbourhoods of the path vertices strictly between start and end
    def rec(inner: int, higher: int) -> bool:
        nonlocal nodes
        start, last = path[0], path[-1]
        if len(path) == 1:
            cand = masks[start] & higher
        elif len(path) == length - 1:
            cand = masks[last] & masks[start] & higher & ~inner
        else:
            cand = masks[last] & higher & ~inner & ~masks[start]
        # the cycle must still get back to the start in the remaining steps
        cand &= ball[min(length - len(path), len(ball) - 1)]
        step = inner if len(path) == 1 else inner | masks[last] | (1 << last)
        for c in _bits(cand):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"induced-cycle search exceeded {budget} nodes")
            path.append(c)
            if len(path) == length or rec(step, higher):
                return True
            path.pop()
        return False

    ball: list[int] = []
    for s in range(n):
        higher = ~((1 << (s + 1)) - 1)
        # ball[k]: vertices within distance k of s using only s and larger vertices
        ball = [1 << s]
        allowed = higher | (1 << s)
        while len(ball) <= length // 2:
            grown = ball[-1]
            for v in _bits(ball[-1]):
                grown |= masks[v] & allowed
            ball.append(grown)
        path[:] = [s]
        if rec(0, higher):
            return [order[v] for v in path]
    return None


def _anti_hole(masks: Sequence[int], length: int, budget: int) -> list[int] | None:
    """An induced complement of a cycle on ``length >= 6`` vertices.

    Returned in the cyclic order of the complement.  For a start ``s``, every
    vertex except its two complement neighbours is a neighbour of ``s``, so
    the search runs through common neighbourhoods instead of the dense
    complement.  Low-degree vertices go first here, the reverse of the hole
    search.
    """
    masks, order = _by_degree(masks, descending=False)
    n = len(masks)
    nodes = 0
    middle: list[int] = []

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"anti-hole search exceeded {budget} nodes")

    def close(s: int, higher: int) -> list[int] | None:
        first, last = middle[0], middle[-1]
        avoid = masks[s] | (1 << s)
        left = higher & ~avoid & ~masks[first] & ~(1 << first)
        for m in middle[1:]:
            left &= masks[m]
        for a in _bits(left):
            tick()
            right = higher & ~avoid & ~masks[last] & ~(1 << last) & masks[a]
            for m in middle[:-1]:
                right &= masks[m]
            for b in _bits(right):
                return [order[v] for v in (s, a, *middle, b)]
        return None

    # ``outer``: vertices still able to serve as a complement neighbour of ``s``
    def rec(s: int, higher: int, common: int, outer: int) -> list[int] | None:
        if len(middle) == length - 3:
            return close(s, higher)
        last = middle[-1]
        if len(middle) > 1:
            outer &= masks[last]
            if not outer:
                return None
        cand = common & ~masks[last] & ~(1 << last)
        for c in _bits(cand):
            tick()
            middle.append(c)
            found = rec(s, higher, common & masks[last], outer)
            if found:
                return found
            middle.pop()
        return None

    for s in range(n):
        higher = ~((1 << (s + 1)) - 1)
        nb = masks[s] & higher
        outer = higher & ~masks[s]
        for m0 in _bits(nb):
            tick()
            middle[:] = [m0]
            found = rec(s, higher, nb, outer)
            if found:
                return found
    return None


def shortest_induced_long_cycle(g: Graph, min_len: int = 5, max_len: int | None = None,
                                budget: int = DEFAULT_BUDGET) -> list[str] | None:
    """Vertices (in cyclic order) of a shortest induced cycle of length >= ``min_len``."""
    hi = len(g) if max_len is None else min(max_len, len(g))
    for n in range(max(min_len, 3), hi + 1):
        cyc = _induced_cycle(g.masks, n, budget)
        if cyc is not None:
            return [g.vertices[i] for i in cyc]
    return None


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphClassReport:
    triangle_free: bool
    square_free: bool
    forest: bool
    bipartite: bool
    complete: bool
    cograph: bool
    weakly_chordal: bool
    clique_number: int
    chromatic_number: int
    join_factors: list[Graph] = field(default_factory=list)
    complete_bipartite_params: tuple[int, int] | None = None

    def as_dict(self) -> dict:
        return {
            "triangle_free": self.triangle_free,
            "square_free": self.square_free,
            "forest": self.forest,
            "bipartite": self.bipartite,
            "complete": self.complete,
            "cograph": self.cograph,
            "weakly_chordal": self.weakly_chordal,
            "clique_number": self.clique_number,
            "chromatic_number": self.chromatic_number,
            "join_factors": [list(f.vertices) for f in self.join_factors],
            "complete_bipartite_params": (list(self.complete_bipartite_params)
                                          if self.complete_bipartite_params else None),
        }


def complete_bipartite_params(g: Graph) -> tuple[int, int] | None:
    """``(p, q)`` with ``p <= q`` if ``g`` is ``K_{p,q}`` (discrete graphs count as ``K_{0,n}``)."""
    n = len(g)
    if g.num_edges == 0:
        return (0, n)
    factors = _component_masks(complement(g).masks, (1 << n) - 1)
    if len(factors) != 2:
        return None
    a, b = factors
    if any(g.masks[i] & a for i in _bits(a)) or any(g.masks[i] & b for i in _bits(b)):
        return None
    p, q = sorted((bin(a).count("1"), bin(b).count("1")))
    return (p, q)


def is_complete(g: Graph) -> bool:
    n = len(g)
    return g.num_edges == n * (n - 1) // 2


def is_weakly_chordal(g: Graph, budget: int = DEFAULT_BUDGET, max_len: int | None = None) -> bool:
    """No induced cycle or complement of a cycle on 5 or more vertices.

    With ``max_len`` only lengths up to ``max_len`` are examined.
    """
    if shortest_induced_long_cycle(g, 5, max_len, budget) is not None:
        return False
    hi = len(g) if max_len is None else min(max_len, len(g))
    # the complement of C5 is C5 itself
    return all(_anti_hole(g.masks, n, budget) is None for n in range(6, hi + 1))


def classify(g: Graph, budget: int = DEFAULT_BUDGET) -> GraphClassReport:
    """Exact class membership and invariants of a small graph."""
    n = len(g)
    omega = clique_number(g, budget)
    comp = complement(g)
    factors = [induced_subgraph(g, c) for c in connected_components(comp)] if n else []
    return GraphClassReport(
        triangle_free=omega <= 2,
        square_free=find_induced_embedding(standard_graph("cycle", 4), g, budget) is None,
        forest=is_forest(g),
        bipartite=is_bipartite(g),
        complete=is_complete(g),
        cograph=find_induced_embedding(standard_graph("path", 4), g, budget) is None,
        weakly_chordal=is_weakly_chordal(g, budget),
        clique_number=omega,
        chromatic_number=chromatic_number(g, budget),
        join_factors=factors,
        complete_bipartite_params=complete_bipartite_params(g),
    )


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``vertices: a b c`` followed by one ``u v`` edge per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("vertices:"):
        raise ValueError("edge list must start with a 'vertices:' line")
    verts = lines[0][len("vertices:"):].split()
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line {ln!r}")
        edges.append((parts[0], parts[1]))
    return Graph(verts, edges)


def format_edge_list(g: Graph) -> str:
    out = ["vertices: " + " ".join(g.vertices)]
    out += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    out += [f"  {_dot_id(v)};" for v in g.vertices]
    out += [f"  {_dot_id(u)} -- {_dot_id(v)};" for u, v in g.edges()]
    out.append("}")
    return "\n".join(out) + "\n"
