"""Finite pieces of the extension graph Γ^e.

A vertex ``v^w`` of Γ^e is stored as ``(v, r)`` where ``r`` is the shortest
element of the coset ``<st(v)> w``; two conjugates are equal exactly when
these pairs agree.  Conjugates ``a^x`` and ``b^y`` commute iff ``a`` and
``b`` are adjacent and ``x y^-1 ∈ <st(a)> <st(b)>``.

Approximations are grown either by word radius (all conjugates whose
representative has length at most ``r``) or by repeated doubling along the
star of a chosen vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graphs import (DEFAULT_BUDGET, Graph, SearchBudgetExceeded, chromatic_number,
                     connected_components, find_induced_embedding, format_edge_list)
from .words import (NormalForm, _head_split, _inv, _lex_sort, _nf, _support_mask,
                    double_coset_member, normalize, parse_word)

__all__ = [
    "ExtVertex",
    "ExtGraphApprox",
    "BudgetExceeded",
    "ext_vertex",
    "ext_adjacent",
    "same_conjugate",
    "act",
    "retract",
    "grow",
    "approx_from_vertices",
    "find_induced_in_extension",
    "recover_translation",
    "diagnostics",
    "parse_ext_label",
]


class BudgetExceeded(RuntimeError):
    """Growth hit the vertex budget.  ``partial`` holds what was built, flagged unusable."""

    def __init__(self, message: str, partial: "ExtGraphApprox | None" = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class ExtVertex:
    base: str
    rep: NormalForm

    @property
    def label(self) -> str:
        return self.base if self.rep.is_identity() else f"{self.base}^({self.rep})"

    def __str__(self) -> str:
        return self.label

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtVertex):
            return NotImplemented
        return self.base == other.base and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.base, self.rep.code))


def _star_mask(gamma: Graph, v: str) -> int:
    i = gamma.index(v)
    return gamma.masks[i] | (1 << i)


def _canon(gamma: Graph, v: str, code: Sequence[int]) -> tuple[int, ...]:
    adj = gamma.masks
    _, rest = _head_split(adj, _nf(adj, code), _star_mask(gamma, v))
    return _lex_sort(adj, rest)


def ext_vertex(gamma: Graph, v: str, w: NormalForm | str | Sequence = ()) -> ExtVertex:
    """The conjugate ``v^w`` with its canonical coset representative."""
    gamma.index(v)
    if isinstance(w, NormalForm):
        w = w.code
    else:
        w = normalize(gamma, w).code
    return ExtVertex(v, NormalForm(gamma, _canon(gamma, v, w)))


def parse_ext_label(gamma: Graph, label: str) -> ExtVertex:
    """Inverse of :attr:`ExtVertex.label`: ``v`` or ``v^(word)``."""
    if label in gamma:
        return ext_vertex(gamma, label)
    if label.endswith(")") and "^(" in label:
        v, _, word = label[:-1].partition("^(")
        return ext_vertex(gamma, v, parse_word(gamma, word))
    raise KeyError(f"cannot read {label!r} as a conjugate of a vertex")


def ext_adjacent(gamma: Graph, u: ExtVertex, v: ExtVertex) -> bool:
    if u.base == v.base or not gamma.has_edge(u.base, v.base):
        return False
    z = NormalForm(gamma, _nf(gamma.masks, u.rep.code + _inv(v.rep.code)))
    return double_coset_member(z, gamma.star(u.base), gamma.star(v.base))


def same_conjugate(gamma: Graph, u: ExtVertex, v: ExtVertex) -> bool:
    """Whether some conjugate ``Γ^g`` of the base copy contains both ``u`` and ``v``."""
    if u.base == v.base:
        return u == v
    z = NormalForm(gamma, _nf(gamma.masks, u.rep.code + _inv(v.rep.code)))
    return double_coset_member(z, gamma.star(u.base), gamma.star(v.base))


def act(u: ExtVertex, g: NormalForm) -> ExtVertex:
    """Right action ``v^w . g = v^(wg)``."""
    gamma = u.rep.graph
    u.rep._check(g)
    return ExtVertex(u.base, NormalForm(gamma, _canon(gamma, u.base, u.rep.code + g.code)))


def retract(u: ExtVertex) -> str:
    return u.base


# ---------------------------------------------------------------------------
# approximations
# ---------------------------------------------------------------------------

@dataclass
class ExtGraphApprox:
    """A finite induced subgraph of Γ^e."""

    base_graph: Graph
    vertices: list[ExtVertex]
    graph: Graph
    provenance: dict
    usable: bool = True
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {u: i for i, u in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, u: object) -> bool:
        return u in self._index

    def index(self, u: ExtVertex) -> int:
        return self._index[u]

    def vertex(self, label: str) -> ExtVertex:
        return self.vertices[self.graph.index(label)]

    def adjacent(self, u: ExtVertex, v: ExtVertex) -> bool:
        return bool(self.graph.masks[self._index[u]] >> self._index[v] & 1)

    def to_json(self) -> dict:
        return {
            "base_graph": graph_to_json(self.base_graph),
            "provenance": self.provenance,
            "vertices": [{"base": u.base, "rep": str(u.rep)} for u in self.vertices],
            "edges": [[i, j] for i in range(len(self))
                      for j in range(i + 1, len(self)) if self.graph.masks[i] >> j & 1],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ExtGraphApprox":
        """Rebuild an approximation from its JSON form, trusting the stored edges."""
        gamma = graph_from_json(data["base_graph"])
        verts = [ext_vertex(gamma, d["base"], parse_word(gamma, d["rep"])) for d in data["vertices"]]
        labels = [u.label for u in verts]
        edges = []
        for i, j in data["edges"]:
            edges.append((labels[i], labels[j]))
        return cls(gamma, verts, Graph(labels, edges), dict(data.get("provenance", {})))

    def check(self) -> list[tuple[int, int]]:
        """Pairs whose stored adjacency disagrees with the commutation criterion."""
        bad = []
        for i in range(len(self)):
            for j in range(i + 1, len(self)):
                stored = bool(self.graph.masks[i] >> j & 1)
                if stored != ext_adjacent(self.base_graph, self.vertices[i], self.vertices[j]):
                    bad.append((i, j))
        return bad

    def to_dot(self, name: str = "Ext") -> str:
        out = [f"graph {name} {{"]
        for u in self.vertices:
            out.append(f'  "{u.label}";')
        for a, b in self.graph.edges():
            out.append(f'  "{a}" -- "{b}";')
        out.append("}")
        return "\n".join(out) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges()]}


def graph_from_json(data: Mapping | str) -> Graph:
    if isinstance(data, str):
        from .graphs import parse_edge_list
        return parse_edge_list(data)
    return Graph(data["vertices"], [tuple(e) for e in data["edges"]])


def _coset_reps(gamma: Graph, alphabet: int, strip: int, radius: int,
                limit: int | None = None) -> list[tuple[int, ...]]:
    """Reduced words over ``alphabet`` of length <= radius with no initial letter in ``strip``.

    These are the shortest representatives of the cosets ``<strip> w``.
    """
    adj = gamma.masks
    letters = [s * (i + 1) for i in range(len(gamma)) if alphabet >> i & 1 for s in (1, -1)]
    level = [()]
    out = [()]
    for k in range(radius):
        nxt = set()
        for w in level:
            for x in letters:
                cand = _nf(adj, w + (x,))
                if len(cand) != k + 1 or cand in nxt:
                    continue
                head, _ = _head_split(adj, cand, strip)
                if not head:
                    nxt.add(cand)
        level = sorted(nxt)
        out.extend(level)
        if limit is not None and len(out) > limit:
            break
    return out


def _fill_edges(gamma: Graph, verts: Sequence[ExtVertex]) -> list[tuple[int, int]]:
    """All commuting pairs among ``verts``.

    A neighbour ``b^y`` of ``a^x`` equals ``b^(h x)`` for some ``h`` in
    ``<st(a)>`` with no initial letter in ``st(a) ∩ st(b)``, and ``|h| <= |y|``
    (the letters of ``h`` all come from ``y``), so a bounded enumeration of
    ``h`` is complete.
    """
    index = {(u.base, u.rep.code): i for i, u in enumerate(verts)}
    radius = max((len(u.rep) for u in verts), default=0)
    reps_cache: dict[tuple[str, str], list[tuple[int, ...]]] = {}
    edges = set()
    for i, u in enumerate(verts):
        sa = _star_mask(gamma, u.base)
        for b in gamma.neighbors(u.base):
            key = (u.base, b)
            if key not in reps_cache:
                reps_cache[key] = _coset_reps(gamma, sa, sa & _star_mask(gamma, b), radius)
            for h in reps_cache[key]:
                y = _canon(gamma, b, h + u.rep.code)
                j = index.get((b, y))
                if j is not None and j != i:
                    edges.add((min(i, j), max(i, j)))
    return sorted(edges)


def _fill_edges_pairwise(gamma: Graph, verts: Sequence[ExtVertex]) -> list[tuple[int, int]]:
    return [(i, j) for i in range(len(verts)) for j in range(i + 1, len(verts))
            if ext_adjacent(gamma, verts[i], verts[j])]


def approx_from_vertices(gamma: Graph, verts: Iterable[ExtVertex], provenance: dict,
                         pairwise: bool = False) -> ExtGraphApprox:
    """Induced subgraph of Γ^e on the given conjugates (duplicates dropped)."""
    verts = list(dict.fromkeys(verts))
    pairs = (_fill_edges_pairwise if pairwise else _fill_edges)(gamma, verts)
    labels = [u.label for u in verts]
    g = Graph(labels, [(labels[i], labels[j]) for i, j in pairs])
    return ExtGraphApprox(gamma, verts, g, provenance)


def _grow_radius(gamma: Graph, r: int, budget: int) -> ExtGraphApprox:
    full = (1 << len(gamma)) - 1
    verts: list[ExtVertex] = []
    for v in gamma.vertices:
        sm = _star_mask(gamma, v)
        for code in _coset_reps(gamma, full, sm, r, limit=budget):
            verts.append(ExtVertex(v, NormalForm(gamma, code)))
        if len(verts) > budget:
            partial = ExtGraphApprox(gamma, verts[:budget], Graph([u.label for u in verts[:budget]]),
                                     {"kind": "radius", "radius": r}, usable=False)
            raise BudgetExceeded(f"radius {r} needs more than {budget} vertices", partial)
    verts.sort(key=lambda u: (len(u.rep), gamma.index(u.base), u.rep.code))
    return approx_from_vertices(gamma, verts, {"kind": "radius", "radius": r})


def _grow_doubling(gamma: Graph, sequence: Sequence[str | ExtVertex], budget: int) -> ExtGraphApprox:
    verts = [ext_vertex(gamma, v) for v in gamma.vertices]
    approx = approx_from_vertices(gamma, verts, {"kind": "doubling", "sequence": []})
    done: list[str] = []
    for t in sequence:
        tv = t if isinstance(t, ExtVertex) else parse_ext_label(gamma, t)
        if tv not in approx:
            raise KeyError(f"{tv.label} is not a vertex of the current approximation")
        # reflection word: the group element t itself, q = w^-1 x w
        q = NormalForm(gamma, _nf(gamma.masks, _inv(tv.rep.code) + (gamma.index(tv.base) + 1,)
                                  + tv.rep.code))
        star = approx.graph.masks[approx.index(tv)] | (1 << approx.index(tv))
        new = [act(u, q) for i, u in enumerate(approx.vertices) if not star >> i & 1]
        merged = list(dict.fromkeys(approx.vertices + new))
        done.append(tv.label)
        if len(merged) > budget:
            approx.usable = False
            raise BudgetExceeded(f"doubling sequence needs more than {budget} vertices", approx)
        approx = approx_from_vertices(gamma, merged, {"kind": "doubling", "sequence": list(done)})
    return approx


def grow(gamma: Graph, radius: int | None = None, doubling: Sequence[str | ExtVertex] | None = None,
         budget: int = 2000) -> ExtGraphApprox:
    """Grow a finite induced subgraph of Γ^e.

    Exactly one of ``radius`` and ``doubling`` must be given.  ``doubling`` is a
    sequence of vertex labels (``v`` or ``v^(word)``) of the approximation
    built so far; each step adds the translate of the approximation by the
    chosen conjugate.  Raises :class:`BudgetExceeded` above ``budget`` vertices.
    """
    if (radius is None) == (doubling is None):
        raise ValueError("give exactly one of radius and doubling")
    if budget < len(gamma):
        raise ValueError("budget is smaller than the base graph")
    if radius is not None:
        if radius < 0:
            raise ValueError("radius must be non-negative")
        return _grow_radius(gamma, radius, budget)
    return _grow_doubling(gamma, doubling, budget)


def find_induced_in_extension(lam: Graph, gamma: Graph, budget: int = 600,
                              max_radius: int = 6, node_budget: int = DEFAULT_BUDGET
                              ) -> dict[str, ExtVertex] | None:
    """Search for an induced copy of ``lam`` in radius approximations of Γ^e.

    Radii grow until the vertex ``budget`` would be exceeded.  ``None`` means
    "not found within budget"; it never proves non-embeddability.
    """
    for r in range(max_radius + 1):
        try:
            approx = grow(gamma, radius=r, budget=budget)
        except BudgetExceeded:
            return None
        try:
            emb = find_induced_embedding(lam, approx.graph, node_budget)
        except SearchBudgetExceeded:
            return None
        if emb is not None:
            out = {k: approx.vertex(v) for k, v in emb.items()}
            names = list(out)
            for i, x in enumerate(names):
                for y in names[i + 1:]:
                    if lam.has_edge(x, y) != ext_adjacent(gamma, out[x], out[y]):
                        raise AssertionError("approximation disagrees with commutation criterion")
            return out
    return None


def recover_translation(vertices: Sequence[ExtVertex], max_rounds: int = 32) -> NormalForm | None:
    """Find ``g`` with every ``act(u, g)`` an identity conjugate, if the sweep finds one.

    Each step moves the current vertex to its base copy by the inverse of its
    representative; sweeps repeat until nothing moves.
    """
    if not vertices:
        raise ValueError("no vertices given")
    gamma = vertices[0].rep.graph
    adj = gamma.masks
    g: tuple[int, ...] = ()
    for _ in range(max_rounds):
        moved = False
        for u in vertices:
            y = _canon(gamma, u.base, u.rep.code + g)
            if y:
                g = _nf(adj, g + _inv(y))
                moved = True
        if not moved:
            return NormalForm(gamma, g)
    return None


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def _distance_matrix(g: Graph) -> np.ndarray:
    n = len(g)
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        dist[s, s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            m = g.masks[u]
            while m:
                low = m & -m
                w = low.bit_length() - 1
                m ^= low
                if dist[s, w] < 0:
                    dist[s, w] = dist[s, u] + 1
                    q.append(w)
    return dist


def _separating_star(g: Graph, u: int, w: int) -> int | None:
    """A vertex whose closed star (not containing u or w) disconnects u from w."""
    n = len(g)
    for s in range(n):
        star = g.masks[s] | (1 << s)
        if star >> u & 1 or star >> w & 1:
            continue
        seen = 1 << u
        frontier = 1 << u
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= g.masks[low.bit_length() - 1]
                m ^= low
            nxt &= ~seen & ~star
            seen |= nxt
            frontier = nxt
        if not seen >> w & 1:
            return s
    return None


def _bigon_violations(g: Graph, dist: np.ndarray, pairs: Iterable[tuple[int, int]]) -> list[dict]:
    out = []
    for v, w in pairs:
        d = int(dist[v, w])
        if d < 2:
            continue
        on = [z for z in range(len(g)) if dist[v, z] >= 0 and dist[v, z] + dist[z, w] == d]
        for u in on:
            if dist[u, v] <= 2 or dist[u, w] <= 2:
                continue
            allowed = {z for z in on if dist[u, z] > 2}
            # geodesic from v to w inside ``allowed``
            layer = {v}
            for k in range(1, d + 1):
                layer = {z for z in allowed if dist[v, z] == k
                         and any(g.masks[z] >> p & 1 for p in layer)}
                if not layer:
                    break
            if w in layer:
                out.append({"endpoints": [g.vertices[v], g.vertices[w]], "far_vertex": g.vertices[u]})
    return out


def diagnostics(approx: ExtGraphApprox, max_pairs: int = 400, seed: int = 0,
                budget: int = DEFAULT_BUDGET) -> dict:
    """Finite-scale geometry of an approximation.

    Returns BFS distances, separating-star checks for sampled non-adjacent
    pairs that lie in no common conjugate of Γ, violations of the 2-thin bigon
    property for sampled pairs, the exact chromatic number and vertex counts
    by representative length.
    """
    g = approx.graph
    n = len(g)
    dist = _distance_matrix(g)
    rng = np.random.default_rng(seed)
    verts = approx.vertices
    cross = [(i, j) for i in range(n) for j in range(i + 1, n)
             if not g.masks[i] >> j & 1 and not same_conjugate(approx.base_graph, verts[i], verts[j])]
    if len(cross) > max_pairs:
        cross = [cross[k] for k in sorted(rng.choice(len(cross), max_pairs, replace=False))]
    separation = []
    for i, j in cross:
        s = _separating_star(g, i, j)
        separation.append({"pair": [g.vertices[i], g.vertices[j]],
                           "separator": None if s is None else g.vertices[s]})
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if dist[i, j] >= 2]
    if len(pairs) > max_pairs:
        pairs = [pairs[k] for k in sorted(rng.choice(len(pairs), max_pairs, replace=False))]
    finite = dist[dist >= 0]
    growth: dict[int, int] = {}
    for u in approx.vertices:
        growth[len(u.rep)] = growth.get(len(u.rep), 0) + 1
    return {
        "vertices": n,
        "edges": g.num_edges,
        "distances": dist,
        "diameter": int(finite.max()) if finite.size else 0,
        "components": len(connected_components(g)) if n else 0,
        "growth": dict(sorted(growth.items())),
        "star_separation_checks": separation,
        "thin_bigon_violations": _bigon_violations(g, dist, pairs),
        "chromatic_number": chromatic_number(g, budget),
    }


__all__ += ["graph_to_json", "graph_from_json", "format_edge_list"]
