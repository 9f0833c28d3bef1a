"""Deciding whether A(Λ) embeds in A(Γ).

Every positive answer carries an :class:`EmbeddingCertificate`: an induced
copy of Λ inside Γ^e, given as one conjugate ``v^w`` per vertex of Λ.  Such
a copy yields an embedding of A(Λ) (vertices go to powers of the listed
conjugates).  Every negative answer carries an :class:`Obstruction` whose
witness can be re-checked with the exact graph routines.  Anything else is
reported as unknown, together with what was tried.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Mapping, Sequence

from .extension import (BudgetExceeded, ExtVertex, act, ext_adjacent, ext_vertex, graph_from_json,
                        graph_to_json, grow, parse_ext_label)
from .graphs import (DEFAULT_BUDGET, Graph, SearchBudgetExceeded, chromatic_number,
                     clique_number, cocontract, combine, complement, complete_bipartite_params,
                     connected_components, double_along_star, find_induced_embedding,
                     induced_subgraph, is_bipartite, is_complete, is_connected, is_forest,
                     is_isomorphic, max_clique, odd_cycle, shortest_induced_long_cycle,
                     standard_graph)
from .words import (NormalForm, commutation_graph, commutes, identity, normalize,
                    parse_word, pure_factor_decomposition)

__all__ = [
    "OBSTRUCTION_KINDS",
    "Obstruction",
    "EmbeddingCertificate",
    "Verdict",
    "decide",
    "obstruction_scan",
    "check_obstruction",
    "verify_certificate",
    "embed_forest_in_p4e",
    "cycle_in_cycle",
    "canonical_certificate",
    "analyze_generator_map",
]

OBSTRUCTION_KINDS = (
    "CliqueRank",
    "AbelianTarget",
    "CliqueUnionTarget",
    "CycleArithmetic",
    "BipartiteTarget",
    "ChromaticTriangleFree",
    "KambitesSquare",
    "P4Theorem",
    "ForestTarget",
    "EdgePlusPoint",
    "CompleteBipartiteClass",
    "TriangleFreeCycle",
    "JoinKernel",
)

P4 = Graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])
_P3 = standard_graph("path", 3)
_C4 = standard_graph("cycle", 4)
_P4 = standard_graph("path", 4)
_EDGE_POINT = combine("disjoint_union", Graph(["x", "y"], [("x", "y")]), Graph(["z"]))


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------

@dataclass
class Obstruction:
    """A theorem-backed reason why A(Λ) does not embed in A(Γ).

    ``subgraph`` lists the vertices of Λ on which the witness lives; since
    A(Λ') embeds in A(Λ) for induced Λ', an obstruction for Λ' rules out Λ.
    """

    kind: str
    detail: str
    witness: dict = field(default_factory=dict)
    subgraph: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail, "witness": self.witness,
                "subgraph": list(self.subgraph)}

    @classmethod
    def from_json(cls, data: Mapping) -> "Obstruction":
        return cls(data["kind"], data.get("detail", ""), dict(data.get("witness", {})),
                   list(data.get("subgraph", [])))


@dataclass
class EmbeddingCertificate:
    source: Graph
    target: Graph
    assignment: dict[str, ExtVertex]
    note: str = "search"

    def to_json(self) -> dict:
        return {
            "source": graph_to_json(self.source),
            "target": graph_to_json(self.target),
            "assignment": [{"lambda_vertex": v, "base": self.assignment[v].base,
                            "rep_word": str(self.assignment[v].rep)}
                           for v in self.source.vertices if v in self.assignment],
            "note": self.note,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EmbeddingCertificate":
        source = graph_from_json(data["source"])
        target = graph_from_json(data["target"])
        assignment = {}
        for item in data["assignment"]:
            assignment[item["lambda_vertex"]] = ext_vertex(
                target, item["base"], parse_word(target, item.get("rep_word", "")))
        return cls(source, target, assignment, data.get("note", "search"))


@dataclass
class Verdict:
    kind: str  # "yes" | "no" | "unknown"
    certificate: EmbeddingCertificate | None = None
    obstruction: Obstruction | None = None
    report: dict = field(default_factory=dict)

    @property
    def is_yes(self) -> bool:
        return self.kind == "yes"

    @property
    def is_no(self) -> bool:
        return self.kind == "no"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction.to_json()
        if self.report:
            out["report"] = self.report
        return out


def _yes(cert: EmbeddingCertificate, **report) -> Verdict:
    if not verify_certificate(cert):
        raise AssertionError(f"constructed certificate ({cert.note}) failed verification")
    return Verdict("yes", certificate=cert, report=report)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def verify_certificate(cert: EmbeddingCertificate) -> bool:
    """Recompute every pair: the assignment must be injective and induced."""
    gamma = cert.target
    for u in cert.assignment.values():
        if u.rep.graph is not gamma and u.rep.graph != gamma:
            raise ValueError("certificate vertex lives over a different base graph")
        if u.base not in gamma:
            raise ValueError(f"unknown base vertex {u.base!r}")
    verts = list(cert.source.vertices)
    if set(cert.assignment) != set(verts):
        return False
    images = [cert.assignment[v] for v in verts]
    if len(set(images)) != len(images):
        return False
    for i, x in enumerate(verts):
        for j in range(i + 1, len(verts)):
            if cert.source.has_edge(x, verts[j]) != ext_adjacent(gamma, images[i], images[j]):
                return False
    return True


def _identity_certificate(lam: Graph, gamma: Graph, emb: Mapping[str, str], note: str = "subgraph"
                          ) -> EmbeddingCertificate:
    return EmbeddingCertificate(lam, gamma, {v: ext_vertex(gamma, emb[v]) for v in lam.vertices}, note)


def _transport(u: ExtVertex, phi: Mapping[str, str], gamma: Graph) -> ExtVertex:
    """Image of a conjugate under the inclusion induced by an induced copy ``phi``."""
    return ext_vertex(gamma, phi[u.base], [(phi[x.vertex], x.sign) for x in u.rep.letters])


def _translate(assignment: Mapping[str, ExtVertex], g: NormalForm) -> dict[str, ExtVertex]:
    return {k: act(u, g) for k, u in assignment.items()}


def _count(u: ExtVertex, vertex: str) -> int:
    return sum(1 for x in u.rep.letters if x.vertex == vertex)


def embed_forest_in_p4e(f: Graph, max_shift: int = 64) -> EmbeddingCertificate:
    """Certificate placing a forest inside the extension graph of the path ``a-b-c-d``.

    Trees grow leaf by leaf: to attach at an image of ``b`` the partial tree is
    translated so that image becomes ``b`` itself, and the leaf is ``c^(a^M)``
    with ``M`` one more than any exponent of ``a`` seen so far (``M = 0`` for the
    first edge); attaching at an image of ``c`` uses ``b^(d^M)`` symmetrically.  Components are then pushed
    apart by powers of ``a d``.
    """
    if not is_forest(f):
        raise ValueError("input is not a forest")
    gamma = P4
    rule = {"b": ("c", "a"), "c": ("b", "d")}
    parts: list[dict[str, ExtVertex]] = []
    for comp in connected_components(f):
        root = comp[0]
        placed = {root: ext_vertex(gamma, "b")}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(f.neighbors(x), key=f.index):
                if y in placed:
                    continue
                u = placed[x]
                moved = _translate(placed, u.rep.inverse())
                base, letter = rule[u.base]
                m = 1 + max(_count(t, letter) for t in moved.values())
                if len(placed) == 1:
                    m = 0
                for extra in range(max_shift):
                    new = ext_vertex(gamma, base, [(letter, 1)] * (m + extra))
                    if all(ext_adjacent(gamma, new, t) == (k == x) for k, t in moved.items()):
                        break
                else:
                    raise AssertionError("leaf placement failed")
                placed[y] = act(new, u.rep)
                queue.append(y)
        parts.append(placed)
    note = "forest_p4"
    if len(parts) == 1:
        cert = EmbeddingCertificate(f, gamma, parts[0], note)
        if verify_certificate(cert):
            return cert
        raise AssertionError("forest certificate failed verification")
    cert = _separate(f, gamma, parts, normalize(gamma, "a d"), note, max_shift)
    if cert is None:
        raise AssertionError("could not separate forest components")
    return cert


def _separate(lam: Graph, gamma: Graph, parts: Sequence[Mapping[str, ExtVertex]],
              g: NormalForm, note: str, max_shift: int = 64) -> EmbeddingCertificate | None:
    """Translate part ``i`` by ``g^(i M)`` for growing ``M`` until the union is induced."""
    for m in range(1, max_shift + 1):
        assignment: dict[str, ExtVertex] = {}
        for i, part in enumerate(parts):
            assignment.update(_translate(part, g ** (i * m)))
        cert = EmbeddingCertificate(lam, gamma, assignment, note)
        if verify_certificate(cert):
            return cert
    return None


def _cycle_order(g: Graph) -> list[str] | None:
    """Vertices of ``g`` in cyclic order if ``g`` is a single cycle."""
    if len(g) < 3 or any(g.degree(v) != 2 for v in g.vertices) or not is_connected(g):
        return None
    order = [g.vertices[0]]
    prev = None
    while len(order) < len(g):
        cur = order[-1]
        nxt = [w for w in sorted(g.neighbors(cur), key=g.index) if w != prev][0]
        prev = cur
        order.append(nxt)
    return order


def cycle_in_cycle(m: int, n: int) -> Verdict:
    """Whether A(C_m) embeds in A(C_n), with a certificate over the standard cycles.

    For ``m, n >= 4`` the answer is yes exactly when ``m = n + k(n - 4)``.  The
    certificate glues ``k + 1`` copies of C_n in a row, each copy the mirror of
    the previous one through a vertex of a shared induced path on three
    vertices, and reads off the boundary.
    """
    if m < 3 or n < 3:
        raise ValueError("cycles need at least three vertices")
    lam = standard_graph("cycle", m)
    gamma = standard_graph("cycle", n)
    if m == n:
        return _yes(_identity_certificate(lam, gamma, {v: v for v in lam.vertices}), k=0)
    if n == 3:
        return Verdict("no", obstruction=Obstruction(
            "AbelianTarget", f"A(C3) is abelian but C{m} is not complete",
            {"non_edge": ["v0", "v2"]}, list(lam.vertices)))
    if m == 3:
        return Verdict("no", obstruction=Obstruction(
            "CliqueRank", f"C{m} has a 3-clique, C{n} has clique number 2",
            {"clique": list(lam.vertices), "target_clique_number": 2}, list(lam.vertices)))
    k, r = divmod(m - n, n - 4) if n > 4 else (-1, 1)
    if m < n or r:
        return Verdict("no", obstruction=Obstruction(
            "CycleArithmetic", f"{m} is not of the form {n} + k*{n - 4}",
            {"m": m, "n": n}, list(lam.vertices)))
    vs = gamma.vertices
    js = (1, 3) if n == 5 else (1, 4)
    w = identity(gamma)
    copies = [w]
    centres = []
    for i in range(k):
        j = js[i % 2]
        centres.append(ext_vertex(gamma, vs[j], w))
        w = normalize(gamma, [(vs[j], 1)]) * w
        copies.append(w)
    verts: list[ExtVertex] = []
    seen = set(centres)
    for w in copies:
        for v in vs:
            u = ext_vertex(gamma, v, w)
            if u not in seen:
                seen.add(u)
                verts.append(u)
    labels = [u.label for u in verts]
    index = {u: i for i, u in enumerate(verts)}
    edges = [(labels[i], labels[j]) for i in range(len(verts)) for j in range(i + 1, len(verts))
             if ext_adjacent(gamma, verts[i], verts[j])]
    order = _cycle_order(Graph(labels, edges))
    if order is None or len(order) != m:
        raise AssertionError("cellulation boundary is not the expected cycle")
    by_label = {u.label: u for u in index}
    cert = EmbeddingCertificate(lam, gamma, {f"v{i}": by_label[lab] for i, lab in enumerate(order)},
                                "cycle_cellulation")
    return _yes(cert, k=k)


def _cocontraction_order(gamma: Graph, b: Sequence[str]) -> list[str]:
    comp = complement(induced_subgraph(gamma, b))
    order = [b[0]]
    queue = deque([b[0]])
    while queue:
        x = queue.popleft()
        for y in sorted(comp.neighbors(x), key=gamma.index):
            if y not in order:
                order.append(y)
                queue.append(y)
    return order


def canonical_certificate(kind: str, gamma: Graph, arg) -> EmbeddingCertificate:
    """Explicit certificates for a star double or a co-contraction of Γ.

    ``kind`` is ``"star_double"`` (``arg`` a vertex ``t``; the second copy goes
    to conjugates by ``t``) or ``"cocontraction"`` (``arg`` an anticonnected
    vertex set ``B``; the new vertex goes to ``b2^(b1 b3 ... br)`` with ``B``
    ordered along the complement).
    """
    if kind == "star_double":
        t = arg
        lam = double_along_star(gamma, t)
        star = gamma.star(t)
        primed = [v for v in lam.vertices if v not in gamma]
        outside = [v for v in gamma.vertices if v not in star]
        assignment = {v: ext_vertex(gamma, v) for v in gamma.vertices}
        for v, p in zip(outside, primed):
            assignment[p] = ext_vertex(gamma, v, [(t, 1)])
        cert = EmbeddingCertificate(lam, gamma, assignment, "star_double")
        if not verify_certificate(cert):
            raise AssertionError("star double certificate failed verification")
        return cert
    if kind == "cocontraction":
        b = list(dict.fromkeys(arg))
        lam = cocontract(gamma, b)
        vb = lam.vertices[-1]
        base = {v: ext_vertex(gamma, v) for v in lam.vertices if v != vb}
        if len(b) == 1:
            base[vb] = ext_vertex(gamma, b[0])
            return EmbeddingCertificate(lam, gamma, base, "cocontraction")
        first = _cocontraction_order(gamma, b)
        orders = [first] + [list(p) for p in permutations(b) if list(p) != first][:24]
        for e in (1, 2, 3):
            for order in orders:
                word = [(x, 1) for x in [order[0]] + order[2:] for _ in range(e)]
                assignment = dict(base)
                assignment[vb] = ext_vertex(gamma, order[1], word)
                cert = EmbeddingCertificate(lam, gamma, assignment, "cocontraction")
                if verify_certificate(cert):
                    return cert
        raise AssertionError("no co-contraction certificate among the candidates")
    raise ValueError(f"unknown certificate kind {kind!r}")


# ---------------------------------------------------------------------------
# obstructions
# ---------------------------------------------------------------------------

def _is_cycle_graph(g: Graph) -> bool:
    return _cycle_order(g) is not None


def _cycles_fit(m: int, n: int) -> bool:
    if m == n:
        return True
    return n > 4 and m > n and (m - n) % (n - 4) == 0


def _allowed_in_complete_bipartite(lam: Graph, p_gamma: int, q_gamma: int) -> bool:
    params = complete_bipartite_params(lam)
    if params is None:
        return False
    p, q = params
    if p_gamma >= 2:
        return True
    if p_gamma == 1 and q_gamma >= 2:
        return p <= 1
    return p <= 1 and q <= 1


def _scan(lam: Graph, gamma: Graph, budget: int, skipped: list | None) -> Obstruction | None:
    sub = list(lam.vertices)

    def attempt(fn):
        try:
            return fn()
        except SearchBudgetExceeded as exc:
            if skipped is not None:
                skipped.append({"check": fn.__name__, "reason": str(exc)})
            return None

    def clique_rank():
        wl = max_clique(lam, budget)
        og = clique_number(gamma, budget)
        if len(wl) > og:
            return Obstruction("CliqueRank", f"Λ has a {len(wl)}-clique, Γ has clique number {og}",
                               {"clique": wl, "target_clique_number": og}, list(wl))

    def clique_union_target():
        # a single clique is left to the complete-target rule
        if not is_complete(gamma) and find_induced_embedding(_P3, gamma, budget) is None:
            emb = find_induced_embedding(_P3, lam, budget)
            if emb is not None:
                path = [emb[f"v{i}"] for i in range(3)]
                return Obstruction("CliqueUnionTarget",
                                   "Γ is a disjoint union of cliques but Λ has an induced P3",
                                   {"path": path}, path)

    def cycle_arithmetic():
        m, n = len(lam), len(gamma)
        if m >= 5 and n >= 5 and _is_cycle_graph(lam) and _is_cycle_graph(gamma) \
                and not _cycles_fit(m, n):
            return Obstruction("CycleArithmetic", f"{m} is not of the form {n} + k*{n - 4}",
                               {"m": m, "n": n}, sub)

    def bipartite_target():
        if is_bipartite(gamma):
            cyc = odd_cycle(lam)
            if cyc is not None:
                return Obstruction("BipartiteTarget", "Γ is bipartite but Λ has an odd cycle",
                                   {"odd_cycle": cyc}, list(cyc))

    def chromatic_triangle_free():
        if clique_number(gamma, budget) <= 2:
            cl, cg = chromatic_number(lam, budget), chromatic_number(gamma, budget)
            if cl > cg:
                return Obstruction("ChromaticTriangleFree",
                                   f"Γ is triangle-free with chromatic number {cg} < {cl}",
                                   {"source_chromatic_number": cl, "target_chromatic_number": cg}, sub)

    def kambites_square():
        emb = find_induced_embedding(_C4, lam, budget)
        if emb is not None and find_induced_embedding(_C4, gamma, budget) is None:
            square = [emb[f"v{i}"] for i in range(4)]
            return Obstruction("KambitesSquare", "Λ has an induced square, Γ has none",
                               {"square": square}, square)

    def p4_theorem():
        emb = find_induced_embedding(_P4, lam, budget)
        if emb is not None and find_induced_embedding(_P4, gamma, budget) is None:
            path = [emb[f"v{i}"] for i in range(4)]
            return Obstruction("P4Theorem", "Λ has an induced P4, Γ has none", {"path": path}, path)

    def forest_target():
        if is_forest(gamma) and not is_forest(lam):
            cyc = shortest_induced_long_cycle(lam, 3, budget=budget)
            return Obstruction("ForestTarget", "Γ is a forest but Λ has a cycle",
                               {"cycle": cyc}, list(cyc))

    def edge_plus_point():
        emb = find_induced_embedding(_EDGE_POINT, lam, budget)
        if emb is not None and find_induced_embedding(_EDGE_POINT, gamma, budget) is None:
            return Obstruction("EdgePlusPoint",
                               "Λ has an induced edge plus point, Γ has none",
                               {"edge": [emb["x"], emb["y"]], "point": emb["z"]},
                               [emb["x"], emb["y"], emb["z"]])

    def complete_bipartite_class():
        params = complete_bipartite_params(gamma)
        if params is not None and params[0] >= 1 and not _allowed_in_complete_bipartite(lam, *params):
            return Obstruction("CompleteBipartiteClass",
                               f"Γ is K_{{{params[0]},{params[1]}}} and Λ is not an allowed complete bipartite graph",
                               {"target_params": list(params),
                                "source_params": (list(complete_bipartite_params(lam))
                                                  if complete_bipartite_params(lam) else None)}, sub)

    def triangle_free_cycle():
        if clique_number(gamma, budget) > 2:
            return None
        cyc = shortest_induced_long_cycle(lam, 5, budget=budget)
        if cyc is None:
            return None
        n = len(cyc)
        if shortest_induced_long_cycle(gamma, 5, n, budget) is None:
            return Obstruction("TriangleFreeCycle",
                               f"Λ has an induced C{n}, triangle-free Γ has no induced C_m for 5 <= m <= {n}",
                               {"cycle": cyc}, list(cyc))

    for fn in (clique_rank, clique_union_target, cycle_arithmetic, bipartite_target,
               chromatic_triangle_free, kambites_square, p4_theorem, forest_target,
               edge_plus_point, complete_bipartite_class, triangle_free_cycle):
        ob = attempt(fn)
        if ob is not None:
            return ob
    return None


def _complete_target(lam: Graph, gamma: Graph) -> Verdict | None:
    """A(Γ) is free abelian when Γ is complete, so only complete Λ embed."""
    if not is_complete(gamma) or is_complete(lam):
        return None
    u, v = next((u, v) for u in lam.vertices for v in lam.vertices
                if u != v and not lam.has_edge(u, v))
    return Verdict("no", obstruction=Obstruction(
        "AbelianTarget", "A(Γ) is abelian but Λ has a non-edge", {"non_edge": [u, v]},
        list(lam.vertices)))


def obstruction_scan(lam: Graph, gamma: Graph, budget: int = DEFAULT_BUDGET,
                     skipped: list | None = None) -> Obstruction | None:
    """First applicable obstruction, in a fixed order.

    Checks whose exact search exceeds ``budget`` are skipped and, if a list is
    passed as ``skipped``, recorded there.
    """
    return _scan(lam, gamma, budget, skipped)


def _is_cycle_in(g: Graph, cyc: Sequence[str], induced: bool) -> bool:
    n = len(cyc)
    if n < 3 or len(set(cyc)) != n or any(v not in g for v in cyc):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            consecutive = j == i + 1 or (i == 0 and j == n - 1)
            if consecutive and not g.has_edge(cyc[i], cyc[j]):
                return False
            if induced and not consecutive and g.has_edge(cyc[i], cyc[j]):
                return False
    return True


def _induced_matches(g: Graph, pattern: Graph, labels: Sequence[str]) -> bool:
    if len(set(labels)) != len(labels) or any(v not in g for v in labels):
        return False
    pv = pattern.vertices
    return all(g.has_edge(labels[i], labels[j]) == pattern.has_edge(pv[i], pv[j])
               for i in range(len(pv)) for j in range(i + 1, len(pv)))


def check_obstruction(ob: Obstruction, lam: Graph, gamma: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    """Re-check an obstruction's witness from scratch."""
    if not set(ob.subgraph) <= set(lam.vertices) or not ob.subgraph:
        return False
    sub = induced_subgraph(lam, ob.subgraph)
    w = ob.witness
    k = ob.kind
    if k == "CliqueRank":
        cl = w["clique"]
        return (len(set(cl)) == len(cl) and all(v in sub for v in cl)
                and all(sub.has_edge(x, y) for i, x in enumerate(cl) for y in cl[i + 1:])
                and len(cl) > clique_number(gamma, budget))
    if k == "AbelianTarget":
        u, v = w["non_edge"]
        return is_complete(gamma) and u in sub and v in sub and u != v and not sub.has_edge(u, v)
    if k == "CliqueUnionTarget":
        return (_induced_matches(sub, _P3, w["path"])
                and find_induced_embedding(_P3, gamma, budget) is None)
    if k == "CycleArithmetic":
        m, n = len(sub), len(gamma)
        return (_is_cycle_graph(sub) and _is_cycle_graph(gamma) and m >= 4 and n >= 4
                and (m, n) == (w["m"], w["n"]) and not _cycles_fit(m, n))
    if k == "BipartiteTarget":
        cyc = w["odd_cycle"]
        return is_bipartite(gamma) and len(cyc) % 2 == 1 and _is_cycle_in(sub, cyc, False)
    if k == "ChromaticTriangleFree":
        return (clique_number(gamma, budget) <= 2
                and chromatic_number(sub, budget) > chromatic_number(gamma, budget))
    if k == "KambitesSquare":
        return (_induced_matches(sub, _C4, w["square"])
                and find_induced_embedding(_C4, gamma, budget) is None)
    if k == "P4Theorem":
        return (_induced_matches(sub, _P4, w["path"])
                and find_induced_embedding(_P4, gamma, budget) is None)
    if k == "ForestTarget":
        return is_forest(gamma) and w.get("cycle") is not None and _is_cycle_in(sub, w["cycle"], False)
    if k == "EdgePlusPoint":
        return (_induced_matches(sub, _EDGE_POINT, [*w["edge"], w["point"]])
                and find_induced_embedding(_EDGE_POINT, gamma, budget) is None)
    if k == "CompleteBipartiteClass":
        params = complete_bipartite_params(gamma)
        return (params is not None and params[0] >= 1
                and not _allowed_in_complete_bipartite(sub, *params))
    if k == "TriangleFreeCycle":
        cyc = w["cycle"]
        return (clique_number(gamma, budget) <= 2 and len(cyc) >= 5 and _is_cycle_in(sub, cyc, True)
                and shortest_induced_long_cycle(gamma, 5, len(cyc), budget) is None)
    if k == "JoinKernel":
        if len(sub) < 2 or find_induced_embedding(_C4, sub, budget) is not None:
            return False
        if any(sub.degree(v) == len(sub) - 1 for v in sub.vertices):
            return False
        factors = w["factors"]
        covered = sorted(v for f in factors for v in f["vertices"])
        if covered != sorted(gamma.vertices) or len(factors) < 2:
            return False
        for i, f in enumerate(factors):
            for g in factors[i + 1:]:
                if not all(gamma.has_edge(x, y) for x in f["vertices"] for y in g["vertices"]):
                    return False
        for f in factors:
            inner = Obstruction.from_json(f["obstruction"])
            if not set(inner.subgraph) <= set(ob.subgraph):
                return False
            if not check_obstruction(inner, lam, induced_subgraph(gamma, f["vertices"]), budget):
                return False
        return True
    return False


# ---------------------------------------------------------------------------
# decision procedure
# ---------------------------------------------------------------------------

def _diameter_max_component(f: Graph) -> int:
    from .graphs import diameter
    return max(diameter(induced_subgraph(f, c)) for c in connected_components(f))


def _product_of_vertices(gamma: Graph) -> NormalForm:
    return normalize(gamma, [(v, 1) for v in gamma.vertices])


def _sides(g: Graph) -> tuple[list[str], list[str]]:
    """The two sides of a complete bipartite graph (first side possibly empty)."""
    if g.num_edges == 0:
        return [], list(g.vertices)
    a, b = connected_components(complement(g))
    return (a, b) if len(a) <= len(b) else (b, a)


def _complete_bipartite_target(lam: Graph, gamma: Graph) -> Verdict | None:
    params = complete_bipartite_params(gamma)
    if params is None or params[0] < 1 or complete_bipartite_params(lam) is None:
        return None
    ga, gb = _sides(gamma)
    la, lb = _sides(lam)
    assignment: dict[str, ExtVertex] = {}
    if len(ga) >= 2:
        a1, a2 = ga[:2]
        b1, b2 = gb[:2]
        for k, v in enumerate(la):
            assignment[v] = ext_vertex(gamma, b1, [(b2, 1)] * k)
        for k, v in enumerate(lb):
            assignment[v] = ext_vertex(gamma, a1, [(a2, 1)] * k)
    else:
        c = ga[0]
        if len(la) > 1 or (len(gb) < 2 and len(lb) > 1):
            return None
        for v in la:
            assignment[v] = ext_vertex(gamma, c)
        l1 = gb[0]
        l2 = gb[1] if len(gb) > 1 else None
        for k, v in enumerate(lb):
            assignment[v] = ext_vertex(gamma, l1, [(l2, 1)] * k if k else [])
    return _yes(EmbeddingCertificate(lam, gamma, assignment, "complete_bipartite"))


def _forest_rule(lam: Graph, gamma: Graph, budget: int, node_budget: int) -> Verdict | None:
    if not is_forest(lam):
        return None
    d = _diameter_max_component(lam)
    if d >= 3:
        phi = find_induced_embedding(P4, gamma, node_budget)
        if phi is None:
            return None
        base = embed_forest_in_p4e(lam)
        cert = EmbeddingCertificate(lam, gamma, {v: _transport(u, phi, gamma)
                                                 for v, u in base.assignment.items()}, "forest_p4")
        return _yes(cert, rule="forest, a component of diameter >= 3")
    if d == 2:
        if not is_connected(lam):
            return None
        emb = find_induced_embedding(_P3, gamma, node_budget)
        if emb is None:
            return None
        x, y, z = emb["v0"], emb["v1"], emb["v2"]
        centre = max(lam.vertices, key=lam.degree)
        assignment = {centre: ext_vertex(gamma, y)}
        for k, v in enumerate(w for w in lam.vertices if w != centre):
            assignment[v] = ext_vertex(gamma, x, [(z, 1)] * k)
        return _yes(EmbeddingCertificate(lam, gamma, assignment, "forest_p3"), rule="star forest")
    # disjoint union of edges and points
    edges = lam.edges()
    points = [v for v in lam.vertices if lam.degree(v) == 0]
    if not edges:
        non_edge = next(((u, v) for u in gamma.vertices for v in gamma.vertices
                         if u != v and not gamma.has_edge(u, v)), None)
        if non_edge is None:
            return None
        a, b = non_edge
        assignment = {v: ext_vertex(gamma, a, [(b, 1)] * k) for k, v in enumerate(lam.vertices)}
        return _yes(EmbeddingCertificate(lam, gamma, assignment, "free_group"), rule="discrete forest")
    emb = find_induced_embedding(_EDGE_POINT, gamma, node_budget)
    if emb is None:
        return None
    x, y, z = emb["x"], emb["y"], emb["z"]
    assignment = {}
    for k, (s, t) in enumerate(edges):
        assignment[s] = ext_vertex(gamma, x, [(z, 1)] * k)
        assignment[t] = ext_vertex(gamma, y, [(z, 1)] * k)
    for j, p in enumerate(points):
        assignment[p] = ext_vertex(gamma, z, [(x, 1)] * j)
    return _yes(EmbeddingCertificate(lam, gamma, assignment, "edges_and_points"),
                rule="disjoint union of edges and points")


def _cycles_rule(lam: Graph, gamma: Graph) -> Verdict | None:
    lo, go = _cycle_order(lam), _cycle_order(gamma)
    if lo is None or go is None:
        return None
    v = cycle_in_cycle(len(lam), len(gamma))
    if not v.is_yes:
        ob = v.obstruction
        ob.subgraph = list(lam.vertices)
        if ob.kind == "AbelianTarget":
            ob.witness = {"non_edge": [lo[0], lo[2]]}
        elif ob.kind == "CliqueRank":
            ob.witness = {"clique": lo, "target_clique_number": 2}
        return v
    phi = {f"v{i}": lab for i, lab in enumerate(go)}
    assignment = {lo[i]: _transport(v.certificate.assignment[f"v{i}"], phi, gamma)
                  for i in range(len(lo))}
    return _yes(EmbeddingCertificate(lam, gamma, assignment, v.certificate.note), **v.report)


def _join_factors(gamma: Graph) -> list[list[str]]:
    return connected_components(complement(gamma))


def _centerless(lam: Graph) -> bool:
    return len(lam) >= 2 and all(lam.degree(v) < len(lam) - 1 for v in lam.vertices)


def _join_rule(lam: Graph, gamma: Graph, budget: int, node_budget: int, depth: int) -> Verdict | None:
    factors = _join_factors(gamma)
    if len(factors) < 2 or not _centerless(lam):
        return None
    if find_induced_embedding(_C4, lam, node_budget) is not None:
        return None
    results = []
    for f in factors:
        sub = induced_subgraph(gamma, f)
        v = _decide(lam, sub, budget, node_budget, depth + 1)
        if v.is_yes:
            assignment = {k: ext_vertex(gamma, u.base, u.rep.letters)
                          for k, u in v.certificate.assignment.items()}
            return _yes(EmbeddingCertificate(lam, gamma, assignment, v.certificate.note),
                        rule="join factor", factor=f)
        results.append((f, v))
    if all(v.is_no for _, v in results):
        witness = {"factors": [{"vertices": f, "obstruction": v.obstruction.to_json()}
                               for f, v in results]}
        return Verdict("no", obstruction=Obstruction(
            "JoinKernel", "Λ is square-free and centerless, and embeds in no join factor of Γ",
            witness, list(lam.vertices)))
    return None


def _components_rule(lam: Graph, gamma: Graph, budget: int, node_budget: int, depth: int
                     ) -> Verdict | None:
    comps = connected_components(lam)
    if len(comps) < 2:
        return None
    parts = []
    for c in comps:
        v = _decide(induced_subgraph(lam, c), gamma, budget, node_budget, depth + 1)
        if v.is_no:
            return v
        if not v.is_yes:
            return None
        parts.append(v.certificate.assignment)
    if len(_join_factors(gamma)) >= 2:
        return None
    cert = _separate(lam, gamma, parts, _product_of_vertices(gamma), "translation")
    if cert is None:
        return None
    return _yes(cert, rule="components separated by translation")


def _search(lam: Graph, gamma: Graph, budget: int, node_budget: int, report: dict) -> Verdict | None:
    tried = []
    for r in range(0, 64):
        try:
            approx = grow(gamma, radius=r, budget=budget)
        except BudgetExceeded:
            tried.append({"strategy": "radius", "radius": r, "result": "vertex budget exceeded"})
            break
        try:
            emb = find_induced_embedding(lam, approx.graph, node_budget)
        except SearchBudgetExceeded:
            tried.append({"strategy": "radius", "radius": r, "vertices": len(approx),
                          "result": "node budget exceeded"})
            break
        if emb is not None:
            cert = EmbeddingCertificate(lam, gamma, {k: approx.vertex(v) for k, v in emb.items()},
                                        "search")
            return _yes(cert, rule="search", radius=r, vertices=len(approx))
        tried.append({"strategy": "radius", "radius": r, "vertices": len(approx), "result": "not found"})
        if is_complete(gamma):
            break
    report["strategies"] = tried
    return None


def _decide(lam: Graph, gamma: Graph, budget: int, node_budget: int, depth: int) -> Verdict:
    emb = find_induced_embedding(lam, gamma, node_budget)
    if emb is not None:
        return _yes(_identity_certificate(lam, gamma, emb), rule="induced subgraph")
    skipped: list = []
    ob = obstruction_scan(lam, gamma, node_budget, skipped)
    if ob is not None:
        return Verdict("no", obstruction=ob)
    for rule in (
        lambda: _complete_target(lam, gamma),
        lambda: _complete_bipartite_target(lam, gamma),
        lambda: _forest_rule(lam, gamma, budget, node_budget),
        lambda: _cycles_rule(lam, gamma),
        lambda: _components_rule(lam, gamma, budget, node_budget, depth),
        lambda: _join_rule(lam, gamma, budget, node_budget, depth),
    ):
        v = rule()
        if v is not None:
            return v
    report: dict = {"vertex_budget": budget, "node_budget": node_budget}
    if skipped:
        report["skipped_checks"] = skipped
    v = _search(lam, gamma, budget, node_budget, report)
    if v is not None:
        return v
    return Verdict("unknown", report=report)


def decide(lam: Graph, gamma: Graph, budget: int = 600, node_budget: int = DEFAULT_BUDGET) -> Verdict:
    """Decide whether A(Λ) embeds in A(Γ).

    ``budget`` caps the number of Γ^e vertices used by the search and
    ``node_budget`` caps every exact combinatorial search.  Yes answers carry
    a verified certificate, no answers a re-checkable obstruction; otherwise
    the verdict is unknown and its report lists what was tried.
    """
    if len(lam) == 0 or len(gamma) == 0:
        raise ValueError("graphs must be nonempty")
    if budget < len(gamma) or node_budget < 1:
        raise ValueError("budget too small for the target graph")
    return _decide(lam, gamma, budget, node_budget, 0)


# ---------------------------------------------------------------------------
# generator maps
# ---------------------------------------------------------------------------

def analyze_generator_map(lam: Graph, gamma: Graph, images: Mapping[str, NormalForm | str]) -> dict:
    """Necessary-condition analysis of a map sending generators of A(Λ) into A(Γ).

    For each generator the image is split into conjugated pure factors; these
    form a clique of Γ^e-candidates.  The report lists the commutation graph
    of all conjugated pure factors, whether the per-generator factor sets are
    pairwise non-nested, and which pairs of generators commute when they
    should not (or vice versa).  Passing is necessary, not sufficient, for
    the map to be an embedding.
    """
    imgs: dict[str, NormalForm] = {}
    for v in lam.vertices:
        if v not in images:
            raise KeyError(f"no image for generator {v!r}")
        w = images[v]
        if isinstance(w, NormalForm):
            if w.graph is not gamma and w.graph != gamma:
                raise ValueError(f"image of {v!r} is over a different graph")
            imgs[v] = w
        else:
            imgs[v] = normalize(gamma, w)
    trivial = [v for v, w in imgs.items() if w.is_identity()]
    per_gen: dict[str, dict] = {}
    factor_list: list[NormalForm] = []
    factor_owner: list[str] = []
    for v, w in imgs.items():
        if w.is_identity():
            per_gen[v] = {"image": "", "conjugator": "", "factors": []}
            continue
        dec = pure_factor_decomposition(w)
        conj = [f.conjugate(dec.conjugator) for f, _ in dec.factors]
        per_gen[v] = {"image": str(w), "conjugator": str(dec.conjugator),
                      "factors": [{"factor": str(f), "exponent": e} for f, e in dec.factors],
                      "clique": [str(c) for c in conj]}
        factor_list.extend(conj)
        factor_owner.extend([v] * len(conj))

    def up_to_inverse(f: NormalForm) -> tuple:
        return min(f.code, f.inverse().code)

    sets = {v: {up_to_inverse(f) for f, o in zip(factor_list, factor_owner) if o == v} for v in imgs}
    nested = [[v, w] for v in imgs for w in imgs if v != w and sets[v] and sets[v] <= sets[w]]
    violations = []
    names = list(lam.vertices)
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            c = commutes(imgs[x], imgs[y])
            if c != lam.has_edge(x, y):
                violations.append({"pair": [x, y], "edge_in_source": lam.has_edge(x, y), "commute": c})
    cg = commutation_graph(factor_list) if factor_list else Graph([])
    return {
        "generators": per_gen,
        "trivial_images": trivial,
        "factor_commutation_graph": graph_to_json(cg),
        "nested_cliques": nested,
        "commutation_violations": violations,
        "passes": not trivial and not nested and not violations,
    }


__all__ += ["P4", "parse_ext_label", "is_isomorphic"]
