"""Word algebra in a right-angled Artin group A(Γ).

Elements are kept in a canonical normal form: a freely reduced word that is
the lexicographically least among all minimal-length spellings, with the
letter order ``v0 < v0^-1 < v1 < v1^-1 < ...`` following vertex order.

Internally a letter is an int ``±(i + 1)`` for the vertex with index ``i``;
the public types wrap these codes.

Why the greedy double-coset test is exact: if ``z = αβ`` with ``α ∈ <A>`` and
``β ∈ <B>``, cancel letters between α and β until the product is geodesic.
What remains is ``z = α'β'`` with ``|z| = |α'| + |β'|``, so ``α'`` is a left
divisor of ``z`` supported in ``A``.  The maximal ``A``-head ``h`` absorbs
every such divisor, and ``h^-1 z`` is then a right divisor of ``β'``, hence
supported in ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .graphs import Graph, complement, connected_components, induced_subgraph

__all__ = [
    "Letter",
    "NormalForm",
    "PureFactorDecomposition",
    "parse_word",
    "normalize",
    "identity",
    "cyclically_reduce",
    "max_head",
    "double_coset_member",
    "parabolic_member",
    "pure_factor_decomposition",
    "centralizer_generators",
    "commutes",
    "commutation_graph",
]

Code = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Letter:
    vertex: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("letter sign must be +1 or -1")

    def inverse(self) -> "Letter":
        return Letter(self.vertex, -self.sign)

    def __str__(self) -> str:
        return self.vertex if self.sign > 0 else f"{self.vertex}^-1"


# ---------------------------------------------------------------------------
# code-level kernels (shared with the extension-graph module)
# ---------------------------------------------------------------------------

def _commute(adj: Sequence[int], x: int, y: int) -> bool:
    """Distinct adjacent vertices.  Letters on the same vertex count as dependent."""
    return bool(adj[abs(x) - 1] >> (abs(y) - 1) & 1)


def _key(x: int) -> int:
    return 2 * (abs(x) - 1) + (x < 0)


def _inv(code: Sequence[int]) -> Code:
    return tuple(-x for x in reversed(code))


def _free_reduce(adj: Sequence[int], code: Iterable[int]) -> list[int]:
    out: list[int] = []
    for y in code:
        for i in range(len(out) - 1, -1, -1):
            x = out[i]
            if x == -y:
                del out[i]
                break
            if not _commute(adj, x, y):
                out.append(y)
                break
        else:
            out.append(y)
    return out


def _lex_sort(adj: Sequence[int], code: Sequence[int]) -> Code:
    """Lexicographically least reordering reachable by commuting adjacent letters."""
    n = len(code)
    if n < 2:
        return tuple(code)
    # preds[j] = number of unplaced earlier letters dependent on j
    preds = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for j in range(n):
        for i in range(j):
            if not _commute(adj, code[i], code[j]):
                preds[j] += 1
                succ[i].append(j)
    ready = [j for j in range(n) if preds[j] == 0]
    out = []
    while ready:
        j = min(ready, key=lambda t: (_key(code[t]), t))
        ready.remove(j)
        out.append(code[j])
        for k in succ[j]:
            preds[k] -= 1
            if preds[k] == 0:
                ready.append(k)
    return tuple(out)


def _nf(adj: Sequence[int], code: Iterable[int]) -> Code:
    return _lex_sort(adj, _free_reduce(adj, code))


def _head_split(adj: Sequence[int], code: Sequence[int], smask: int) -> tuple[list[int], list[int]]:
    head: list[int] = []
    rest: list[int] = []
    for x in code:
        if smask >> (abs(x) - 1) & 1 and all(_commute(adj, y, x) for y in rest):
            head.append(x)
        else:
            rest.append(x)
    return head, rest


def _support_mask(code: Iterable[int]) -> int:
    m = 0
    for x in code:
        m |= 1 << (abs(x) - 1)
    return m


def _initial_positions(adj: Sequence[int], code: Sequence[int]) -> list[int]:
    out = []
    for i, x in enumerate(code):
        if all(_commute(adj, code[k], x) for k in range(i)):
            out.append(i)
    return out


def _cyc_reduce(adj: Sequence[int], code: Sequence[int]) -> tuple[list[int], list[int]]:
    """Return ``(P, core)`` with ``code = P core P^-1`` as reduced words."""
    w = list(code)
    prefix: list[int] = []
    changed = True
    while changed:
        changed = False
        n = len(w)
        for i in _initial_positions(adj, w):
            x = w[i]
            for j in range(n - 1, i, -1):
                if abs(w[j]) == abs(x):
                    break
            else:
                continue
            if w[j] != -x:
                continue
            if all(_commute(adj, w[k], x) for k in range(j + 1, n)):
                prefix.append(x)
                del w[j]
                del w[i]
                changed = True
                break
    return prefix, w


def _root(adj: Sequence[int], code: Code) -> tuple[Code, int]:
    """Maximal root: ``code`` equals ``root^e`` with ``e`` as large as possible."""
    n = len(code)
    counts: dict[int, int] = {}
    for x in code:
        counts[abs(x)] = counts.get(abs(x), 0) + 1
    for d in range(1, n + 1):
        if n % d:
            continue
        e = n // d
        if any(c % e for c in counts.values()):
            continue
        quota = {v: c // e for v, c in counts.items()}
        seen: dict[int, int] = {}
        cand = []
        for x in code:
            v = abs(x)
            if seen.get(v, 0) < quota[v]:
                cand.append(x)
            seen[v] = seen.get(v, 0) + 1
        if _nf(adj, cand * e) == code:
            return _lex_sort(adj, cand), e
    return code, 1


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------

class NormalForm:
    """A group element of A(Γ) in canonical form.

    Construct with :func:`normalize`; the raw constructor trusts its input.
    """

    __slots__ = ("graph", "code")

    def __init__(self, graph: Graph, code: Sequence[int]):
        self.graph = graph
        self.code: Code = tuple(code)

    @property
    def letters(self) -> tuple[Letter, ...]:
        vs = self.graph.vertices
        return tuple(Letter(vs[abs(x) - 1], 1 if x > 0 else -1) for x in self.code)

    @property
    def support(self) -> frozenset[str]:
        vs = self.graph.vertices
        return frozenset(vs[abs(x) - 1] for x in self.code)

    def __len__(self) -> int:
        return len(self.code)

    def is_identity(self) -> bool:
        return not self.code

    def _check(self, other: "NormalForm") -> None:
        if other.graph is not self.graph and other.graph != self.graph:
            raise ValueError("words over different graphs")

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        self._check(other)
        return NormalForm(self.graph, _nf(self.graph.masks, self.code + other.code))

    def inverse(self) -> "NormalForm":
        return NormalForm(self.graph, _lex_sort(self.graph.masks, _inv(self.code)))

    def __pow__(self, k: int) -> "NormalForm":
        base = self if k >= 0 else self.inverse()
        return NormalForm(self.graph, _nf(self.graph.masks, base.code * abs(k)))

    def conjugate(self, p: "NormalForm") -> "NormalForm":
        """``p^-1 · self · p``."""
        self._check(p)
        return NormalForm(self.graph, _nf(self.graph.masks, _inv(p.code) + self.code + p.code))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.code == other.code and (self.graph is other.graph or self.graph == other.graph)

    def __hash__(self) -> int:
        return hash(self.code)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.letters)

    def __repr__(self) -> str:
        return f"NormalForm({str(self)!r})"


def _letter_code(graph: Graph, vertex: str, sign: int) -> int:
    return (graph.index(vertex) + 1) * sign


def parse_word(graph: Graph, text: str) -> list[Letter]:
    """Parse whitespace-separated letters ``a``, ``a^-1``, ``a'`` or ``a^k``.

    An exact vertex label always wins over the ``'`` suffix reading.
    """
    out: list[Letter] = []
    for tok in text.split():
        if tok in graph:
            out.append(Letter(tok, 1))
            continue
        if "^" in tok:
            v, _, exp = tok.rpartition("^")
            try:
                k = int(exp)
            except ValueError:
                raise ValueError(f"bad exponent in letter {tok!r}") from None
            if v not in graph:
                raise KeyError(f"unknown vertex {v!r}")
            out.extend([Letter(v, 1 if k > 0 else -1)] * abs(k))
            continue
        if tok.endswith("'") and tok[:-1] in graph:
            out.append(Letter(tok[:-1], -1))
            continue
        raise KeyError(f"unknown vertex {tok!r}")
    return out


WordLike = Union[str, NormalForm, Iterable[Union[Letter, tuple]]]


def _to_code(graph: Graph, word: WordLike) -> list[int]:
    if isinstance(word, NormalForm):
        if word.graph is not graph and word.graph != graph:
            raise ValueError("word over a different graph")
        return list(word.code)
    if isinstance(word, str):
        word = parse_word(graph, word)
    code = []
    for x in word:
        if isinstance(x, Letter):
            code.append(_letter_code(graph, x.vertex, x.sign))
        else:
            v, s = x
            if s not in (1, -1):
                raise ValueError("letter sign must be +1 or -1")
            code.append(_letter_code(graph, v, s))
    return code


def normalize(graph: Graph, word: WordLike) -> NormalForm:
    """Normal form of a word (string, letter sequence or existing normal form)."""
    return NormalForm(graph, _nf(graph.masks, _to_code(graph, word)))


def identity(graph: Graph) -> NormalForm:
    return NormalForm(graph, ())


def cyclically_reduce(g: NormalForm) -> tuple[NormalForm, NormalForm]:
    """``(p, core)`` with ``g = p^-1 · core · p`` and ``core`` cyclically reduced."""
    adj = g.graph.masks
    prefix, core = _cyc_reduce(adj, g.code)
    return (NormalForm(g.graph, _lex_sort(adj, _inv(prefix))),
            NormalForm(g.graph, _lex_sort(adj, core)))


def max_head(g: NormalForm, s: Iterable[str]) -> tuple[NormalForm, NormalForm]:
    """Split ``g = head · rest`` with ``head`` the largest left divisor supported in ``s``."""
    adj = g.graph.masks
    head, rest = _head_split(adj, g.code, g.graph.mask_of(s))
    return NormalForm(g.graph, _lex_sort(adj, head)), NormalForm(g.graph, _lex_sort(adj, rest))


def parabolic_member(g: NormalForm, s: Iterable[str]) -> bool:
    return g.support <= frozenset(s)


def double_coset_member(z: NormalForm, a: Iterable[str], b: Iterable[str]) -> bool:
    """Whether ``z`` lies in ``<a> · <b>``."""
    amask = z.graph.mask_of(a)
    bmask = z.graph.mask_of(b)
    _, rest = _head_split(z.graph.masks, z.code, amask)
    return _support_mask(rest) & ~bmask == 0


@dataclass(frozen=True)
class PureFactorDecomposition:
    conjugator: NormalForm
    factors: tuple[tuple[NormalForm, int], ...]

    def reassemble(self) -> NormalForm:
        g = self.conjugator.graph
        core = identity(g)
        for f, e in self.factors:
            core = core * f ** e
        return core.conjugate(self.conjugator)


def _factor_key(f: NormalForm) -> tuple:
    return tuple(_key(x) for x in f.code)


def pure_factor_decomposition(g: NormalForm) -> PureFactorDecomposition:
    """Conjugator and pure factors ``g = p^-1 (f1^e1 ... fk^ek) p``.

    Factors are ordered lexicographically by their normal forms.
    """
    if g.is_identity():
        raise ValueError("the identity has no pure factor decomposition")
    graph = g.graph
    adj = graph.masks
    p, core = cyclically_reduce(g)
    supp = sorted(core.support, key=graph.index)
    comps = connected_components(complement(induced_subgraph(graph, supp)))
    factors = []
    for comp in comps:
        cm = graph.mask_of(comp)
        part = tuple(x for x in core.code if cm >> (abs(x) - 1) & 1)
        root, e = _root(adj, _lex_sort(adj, part))
        factors.append((NormalForm(graph, root), e))
    factors.sort(key=lambda fe: _factor_key(fe[0]))
    return PureFactorDecomposition(p, tuple(factors))


def centralizer_generators(g: NormalForm) -> list[NormalForm]:
    """Generators of the centralizer of ``g``: conjugated pure factors and common link vertices."""
    dec = pure_factor_decomposition(g)
    graph = g.graph
    p = dec.conjugator
    out = [f.conjugate(p) for f, _ in dec.factors]
    supp = graph.mask_of(set().union(*(f.support for f, _ in dec.factors)))
    for i, m in enumerate(graph.masks):
        if m & supp == supp:
            out.append(NormalForm(graph, ((i + 1),)).conjugate(p))
    return out


def commutes(g: NormalForm, h: NormalForm) -> bool:
    g._check(h)
    adj = g.graph.masks
    return not _free_reduce(adj, g.code + h.code + _inv(g.code) + _inv(h.code))


def commutation_graph(words: Sequence[NormalForm]) -> Graph:
    """One vertex per word (duplicates kept), edges between commuting pairs."""
    if not words:
        raise ValueError("commutation graph of an empty list")
    labels = []
    seen: dict[str, int] = {}
    for w in words:
        base = str(w) or "1"
        k = seen.get(base, 0)
        seen[base] = k + 1
        labels.append(base if k == 0 else f"{base}#{k}")
    edges = [(labels[i], labels[j])
             for i in range(len(words)) for j in range(i + 1, len(words))
             if commutes(words[i], words[j])]
    return Graph(labels, edges)
