"""Canonical labelling and isomorphism-class enumeration for small graphs.

Two strategies share one adjacency encoding: :func:`exhaustive_form` minimises
over every permutation and :func:`canonical_form` minimises over the leaves of
an individualisation/refinement tree.  Each yields a complete invariant on its
own; the codes they pick are not required to coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from .graph import Graph, GraphError, iter_bits, relabel


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    code: int
    # labeling[v] is the canonical position of vertex v
    labeling: tuple[int, ...] = field(compare=False, hash=False)

    def graph(self) -> Graph:
        """The canonical representative, rebuilt from the code alone."""
        return decode(self.n, self.code)


def encode(G: Graph, order) -> int:
    """Upper-triangle adjacency bits of ``G`` listed in ``order``, read as an integer."""
    code = 0
    adj = G.adj
    for j in range(1, G.n):
        row = adj[order[j]]
        for i in range(j):
            code = (code << 1) | (row >> order[i] & 1)
    return code


def decode(n: int, code: int) -> Graph:
    nbits = n * (n - 1) // 2
    adj = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if code >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, adj)


def _form(G: Graph, order) -> CanonicalForm:
    labeling = [0] * G.n
    for pos, v in enumerate(order):
        labeling[v] = pos
    return CanonicalForm(G.n, encode(G, order), tuple(labeling))


def exhaustive_form(G: Graph) -> CanonicalForm:
    if G.n > 10:
        raise GraphError("exhaustive canonical form is limited to n <= 10")
    best = None
    for order in permutations(range(G.n)):
        code = encode(G, order)
        if best is None or code < best[0]:
            best = (code, order)
    if best is None:
        return CanonicalForm(0, 0, ())
    return _form(G, best[1])


def _refine(G: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement; new cells are ordered by neighbour-count signature."""
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                sig = tuple((G.adj[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            out.extend(groups[s] for s in sorted(groups))
        cells = out
        if not changed:
            return cells


def canonical_form(G: Graph) -> CanonicalForm:
    if G.n == 0:
        return CanonicalForm(0, 0, ())
    best: list = [None, None]

    def search(cells):
        cells = _refine(G, cells)
        for i, c in enumerate(cells):
            if len(c) > 1:
                for v in c:
                    rest = [u for u in c if u != v]
                    search(cells[:i] + [[v], rest] + cells[i + 1:])
                return
        order = [c[0] for c in cells]
        code = encode(G, order)
        if best[0] is None or code < best[0]:
            best[0], best[1] = code, order

    search([list(range(G.n))])
    return _form(G, best[1])


def canonical_graph(G: Graph) -> Graph:
    return relabel(G, canonical_form(G).labeling)


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return G.n == H.n and G.edge_count() == H.edge_count() and canonical_form(G) == canonical_form(H)


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[CanonicalForm, ...]:
    if n == 0:
        return (CanonicalForm(0, 0, ()),)
    seen: dict[int, CanonicalForm] = {}
    for base in _classes(n - 1):
        H = base.graph()
        for nbhd in range(1 << (n - 1)):
            adj = list(H.adj) + [nbhd]
            for u in iter_bits(nbhd):
                adj[u] |= 1 << (n - 1)
            cf = canonical_form(Graph(n, adj))
            seen.setdefault(cf.code, cf)
    return tuple(CanonicalForm(n, c, tuple(range(n))) for c in sorted(seen))


def enumerate_iso_classes(n: int) -> list[CanonicalForm]:
    """One canonical form per isomorphism class of ``n``-vertex graphs, sorted by code."""
    if n < 0:
        raise GraphError("n must be non-negative")
    return list(_classes(n))


def iso_class_graphs(n: int) -> list[Graph]:
    return [cf.graph() for cf in enumerate_iso_classes(n)]
