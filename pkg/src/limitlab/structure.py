"""Substitution, recursive blow-ups, modular decomposition and C4 embeddings."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .graph import (
    BudgetExceeded,
    Graph,
    GraphError,
    complete,
    complement,
    cycle,
    empty,
    induced,
    iter_bits,
    vertex_budget,
)


class NotInClass(ValueError):
    """The graph has a prime induced subgraph on four or more vertices."""


def substitute(G: Graph, v: int, F: Graph) -> Graph:
    """Replace vertex ``v`` of ``G`` by a module inducing ``F``.

    The vertices of ``G`` other than ``v`` keep their relative order and come
    first; the copy of ``F`` occupies the last ``|F|`` positions.
    """
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range for n={G.n}")
    keep = [u for u in range(G.n) if u != v]
    pos = {u: i for i, u in enumerate(keep)}
    n = len(keep) + F.n
    base = len(keep)
    fmask = ((1 << F.n) - 1) << base
    outside = 0
    for u in iter_bits(G.adj[v]):
        outside |= 1 << pos[u]
    adj = []
    for u in keep:
        row = 0
        for w in iter_bits(G.adj[u]):
            if w != v:
                row |= 1 << pos[w]
        if G.has_edge(u, v):
            row |= fmask
        adj.append(row)
    for row in F.adj:
        adj.append((row << base) | outside)
    return Graph(n, adj)


def recursive_blowup(G: Graph, height: int, budget: int | None = None) -> Graph:
    """Vertices are the strings of length ``height`` over V(G), numbered in base
    ``|G|`` with the first coordinate most significant; two strings are adjacent
    iff their first differing coordinates are adjacent in ``G``."""
    if height < 0:
        raise GraphError("height must be non-negative")
    budget = vertex_budget() if budget is None else budget
    if G.n ** height > budget:
        raise BudgetExceeded(f"|G|^height = {G.n ** height} exceeds the budget {budget}")
    B = Graph(1, [0])
    for _ in range(height):
        m = B.n
        block = (1 << m) - 1
        adj = []
        for a in range(G.n):
            cross = 0
            for b in iter_bits(G.adj[a]):
                cross |= block << (b * m)
            adj.extend(cross | (row << (a * m)) for row in B.adj)
        B = Graph(G.n * m, adj)
    return B


def blowup_index(label: str, base: int = 4) -> int:
    """Vertex number in :func:`recursive_blowup` of a 1-based digit string."""
    idx = 0
    for ch in label:
        idx = idx * base + int(ch) - 1
    return idx


def blowup_label(index: int, height: int, base: int = 4) -> str:
    digits = []
    for _ in range(height):
        index, r = divmod(index, base)
        digits.append(str(r + 1))
    return "".join(reversed(digits))


def clique_empty_halfgraph(n: int) -> Graph:
    """Ĥ_1 = K2 and Ĥ_{n+1} = K2 with one vertex replaced by (K̄2 with one vertex replaced by Ĥ_n)."""
    if n < 1:
        raise GraphError("order must be at least 1")
    H = complete(2)
    for _ in range(n - 1):
        H = substitute(complete(2), 0, substitute(empty(2), 0, H))
    return H


# -- modular decomposition ---------------------------------------------------

@dataclass
class CographTree:
    kind: str  # "leaf", "series", "parallel" or "prime"
    vertices: tuple[int, ...]
    children: list[CographTree] = field(default_factory=list)
    # prime nodes only: quotient on one representative per child module
    quotient: Graph | None = None

    def is_certifying(self) -> bool:
        """No prime node with a quotient of three or more vertices."""
        if self.kind == "prime" and self.quotient.n >= 3:
            return False
        return all(c.is_certifying() for c in self.children)

    def prime_nodes(self) -> list[CographTree]:
        out = [self] if self.kind == "prime" else []
        for c in self.children:
            out.extend(c.prime_nodes())
        return out

    def to_json(self) -> dict:
        obj: dict = {"kind": self.kind, "vertices": [v + 1 for v in self.vertices]}
        if self.children:
            obj["children"] = [c.to_json() for c in self.children]
        if self.quotient is not None:
            from .graph import to_json_obj
            obj["quotient"] = to_json_obj(self.quotient)
        return obj


def evaluate_tree(tree: CographTree, n: int) -> Graph:
    """Rebuild the graph a decomposition tree describes, on vertex set ``range(n)``."""
    adj = [0] * n

    def walk(t: CographTree) -> None:
        for c in t.children:
            walk(c)
        masks = [sum(1 << v for v in c.vertices) for c in t.children]
        for i, ci in enumerate(t.children):
            for j, cj in enumerate(t.children):
                if i == j:
                    continue
                if t.kind == "series" or (t.kind == "prime" and t.quotient.has_edge(i, j)):
                    for v in ci.vertices:
                        adj[v] |= masks[j]

    walk(tree)
    return Graph(n, adj)


def _components(adj, verts: int) -> list[int]:
    comps = []
    left = verts
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= verts & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        left &= ~comp
    return comps


def _module_closure(adj, verts: int, S: int) -> int:
    """Smallest module of the induced graph on ``verts`` containing ``S``."""
    changed = True
    while changed:
        changed = False
        for z in iter_bits(verts & ~S):
            seen = adj[z] & S
            if seen and seen != S:
                S |= 1 << z
                changed = True
    return S


def _decompose(G: Graph, Gc: Graph, verts: int) -> CographTree:
    vs = tuple(iter_bits(verts))
    if len(vs) == 1:
        return CographTree("leaf", vs)
    comps = _components(G.adj, verts)
    if len(comps) > 1:
        return CographTree("parallel", vs, [_decompose(G, Gc, c) for c in comps])
    cocomps = _components(Gc.adj, verts)
    if len(cocomps) > 1:
        return CographTree("series", vs, [_decompose(G, Gc, c) for c in cocomps])
    modules = []
    assigned = 0
    for u in vs:
        if assigned >> u & 1:
            continue
        M = 1 << u
        for v in vs:
            if v != u and not (assigned >> v & 1):
                m = _module_closure(G.adj, verts, (1 << u) | (1 << v))
                if m != verts:
                    M |= m
        modules.append(M)
        assigned |= M
    reps = [(M & -M).bit_length() - 1 for M in modules]
    quotient = induced(G, reps)
    return CographTree("prime", vs, [_decompose(G, Gc, M) for M in modules], quotient)


def modular_decomposition(G: Graph) -> CographTree:
    if G.n == 0:
        return CographTree("parallel", ())
    return _decompose(G, complement(G), (1 << G.n) - 1)


def is_in_CC(G: Graph) -> tuple[bool, CographTree]:
    """Membership in the class of induced subgraphs of recursive C4 blow-ups."""
    tree = modular_decomposition(G)
    return tree.is_certifying(), tree


# -- embeddings into C4^l ----------------------------------------------------

def c4_adjacent(a: str, b: str) -> bool:
    for x, y in zip(a, b):
        if x != y:
            return (int(x) - int(y)) % 4 in (1, 3)
    return False


@dataclass(frozen=True)
class C4Embedding:
    height: int
    labels: tuple[str, ...]  # labels[v] for vertex v

    def to_json(self) -> dict:
        return {"height": self.height, "labels": list(self.labels)}


def verify_embedding(G: Graph, e: C4Embedding) -> bool:
    if len(e.labels) != G.n or len(set(e.labels)) != G.n:
        return False
    if any(len(s) != e.height or set(s) - set("1234") for s in e.labels):
        return False
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if c4_adjacent(e.labels[u], e.labels[v]) != G.has_edge(u, v):
                return False
    return True


_C4 = cycle(4)


def _direct_c4_labels(G: Graph, verts: tuple[int, ...]) -> dict[int, str] | None:
    if len(verts) > 4:
        return None
    for img in permutations(range(4), len(verts)):
        if all(G.has_edge(verts[i], verts[j]) == _C4.has_edge(img[i], img[j])
               for i in range(len(verts)) for j in range(i)):
            return {v: str(img[i] + 1) for i, v in enumerate(verts)}
    return None


def _embed(G: Graph, t: CographTree) -> tuple[int, dict[int, str]]:
    if t.kind == "leaf":
        return 0, {t.vertices[0]: ""}
    direct = _direct_c4_labels(G, t.vertices)
    if direct is not None:
        return 1, direct
    if t.kind == "prime":
        raise NotInClass(f"prime quotient on {t.quotient.n} vertices")
    first, second = "12" if t.kind == "series" else "13"
    parts = [_embed(G, c) for c in t.children]
    # fold from the right: K2 / K̄2 substitutions nested one level per child
    h, labels = parts[-1]
    for hc, lc in reversed(parts[:-1]):
        top = 1 + max(h, hc)
        merged = {v: first + s + "1" * (top - 1 - hc) for v, s in lc.items()}
        merged.update({v: second + s + "1" * (top - 1 - h) for v, s in labels.items()})
        h, labels = top, merged
    return h, labels


def embed_into_c4(G: Graph) -> C4Embedding:
    if G.n == 0:
        return C4Embedding(0, ())
    member, tree = is_in_CC(G)
    if not member:
        q = tree.prime_nodes()[0].quotient
        raise NotInClass(f"graph has a prime quotient on {q.n} vertices")
    h, labels = _embed(G, tree)
    return C4Embedding(h, tuple(labels[v] for v in range(G.n)))
