"""Finite simple graphs stored as adjacency bitrows.

Vertices are ``0..n-1`` inside Python; the JSON and CLI surfaces use 1-based
labels as in ``{"n": 4, "edges": [[1, 2], ...]}``.
"""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

DEFAULT_BUDGET = 10**6


class GraphError(ValueError):
    """Malformed graph input or out-of-range vertex."""


class BudgetExceeded(RuntimeError):
    """A construction or search would exceed its configured budget."""


def vertex_budget() -> int:
    raw = os.environ.get("LIMITLAB_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise GraphError(f"LIMITLAB_BUDGET must be an integer, got {raw!r}") from None


class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbourhood bitmask of ``v``."""

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 0 or len(adj) != n:
            raise GraphError("adjacency length must equal n")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full or row >> v & 1:
                raise GraphError(f"bad adjacency row for vertex {v}")
            for u in iter_bits(row):
                if not adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at {{{u}, {v}}}")
        self.n = n
        self.adj = tuple(adj)
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise GraphError(f"invalid edge ({u}, {v}) for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def from_predicate(cls, n: int, pred) -> Graph:
        adj = [0] * n
        for u, v in combinations(range(n), 2):
            if pred(u, v):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return cls(n, adj)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_density(self) -> Fraction:
        if self.n < 2:
            return Fraction(0)
        return Fraction(self.edge_count(), self.n * (self.n - 1) // 2)


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph(G.n, [full & ~row & ~(1 << v) for v, row in enumerate(G.adj)])


def induced(G: Graph, U: Iterable[int]) -> Graph:
    """Subgraph induced on ``U``; vertices are renumbered in increasing order."""
    verts = sorted(set(U))
    for v in verts:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range for n={G.n}")
    pos = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        row = 0
        for u in iter_bits(G.adj[v]):
            if u in pos:
                row |= 1 << pos[u]
        adj.append(row)
    return Graph(len(verts), adj)


def relabel(G: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    adj = [0] * G.n
    for v in range(G.n):
        row = 0
        for u in iter_bits(G.adj[v]):
            row |= 1 << perm[u]
        adj[perm[v]] = row
    return Graph(G.n, adj)


def disjoint_union(*graphs: Graph) -> Graph:
    adj: list[int] = []
    offset = 0
    for H in graphs:
        adj.extend(row << offset for row in H.adj)
        offset += H.n
    return Graph(offset, adj)


def join(*graphs: Graph) -> Graph:
    """Disjoint union plus every edge between different summands."""
    total = sum(H.n for H in graphs)
    full = (1 << total) - 1
    adj: list[int] = []
    offset = 0
    for H in graphs:
        block = ((1 << H.n) - 1) << offset
        adj.extend((row << offset) | (full & ~block) for row in H.adj)
        offset += H.n
    return Graph(total, adj)


# -- named graphs ------------------------------------------------------------

def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def empty(n: int) -> Graph:
    return Graph(n, [0] * n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def from_adjacency_matrix(rows: Sequence[Sequence[int]]) -> Graph:
    n = len(rows)
    return Graph(n, [sum(1 << j for j, x in enumerate(r) if x) for r in rows])


# -- graph6 ------------------------------------------------------------------

def _g6_size(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) > 1 and data[1] != 126:
        if len(data) < 4:
            raise GraphError("truncated graph6 size field")
        n = 0
        for c in data[1:4]:
            n = (n << 6) | (c - 63)
        return n, data[4:]
    if len(data) < 8:
        raise GraphError("truncated graph6 size field")
    n = 0
    for c in data[2:8]:
        n = (n << 6) | (c - 63)
    return n, data[8:]


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii")
    if any(c < 63 or c > 126 for c in data):
        raise GraphError(f"invalid graph6 character in {text!r}")
    n, body = _g6_size(data)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need}")
    bits = []
    for c in body:
        v = c - 63
        bits.extend((v >> k) & 1 for k in range(5, -1, -1))
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, adj)


def to_graph6(G: Graph) -> str:
    n = G.n
    if n < 63:
        out = [n + 63]
    elif n < 258048:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        out = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [G.adj[i] >> j & 1 for j in range(1, n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(v + 63)
    return bytes(out).decode("ascii")


# -- JSON --------------------------------------------------------------------

def to_json_obj(G: Graph) -> dict:
    return {"n": G.n, "edges": [[u + 1, v + 1] for u, v in G.edges()]}


def from_json_obj(obj) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u) - 1, int(v) - 1) for u, v in obj.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed JSON graph: {exc}") from None
    return Graph.from_edges(n, edges)


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError):
        raise GraphError(f"not a rational number: {s!r}") from None


_NAMED = re.compile(r"^(K|Kbar|Hhat|C|P)_?(\d+)(?:\^(\d+))?$")


def named_graph(name: str) -> Graph:
    """Resolve ``K3``, ``Kbar_4``, ``C4``, ``P4``, ``Hhat_3``, ``C4^2``."""
    m = _NAMED.match(name.strip())
    if not m:
        raise GraphError(f"unknown graph name {name!r}")
    kind, k, power = m.group(1), int(m.group(2)), m.group(3)
    if power is not None:
        if kind != "C" or k != 4:
            raise GraphError("only C4^l blow-ups are named")
        from .structure import recursive_blowup
        return recursive_blowup(cycle(4), int(power))
    if kind == "K":
        return complete(k)
    if kind == "Kbar":
        return empty(k)
    if kind == "C":
        return cycle(k)
    if kind == "P":
        return path(k)
    from .structure import clique_empty_halfgraph
    return clique_empty_halfgraph(k)


def parse_graph(spec: str) -> Graph:
    """Named graph, inline JSON, path to a JSON/graph6 file, or a graph6 string."""
    s = spec.strip()
    if _NAMED.match(s):
        return named_graph(s)
    if s.startswith("{"):
        try:
            return from_json_obj(json.loads(s))
        except json.JSONDecodeError as exc:
            raise GraphError(f"bad JSON graph: {exc}") from None
    if os.path.exists(s):
        graphs = read_graph_file(s)
        if len(graphs) != 1:
            raise GraphError(f"{s} holds {len(graphs)} graphs, expected one")
        return graphs[0]
    return from_graph6(s)


def read_graph_file(path: str) -> list[Graph]:
    """Graphs from a file: a JSON graph, a JSON list of graphs, or graph6 lines."""
    with open(path) as fh:
        text = fh.read()
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise GraphError(f"bad JSON in {path}: {exc}") from None
        if isinstance(obj, list):
            return [from_json_obj(o) for o in obj]
        return [from_json_obj(obj)]
    return [from_graph6(line) for line in text.splitlines() if line.strip()]
