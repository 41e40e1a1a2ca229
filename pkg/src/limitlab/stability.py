"""Half-graph and tree witnesses in finite graphs.

Searches are exhaustive depth-first over witness slots with bitmask candidate
propagation.  Slots are filled in a fixed order with candidates tried in
increasing vertex order, so the first witness found is the lexicographically
least one.  A ``budget`` caps the number of search nodes; running out raises
:class:`SearchBudgetExceeded`, which is distinct from a ``None`` (absent) answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .canon import iso_class_graphs
from .density import p_density
from .graph import Graph, GraphError, iter_bits

DEFAULT_SEARCH_BUDGET = 10**7


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class HalfGraphWitness:
    xs: tuple[int, ...]
    ys: tuple[int, ...]
    distinct: bool = True

    @property
    def order(self) -> int:
        return len(self.xs)

    def is_valid(self, G: Graph) -> bool:
        n = self.order
        if len(self.ys) != n or n == 0:
            return False
        if self.distinct and len(set(self.xs + self.ys)) != 2 * n:
            return False
        return all(G.has_edge(self.xs[i], self.ys[j]) == (i <= j)
                   for i in range(n) for j in range(n))

    def to_json(self) -> dict:
        return {"order": self.order, "distinct": self.distinct,
                "xs": [v + 1 for v in self.xs], "ys": [v + 1 for v in self.ys]}


@dataclass(frozen=True)
class TreeWitness:
    height: int
    leaves: dict  # bit string of length height -> vertex (x_sigma)
    internals: dict  # bit string of length < height -> vertex (y_tau)
    distinct: bool = False

    def is_valid(self, G: Graph) -> bool:
        h = self.height
        want_leaves = {"".join(s) for s in product("01", repeat=h)}
        want_int = {"".join(s) for m in range(h) for s in product("01", repeat=m)}
        if set(self.leaves) != want_leaves or set(self.internals) != want_int:
            return False
        if self.distinct:
            allv = list(self.leaves.values()) + list(self.internals.values())
            if len(set(allv)) != len(allv):
                return False
        for sigma, x in self.leaves.items():
            for m in range(h):
                if G.has_edge(x, self.internals[sigma[:m]]) != (sigma[m] == "1"):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "height": self.height,
            "distinct": self.distinct,
            "x": {s: v + 1 for s, v in sorted(self.leaves.items())},
            "y": {(s or "()"): v + 1 for s, v in sorted(self.internals.items(), key=lambda kv: (len(kv[0]), kv[0]))},
        }


class _Budget:
    def __init__(self, limit):
        self.left = limit

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise SearchBudgetExceeded("search budget exhausted")


def find_half_graph(G: Graph, n: int, distinct: bool = True,
                    budget: int = DEFAULT_SEARCH_BUDGET) -> HalfGraphWitness | None:
    """Lexicographically least half-graph of order ``n`` (ordered by xs then ys)."""
    if n < 1:
        raise GraphError("order must be at least 1")
    full = (1 << G.n) - 1
    adj = G.adj
    non = [full & ~row & ~(1 << v) for v, row in enumerate(adj)]
    if not distinct:
        # a vertex is not adjacent to itself, so y_j may coincide with x_i for i > j
        non = [row | (1 << v) for v, row in enumerate(non)]
    tick = _Budget(budget).tick
    xs: list[int] = []

    def y_cands(k: int) -> list[int]:
        # candidates for y_j given x_1..x_k, for every j
        out = []
        for j in range(n):
            c = full
            for i in range(k):
                c &= adj[xs[i]] if i <= j else non[xs[i]]
            out.append(c)
        return out

    def place_ys(cands, j, used, ys):
        if j == n:
            return tuple(ys)
        c = cands[j] & ~used if distinct else cands[j]
        for v in iter_bits(c):
            tick()
            ys.append(v)
            r = place_ys(cands, j + 1, used | (1 << v), ys)
            if r is not None:
                return r
            ys.pop()
        return None

    def place_xs(k, used):
        cands = y_cands(k)
        if any(c & ~used == 0 if distinct else c == 0 for c in cands):
            return None
        if k == n:
            ys = place_ys(cands, 0, used, [])
            return None if ys is None else (tuple(xs), ys)
        for v in range(G.n):
            if distinct and used >> v & 1:
                continue
            tick()
            xs.append(v)
            r = place_xs(k + 1, used | (1 << v) if distinct else used)
            if r is not None:
                return r
            xs.pop()
        return None

    found = place_xs(0, 0)
    if found is None:
        return None
    return HalfGraphWitness(found[0], found[1], distinct)


def max_half_graph_order(G: Graph, distinct: bool = True,
                         budget: int = DEFAULT_SEARCH_BUDGET) -> int:
    n = 0
    while find_half_graph(G, n + 1, distinct, budget) is not None:
        n += 1
    return n


def _tree_nodes(h: int):
    internals = ["".join(s) for m in range(h) for s in product("01", repeat=m)]
    leaves = ["".join(s) for s in product("01", repeat=h)]
    return internals, leaves


def find_tree(G: Graph, h: int, distinct: bool = False,
              budget: int = DEFAULT_SEARCH_BUDGET) -> TreeWitness | None:
    """Lexicographically least tree of height ``h``.

    Internal vertices are filled breadth-first (by length, then lexicographically),
    then the leaves in lexicographic order.
    """
    if h < 1:
        raise GraphError("height must be at least 1")
    internals, leaves = _tree_nodes(h)
    full = (1 << G.n) - 1
    adj = G.adj
    non = [full & ~row & ~(1 << v) for v, row in enumerate(adj)]
    if not distinct:
        non = [row | (1 << v) for v, row in enumerate(non)]
    tick = _Budget(budget).tick
    ys: dict[str, int] = {}

    def leaf_cand(sigma: str) -> int:
        c = full
        for m in range(len(sigma)):
            tau = sigma[:m]
            if tau in ys:
                c &= adj[ys[tau]] if sigma[m] == "1" else non[ys[tau]]
        return c

    def feasible(used: int) -> bool:
        # every leaf keeps a candidate given the internal vertices placed so far
        return all(leaf_cand(s) & ~used for s in leaves)

    def place_leaves(i, used, xs):
        if i == len(leaves):
            return dict(xs)
        c = leaf_cand(leaves[i]) & ~used
        for v in iter_bits(c):
            tick()
            xs[leaves[i]] = v
            r = place_leaves(i + 1, used | (1 << v) if distinct else used, xs)
            if r is not None:
                return r
            del xs[leaves[i]]
        return None

    def place_internal(i, used):
        if not feasible(used):
            return None
        if i == len(internals):
            return place_leaves(0, used, {})
        for v in range(G.n):
            if distinct and used >> v & 1:
                continue
            tick()
            ys[internals[i]] = v
            r = place_internal(i + 1, used | (1 << v) if distinct else used)
            if r is not None:
                return r
            del ys[internals[i]]
        return None

    found = place_internal(0, 0)
    if found is None:
        return None
    return TreeWitness(h, found, dict(ys), distinct)


def max_tree_height(G: Graph, distinct: bool = False,
                    budget: int = DEFAULT_SEARCH_BUDGET) -> int:
    h = 0
    while find_tree(G, h + 1, distinct, budget) is not None:
        h += 1
    return h


def tree_bound_from_stability(n: int) -> int:
    """An n-stable graph has no tree of this height (sufficient, not tight)."""
    if n < 1:
        raise GraphError("argument must be at least 1")
    return 2 ** (n + 2) - 2


def stability_bound_from_tree(h: int) -> int:
    """A graph without trees of height h is stable at this order (sufficient, not tight)."""
    if h < 1:
        raise GraphError("argument must be at least 1")
    return 2 ** (h + 2) - 2


def unstable_patterns(order: int, max_pattern: int, distinct: bool = True) -> list[Graph]:
    """Iso-class representatives on at most ``max_pattern`` vertices containing a half-graph of ``order``."""
    if max_pattern > 7:
        raise GraphError("pattern enumeration is limited to 7 vertices")
    return [M for k in range(2 * order if distinct else order + 1, max_pattern + 1)
            for M in iso_class_graphs(k)
            if find_half_graph(M, order, distinct) is not None]


def sequence_stability_report(graphs: list[Graph], order: int, max_pattern: int,
                              distinct: bool = True) -> list[Fraction]:
    """For each host, the summed density of patterns that contain a half-graph of ``order``."""
    for H in graphs:
        if H.n < max_pattern:
            raise GraphError(f"host on {H.n} vertices is smaller than the pattern bound {max_pattern}")
    patterns = unstable_patterns(order, max_pattern, distinct)
    return [sum((p_density(M, H) for M in patterns), Fraction(0)) for H in graphs]
