"""Exact induced embedding counts and densities."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, perm

from .graph import Graph, GraphError, iter_bits


def _search_order(pattern: Graph) -> list[int]:
    return sorted(range(pattern.n), key=lambda v: (-pattern.degree(v), v))


def count_embeddings(pattern: Graph, host: Graph) -> int:
    """Number of injective maps V(pattern) -> V(host) preserving edges and non-edges."""
    k, n = pattern.n, host.n
    if k == 0:
        return 1
    if k > n:
        return 0
    order = _search_order(pattern)
    full = (1 << n) - 1
    hadj = host.adj
    non = [full & ~row & ~(1 << v) for v, row in enumerate(hadj)]
    # for step s: list of (earlier step i, adjacent?) constraints
    cons = [[(i, pattern.has_edge(order[i], order[s])) for i in range(s)] for s in range(k)]
    images = [0] * k

    def extend(s: int, used: int) -> int:
        cand = full & ~used
        for i, adjacent in cons[s]:
            cand &= hadj[images[i]] if adjacent else non[images[i]]
            if not cand:
                return 0
        if s == k - 1:
            return cand.bit_count()
        total = 0
        for h in iter_bits(cand):
            images[s] = h
            total += extend(s + 1, used | (1 << h))
        return total

    return extend(0, 0)


def falling_factorial(n: int, m: int) -> int:
    return perm(n, m) if 0 <= m <= n else 0


def _check_sizes(pattern: Graph, host: Graph) -> None:
    if pattern.n > host.n:
        raise GraphError(f"pattern has {pattern.n} vertices but host only {host.n}")


def tind(pattern: Graph, host: Graph) -> Fraction:
    """Labelled induced density: embeddings over injective maps."""
    _check_sizes(pattern, host)
    return Fraction(count_embeddings(pattern, host), falling_factorial(host.n, pattern.n))


def aut_order(G: Graph) -> int:
    return count_embeddings(G, G)


def induced_copies(pattern: Graph, host: Graph) -> int:
    """Number of vertex subsets of ``host`` inducing a copy of ``pattern``."""
    return count_embeddings(pattern, host) // aut_order(pattern)


def p_density(pattern: Graph, host: Graph) -> Fraction:
    """Fraction of |pattern|-subsets of the host inducing a copy of the pattern."""
    _check_sizes(pattern, host)
    return Fraction(induced_copies(pattern, host), comb(host.n, pattern.n))


def p_from_tind(pattern: Graph, host: Graph) -> Fraction:
    """The same density via |G|!/|Aut(G)| * tind(G, H)."""
    return Fraction(factorial(pattern.n), aut_order(pattern)) * tind(pattern, host)
