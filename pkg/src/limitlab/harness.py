"""Empirical side: W-random graphs, convergence reports, ε-good extraction,
and the prefix-gluing construction for countable graphs.

Random streams
--------------
``sample_graph`` seeds ``numpy.random.SeedSequence(seed)`` and spawns two
children, each driving a PCG64 generator.  Child 0 supplies one raw 64-bit word
per vertex (vertices in increasing order) for part assignment; child 1 supplies
one word per pair ``(i, j)``, ``i < j``, in lexicographic order for the edges.
Each word is cut to its top 53 bits ``u`` and compared exactly against
``ceil(q * 2**53)`` for the rational threshold ``q``, so no floating point is
involved in any decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .density import p_density
from .graph import Graph, GraphError, fraction_str, iter_bits, to_graph6
from .limits import StepGraphon, p_graphon

_SCALE = 1 << 53


def _threshold(q: Fraction) -> int:
    return -((-q.numerator * _SCALE) // q.denominator)


def _uniform53(ss: np.random.SeedSequence, size: int) -> np.ndarray:
    gen = np.random.PCG64(ss)
    return gen.random_raw(size).astype(np.uint64) >> np.uint64(11)


def _rows_from_matrix(A: np.ndarray) -> list[int]:
    rows = []
    for r in A:
        rows.append(int.from_bytes(np.packbits(r, bitorder="little").tobytes(), "little"))
    return rows


def sample_parts(W: StepGraphon, n: int, seed: int) -> np.ndarray:
    part_ss, _ = np.random.SeedSequence(seed).spawn(2)
    u = _uniform53(part_ss, n)
    cum = np.cumsum([0] + list(W.parts))[1:]
    cuts = np.array([_threshold(Fraction(c)) for c in cum], dtype=np.uint64)
    return np.minimum(np.searchsorted(cuts, u, side="right"), len(W) - 1)


def sample_graph(W: StepGraphon, n: int, seed: int) -> Graph:
    """W-random graph on ``n`` vertices, a pure function of ``(W, n, seed)``."""
    if n < 0:
        raise GraphError("n must be non-negative")
    if n == 0:
        return Graph(0, [])
    parts = sample_parts(W, n, seed)
    _, edge_ss = np.random.SeedSequence(seed).spawn(2)
    iu, ju = np.triu_indices(n, k=1)
    u = _uniform53(edge_ss, len(iu))
    thr = np.array([[_threshold(x) for x in row] for row in W.values], dtype=np.uint64)
    hit = u < thr[parts[iu], parts[ju]]
    A = np.zeros((n, n), dtype=bool)
    A[iu[hit], ju[hit]] = True
    A |= A.T
    return Graph(n, _rows_from_matrix(A))


@dataclass
class SampleReport:
    seeds: tuple[int, ...]
    samples: int
    entries: list[dict] = field(default_factory=list)

    @property
    def non_convergent(self) -> bool:
        return any(e["flagged"] for e in self.entries)

    def to_json(self) -> dict:
        return {"seeds": list(self.seeds), "samples": self.samples,
                "non_convergent": self.non_convergent, "entries": self.entries}

    def to_csv(self) -> str:
        cols = ["size", "pattern", "mean", "stderr", "exact", "z", "flagged"]
        lines = [",".join(cols)]
        for e in self.entries:
            lines.append(",".join(str(e.get(c, "")) for c in cols))
        return "\n".join(lines) + "\n"


def mean_and_stderr(xs: Sequence[float]) -> tuple[float, float]:
    a = np.asarray(xs, dtype=float)
    if len(a) < 2:
        return float(a.mean()), 0.0
    return float(a.mean()), float(a.std(ddof=1) / math.sqrt(len(a)))


def convergence_report(W: StepGraphon, sizes: Sequence[int], patterns: Sequence[Graph],
                       seeds: Sequence[int], sigmas: float = 3.0) -> SampleReport:
    """Mean induced density of each pattern over the seeds, compared to the exact graphon value."""
    for P in patterns:
        if P.n > 5:
            raise GraphError("patterns are limited to 5 vertices")
    seeds = tuple(seeds)
    report = SampleReport(seeds, len(seeds))
    exact = {P: p_graphon(P, W) for P in patterns}
    for n in sizes:
        hosts = [sample_graph(W, n, s) for s in seeds]
        for P in patterns:
            vals = [float(p_density(P, H)) for H in hosts]
            mean, se = mean_and_stderr(vals)
            target = float(exact[P])
            if se > 0:
                z = (mean - target) / se
            else:
                z = 0.0 if mean == target else math.inf
            report.entries.append({
                "size": n, "pattern": to_graph6(P), "mean": mean, "stderr": se,
                "exact": fraction_str(exact[P]), "z": z, "flagged": abs(z) > sigmas,
            })
    return report


def sequence_convergence_report(hosts: Sequence[Graph], patterns: Sequence[Graph],
                                tolerance: Fraction = Fraction(1, 10)) -> dict:
    """Exact densities along a given host sequence; flags patterns whose values on
    the second half of the sequence spread by more than ``tolerance``."""
    out = {"patterns": [], "non_convergent": False}
    for P in patterns:
        vals = [p_density(P, H) for H in hosts]
        tail = vals[len(vals) // 2:]
        spread = max(tail) - min(tail) if tail else Fraction(0)
        flagged = spread > tolerance
        out["non_convergent"] |= flagged
        out["patterns"].append({"pattern": to_graph6(P), "values": [fraction_str(v) for v in vals],
                                "tail_spread": fraction_str(spread), "flagged": flagged})
    return out


def estimate_permuton_clique(n: int, samples: int, seed: int) -> tuple[float, float]:
    """Monte-Carlo estimate of the chance that n uniform points of the unit square
    are ordered the same way by both coordinates."""
    rng = np.random.Generator(np.random.PCG64(seed))
    pts = rng.random((samples, n, 2))
    by_x = np.argsort(pts[:, :, 0], axis=1)
    ys = np.take_along_axis(pts[:, :, 1], by_x, axis=1)
    hits = np.all(np.diff(ys, axis=1) > 0, axis=1).astype(float)
    return mean_and_stderr(hits)


# -- ε-good extraction -------------------------------------------------------

def _internal_density(H: Graph, U: int) -> Fraction:
    k = U.bit_count()
    if k < 2:
        return Fraction(0)
    e = sum((H.adj[v] & U).bit_count() for v in iter_bits(U)) // 2
    return Fraction(e, k * (k - 1) // 2)


def _is_pivot(H: Graph, z: int, A: int, eps: Fraction) -> bool:
    # z is compared against A without itself
    k = (A & ~(1 << z)).bit_count()
    d = (H.adj[z] & A).bit_count()
    return eps * k < d < (1 - eps) * k


def epsilon_good_check(H: Graph, U: Sequence[int], epsilon) -> bool:
    """Every vertex sees at most ε or at least 1-ε of U (itself excluded)."""
    eps = Fraction(epsilon)
    mask = 0
    for v in U:
        if not 0 <= v < H.n:
            raise GraphError(f"vertex {v} out of range")
        mask |= 1 << v
    if not mask:
        raise GraphError("U must be nonempty")
    return not any(_is_pivot(H, z, mask, eps) for z in range(H.n))


@dataclass
class ExtractionResult:
    part: tuple[int, ...]
    internal_density: Fraction
    homogeneity: Fraction
    split_trace: list[tuple[int, str]]
    epsilon: Fraction
    splits: int
    depth: int

    def to_json(self) -> dict:
        return {
            "part": [v + 1 for v in self.part],
            "size": len(self.part),
            "internal_density": fraction_str(self.internal_density),
            "homogeneity": fraction_str(self.homogeneity),
            "split_trace": [{"pivot": z + 1, "side": side} for z, side in self.split_trace],
            "epsilon": fraction_str(self.epsilon),
            "splits": self.splits,
            "depth": self.depth,
        }


def split(H: Graph, A: int, z: int, side: str) -> int:
    """The ``side`` ("in" or "out") of A cut by pivot z; "in" is N(z) plus z itself."""
    closed = H.adj[z] | (1 << z)
    return A & closed if side == "in" else A & ~closed


def replay_trace(H: Graph, trace: Sequence[tuple[int, str]]) -> tuple[int, ...]:
    A = (1 << H.n) - 1
    for z, side in trace:
        A = split(H, A, z, side)
    return tuple(iter_bits(A))


def _splits_nontrivially(H: Graph, z: int, A: int) -> bool:
    k = (A & ~(1 << z)).bit_count()
    return 0 < (H.adj[z] & A).bit_count() < k


def extract_almost_uniform(H: Graph, epsilon, refine: bool = True) -> ExtractionResult:
    """Split by the least pivot until every piece is ε-good; return the most homogeneous piece.

    With ``refine`` an ε-good piece that is neither a clique nor an independent
    set keeps splitting by the least vertex seeing some but not all of it, so
    e.g. a union of many small cliques (ε-good as a whole) is still taken apart.
    Ties go to the larger piece, then to the lexicographically smaller vertex list.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < Fraction(1, 2):
        raise GraphError("epsilon must lie strictly between 0 and 1/2")
    if H.n == 0:
        raise GraphError("host graph is empty")
    leaves = []
    splits = 0
    depth = 0
    stack = [((1 << H.n) - 1, [])]
    while stack:
        A, trace = stack.pop()
        depth = max(depth, len(trace))
        z = next((z for z in range(H.n) if _is_pivot(H, z, A, eps)), None)
        if z is None and refine and _internal_density(H, A) not in (0, 1):
            z = next(z for z in range(H.n) if _splits_nontrivially(H, z, A))
        if z is None:
            leaves.append((A, trace))
            continue
        splits += 1
        stack.append((split(H, A, z, "out"), trace + [(z, "out")]))
        stack.append((split(H, A, z, "in"), trace + [(z, "in")]))

    def key(leaf):
        A, _ = leaf
        d = _internal_density(H, A)
        return (-max(d, 1 - d), -A.bit_count(), tuple(iter_bits(A)))

    A, trace = min(leaves, key=key)
    d = _internal_density(H, A)
    return ExtractionResult(tuple(iter_bits(A)), d, max(d, 1 - d), trace, eps, splits, depth)


# -- countable graphs and prefix gluing --------------------------------------

@dataclass(frozen=True)
class PrefixGraphOracle:
    """A graph on the positive integers given by an adjacency predicate.

    ``clique_of`` is set for unions of cliques: it names the clique of a vertex
    (``None`` for isolated vertices), which makes prefix densities cheap.
    """

    name: str
    adjacent: Callable[[int, int], bool]
    clique_of: Callable[[int], object] | None = None

    def prefix(self, n: int) -> Graph:
        """``G`` restricted to ``[n]``; vertex ``v`` becomes index ``v - 1``."""
        return Graph.from_predicate(n, lambda a, b: self.adjacent(a + 1, b + 1))

    def edge_density(self, n: int) -> Fraction:
        if n < 2:
            return Fraction(0)
        if self.clique_of is None:
            return self.prefix(n).edge_density()
        sizes: dict = {}
        for v in range(1, n + 1):
            c = self.clique_of(v)
            if c is not None:
                sizes[c] = sizes.get(c, 0) + 1
        return Fraction(sum(s * (s - 1) // 2 for s in sizes.values()), n * (n - 1) // 2)


def log_sqrt_block(v: int) -> int:
    """floor(sqrt(log2 v)) for a positive integer v, in exact integer arithmetic."""
    if v < 1:
        raise GraphError("vertices are positive integers")
    k = 0
    while (1 << ((k + 1) ** 2)) <= v:
        k += 1
    return k


def _in_even_block(v: int) -> bool:
    return log_sqrt_block(v) % 2 == 0


def block_ends(limit: int) -> list[int]:
    """Last vertex of each block of equal floor(sqrt(log2 v)) up to ``limit``."""
    out = []
    k = 1
    while (1 << (k * k)) - 1 <= limit:
        out.append((1 << (k * k)) - 1)
        k += 1
    return out


_ORACLES = {
    "union-of-log-cliques": PrefixGraphOracle(
        "union-of-log-cliques",
        lambda v, w: v != w and _in_even_block(v) and _in_even_block(w),
        lambda v: 0 if _in_even_block(v) else None,
    ),
}


def countable_example_oracle(name: str) -> PrefixGraphOracle:
    try:
        return _ORACLES[name]
    except KeyError:
        raise GraphError(f"unknown countable graph {name!r}; known: {sorted(_ORACLES)}") from None


@dataclass
class GlueResult:
    m: list[int]
    ell: list[int]
    U: frozenset
    checks: list[dict]

    @property
    def inequality_holds(self) -> bool:
        return all(c["symdiff"] <= c["bound"] for c in self.checks)

    @property
    def upper_density(self) -> Fraction:
        return max(c["density"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "m": self.m, "ell": self.ell, "size": len(self.U),
            "inequality_holds": self.inequality_holds,
            "upper_density": fraction_str(self.upper_density),
            "checks": [{**c, "density": fraction_str(c["density"])} for c in self.checks],
        }


def glue_prefix_sets(checkpoints: Sequence[int], sets: Sequence) -> GlueResult:
    """Glue prefix sets ``U_l ⊆ [n_l]`` (1-based) along a doubling subsequence.

    ``m_0 = n_0`` and ``m_{t+1}`` is the least checkpoint at least ``2**t * m_t``;
    the glued set takes ``U_{l_t}`` on ``(m_{t-1}, m_t]``.
    """
    ns = list(checkpoints)
    if not ns or len(sets) != len(ns):
        raise GraphError("need one set per checkpoint and at least one checkpoint")
    if ns[0] < 1 or any(b <= a for a, b in zip(ns, ns[1:])):
        raise GraphError("checkpoints must be positive and strictly increasing")
    Us = [frozenset(S) for S in sets]
    for n, S in zip(ns, Us):
        if S and (min(S) < 1 or max(S) > n):
            raise GraphError(f"set for checkpoint {n} is not inside [{n}]")
    m, ell = [ns[0]], [0]
    t = 0
    while True:
        target = (1 << t) * m[t]
        nxt = next((i for i in range(ell[t], len(ns)) if ns[i] >= target), None)
        if nxt is None:
            break
        m.append(ns[nxt])
        ell.append(nxt)
        t += 1
    U: set[int] = set()
    checks = []
    prev = 0
    for t, (mt, lt) in enumerate(zip(m, ell)):
        U.update(v for v in Us[lt] if prev < v <= mt)
        prefix = {v for v in U if v <= mt}
        checks.append({
            "t": t, "m": mt, "ell": lt, "symdiff": len(prefix ^ Us[lt]), "bound": prev,
            "density": Fraction(len(prefix), mt),
        })
        prev = mt
    return GlueResult(m, ell, frozenset(U), checks)
