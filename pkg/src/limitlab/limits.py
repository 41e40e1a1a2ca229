"""Step graphons evaluated exactly, and the exact limit values of the C4 blow-up."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, lcm

from .density import aut_order
from .graph import BudgetExceeded, Graph, GraphError, fraction_str, parse_fraction, vertex_budget


@dataclass(frozen=True)
class StepGraphon:
    """Finitely many parts of positive rational weight with a symmetric value matrix."""

    parts: tuple[Fraction, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        parts = tuple(Fraction(w) for w in self.parts)
        values = tuple(tuple(Fraction(x) for x in row) for row in self.values)
        k = len(parts)
        if k == 0:
            raise GraphError("a step graphon needs at least one part")
        if any(w <= 0 for w in parts) or sum(parts) != 1:
            raise GraphError("part weights must be positive and sum to 1")
        if len(values) != k or any(len(r) != k for r in values):
            raise GraphError("value matrix must be k x k")
        for i in range(k):
            for j in range(k):
                if not 0 <= values[i][j] <= 1 or values[i][j] != values[j][i]:
                    raise GraphError(f"value [{i}][{j}] must be in [0,1] and symmetric")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.parts)

    def to_json(self) -> dict:
        return {"parts": [fraction_str(w) for w in self.parts],
                "values": [[fraction_str(x) for x in row] for row in self.values]}

    @classmethod
    def from_json(cls, obj) -> StepGraphon:
        try:
            return cls(tuple(parse_fraction(w) for w in obj["parts"]),
                       tuple(tuple(parse_fraction(x) for x in row) for row in obj["values"]))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed step graphon: {exc}") from None


def constant_graphon(p) -> StepGraphon:
    return StepGraphon((Fraction(1),), ((Fraction(p),),))


def tind_graphon(G: Graph, W: StepGraphon) -> Fraction:
    """Labelled induced density of ``G`` in ``W``, summed over part assignments.

    Arithmetic runs on integers scaled by common denominators; assignments
    whose partial product vanishes are pruned.
    """
    k = G.n
    if k == 0:
        return Fraction(1)
    dw = lcm(*(w.denominator for w in W.parts))
    dv = lcm(*(x.denominator for row in W.values for x in row))
    wts = [int(w * dw) for w in W.parts]
    on = [[int(x * dv) for x in row] for row in W.values]
    off = [[dv - x for x in row] for row in on]
    m = len(wts)
    edge = [[G.has_edge(i, s) for i in range(s)] for s in range(k)]
    x = [0] * k

    def go(s: int, acc: int) -> int:
        if s == k:
            return acc
        total = 0
        es = edge[s]
        for a in range(m):
            f = acc * wts[a]
            for i in range(s):
                f *= on[x[i]][a] if es[i] else off[x[i]][a]
                if not f:
                    break
            if f:
                x[s] = a
                total += go(s + 1, f)
        return total

    return Fraction(go(0, 1), dw ** k * dv ** (k * (k - 1) // 2))


def p_graphon(G: Graph, W: StepGraphon) -> Fraction:
    """Unlabelled induced density: |G|!/|Aut(G)| * tind."""
    return Fraction(factorial(G.n), aut_order(G)) * tind_graphon(G, W)


def refine_halves(W: StepGraphon) -> StepGraphon:
    """Split every part into two equal halves carrying the same values."""
    idx = [i for i in range(len(W)) for _ in range(2)]
    return StepGraphon(tuple(W.parts[i] / 2 for i in idx),
                       tuple(tuple(W.values[i][j] for j in idx) for i in idx))


def rescale_subgraphon(W: StepGraphon, f) -> StepGraphon:
    """Reweight part i by f_i / c where c = sum_i w_i f_i; parts with f_i = 0 are dropped."""
    f = [Fraction(x) for x in f]
    if len(f) != len(W):
        raise GraphError("weight function needs one value per part")
    if any(not 0 <= x <= 1 for x in f):
        raise GraphError("weight function values must lie in [0,1]")
    c = sum(w * x for w, x in zip(W.parts, f))
    if c == 0:
        raise GraphError("weight function has zero total mass")
    keep = [i for i, x in enumerate(f) if x]
    return StepGraphon(tuple(W.parts[i] * f[i] / c for i in keep),
                       tuple(tuple(W.values[i][j] for j in keep) for i in keep))


def _c4_first_diff_adjacent(s, t) -> bool:
    for a, b in zip(s, t):
        if a != b:
            return (a - b) % 4 in (1, 3)
    return False


DIAGONAL_PLACEHOLDER = Fraction(1, 2)


def c4_step_approx(height: int, diagonal=DIAGONAL_PLACEHOLDER, budget: int | None = None) -> StepGraphon:
    """4**height equal parts indexed by [4]**height; diagonal blocks get ``diagonal``."""
    if height < 1:
        raise GraphError("height must be at least 1")
    budget = vertex_budget() if budget is None else budget
    if 4 ** height > budget:
        raise BudgetExceeded(f"4^{height} parts exceed the budget {budget}")
    labels = list(product(range(4), repeat=height))
    one, zero, diag = Fraction(1), Fraction(0), Fraction(diagonal)
    values = tuple(
        tuple(diag if s == t else (one if _c4_first_diff_adjacent(s, t) else zero) for t in labels)
        for s in labels)
    w = Fraction(1, 4 ** height)
    return StepGraphon(tuple(w for _ in labels), values)


def half_graphon_step(k: int) -> StepGraphon:
    """Parts x_1..x_k then y_1..y_k, weight 1/(2k) each; x_i ~ y_j iff i <= j."""
    if k < 1:
        raise GraphError("k must be at least 1")
    n = 2 * k
    one, zero = Fraction(1), Fraction(0)

    def val(a, b):
        if a > b:
            a, b = b, a
        return one if a < k <= b and a <= b - k else zero

    return StepGraphon(tuple(Fraction(1, n) for _ in range(n)),
                       tuple(tuple(val(a, b) for b in range(n)) for a in range(n)))


@lru_cache(maxsize=None)
def phi_c4_clique(n: int) -> Fraction:
    """Density of K_n in the limit of the recursive C4 blow-ups."""
    if n < 0:
        raise GraphError("n must be non-negative")
    if n <= 1:
        return Fraction(1)
    s = sum(comb(n, t) * phi_c4_clique(t) * phi_c4_clique(n - t) for t in range(1, n))
    return s / (4 ** (n - 1) - 1)


@lru_cache(maxsize=None)
def phi_c4_anticlique(n: int) -> Fraction:
    """Density of the empty graph on n vertices in the same limit."""
    if n < 0:
        raise GraphError("n must be non-negative")
    if n <= 1:
        return Fraction(1)
    s = sum(comb(n, t) * phi_c4_anticlique(t) * phi_c4_anticlique(n - t) for t in range(1, n))
    return s / (2 * (4 ** (n - 1) - 1))


def root_decay(values, start: int = 1) -> list[float]:
    """``values[i] ** (1 / (start + i))`` as floats, computed through logarithms."""
    out = []
    for i, v in enumerate(values):
        v = Fraction(v)
        if v <= 0:
            raise GraphError("root_decay needs positive values")
        n = start + i
        out.append(math.exp((math.log(v.numerator) - math.log(v.denominator)) / n))
    return out


def permuton_agreement_density(n: int) -> Fraction:
    """Clique (equally anticlique) density for the agreement graphon of the uniform permuton."""
    if n < 0:
        raise GraphError("n must be non-negative")
    return Fraction(1, factorial(n))
