import random
import time
from fractions import Fraction
from math import comb, factorial

import pytest

from limitlab.canon import iso_class_graphs
from limitlab.density import p_density
from limitlab.graph import GraphError, complete, cycle, empty, path
from limitlab.harness import estimate_permuton_clique
from limitlab.limits import (
    StepGraphon,
    c4_step_approx,
    constant_graphon,
    half_graphon_step,
    p_graphon,
    permuton_agreement_density,
    phi_c4_anticlique,
    phi_c4_clique,
    refine_halves,
    rescale_subgraphon,
    root_decay,
    tind_graphon,
)
from limitlab.structure import clique_empty_halfgraph, recursive_blowup

from oracles import brute_tind_graphon


def random_graphon(rng, k):
    raw = [rng.randint(1, 5) for _ in range(k)]
    parts = tuple(Fraction(r, sum(raw)) for r in raw)
    vals = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            vals[i][j] = vals[j][i] = Fraction(rng.randint(0, 4), 4)
    return StepGraphon(parts, tuple(map(tuple, vals)))


def test_step_graphon_validation():
    with pytest.raises(GraphError):
        StepGraphon((Fraction(1, 2),), ((Fraction(0),),))
    with pytest.raises(GraphError):
        StepGraphon((Fraction(1, 2), Fraction(1, 2)), ((0, 1), (0, 0)))
    W = random_graphon(random.Random(0), 3)
    assert StepGraphon.from_json(W.to_json()) == W


def test_tind_graphon_examples():
    assert tind_graphon(complete(2), constant_graphon(Fraction(3, 7))) == Fraction(3, 7)
    assert tind_graphon(complete(3), constant_graphon(Fraction(1, 2))) == Fraction(1, 8)


def test_tind_graphon_matches_naive_sum():
    rng = random.Random(5)
    for _ in range(6):
        W = random_graphon(rng, rng.randint(1, 4))
        for G in [G for n in range(4) for G in iso_class_graphs(n)]:
            assert tind_graphon(G, W) == brute_tind_graphon(G, W)


def test_c4_step_level_one():
    W = c4_step_approx(1)
    off = [W.values[i][j] for i in range(4) for j in range(4) if i != j]
    assert len(off) == 12 and off.count(1) == 8
    assert tind_graphon(complete(2), W) == Fraction(5, 8)


def test_c4_step_edge_density_rises_to_two_thirds():
    vals = [tind_graphon(complete(2), c4_step_approx(l)) for l in range(1, 5)]
    assert all(a < b < Fraction(2, 3) for a, b in zip(vals, vals[1:]))
    for l, v in enumerate(vals, 1):
        # diagonal mass 4^-l carries 1/2, everything else is the exact limit edge density
        assert v == Fraction(2, 3) * (1 - Fraction(1, 4 ** l)) + Fraction(1, 2 * 4 ** l)


def test_rescale_examples():
    rng = random.Random(2)
    W = random_graphon(rng, 3)
    assert rescale_subgraphon(W, [1, 1, 1]) == W
    two = StepGraphon((Fraction(1, 3), Fraction(2, 3)), ((Fraction(1, 5), Fraction(1, 2)), (Fraction(1, 2), Fraction(4, 5))))
    assert rescale_subgraphon(two, [0, 1]) == constant_graphon(Fraction(4, 5))
    C = c4_step_approx(1)
    sub = rescale_subgraphon(C, [1, 1, 0, 0])
    direct = Fraction(1, 4) * Fraction(1, 2) * 2 + Fraction(1, 4) * 2 * C.values[0][1]
    assert tind_graphon(complete(2), sub) == direct
    with pytest.raises(GraphError):
        rescale_subgraphon(C, [0, 0, 0, 0])


def test_rescale_with_fractional_weights():
    W = random_graphon(random.Random(9), 3)
    f = [Fraction(1, 2), Fraction(1), Fraction(1, 3)]
    R = rescale_subgraphon(W, f)
    c = sum(w * x for w, x in zip(W.parts, f))
    assert R.parts == tuple(w * x / c for w, x in zip(W.parts, f))


def test_half_graphon_step():
    W = half_graphon_step(1)
    assert W.parts == (Fraction(1, 2),) * 2 and W.values == ((0, 1), (1, 0))
    W4 = half_graphon_step(4)
    assert tind_graphon(clique_empty_halfgraph(2), W4) == 0  # no clique side in the graphon
    H2 = path(4)  # x2 - y2 - x1 - y1 is an order-2 half-graph with independent sides
    assert tind_graphon(H2, W4) > 0
    for k in (1, 2, 3):
        assert tind_graphon(complete(2), half_graphon_step(k)) == Fraction(k + 1, 4 * k)


@pytest.mark.parametrize("make", [lambda: c4_step_approx(1), lambda: half_graphon_step(2),
                                  lambda: random_graphon(random.Random(4), 3)])
def test_refinement_invariance(make):
    W = make()
    R = refine_halves(W)
    for n in range(5):
        for G in iso_class_graphs(n):
            assert tind_graphon(G, R) == tind_graphon(G, W)


def test_p_graphon_distribution_sums_to_one():
    rng = random.Random(11)
    graphons = [random_graphon(rng, 3) for _ in range(3)] + [c4_step_approx(1), c4_step_approx(2)]
    for W in graphons:
        for n in range(4):
            assert sum(p_graphon(G, W) for G in iso_class_graphs(n)) == 1
    W = c4_step_approx(1)
    assert sum(p_graphon(G, W) for G in iso_class_graphs(4)) == 1


def test_phi_values():
    assert phi_c4_clique(0) == phi_c4_clique(1) == 1
    assert phi_c4_clique(2) == Fraction(2, 3)
    assert phi_c4_clique(3) == Fraction(4, 15)
    assert phi_c4_anticlique(1) == 1
    assert phi_c4_anticlique(2) == Fraction(1, 3)
    assert phi_c4_clique(2) + phi_c4_anticlique(2) == 1


def test_anticlique_three_by_hand_and_by_blowups():
    # (1 / (2 * 15)) * (3 * phi(K̄1) phi(K̄2) + 3 * phi(K̄2) phi(K̄1))
    by_hand = Fraction(1, 30) * (3 * Fraction(1, 3) + 3 * Fraction(1, 3))
    assert phi_c4_anticlique(3) == by_hand == Fraction(1, 15)
    seq = [p_density(empty(3), recursive_blowup(cycle(4), l)) for l in range(1, 5)]
    gaps = [abs(x - Fraction(1, 15)) for x in seq]
    assert gaps == sorted(gaps, reverse=True) and gaps[-1] < Fraction(1, 200)


def test_anticlique_below_clique():
    for n in range(13):
        assert phi_c4_anticlique(n) <= phi_c4_clique(n)


def test_recursion_is_fast():
    phi_c4_clique.cache_clear()
    phi_c4_anticlique.cache_clear()
    t = time.perf_counter()
    phi_c4_clique(64)
    phi_c4_anticlique(64)
    assert time.perf_counter() - t < 1.0


def test_root_decay():
    assert root_decay([1, 1, 1]) == [1.0, 1.0, 1.0]
    roots = root_decay([phi_c4_clique(n) for n in range(1, 13)])
    assert all(a > b for a, b in zip(roots[1:], roots[2:]))
    assert roots[-1] < 0.5
    perm = root_decay([permuton_agreement_density(n) for n in range(1, 11)])
    assert all(a > b for a, b in zip(perm, perm[1:]))
    with pytest.raises(GraphError):
        root_decay([0])


def test_permuton_density():
    assert permuton_agreement_density(3) == Fraction(1, 6)
    assert permuton_agreement_density(1) == 1
    assert permuton_agreement_density(4) == Fraction(1, 24)
    mean, se = estimate_permuton_clique(4, 20000, seed=1)
    assert abs(mean - 1 / 24) <= 3 * se


def test_phi_matches_blowup_limits_for_four_vertices():
    # the p-vector of K4 in C4^l moves toward the recursion value
    target = phi_c4_clique(4)
    seq = [p_density(complete(4), recursive_blowup(cycle(4), l)) for l in range(2, 5)]
    gaps = [abs(x - target) for x in seq]
    assert gaps == sorted(gaps, reverse=True)
