import random
from itertools import combinations

import pytest

from limitlab.canon import (
    canonical_form,
    decode,
    enumerate_iso_classes,
    exhaustive_form,
    is_isomorphic,
)
from limitlab.graph import Graph, complement, cycle, relabel
from limitlab.structure import recursive_blowup


def all_labelled(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for k, e in enumerate(pairs) if mask >> k & 1])


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
def test_class_counts(n, count):
    assert len(enumerate_iso_classes(n)) == count


@pytest.mark.parametrize("n", range(0, 6))
def test_refined_and_exhaustive_induce_same_partition(n):
    pairs = {}
    for G in all_labelled(n):
        pairs.setdefault(exhaustive_form(G).code, set()).add(canonical_form(G).code)
    assert all(len(v) == 1 for v in pairs.values())
    assert len({next(iter(v)) for v in pairs.values()}) == len(pairs)
    assert len(pairs) == len(enumerate_iso_classes(n))


@pytest.mark.parametrize("n", [6, 7])
def test_refined_agrees_with_exhaustive_on_random_pairs(n):
    rng = random.Random(n)
    pairs = list(combinations(range(n), 2))
    for _ in range(150):
        G = Graph.from_edges(n, [e for e in pairs if rng.random() < 0.5])
        perm = list(range(n))
        rng.shuffle(perm)
        H = relabel(G, perm) if rng.random() < 0.5 else Graph.from_edges(n, [e for e in pairs if rng.random() < 0.5])
        same_ex = exhaustive_form(G) == exhaustive_form(H)
        assert (canonical_form(G) == canonical_form(H)) == same_ex


def test_canonical_graph_roundtrip():
    for cf in enumerate_iso_classes(5):
        G = decode(cf.n, cf.code)
        assert canonical_form(G) == cf


def test_regular_blowup_is_handled():
    B = recursive_blowup(cycle(4), 2)
    rng = random.Random(3)
    perm = list(range(B.n))
    rng.shuffle(perm)
    assert is_isomorphic(B, relabel(B, perm))
    assert not is_isomorphic(B, complement(B))
