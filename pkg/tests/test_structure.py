from itertools import combinations, permutations, product

import pytest

from limitlab.canon import is_isomorphic
from limitlab.density import count_embeddings, tind
from limitlab.graph import (
    BudgetExceeded,
    Graph,
    GraphError,
    complete,
    cycle,
    empty,
    induced,
    join,
    path,
)
from limitlab.stability import max_half_graph_order
from limitlab.structure import (
    C4Embedding,
    NotInClass,
    blowup_index,
    blowup_label,
    c4_adjacent,
    clique_empty_halfgraph,
    embed_into_c4,
    evaluate_tree,
    is_in_CC,
    modular_decomposition,
    recursive_blowup,
    substitute,
    verify_embedding,
)

K0 = Graph(0, [])


def test_substitute_examples():
    G = substitute(complete(2), 0, empty(2))
    C = substitute(G, 0, empty(2))
    assert is_isomorphic(C, cycle(4))
    for G in (path(4), cycle(5)):
        for v in range(G.n):
            assert is_isomorphic(substitute(G, v, complete(1)), G)
            assert substitute(G, v, K0) == induced(G, [u for u in range(G.n) if u != v])
    with pytest.raises(GraphError):
        substitute(path(3), 3, complete(1))


def test_substitute_creates_module():
    G, F = path(4), cycle(4)
    R = substitute(G, 1, F)
    assert R.n == G.n + F.n - 1
    new = range(3, 7)
    outside = [u for u in range(3)]
    for u in outside:
        seen = {R.has_edge(u, w) for w in new}
        assert len(seen) == 1
    assert induced(R, new) == F


def test_blowup_examples():
    C4 = cycle(4)
    assert recursive_blowup(C4, 0) == complete(1)
    assert recursive_blowup(C4, 1) == C4
    B = recursive_blowup(C4, 2)
    assert (B.n, B.edge_count()) == (16, 80)


def test_blowup_matches_first_difference_rule():
    for G in (cycle(4), path(3)):
        B = recursive_blowup(G, 3)
        labels = list(product(range(G.n), repeat=3))
        for i, j in combinations(range(B.n), 2):
            s, t = labels[i], labels[j]
            k = next(k for k in range(3) if s[k] != t[k])
            assert B.has_edge(i, j) == G.has_edge(s[k], t[k])


def test_blowup_budget():
    with pytest.raises(BudgetExceeded):
        recursive_blowup(cycle(4), 10, budget=10**5)


def test_blowup_nests_by_padding():
    C4 = cycle(4)
    for l in (0, 1, 2):
        small, big = recursive_blowup(C4, l), recursive_blowup(C4, l + 1)
        idx = [blowup_index(blowup_label(i, l) + "1") for i in range(small.n)]
        assert induced(big, idx) == small


def test_clique_empty_halfgraph():
    assert clique_empty_halfgraph(1) == complete(2)
    H2 = clique_empty_halfgraph(2)
    assert H2.n == 4 and H2.edge_count() == 4
    ref = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 3)])  # x1=0, x2=1, y1=2, y2=3
    assert is_isomorphic(H2, ref)
    for n in range(1, 6):
        H = clique_empty_halfgraph(n)
        assert H.n == 2 * n and H.edge_count() == n * (n - 1) // 2 + n * (n + 1) // 2
    assert max_half_graph_order(clique_empty_halfgraph(3)) == 3


def test_decomposition_examples():
    t = modular_decomposition(cycle(4))
    assert t.kind == "series" and not t.prime_nodes()
    t = modular_decomposition(path(4))
    assert t.kind == "prime" and t.quotient.n == 4
    assert modular_decomposition(complete(1)).kind == "leaf"


def test_tree_evaluates_to_graph(small_graphs):
    for G in small_graphs:
        assert evaluate_tree(modular_decomposition(G), G.n) == G


def test_is_in_cc_examples(small_graphs):
    assert is_in_CC(cycle(4))[0]
    assert not is_in_CC(path(4))[0]
    assert all(is_in_CC(G)[0] for G in small_graphs if G.n <= 3)


def test_p4_not_in_c4_cubed():
    assert count_embeddings(path(4), recursive_blowup(cycle(4), 3)) == 0


def test_cc_equals_p4_free(small_graphs):
    P4 = path(4)
    for G in small_graphs:
        member = is_in_CC(G)[0]
        free = G.n < 4 or tind(P4, G) == 0
        assert member == free


def test_cc_closed_under_induced_subgraphs(small_graphs):
    for G in small_graphs:
        if is_in_CC(G)[0]:
            for k in range(G.n):
                for S in combinations(range(G.n), k):
                    assert is_in_CC(induced(G, S))[0]


def test_cc_closed_under_substitution(small_graphs):
    members = [G for G in small_graphs if G.n <= 4 and is_in_CC(G)[0]]
    for G in members:
        for F in members:
            for v in range(G.n):
                assert is_in_CC(substitute(G, v, F))[0]


def test_embedding_examples():
    assert embed_into_c4(complete(1)) == C4Embedding(0, ("",))
    e = embed_into_c4(cycle(4))
    assert e.height == 1 and sorted(e.labels) == ["1", "2", "3", "4"]
    H3 = clique_empty_halfgraph(3)
    e = embed_into_c4(H3)
    assert e.height <= 5 and verify_embedding(H3, e)
    with pytest.raises(NotInClass):
        embed_into_c4(path(4))


def test_verify_embedding_examples():
    C4 = cycle(4)
    assert verify_embedding(C4, C4Embedding(1, ("1", "2", "3", "4")))
    assert not verify_embedding(C4, C4Embedding(1, ("1", "3", "2", "4")))
    assert not verify_embedding(C4, C4Embedding(1, ("1", "1", "2", "3")))


def test_p4_has_no_small_labelling():
    P4 = path(4)
    for h in (1, 2, 3):
        words = ["".join(w) for w in product("1234", repeat=h)]

        def extend(labels):
            if len(labels) == 4:
                return verify_embedding(P4, C4Embedding(h, tuple(labels)))
            v = len(labels)
            return any(extend(labels + [w]) for w in words
                       if w not in labels
                       and all(c4_adjacent(w, labels[u]) == P4.has_edge(u, v) for u in range(v)))

        assert not extend([])


def test_embeddings_land_in_blowup(small_graphs):
    for G in small_graphs:
        if not is_in_CC(G)[0]:
            continue
        e = embed_into_c4(G)
        assert verify_embedding(G, e)
        assert e.height <= max(1, G.n - 1)
        if G.n:
            B = recursive_blowup(cycle(4), e.height)
            img = [blowup_index(s) for s in e.labels]
            order = sorted(range(G.n), key=lambda v: img[v])
            assert is_isomorphic(induced(B, img), induced(G, order))


def test_long_chains_embed():
    G = join(*[empty(2)] * 4)
    e = embed_into_c4(G)
    assert verify_embedding(G, e)


def test_c4_adjacency_rule():
    assert c4_adjacent("12", "14") is False
    assert c4_adjacent("12", "13") is True
    assert c4_adjacent("12", "23") is True
    assert c4_adjacent("41", "14") is True
    assert c4_adjacent("11", "11") is False
