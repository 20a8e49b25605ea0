import random

import pytest

from bei.canon import CanonSizeError, canonical_form, certificate, relabel
from bei.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    encode_graph6,
    from_edges,
    path_graph,
)
from bei.pipeline import connected_certificates
from conftest import random_connected_graph


def test_isomorphic_paths_equal():
    a = path_graph(3)
    b = from_edges(3, [(0, 2), (2, 1)])
    assert certificate(a) == certificate(b)


def test_distinct_classes_differ():
    assert certificate(complete_graph(3)) != certificate(path_graph(3))


def test_certificate_is_graph6_of_canonical_form():
    rng = random.Random(11)
    for _ in range(200):
        g = random_connected_graph(rng, rng.randint(1, 8))
        assert certificate(g) == encode_graph6(canonical_form(g))


def test_permutation_invariance():
    # 1000 random (graph, permutation) pairs per order up to 8
    rng = random.Random(23)
    for n in range(2, 9):
        for _ in range(1000):
            g = random_connected_graph(rng, n)
            perm = list(range(n))
            rng.shuffle(perm)
            assert certificate(g) == certificate(relabel(g, perm))


def test_pairwise_distinct_at_small_orders():
    for n in range(1, 7):
        certs = connected_certificates(n)
        assert len(set(certs)) == len(certs)


def test_symmetric_graphs():
    for g in (
        complete_graph(9),
        cycle_graph(9),
        Graph(7, [0] * 7),
        from_edges(6, [(0, 1), (2, 3), (4, 5)]),
        from_edges(9, [(i, j) for i in range(9) for j in range(i + 1, 9) if i % 3 != j % 3]),
    ):
        perm = list(range(g.n))
        random.Random(3).shuffle(perm)
        assert certificate(g) == certificate(relabel(g, perm))


def test_size_limit():
    big = path_graph(12)
    with pytest.raises(CanonSizeError):
        certificate(big)
    # explicit override allows exact work on somewhat larger graphs
    assert certificate(big, size_limit=16) == certificate(
        relabel(big, list(reversed(range(12)))), size_limit=16
    )
