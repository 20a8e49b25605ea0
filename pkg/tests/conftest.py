import random

import pytest

from bei.graphs import Graph, from_edges, is_connected
from bei.pipeline import connected_certificates
from bei.graphs import decode_graph6


@pytest.fixture(scope="session")
def connected_upto_6():
    """All connected graphs per class for n = 1..6, keyed by n."""
    return {
        n: [decode_graph6(c) for c in connected_certificates(n)] for n in range(1, 7)
    }


def random_connected_graph(rng: random.Random, n: int) -> Graph:
    while True:
        p = rng.uniform(0.15, 0.75)
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
        ]
        g = from_edges(n, edges)
        if is_connected(g):
            return g
