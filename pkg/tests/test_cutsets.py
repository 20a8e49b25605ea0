import random

import pytest

from bei.canon import relabel
from bei.cutsets import (
    LruCache,
    accessibility,
    cutset_candidates,
    cutset_partition,
    cutsets,
    decompose,
    is_accessible,
    is_cutset,
    is_cutset_definitional,
    is_indecomposable,
    is_strongly_unmixed,
    is_unmixed,
    iter_cutsets,
    strongly_unmixed_literal,
    unmixedness,
)
from bei.families import star_of_cliques
from bei.graphs import (
    complete_graph,
    components,
    cutpoints,
    cycle_graph,
    from_edges,
    mask_of,
    path_graph,
)
from conftest import random_connected_graph


def test_is_cutset_examples():
    p3 = path_graph(3)
    assert is_cutset(p3, 0b010)  # middle vertex
    assert not is_cutset(p3, 0b001)
    for n in (3, 4, 5):
        k = complete_graph(n)
        assert all(not is_cutset(k, t) for t in range(1, 1 << n))


def test_cutset_oracle_equivalence(connected_upto_6):
    # the two-components criterion agrees with c(T minus v) < c(T) everywhere
    for n, graphs in connected_upto_6.items():
        for g in graphs:
            for t in range(1 << n):
                fast = cutset_partition(g, t) is not None
                assert fast == is_cutset_definitional(g, t), (g, bin(t))


def test_cutsets_families():
    assert [t for t, _ in cutsets(path_graph(3)).sets] == [0, 0b010]
    assert [t for t, _ in cutsets(cycle_graph(4)).sets] == [0, 0b0101, 0b1010]
    s7 = star_of_cliques(7)
    assert [t for t, _ in cutsets(s7).sets] == [0, mask_of([4, 5, 6])]
    fam = cutsets(complete_graph(5))
    assert len(fam) == 1 and 0 in fam


def test_candidates_exclude_simplicial():
    tri_whisker = from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    # whisker tip and the two triangle tips are simplicial
    assert cutset_candidates(tri_whisker) == 0b0100


def test_unmixedness():
    assert is_unmixed(star_of_cliques(7))
    assert not is_unmixed(cycle_graph(4))
    rep = unmixedness(cycle_graph(4))
    assert rep.witness == 0b0101 and len(rep.witness_components) == 2
    assert is_unmixed(complete_graph(6))


def test_accessibility():
    s7 = star_of_cliques(7)
    rep = accessibility(s7)
    assert not rep.ok and rep.failure == "stuck-cutset"
    assert rep.witness == mask_of([4, 5, 6])
    k4_whisker = from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)])
    assert is_accessible(k4_whisker)
    assert not accessibility(cycle_graph(4)).ok
    assert accessibility(cycle_graph(4)).failure == "not-unmixed"


def test_accessible_implies_unmixed(connected_upto_6):
    for graphs in connected_upto_6.values():
        for g in graphs:
            if is_accessible(g):
                assert is_unmixed(g)


def test_union_cutset_rule(connected_upto_6):
    # a cutset through a two-component cutpoint splits into joinable halves
    for graphs in connected_upto_6.values():
        for g in graphs:
            fam = cutsets(g)
            cuts = set(fam.masks)
            for t, _ in fam.sets:
                for v in range(g.n):
                    if not t >> v & 1 or not cutpoints(g) >> v & 1:
                        continue
                    comps = components(g, 1 << v)
                    if len(comps) != 2:
                        continue
                    h1, h2 = comps
                    for t1 in _submasks(t & h1):
                        if t1 not in cuts:
                            continue
                        for t2 in _submasks(t & h2):
                            if t2 in cuts:
                                assert (t1 | t2) in cuts


def _submasks(mask):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def test_decompose_examples():
    tri_whisker = from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    tree = decompose(tri_whisker)
    assert len(tree.pieces) == 2
    assert tree.glue == ((0, 1, 2),)
    assert len(decompose(complete_graph(4)).pieces) == 1
    assert len(decompose(star_of_cliques(7)).pieces) == 1
    assert not is_indecomposable(path_graph(3))


def test_decompose_reassembles(connected_upto_6):
    for graphs in connected_upto_6.values():
        for g in graphs:
            tree = decompose(g)
            edges = set()
            seen_vertices = set()
            for sub, labels in tree.pieces:
                seen_vertices.update(labels)
                for u, v in sub.edges():
                    e = (min(labels[u], labels[v]), max(labels[u], labels[v]))
                    assert e not in edges  # pieces are edge-disjoint
                    edges.add(e)
            assert edges == set(g.edges())
            assert seen_vertices == set(range(g.n))
            for left, right, v in tree.glue:
                assert v in tree.pieces[left][1] and v in tree.pieces[right][1]
                for idx in (left, right):
                    sub, labels = tree.pieces[idx]
                    local = labels.index(v)
                    assert sub.is_simplicial(local)  # shared vertex is free


def test_strong_unmixedness_examples():
    for n in range(1, 6):
        assert is_strongly_unmixed(complete_graph(n))
    assert not is_strongly_unmixed(star_of_cliques(7))
    assert is_strongly_unmixed(path_graph(4))
    assert not is_strongly_unmixed(cycle_graph(4))


def test_strong_unmixedness_matches_literal_recursion(connected_upto_6):
    for n in range(1, 7):
        for g in connected_upto_6[n]:
            assert is_strongly_unmixed(g) == strongly_unmixed_literal(g), g


def test_strong_unmixedness_on_disconnected():
    two_triangles = from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert is_strongly_unmixed(two_triangles)
    mixed = from_edges(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (6, 3)])
    assert not is_strongly_unmixed(mixed)  # one component is a square


def test_memoization_soundness():
    rng = random.Random(31)
    for _ in range(40):
        g = random_connected_graph(rng, rng.randint(2, 7))
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert is_strongly_unmixed(g) == is_strongly_unmixed(relabel(g, perm))


def test_decomposition_respects_properties():
    # accessibility and strong unmixedness hold iff they hold on every piece
    from bei.graphs import decode_graph6
    from bei.pipeline import connected_certificates

    for n in range(2, 8):
        for cert in connected_certificates(n):
            g = decode_graph6(cert)
            tree = decompose(g)
            if len(tree.pieces) == 1:
                continue
            pieces = [p for p, _ in tree.pieces]
            assert is_accessible(g) == all(is_accessible(p) for p in pieces)
            assert is_strongly_unmixed(g) == all(is_strongly_unmixed(p) for p in pieces)


def test_lru_cache():
    cache = LruCache(2)
    cache.put("a", 1)
    cache.put("b", 2)
    assert cache.get("a") == 1
    cache.put("c", 3)  # evicts b (least recently used)
    assert cache.get("b") is None
    assert cache.get("a") == 1 and cache.get("c") == 3


def test_iter_cutsets_order(connected_upto_6):
    for g in connected_upto_6[5]:
        sizes = [t.bit_count() for t, _ in iter_cutsets(g)]
        assert sizes == sorted(sizes)
        for t, parts in iter_cutsets(g):
            assert components(g, t) == list(parts)
