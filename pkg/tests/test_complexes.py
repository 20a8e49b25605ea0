import random
from math import comb

import pytest

from bei.canon import relabel
from bei.complexes import (
    admissible_path_generators,
    f_vector,
    facets_from_cutsets,
    format_facets,
    format_mask,
    format_monomials,
    h_vector,
    initial_complex,
    is_s2,
    link,
    minimal_nonfaces,
    multiplicity,
    parse_mask,
    s2_report,
)
from bei.cutsets import cutsets, is_accessible, is_unmixed
from bei.families import star_of_cliques
from bei.graphs import Graph, complete_graph, cycle_graph, from_edges, path_graph
from conftest import random_connected_graph

PATH_FACETS = {"x1 y1 x2 x3", "y1 x2 y2 x3", "y1 y2 x3 y3", "x1 y1 x3 y3"}
RELABELED_FACETS = {"x1 y1 x2 x3", "y1 x2 y2 x3", "y1 y2 x3 y3", "x1 y1 x2 y2"}


def test_worked_example_first_labeling():
    g = path_graph(3)
    c = initial_complex(g)
    assert set(format_facets(c)) == PATH_FACETS
    assert set(format_monomials(admissible_path_generators(g))) == {"x1 y2", "x2 y3"}
    assert minimal_nonfaces(c) == admissible_path_generators(g)


def test_worked_example_second_labeling():
    g = from_edges(3, [(0, 2), (1, 2)])
    c = initial_complex(g)
    assert set(format_facets(c)) == RELABELED_FACETS
    gens = admissible_path_generators(g)
    assert set(format_monomials(gens)) == {"x1 y3", "x2 y3", "x1 y2 x3"}
    assert minimal_nonfaces(c) == gens


def test_facet_size_formula(connected_upto_6):
    for n, graphs in connected_upto_6.items():
        for g in graphs:
            fam = cutsets(g)
            c = facets_from_cutsets(g, fam)
            # purity in size n+1 is exactly unmixedness
            pure = all(f.bit_count() == n + 1 for f in c.facets)
            assert pure == is_unmixed(g)


def test_k2_complex():
    c = initial_complex(complete_graph(2))
    assert set(format_facets(c)) == {"x1 y1 x2", "y1 x2 y2"}
    f = f_vector(c)
    assert f == (1, 4, 5, 2)
    assert h_vector(f, 3) == (1, 1, 0, 0)
    assert multiplicity(c) == 2
    assert format_monomials(minimal_nonfaces(c)) == ["x1 y2"]


def test_single_vertex_complex():
    c = initial_complex(Graph(1, [0]))
    assert f_vector(c) == (1, 2, 1)
    assert h_vector((1, 2, 1), 2) == (1, 0, 0)
    assert multiplicity(c) == 1
    assert minimal_nonfaces(c).monomials == ()


def test_complete_graph_multiplicity():
    for n in range(2, 7):
        assert multiplicity(initial_complex(complete_graph(n))) == n


def test_h_vector_errors():
    with pytest.raises(ValueError):
        h_vector((1, 2), 2)


def test_generators_triangle():
    gens = admissible_path_generators(complete_graph(3))
    assert set(format_monomials(gens)) == {"x1 y2", "x1 y3", "x2 y3"}


def test_duality_small(connected_upto_6):
    for n in range(1, 6):
        for g in connected_upto_6[n]:
            assert minimal_nonfaces(initial_complex(g)) == admissible_path_generators(g)


def test_link_examples():
    s7 = star_of_cliques(7)
    c = initial_complex(s7)
    face = parse_mask("y1 y2 y3 y4 x4", 7)
    lk = link(c, face)
    assert set(format_facets(lk)) == {"x5 x6 x7", "x1 x2 x3"}
    # empty face gives the complex itself
    assert link(c, 0).facets == c.facets
    # a full facet has the void link
    top = c.facets[0]
    assert link(c, top).facets == (0,)
    with pytest.raises(ValueError):
        link(c, parse_mask("x1 y7", 7))


def test_s2_examples():
    assert is_s2(path_graph(3))
    assert is_s2(complete_graph(5))
    rep = s2_report(star_of_cliques(7))
    assert not rep.ok and rep.reason == "disconnected-link"
    # the reported witness face really has a disconnected link of dim >= 1
    lk = link(initial_complex(star_of_cliques(7)), rep.witness)
    assert len(lk.facets) == 2 and lk.facets[0] & lk.facets[1] == 0
    assert s2_report(cycle_graph(4)).reason == "not-unmixed"


def test_s2_labeling_invariance():
    rng = random.Random(17)
    for _ in range(20):
        g = random_connected_graph(rng, rng.randint(2, 6))
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert is_s2(g) == is_s2(relabel(g, perm))


def test_s2_pruning_soundness():
    # the sorted-face skip agrees with the full scan on every unmixed graph
    from bei.pipeline import connected_certificates
    from bei.graphs import decode_graph6

    for n in range(2, 8):
        for cert in connected_certificates(n):
            g = decode_graph6(cert)
            if is_unmixed(g):
                full = s2_report(g)
                pruned = s2_report(g, prune_sorted_faces=True)
                assert full.ok == pruned.ok
                assert pruned.faces_pruned > 0 or g.n == 1


def test_s2_implies_accessible_small(connected_upto_6):
    for n in range(2, 7):
        for g in connected_upto_6[n]:
            if is_s2(g):
                assert is_accessible(g)


def _h_by_polynomial(f, d):
    # sum_i f_{i-1} t^i (1-t)^(d-i), expanded with plain integer arithmetic
    coeffs = [0] * (d + 1)
    for i, fi in enumerate(f):
        for k in range(d - i + 1):
            coeffs[i + k] += fi * comb(d - i, k) * (-1) ** k
    return tuple(coeffs)


def test_h_vector_against_polynomial_oracle(connected_upto_6):
    for n in range(1, 7):
        for g in connected_upto_6[n]:
            c = initial_complex(g)
            f = f_vector(c)
            d = len(f) - 1
            assert h_vector(f, d) == _h_by_polynomial(f, d)
            if is_unmixed(g):
                assert sum(h_vector(f, d)) == multiplicity(c)


def test_serialization_roundtrip():
    c = initial_complex(path_graph(3))
    for line, mask in zip(format_facets(c), c.facets):
        assert parse_mask(line, 3) == mask
    assert format_mask(parse_mask("y2 x1", 3), 3) == "x1 y2"
