import pytest

from bei.canon import certificate
from bei.cutsets import cutsets, is_accessible, is_strongly_unmixed, is_unmixed, unmixedness
from bei.families import (
    ChainSpec,
    NotAChainError,
    WhiskeredBlock,
    assemble_whiskered_block,
    block_with_whiskers,
    chain_block,
    chain_of_cycles,
    chain_setup_report,
    helm,
    rank3_catalog,
    star_of_cliques,
    strip_whiskers,
    wheel,
)
from bei.graphs import complete_graph, cutpoints, cycle_rank, from_edges, mask_of


def test_chainspec_validation():
    with pytest.raises(ValueError):
        ChainSpec((), ())
    with pytest.raises(ValueError):
        ChainSpec((5,), ())
    with pytest.raises(ValueError):
        ChainSpec((3, 3), ())  # missing glue flag
    with pytest.raises(ValueError):
        assemble_whiskered_block(complete_graph(3), 0b1000)


def test_single_triangle_chain():
    wb = ChainSpec((3,), (), 0b001).build()
    assert wb.block == complete_graph(3)
    assert wb.graph.n == 4
    assert chain_setup_report(wb).ok
    # a bare triangle with any whiskers passes and is accessible
    for w in range(8):
        wb = ChainSpec((3,), (), w).build()
        assert chain_setup_report(wb).ok
        assert is_accessible(wb.graph)


def test_single_square_chain():
    blk = chain_block((4,), ())
    passing = [w for w in range(16) if chain_setup_report(assemble_whiskered_block(blk, w)).ok]
    # exactly the four adjacent pairs
    assert sorted(passing) == [0b0011, 0b0101, 0b1010, 0b1100]
    for w in range(16):
        wb = assemble_whiskered_block(blk, w)
        assert chain_setup_report(wb).ok == is_accessible(wb.graph)


def test_fan_is_all_triangle_chain():
    fan = chain_block((3, 3, 3), (False, False))
    want = from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])
    assert certificate(fan) == certificate(want)
    # every glue assignment of an all-triangle chain on 5 vertices is the fan
    for g1 in (False, True):
        for g2 in (False, True):
            assert certificate(chain_block((3, 3, 3), (g1, g2))) == certificate(want)


def test_consecutive_squares_fail_condition_two():
    blk = chain_block((4, 4), (False,))
    for w in range(1 << blk.n):
        rep = chain_setup_report(assemble_whiskered_block(blk, w))
        assert not rep.ok
        if rep.violated is not None:
            assert rep.violated == 2


def test_decomposition_shortcut_matches_recognizer():
    specs = [
        ChainSpec((4, 3, 3), (False, False), 0b11),
        ChainSpec((3, 4, 3), (False, False), 0b11),
        ChainSpec((3, 3, 3), (False, True), 0b1),
    ]
    for spec in specs:
        for w in range(1 << spec.block_size()):
            wb = ChainSpec(spec.cycles, spec.glue, w).build()
            fast = chain_setup_report(wb, spec.decomposition())
            slow = chain_setup_report(wb)
            assert fast.ok == slow.ok, (spec, bin(w))


def test_chain_of_cycles_returns_graph():
    g = chain_of_cycles(ChainSpec((3, 4), (False,), 0b01))
    assert g.n == chain_block((3, 4), (False,)).n + 1


def test_not_a_chain():
    with pytest.raises(NotAChainError):
        chain_setup_report(assemble_whiskered_block(complete_graph(4), 0))
    with pytest.raises(NotAChainError):
        # tree: not 2-connected
        chain_setup_report(assemble_whiskered_block(from_edges(3, [(0, 1), (1, 2)]), 0))


def test_theta_graph_is_a_multi_edge_chain():
    # three parallel length-two paths; every decomposition shares a two-edge
    # path, so recognition succeeds but the single-edge condition fails
    theta = from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
    rep = chain_setup_report(assemble_whiskered_block(theta, 0b11))
    assert not rep.ok


def test_block_with_whiskers():
    tri_whisker = from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    wb = block_with_whiskers(tri_whisker, 0)
    assert certificate(wb.graph) == certificate(tri_whisker)  # fixed point
    two_tris = from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    wb = block_with_whiskers(two_tris, 0)
    assert wb.block == complete_graph(3)
    assert wb.whisker_at.bit_count() == 1
    assert certificate(wb.graph) == certificate(tri_whisker)
    with pytest.raises(ValueError):
        block_with_whiskers(two_tris, 5)


def test_whisker_closure_preserves_accessibility(connected_upto_6):
    # every block of an accessible graph gives an accessible whiskered block
    from bei.graphs import blocks

    for graphs in connected_upto_6.values():
        for g in graphs:
            if not is_accessible(g):
                continue
            for i in range(len(blocks(g))):
                wb = block_with_whiskers(g, i)
                assert is_accessible(wb.graph), (g, i)


def test_component_count_transfer(connected_upto_6):
    # cutsets inside the block separate the original graph and its whiskered
    # closure into equally many parts
    from bei.graphs import blocks, components

    for graphs in connected_upto_6.values():
        for g in graphs:
            if not is_accessible(g):
                continue
            for i, (sub, labels) in enumerate(blocks(g)):
                wb = block_with_whiskers(g, i)
                for t_bar, _ in cutsets(wb.graph).sets:
                    if t_bar == 0 or t_bar & ~((1 << wb.block.n) - 1):
                        continue
                    t_orig = mask_of(labels[v] for v in range(wb.block.n) if t_bar >> v & 1)
                    assert len(components(g, t_orig)) == len(components(wb.graph, t_bar))


def test_wheel_and_helm_shapes():
    w4 = wheel(4)
    assert w4.n == 5 and w4.degree(0) == 4
    h4 = helm(4)
    assert h4.n == 9
    assert sum(1 for v in range(h4.n) if h4.degree(v) == 1) == 4
    with pytest.raises(ValueError):
        helm(2)


def test_helm_accessibility_boundary():
    assert is_accessible(helm(4))
    assert is_accessible(helm(5))
    rep = unmixedness(helm(6))
    assert not rep.ok
    assert rep.witness.bit_count() == 4
    assert len(rep.witness_components) == 6
    for k in (7, 8, 9):
        assert not is_unmixed(helm(k))


def test_star_of_cliques_shape():
    s7 = star_of_cliques(7)
    assert s7.n == 7
    assert cutpoints(s7) == 0
    assert len(cutsets(s7)) == 2


def test_catalog_basics():
    cat = rank3_catalog()
    assert len(cat) == 9
    certs = {certificate(g) for g in cat}
    assert len(certs) == 9  # pairwise non-isomorphic
    for g in cat:
        core, whisker = strip_whiskers(g)
        assert cycle_rank(core) == 3
        assert cutpoints(core) == 0
        assert is_accessible(g)
        assert is_strongly_unmixed(g)


def test_large_setup_figure_chain():
    # eleven cycles, sixteen block vertices, whiskers on the whole W path
    cycles = (4, 3, 3, 4, 3, 3, 3, 4, 3, 3, 3)
    glue = (False, False, False, False, True, False, False, False, False, False)
    spec = ChainSpec(cycles, glue, 0b11111)
    wb = spec.build()
    assert wb.block.n == 16 and cycle_rank(wb.block) == 11
    assert wb.graph.n == 21
    assert chain_setup_report(wb, spec.decomposition()).ok
    assert chain_setup_report(wb).ok  # generic recognizer agrees
    assert is_accessible(wb.graph)
    assert is_strongly_unmixed(wb.graph)


def test_catalog_chains_pass_setup():
    cat = rank3_catalog()
    for g in cat[:5]:
        core, whisker = strip_whiskers(g)
        assert chain_setup_report(WhiskeredBlock(core, whisker, g)).ok
    for g in cat[5:]:
        core, whisker = strip_whiskers(g)
        with pytest.raises(NotAChainError):
            chain_setup_report(WhiskeredBlock(core, whisker, g))
