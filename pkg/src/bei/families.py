"""Structured families: blocks with whiskers, chains of cycles, wheels and helms.

A chain of cycles is a 2-connected graph assembled from triangles and
squares glued consecutively along single edges; its vertex set splits into
two paths (the whiskered side W and the plain side U once pendant edges are
attached).  The seven structural conditions evaluated by
``chain_setup_report`` characterize exactly the chains whose binomial edge
ideal is Cohen-Macaulay, so they double as a fast oracle against the
cutset-based checkers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .canon import certificate
from .graphs import (
    Graph,
    bits,
    blocks,
    components,
    cutpoints,
    cycle_rank,
    from_edges,
    is_connected,
    mask_of,
)

# -- whiskered blocks ------------------------------------------------------


@dataclass(frozen=True)
class WhiskeredBlock:
    """A 2-connected block plus pendant edges at a chosen vertex subset.

    The assembled graph keeps the block labels 0..b-1 and appends one tip
    per whiskered vertex, in increasing vertex order.
    """

    block: Graph
    whisker_at: int  # mask over block vertices
    graph: Graph

    @property
    def tips(self) -> int:
        b = self.block.n
        return ((1 << self.graph.n) - 1) & ~((1 << b) - 1)


def assemble_whiskered_block(block: Graph, whisker_at: int) -> WhiskeredBlock:
    if whisker_at & ~block.vertex_mask:
        raise ValueError("whisker vertices outside the block")
    b = block.n
    edges = list(block.edges())
    for i, v in enumerate(bits(whisker_at)):
        edges.append((v, b + i))
    return WhiskeredBlock(block, whisker_at, from_edges(b + whisker_at.bit_count(), edges))


def block_with_whiskers(g: Graph, block_index: int) -> WhiskeredBlock:
    """Collapse everything hanging off one block of g into single whiskers.

    Every cutpoint of g lying on the chosen block receives one pendant
    edge standing in for the branch it separates.
    """
    blks = blocks(g)
    if not 0 <= block_index < len(blks):
        raise ValueError(f"block index {block_index} out of range (have {len(blks)})")
    sub, labels = blks[block_index]
    cut = cutpoints(g) if g.n > 1 else 0
    whisker = mask_of(i for i, old in enumerate(labels) if cut >> old & 1)
    return assemble_whiskered_block(sub, whisker)


# -- chains of cycles --------------------------------------------------------


@dataclass(frozen=True)
class ChainSpec:
    """Construction data for a chain of cycles with whiskers.

    cycles: sizes in {3, 4}, one per cycle in order.
    glue: one flag per junction (between consecutive cycles); for a
        triangle the flag picks the side of the new apex (True extends the
        W path, False the U path); a square always extends both paths, so
        its flag is ignored.
    whiskers: vertex mask over the assembled block labels (W path first,
        then U path).
    """

    cycles: tuple[int, ...]
    glue: tuple[bool, ...] = ()
    whiskers: int = 0

    def __post_init__(self):
        if not self.cycles:
            raise ValueError("a chain needs at least one cycle")
        if any(c not in (3, 4) for c in self.cycles):
            raise ValueError("cycle sizes must be 3 or 4")
        if len(self.glue) != len(self.cycles) - 1:
            raise ValueError("need exactly one glue flag per junction")

    def block_size(self) -> int:
        return self.cycles[0] + sum(c - 2 for c in self.cycles[1:])

    def build(self) -> WhiskeredBlock:
        block = chain_block(self.cycles, self.glue)
        return assemble_whiskered_block(block, self.whiskers)

    def decomposition(self):
        """The constructed cycle sequence as (vertex_mask, edge_mask) pairs."""
        return _chain_build(self.cycles, self.glue)[1]


def _chain_build(cycles, glue):
    """Assemble a chain; returns the block plus its cycle decomposition.

    Labels: W-path vertices first in path order, then the U path.  The
    decomposition lists each cycle as (vertex_mask, edge_mask) over the
    block's sorted edge list.
    """
    w_path: list[int] = []
    u_path: list[int] = []
    edges: list[tuple[int, int]] = []
    cycle_edges: list[list[tuple[int, int]]] = []
    counter = 0

    def fresh() -> int:
        nonlocal counter
        counter += 1
        return counter - 1

    if cycles[0] == 3:
        u0, u1, w1 = fresh(), fresh(), fresh()
        w_path[:] = [w1]
        u_path[:] = [u0, u1]
        first = [(u0, u1), (u0, w1), (u1, w1)]
    else:
        w0, w1, u0, u1 = fresh(), fresh(), fresh(), fresh()
        w_path[:] = [w0, w1]
        u_path[:] = [u0, u1]
        first = [(w0, w1), (u0, u1), (w0, u0), (w1, u1)]
    edges += first
    cycle_edges.append(first)
    rung = (w_path[-1], u_path[-1])

    for size, to_w in zip(cycles[1:], glue):
        a, b = rung
        if size == 3:
            v = fresh()
            new = [(a, v), (b, v)]
            if to_w:
                w_path.append(v)
                rung = (v, b)
            else:
                u_path.append(v)
                rung = (a, v)
        else:
            nw, nu = fresh(), fresh()
            new = [(a, nw), (b, nu), (nw, nu)]
            w_path.append(nw)
            u_path.append(nu)
            rung = (nw, nu)
        edges += new
        cycle_edges.append(new + [(a, b)])  # the shared junction edge

    order = w_path + u_path
    pos = {v: i for i, v in enumerate(order)}
    block = from_edges(len(order), [(pos[u], pos[v]) for u, v in edges])
    edge_index = {e: i for i, e in enumerate(sorted(block.edges()))}
    decomposition = []
    for cyc in cycle_edges:
        vmask = emask = 0
        for u, v in cyc:
            a, b = pos[u], pos[v]
            vmask |= (1 << a) | (1 << b)
            emask |= 1 << edge_index[(min(a, b), max(a, b))]
        decomposition.append((vmask, emask))
    return block, tuple(decomposition)


def chain_block(cycles, glue) -> Graph:
    """Assemble the bare chain: W-path labels first, then U-path labels."""
    return _chain_build(cycles, glue)[0]


def chain_of_cycles(spec: ChainSpec) -> Graph:
    """The assembled chain with whiskers, per the spec's deterministic labels."""
    return spec.build().graph


# -- chain recognition and the structural conditions -------------------------


class NotAChainError(ValueError):
    """The block admits no decomposition into consecutively glued cycles."""


_CYCLE_ENUM_CAP = 4096


def _simple_cycles(block: Graph):
    """All simple cycles as (vertex_mask, edge_mask), via the cycle space."""
    edges = sorted(block.edges())
    index = {e: i for i, e in enumerate(edges)}

    # spanning tree by BFS from 0
    parent = {0: None}
    depth = {0: 0}
    order = [0]
    seen = 1
    tree = set()
    for v in order:
        for u in bits(block.adj[v]):
            if not seen >> u & 1:
                seen |= 1 << u
                parent[u] = v
                depth[u] = depth[v] + 1
                tree.add((min(u, v), max(u, v)))
                order.append(u)

    fundamentals = []
    for e in edges:
        if e in tree:
            continue
        u, v = e
        emask = 1 << index[e]
        while depth[u] > depth[v]:
            emask ^= 1 << index[(min(u, parent[u]), max(u, parent[u]))]
            u = parent[u]
        while depth[v] > depth[u]:
            emask ^= 1 << index[(min(v, parent[v]), max(v, parent[v]))]
            v = parent[v]
        while u != v:
            emask ^= 1 << index[(min(u, parent[u]), max(u, parent[u]))]
            emask ^= 1 << index[(min(v, parent[v]), max(v, parent[v]))]
            u = parent[u]
            v = parent[v]
        fundamentals.append(emask)

    if len(fundamentals) > 12 or 1 << len(fundamentals) > _CYCLE_ENUM_CAP:
        raise NotAChainError("cycle space too large for chain recognition")

    out = []
    for combo in range(1, 1 << len(fundamentals)):
        emask = 0
        m = combo
        while m:
            b = m & -m
            emask ^= fundamentals[b.bit_length() - 1]
            m ^= b
        deg: dict[int, int] = {}
        vmask = 0
        for ei in bits(emask):
            u, v = edges[ei]
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
            vmask |= (1 << u) | (1 << v)
        if any(d != 2 for d in deg.values()):
            continue
        # connectivity of the edge set
        start = vmask & -vmask
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                for ei in bits(emask):
                    a, b = edges[ei]
                    if a == v:
                        nxt |= 1 << b
                    elif b == v:
                        nxt |= 1 << a
            frontier = nxt & vmask & ~comp
            comp |= frontier
        if comp == vmask:
            out.append((vmask, emask))
    return edges, out


def _cycle_vertex_order(edge_list, emask: int) -> list[int]:
    """Vertices of a simple cycle in traversal order."""
    nbr: dict[int, list[int]] = {}
    for ei in bits(emask):
        u, v = edge_list[ei]
        nbr.setdefault(u, []).append(v)
        nbr.setdefault(v, []).append(u)
    start = min(nbr)
    order = [start]
    prev, cur = None, start
    while True:
        a, b = nbr[cur]
        nxt = b if a == prev else a
        if nxt == start:
            return order
        order.append(nxt)
        prev, cur = cur, nxt


def _emask_stats(edge_list, emask: int):
    """Degrees, vertex mask and connectivity of an edge-subset graph."""
    deg: dict[int, int] = {}
    nbr: dict[int, list[int]] = {}
    for ei in bits(emask):
        u, v = edge_list[ei]
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        nbr.setdefault(u, []).append(v)
        nbr.setdefault(v, []).append(u)
    if not deg:
        return deg, 0, True
    seen = set()
    stack = [next(iter(deg))]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(nbr[v])
    vmask = 0
    for v in deg:
        vmask |= 1 << v
    return deg, vmask, len(seen) == len(deg)


_PEEL_NODE_CAP = 100_000


def _iter_chain_sequences(block: Graph, node_cap: int = _PEEL_NODE_CAP):
    """Yield (edge_list, sequence) chain decompositions by peeling end cycles.

    A peeled end cycle keeps only its junction path in the remaining graph;
    the next cycle must contain that whole path, and the following junction
    must avoid it, which is exactly the consecutive-sharing discipline.
    """
    if not is_connected(block) or block.n < 3 or cutpoints(block):
        raise NotAChainError("chains of cycles are 2-connected")
    r = cycle_rank(block)
    if r < 1:
        raise NotAChainError("a chain contains at least one cycle")
    edge_list, cycles = _simple_cycles(block)
    cycles.sort(key=lambda c: c[1].bit_count())
    by_emask = {em: (vm, em) for vm, em in cycles}
    orders = {em: _cycle_vertex_order(edge_list, em) for _, em in cycles}
    edge_index = {e: i for i, e in enumerate(edge_list)}
    full = (1 << len(edge_list)) - 1
    fail_memo: set[tuple[int, int]] = set()
    nodes = [0]

    def peel(em: int, pending: int, k: int):
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise NotAChainError("chain recognition budget exceeded")
        if k == 1:
            hit = by_emask.get(em)
            if hit is not None:
                yield (hit,)
            return
        key = (em, pending)
        if key in fail_memo:
            return
        produced = False
        deg, _, _ = _emask_stats(edge_list, em)
        for vm, cem in cycles:
            if cem & ~em:
                continue
            if pending & ~cem:
                continue
            order = orders[cem]
            length = len(order)
            attached = [i for i, v in enumerate(order) if deg[v] > 2]
            if not attached:
                continue
            for arc_len in range(1, length):
                for start in range(length):
                    covered = {(start + t) % length for t in range(arc_len + 1)}
                    if any(a not in covered for a in attached):
                        continue
                    pmask = 0
                    for t in range(arc_len):
                        a, b = order[(start + t) % length], order[(start + t + 1) % length]
                        pmask |= 1 << edge_index[(min(a, b), max(a, b))]
                    if pmask & pending:
                        continue
                    em2 = em & ~(cem & ~pmask)
                    deg2, vmask2, conn2 = _emask_stats(edge_list, em2)
                    if not conn2 or any(d < 2 for d in deg2.values()):
                        continue
                    if em2.bit_count() - vmask2.bit_count() + 1 != k - 1:
                        continue
                    for suffix in peel(em2, pmask, k - 1):
                        produced = True
                        yield ((vm, cem),) + suffix
        if not produced:
            fail_memo.add(key)

    yielded = False
    for seq in peel(full, 0, r):
        yielded = True
        yield edge_list, seq
    if not yielded:
        raise NotAChainError("block is not a chain of cycles")


_SEQ_CAP = 20_000


@dataclass(frozen=True)
class SetupReport:
    ok: bool
    violated: int | None = None  # 1..7, first failing condition

    def __bool__(self) -> bool:
        return self.ok


def _edge_endpoints(edge_list, emask: int) -> tuple[int, int]:
    (u, v) = edge_list[next(bits(emask))]
    return u, v


def _check_sequence(block: Graph, edge_list, seq, w_set: int) -> int | None:
    """First violated condition index for one chain ordering, or None."""
    edge_index = {e: i for i, e in enumerate(edge_list)}
    r = len(seq)
    sizes = [vm.bit_count() for vm, _ in seq]
    if any(s not in (3, 4) for s in sizes):
        return 1
    if any(sizes[i] == 4 and sizes[i + 1] == 4 for i in range(r - 1)):
        return 2

    w_of: list[int] = []
    u_of: list[int] = []
    for i in range(r - 1):
        shared = seq[i][1] & seq[i + 1][1]
        if shared.bit_count() != 1:
            return 3
        a, b = _edge_endpoints(edge_list, shared)
        a_w = bool(w_set >> a & 1)
        b_w = bool(w_set >> b & 1)
        if a_w == b_w:
            return 3
        w_of.append(a if a_w else b)
        u_of.append(b if a_w else a)

    for i in range(r - 2):
        em = seq[i + 1][1]
        for prev, nxt in ((w_of[i], w_of[i + 1]), (u_of[i], u_of[i + 1])):
            if prev == nxt:
                continue
            idx = edge_index.get((min(prev, nxt), max(prev, nxt)))
            if idx is None or not em >> idx & 1:
                return 4

    def end_ok(cycle_idx: int, junction_idx: int) -> bool:
        vm, em = seq[cycle_idx]
        w1, u1 = w_of[junction_idx], u_of[junction_idx]
        w0 = u0 = None
        for ei in bits(em):
            a, b = edge_list[ei]
            if {a, b} == {w1, u1}:
                continue
            if w1 in (a, b):
                w0 = b if a == w1 else a
            if u1 in (a, b):
                u0 = b if a == u1 else a
        return (
            w0 is not None
            and u0 is not None
            and bool(w_set >> w0 & 1)
            and not w_set >> u0 & 1
        )

    if r == 1:
        if sizes[0] == 4:
            inside = w_set & seq[0][0]
            if inside.bit_count() != 2:
                return 5
            a, b = list(bits(inside))
            if not block.has_edge(a, b):
                return 5
    else:
        if sizes[0] == 4 and not end_ok(0, 0):
            return 5
        if sizes[-1] == 4 and not end_ok(r - 1, r - 2):
            return 6

    on_c4 = 0
    for (vm, _), s in zip(seq, sizes):
        if s == 4:
            on_c4 |= vm
    for v in range(block.n):
        d = block.degree(v)
        if (d >= 5 or (d >= 4 and on_c4 >> v & 1)) and not w_set >> v & 1:
            return 7
    return None


def chain_setup_report(wb: WhiskeredBlock, decomposition=None) -> SetupReport:
    """Evaluate the seven chain conditions; error when the block is no chain.

    The block must decompose as a chain of cycles; the conditions hold when
    some decomposition satisfies all of: (1) every cycle a triangle or
    square, (2) no consecutive squares, (3) each junction a single edge
    with exactly its W endpoint whiskered, (4) W and U advance by at most
    one edge per junction, (5)/(6) square ends carry whiskers on their W
    edge only, (7) vertices of degree five, or four on a square, whiskered.

    ``decomposition`` short-circuits recognition with a known cycle sequence
    ((vertex_mask, edge_mask) pairs over the sorted edge list); sweeping
    callers that constructed the chain themselves use it, and the tests pin
    its agreement with the recognizer.
    """
    if decomposition is not None:
        edge_list = sorted(wb.block.edges())
        v = _check_sequence(wb.block, edge_list, tuple(decomposition), wb.whisker_at)
        return SetupReport(True) if v is None else SetupReport(False, v)
    first_violation: int | None = None
    count = 0
    for edge_list, seq in _iter_chain_sequences(wb.block):
        v = _check_sequence(wb.block, edge_list, seq, wb.whisker_at)
        if v is None:
            return SetupReport(True)
        if first_violation is None:
            first_violation = v
        count += 1
        if count >= _SEQ_CAP:
            break
    return SetupReport(False, first_violation)


def check_setup(wb: WhiskeredBlock) -> bool:
    return chain_setup_report(wb).ok


# -- wheels, helms, named counterexamples ------------------------------------


def wheel(k: int) -> Graph:
    """Hub vertex 0 joined to every vertex of the rim cycle 1..k."""
    if k < 3:
        raise ValueError("wheel needs rim length at least 3")
    edges = [(0, i) for i in range(1, k + 1)]
    edges += [(i, i % k + 1) for i in range(1, k + 1)]
    return from_edges(k + 1, edges)


def helm(k: int) -> Graph:
    """Wheel with one pendant edge on every rim vertex (tips k+1..2k)."""
    w = wheel(k)
    edges = list(w.edges())
    edges += [(i, k + i) for i in range(1, k + 1)]
    return from_edges(2 * k + 1, edges)


def star_of_cliques(n: int) -> Graph:
    """Complete split graph: a clique on the last s labels joined to n-s
    independent vertices (plus one extra edge when n is even).

    The n = 7 instance is the block that is unmixed but not accessible and
    whose initial complex has a disconnected link in smallest dimension.
    """
    if n < 5:
        raise ValueError("needs at least 5 vertices")
    s = (n - 1) // 2 if n % 2 else (n - 2) // 2
    hub = list(range(n - s, n))
    edges = [(a, b) for a, b in combinations(hub, 2)]
    edges += [(v, h) for v in range(n - s) for h in hub]
    if n % 2 == 0:
        edges.append((n - s - 2, n - s - 1))
    return from_edges(n, edges)


# -- the cycle-rank-3 catalog -------------------------------------------------

# The nine accessible whiskered blocks whose block has three independent
# cycles: five chains of cycles and four graphs built from K4 by edge
# subdivision.  Stored as explicit edge lists; tests compare by certificate.

_CATALOG_EDGES: tuple[tuple[int, tuple[tuple[int, int], ...]], ...] = (
    # chains --------------------------------------------------------------
    # fan on 5 vertices (apex 0), whisker at the apex
    (6, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (0, 5))),
    # same fan, whiskers on the two middle path vertices
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (2, 5), (3, 6))),
    # square + two triangles sharing the degree-4 vertex 1; whiskers on the W path
    (8, ((0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (1, 4), (4, 5), (1, 5), (0, 6), (1, 7))),
    # square + triangle + square; whiskers on the three W vertices
    (10, (
        (0, 1), (1, 2), (0, 3), (3, 4), (1, 4), (1, 5), (4, 5), (5, 6), (2, 6),
        (0, 7), (1, 8), (2, 9),
    )),
    # triangle + square + triangle; whiskers on the middle square's W edge
    (8, ((0, 2), (0, 3), (2, 3), (0, 1), (3, 4), (1, 4), (4, 5), (1, 5), (0, 6), (1, 7))),
    # K4 class ------------------------------------------------------------
    # plain K4
    (4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
    # K33 minus an edge, whiskers on the two degree-3 vertices of the missing pair
    (8, (
        (0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4),
        (0, 6), (3, 7),
    )),
    # K4 with edge 0-1 subdivided by 4; whiskers at 0 and both unsubdivided vertices
    (8, ((0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4), (0, 5), (2, 6), (3, 7))),
    # same block; whiskers at 0, one unsubdivided vertex, and the subdivision vertex
    (8, ((0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4), (0, 5), (2, 6), (4, 7))),
)


def rank3_catalog() -> tuple[Graph, ...]:
    """The nine accessible whiskered blocks with block cycle rank three."""
    return tuple(from_edges(n, edges) for n, edges in _CATALOG_EDGES)


def rank3_catalog_certificates() -> frozenset[bytes]:
    return frozenset(certificate(g) for g in rank3_catalog())


def strip_whiskers(g: Graph) -> tuple[Graph, int]:
    """Remove pendant vertices; returns the core and its whiskered-vertex mask.

    Only meaningful for graphs that are a 2-connected block plus pendant
    edges (one round of stripping).
    """
    tips = mask_of(v for v in range(g.n) if g.degree(v) == 1)
    keep = g.vertex_mask & ~tips
    old = list(bits(keep))
    pos = {v: i for i, v in enumerate(old)}
    adj = []
    whisker = 0
    for v in old:
        row = 0
        for u in bits(g.adj[v] & keep):
            row |= 1 << pos[u]
        adj.append(row)
    for v in bits(tips):
        owner = next(bits(g.adj[v]))
        whisker |= 1 << pos[owner]
    return Graph(len(old), adj), whisker
