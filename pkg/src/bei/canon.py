"""Exact canonical forms for small graphs.

The canonical labeling minimizes the upper-triangle adjacency bit string
(column-major, the graph6 bit order) over all vertex orders compatible
with an iteratively refined, isomorphism-invariant vertex partition.
Cells that refinement cannot split are handled by individualization;
cells whose members are provably interchangeable (mutually adjacent or
mutually non-adjacent with identical outside neighborhoods) branch only
once.  The certificate is the graph6 encoding of the canonical form, so
isomorphic graphs get equal bytes and distinct classes distinct bytes.
"""

from __future__ import annotations

from .graphs import Graph, _graph_unchecked, bits

SIZE_LIMIT = 11  # exact search is meant for desk-scale graphs

_NODE_CAP = 2_000_000


class CanonSizeError(ValueError):
    """Raised when a graph exceeds the exact canonicalization size limit."""


def _refine(n: int, nbrs, colors: list[int]) -> list[int]:
    """Iterate (color, multiset of neighbor colors) until the partition is stable.

    Stops early once the partition is discrete; any stable point of this
    refinement is isomorphism-invariant, which is all the search needs.
    """
    while True:
        sigs = []
        for v in range(n):
            nb = sorted(colors[u] for u in nbrs[v])
            nb.insert(0, colors[v])
            sigs.append(tuple(nb))
        index = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [index[s] for s in sigs]
        if new == colors:
            return colors
        colors = new
        if len(index) == n:
            return colors


def _interchangeable(adj, cell: list[int]) -> bool:
    """True when all cell members can be swapped by automorphisms."""
    cmask = 0
    for v in cell:
        cmask |= 1 << v
    outside = adj[cell[0]] & ~cmask
    inner0 = adj[cell[0]] & cmask
    complete = inner0 == cmask ^ (1 << cell[0])
    empty = inner0 == 0
    if not (complete or empty):
        return False
    for v in cell[1:]:
        if adj[v] & ~cmask != outside:
            return False
        inner = adj[v] & cmask
        if complete and inner != cmask ^ (1 << v):
            return False
        if empty and inner != 0:
            return False
    return True


def _pack_triangle(adj, order) -> int:
    """Upper-triangle bits of the relabeled graph as one big int, MSB first."""
    acc = 1  # leading sentinel bit keeps leading zeros significant
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            acc = acc << 1 | (row >> order[i] & 1)
    return acc


def _search(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Minimal packed triangle string and the order realizing it."""
    n = g.n
    adj = g.adj
    nbrs = [tuple(bits(row)) for row in adj]
    best_packed: list = [None, None]
    budget = [_NODE_CAP]

    def walk(colors: list[int]) -> None:
        budget[0] -= 1
        if budget[0] < 0:
            raise RuntimeError("canonical search exceeded node budget")
        colors = _refine(n, nbrs, colors)
        order = sorted(range(n), key=colors.__getitem__)
        cell: list[int] = []
        for idx in range(n - 1):
            if colors[order[idx]] == colors[order[idx + 1]]:
                c = colors[order[idx]]
                cell = [v for v in order if colors[v] == c]
                break
        if not cell:
            packed = _pack_triangle(adj, order)
            if best_packed[0] is None or packed < best_packed[0]:
                best_packed[0] = packed
                best_packed[1] = tuple(order)
            return
        branch = cell[:1] if _interchangeable(adj, cell) else cell
        for v in branch:
            child = [c * 2 for c in colors]
            child[v] -= 1
            walk(child)

    walk([len(nb) for nb in nbrs])
    return best_packed[0], best_packed[1]


def canonical_order(g: Graph) -> tuple[int, ...]:
    """Vertex order (new index -> old vertex) realizing the canonical form."""
    return _search(g)[1]


def canonical_form(g: Graph) -> Graph:
    """The canonical representative of the isomorphism class of ``g``."""
    order = canonical_order(g)
    pos = {v: i for i, v in enumerate(order)}
    adj = [0] * g.n
    for i, v in enumerate(order):
        for u in bits(g.adj[v]):
            adj[i] |= 1 << pos[u]
    return _graph_unchecked(g.n, tuple(adj))


def certificate(g: Graph, size_limit: int = SIZE_LIMIT) -> bytes:
    """Isomorphism-invariant certificate: graph6 bytes of the canonical form.

    Refuses graphs above ``size_limit`` vertices; larger inputs are expected
    to arrive pre-deduplicated and should be keyed by their raw encoding.
    """
    if g.n > size_limit:
        raise CanonSizeError(f"certificate limited to {size_limit} vertices, got {g.n}")
    packed, _ = _search(g)
    n = g.n
    nbits = n * (n - 1) // 2
    value = packed - (1 << nbits)  # drop the sentinel
    pad = (6 - nbits % 6) % 6
    value <<= pad
    groups = (nbits + pad) // 6
    out = bytearray([n + 63])
    for k in range(groups - 1, -1, -1):
        out.append(((value >> (6 * k)) & 63) + 63)
    return bytes(out)


def relabel(g: Graph, perm) -> Graph:
    """Apply a permutation: new label of old vertex v is ``perm[v]``."""
    adj = [0] * g.n
    for v in range(g.n):
        row = 0
        for u in bits(g.adj[v]):
            row |= 1 << perm[u]
        adj[perm[v]] = row
    return Graph(g.n, adj)
