"""Bitset graphs on up to 64 vertices: structural queries, surgery, codecs.

Vertices are 0-based indices; every vertex subset is an ``int`` bitmask
(bit i = vertex i).  Adjacency is one mask per vertex, which keeps all
set operations O(1) at the scales this package targets.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

MAX_VERTICES = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(vertices) -> int:
    """Bitmask of an iterable of vertex indices."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph: vertex count ``n`` plus one adjacency mask per vertex."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj):
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError("adjacency row count does not match n")
        full = (1 << n) - 1
        for i, row in enumerate(adj):
            if row & ~full:
                raise ValueError(f"adjacency row {i} has bits outside 0..{n - 1}")
            if row >> i & 1:
                raise ValueError(f"loop at vertex {i}")
        for i in range(n):
            for j in bits(adj[i]):
                if not adj[j] >> i & 1:
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges())})"

    # -- basic queries -------------------------------------------------

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for i in range(self.n):
            for j in bits(self.adj[i] >> (i + 1) << (i + 1)):
                yield (i, j)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def is_clique(self, mask: int) -> bool:
        """True if the vertices of ``mask`` are pairwise adjacent."""
        for v in bits(mask):
            if mask & ~self.adj[v] & ~(1 << v):
                return False
        return True

    def is_simplicial(self, v: int) -> bool:
        return self.is_clique(self.adj[v])

    def is_complete(self) -> bool:
        full = self.vertex_mask
        return all(self.adj[v] == full ^ (1 << v) for v in range(self.n))


def _graph_unchecked(n: int, adj: tuple) -> Graph:
    """Internal fast path: caller guarantees a valid symmetric loop-free tuple."""
    g = object.__new__(Graph)
    object.__setattr__(g, "n", n)
    object.__setattr__(g, "adj", adj)
    return g


# -- constructors ------------------------------------------------------


def from_edges(n: int, edges) -> Graph:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop edge ({u},{v})")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


# -- connectivity ------------------------------------------------------


def components(g: Graph, removed: int = 0) -> list[int]:
    """Connected components of the induced subgraph on V(g) minus ``removed``.

    Returns component masks ordered by smallest contained vertex.  Removing
    everything yields the empty list.
    """
    adj = g.adj
    rem = g.vertex_mask & ~removed
    comps = []
    while rem:
        comp = rem & -rem
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & rem & ~comp
            comp |= frontier
        comps.append(comp)
        rem &= ~comp
    return comps


def component_count(g: Graph, removed: int = 0) -> int:
    return len(components(g, removed))


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise ValueError("graph must be connected")


def cutpoints(g: Graph) -> int:
    """Bitmask of vertices whose removal disconnects the (connected) graph."""
    _require_connected(g)
    if g.n == 1:
        return 0
    out = 0
    for v in range(g.n):
        if len(components(g, 1 << v)) > 1:
            out |= 1 << v
    return out


class InducedSubgraph(NamedTuple):
    """An induced subgraph plus the original label of each new vertex."""

    graph: Graph
    vertices: tuple[int, ...]  # vertices[new_index] = old_index


def induced_subgraph(g: Graph, keep: int) -> InducedSubgraph:
    old = list(bits(keep))
    pos = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        row = 0
        for u in bits(g.adj[v] & keep):
            row |= 1 << pos[u]
        adj.append(row)
    return InducedSubgraph(Graph(len(old), adj), tuple(old))


def delete_vertices(g: Graph, drop: int) -> InducedSubgraph:
    """Remove ``drop``; remaining vertices are re-indexed preserving order."""
    if drop & ~g.vertex_mask:
        raise ValueError("vertices to delete outside graph")
    if drop == g.vertex_mask:
        raise ValueError("cannot delete every vertex")
    return induced_subgraph(g, g.vertex_mask & ~drop)


def saturate(g: Graph, v: int) -> Graph:
    """Complete the neighborhood of ``v`` to a clique; everything else unchanged."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    nb = g.adj[v]
    adj = list(g.adj)
    for u in bits(nb):
        adj[u] |= nb & ~(1 << u)
    return Graph(g.n, adj)


def blocks(g: Graph) -> list[InducedSubgraph]:
    """Maximal 2-connected (or single-edge) subgraphs of a connected graph.

    Classic articulation-point DFS; every edge lands in exactly one block.
    Blocks are returned with their vertex maps, ordered by smallest vertex.
    """
    _require_connected(g)
    n = g.n
    if n == 1:
        return [induced_subgraph(g, 1)]
    disc = [0] * n
    low = [0] * n
    timer = 1
    edge_stack: list[tuple[int, int]] = []
    out: list[int] = []

    # iterative DFS to avoid recursion limits
    root = 0
    stack: list[tuple[int, int, Iterator[int]]] = [(root, -1, iter(bits(g.adj[root])))]
    disc[root] = low[root] = timer
    timer += 1
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for u in it:
            if u == parent:
                continue
            if disc[u] == 0:
                edge_stack.append((v, u))
                disc[u] = low[u] = timer
                timer += 1
                stack.append((u, v, iter(bits(g.adj[u]))))
                advanced = True
                break
            if disc[u] < disc[v]:
                edge_stack.append((v, u))
                if disc[u] < low[v]:
                    low[v] = disc[u]
        if advanced:
            continue
        stack.pop()
        if stack:
            pv = stack[-1][0]
            if low[v] < low[pv]:
                low[pv] = low[v]
            if low[v] >= disc[pv]:
                mask = 0
                while edge_stack:
                    a, b = edge_stack[-1]
                    if disc[a] < disc[v] and a != pv:
                        break
                    edge_stack.pop()
                    mask |= (1 << a) | (1 << b)
                    if (a, b) == (pv, v):
                        break
                out.append(mask)
    return [induced_subgraph(g, m) for m in sorted(out, key=lambda m: (m & -m, m))]


def cycle_rank(g: Graph) -> int:
    """Number of independent cycles of a connected graph: |E| - |V| + 1."""
    _require_connected(g)
    return g.edge_count() - g.n + 1


# -- graph6 codec (short form, n <= 62) --------------------------------


def encode_graph6(g: Graph) -> bytes:
    if g.n > 62:
        raise ValueError("graph6 short form supports at most 62 vertices")
    out = [g.n + 63]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def decode_graph6(line: bytes | str) -> Graph:
    if isinstance(line, str):
        line = line.encode("ascii")
    data = line.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise ValueError("empty graph6 line")
    n = data[0] - 63
    if not 1 <= n <= 62:
        raise ValueError(f"unsupported graph6 header byte {data[0]!r}")
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[1:]
    if len(body) != need:
        raise ValueError(f"graph6 body for n={n}: expected {need} bytes, got {len(body)}")
    adj = [0] * n
    pos = 0
    for byte in body:
        if not 63 <= byte <= 126:
            raise ValueError(f"graph6 byte {byte} out of range")
    for j in range(1, n):
        for i in range(j):
            byte = body[pos // 6] - 63
            if byte >> (5 - pos % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos += 1
    return Graph(n, adj)


def read_graph6_lines(text: bytes | str) -> list[Graph]:
    if isinstance(text, str):
        text = text.encode("ascii")
    out = []
    for line in text.splitlines():
        if line.strip():
            out.append(decode_graph6(line))
    return out


# -- edge-list text format ---------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """First non-comment line is ``n``; each later line is an edge ``u v`` (0-based)."""
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ValueError("first line of an edge list must be the vertex count")
            n = int(parts[0])
            continue
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError("empty edge list")
    return from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
