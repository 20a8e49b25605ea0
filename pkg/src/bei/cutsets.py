"""Cutset combinatorics of binomial edge ideals.

A vertex set T is a cutset when restoring any of its members strictly
reduces the component count of the graph minus T; equivalently every
member sees at least two of the remaining components.  Unmixedness is
the dimension condition c(T) = |T| + 1 over all cutsets, accessibility
adds a descending chain condition, and strong unmixedness is a recursion
over vertex deletion and neighborhood saturation.
"""

from __future__ import annotations

import os
from collections import OrderedDict
from dataclasses import dataclass, field
from itertools import combinations

from . import canon
from .graphs import (
    Graph,
    bits,
    components,
    cutpoints,
    delete_vertices,
    encode_graph6,
    induced_subgraph,
    is_connected,
    saturate,
)

# -- cutset predicates --------------------------------------------------


def cutset_partition(g: Graph, t: int) -> list[int] | None:
    """Component partition of g minus t if t is a cutset, else None.

    One component computation per candidate: t is a cutset iff every
    member has neighbors in at least two distinct components.
    """
    comps = components(g, t)
    for v in bits(t):
        nb = g.adj[v]
        seen = 0
        for c in comps:
            if nb & c:
                seen += 1
                if seen == 2:
                    break
        if seen < 2:
            return None
    return comps


def is_cutset(g: Graph, t: int) -> bool:
    if t & ~g.vertex_mask:
        raise ValueError("cutset candidate outside vertex range")
    return cutset_partition(g, t) is not None


def is_cutset_definitional(g: Graph, t: int) -> bool:
    """Oracle form: c(T minus v) < c(T) for every v in T."""
    c_t = len(components(g, t))
    for v in bits(t):
        if len(components(g, t & ~(1 << v))) >= c_t:
            return False
    return True


def cutset_candidates(g: Graph) -> int:
    """Vertices that can belong to some cutset: the non-simplicial ones.

    A simplicial vertex keeps its surviving neighbors in one component,
    so it never satisfies the two-component condition.
    """
    out = 0
    for v in range(g.n):
        if not g.is_simplicial(v):
            out |= 1 << v
    return out


def iter_cutsets(g: Graph):
    """Yield (mask, partition) for every cutset, by increasing (size, mask).

    Scans subsets of the non-simplicial vertices only, with a cheap
    enclosed-vertex rejection before each component computation.
    """
    adj = g.adj
    yield 0, components(g)
    cand = sorted(bits(cutset_candidates(g)))
    for size in range(1, len(cand) + 1):
        for combo in combinations(cand, size):
            t = 0
            for v in combo:
                t |= 1 << v
            if any(not adj[v] & ~t for v in combo):
                continue
            comps = cutset_partition(g, t)
            if comps is not None:
                yield t, comps


@dataclass(frozen=True)
class CutsetFamily:
    """All cutsets of a connected graph with their component partitions."""

    graph: Graph
    sets: tuple[tuple[int, tuple[int, ...]], ...]  # (mask, parts), (size, mask) order
    masks: frozenset = field(repr=False)

    def __contains__(self, mask: int) -> bool:
        return mask in self.masks

    def __len__(self) -> int:
        return len(self.sets)


def cutsets(g: Graph) -> CutsetFamily:
    if not is_connected(g):
        raise ValueError("cutsets are defined here for connected graphs")
    sets = tuple((t, tuple(parts)) for t, parts in iter_cutsets(g))
    return CutsetFamily(g, sets, frozenset(t for t, _ in sets))


# -- unmixedness and accessibility ---------------------------------------


@dataclass(frozen=True)
class UnmixednessReport:
    ok: bool
    witness: int | None = None  # smallest cutset with c(T) != |T| + 1
    witness_components: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _pendant_quotient(g: Graph):
    """Split g into its pendant tips and the core they hang from.

    Removing T from g leaves the components of the core minus T, each
    absorbing the tips of its members, plus one isolated tip per pendant
    edge at a member of T.  So component counts and per-member adjacency
    counts reduce to core quantities plus tip counts.
    """
    tip_mask = 0
    for v in range(g.n):
        row = g.adj[v]
        if row.bit_count() == 1 and g.adj[row.bit_length() - 1].bit_count() >= 2:
            tip_mask |= 1 << v
    if tip_mask == 0:
        return None
    core, old = induced_subgraph(g, g.vertex_mask & ~tip_mask)
    tipcnt = [(g.adj[o] & tip_mask).bit_count() for o in old]
    return core, old, tipcnt, tip_mask


def _iter_cutset_counts(g: Graph):
    """Yield (mask, component_count, restore) per cutset, (size, mask) order.

    Works on the pendant quotient; ``restore()`` materializes the full
    component partition in original labels on demand.
    """
    quot = _pendant_quotient(g)
    if quot is None:
        for t, comps in iter_cutsets(g):
            yield t, len(comps), (lambda parts=comps: list(parts))
        return
    core, old, tipcnt, tip_mask = quot
    pos = {o: i for i, o in enumerate(old)}
    adj = core.adj

    def restore(t_core: int, comps):
        parts = []
        for comp in comps:
            orig = 0
            for i in bits(comp):
                orig |= 1 << old[i]
                orig |= g.adj[old[i]] & tip_mask
            parts.append(orig)
        for i in bits(t_core):
            for tip in bits(g.adj[old[i]] & tip_mask):
                parts.append(1 << tip)
        parts.sort(key=lambda m: m & -m)
        return parts

    first = components(core)
    yield 0, 1, (lambda: restore(0, first))
    cand = [pos[v] for v in range(g.n) if not tip_mask >> v & 1 and not g.is_simplicial(v)]
    for size in range(1, len(cand) + 1):
        for combo in combinations(cand, size):
            t_core = 0
            for i in combo:
                t_core |= 1 << i
            if any(tipcnt[i] == 0 and not adj[i] & ~t_core for i in combo):
                continue
            comps = components(core, t_core)
            tips_in_t = 0
            cut = True
            for i in combo:
                a = tipcnt[i]
                tips_in_t += a
                if a < 2:
                    nb = adj[i]
                    for comp in comps:
                        if nb & comp:
                            a += 1
                            if a == 2:
                                break
                if a < 2:
                    cut = False
                    break
            if not cut:
                continue
            t_orig = 0
            for i in combo:
                t_orig |= 1 << old[i]
            count = len(comps) + tips_in_t
            yield t_orig, count, (lambda tc=t_core, cs=comps: restore(tc, cs))


def unmixedness(g: Graph) -> UnmixednessReport:
    """Check c(T) = |T| + 1 over all cutsets of a connected graph."""
    if not is_connected(g):
        raise ValueError("unmixedness check expects a connected graph")
    for t, count, restore in _iter_cutset_counts(g):
        if count != t.bit_count() + 1:
            return UnmixednessReport(False, t, tuple(restore()))
    return UnmixednessReport(True)


def is_unmixed(g: Graph) -> bool:
    return unmixedness(g).ok


@dataclass(frozen=True)
class AccessibilityReport:
    ok: bool
    failure: str | None = None  # "not-unmixed" or "stuck-cutset"
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def accessibility(g: Graph, fam: CutsetFamily | None = None) -> AccessibilityReport:
    """Unmixed plus: every nonempty cutset T has t in T with T minus t a cutset."""
    un = unmixedness(g)
    if not un.ok:
        return AccessibilityReport(False, "not-unmixed", un.witness)
    if fam is not None:
        masks = [t for t, _ in fam.sets]
    else:
        masks = [t for t, _, _ in _iter_cutset_counts(g)]
    cutset = frozenset(masks)
    for t in masks:
        if t == 0:
            continue
        if not any(t & ~(1 << v) in cutset for v in bits(t)):
            return AccessibilityReport(False, "stuck-cutset", t)
    return AccessibilityReport(True)


def is_accessible(g: Graph) -> bool:
    return accessibility(g).ok


# -- decomposition -------------------------------------------------------


@dataclass(frozen=True)
class DecompositionTree:
    """Indecomposable pieces plus the shared free vertices gluing them."""

    pieces: tuple  # tuple[(Graph, labels)] with labels mapping back to the input
    glue: tuple    # tuple[(piece_index, piece_index, original_vertex)]


def _split_vertex(g: Graph) -> tuple[int, list[int]] | None:
    """A vertex separating g into two parts in which it is free, if any."""
    for v in range(g.n):
        comps = components(g, 1 << v)
        if len(comps) != 2:
            continue
        nb = g.adj[v]
        if g.is_clique(nb & comps[0]) and g.is_clique(nb & comps[1]):
            return v, comps
    return None


def decompose(g: Graph) -> DecompositionTree:
    """Split repeatedly at free-vertex joints; pieces keep original labels."""
    if not is_connected(g):
        raise ValueError("decompose expects a connected graph")
    pieces: list[tuple[Graph, tuple[int, ...]]] = []
    glue: list[tuple[int, int, int]] = []

    def rec(sub: Graph, labels: tuple[int, ...]) -> list[int]:
        found = _split_vertex(sub)
        if found is None:
            pieces.append((sub, labels))
            return [len(pieces) - 1]
        v, comps = found
        orig = labels[v]
        halves = []
        for comp in comps:
            part = induced_subgraph(sub, comp | 1 << v)
            halves.append(rec(part.graph, tuple(labels[i] for i in part.vertices)))
        left = next(i for i in halves[0] if orig in pieces[i][1])
        right = next(i for i in halves[1] if orig in pieces[i][1])
        glue.append((left, right, orig))
        return halves[0] + halves[1]

    rec(g, tuple(range(g.n)))
    return DecompositionTree(tuple(pieces), tuple(glue))


def is_indecomposable(g: Graph) -> bool:
    return _split_vertex(g) is None


# -- strong unmixedness ---------------------------------------------------


class LruCache:
    """Bounded mapping with least-recently-used eviction; races are benign."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._data: OrderedDict = OrderedDict()

    def __len__(self) -> int:
        return len(self._data)

    def get(self, key, default=None):
        try:
            value = self._data.pop(key)
        except KeyError:
            return default
        self._data[key] = value
        return value

    def put(self, key, value) -> None:
        self._data.pop(key, None)
        self._data[key] = value
        while len(self._data) > self.capacity:
            self._data.popitem(last=False)

    def clear(self) -> None:
        self._data.clear()


def _default_capacity() -> int:
    raw = os.environ.get("BEI_CACHE_CAP", "")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    return cap if cap > 0 else 1 << 20


_su_cache = LruCache(_default_capacity())


def strong_unmixedness_cache() -> LruCache:
    return _su_cache


def memo_key(g: Graph) -> bytes:
    """Canonical certificate when feasible, exact labeled encoding otherwise."""
    if g.n <= canon.SIZE_LIMIT:
        return canon.certificate(g)
    return b"L" + encode_graph6(g)


def is_strongly_unmixed(g: Graph, _cache: LruCache | None = None) -> bool:
    """Recursive strong-unmixedness check, memoized on isomorphism certificates.

    Components whose graphs are complete terminate the recursion; otherwise
    the ideal must be unmixed componentwise and some cutpoint v must leave
    the deletion, the saturation, and the saturated deletion all strongly
    unmixed.  Decomposable graphs are handled piecewise, which agrees with
    the direct recursion (checked against it in the test suite).
    """
    cache = _cache if _cache is not None else _su_cache
    comps = components(g)
    if len(comps) == 1:
        return _su_connected(g, cache)
    for comp in comps:
        piece = induced_subgraph(g, comp).graph
        if not _su_connected(piece, cache):
            return False
    return True


def _su_connected(g: Graph, cache: LruCache) -> bool:
    if g.is_complete():
        return True
    key = memo_key(g)
    hit = cache.get(key)
    if hit is not None:
        return hit
    result = False
    if unmixedness(g).ok:
        tree = decompose(g)
        if len(tree.pieces) > 1:
            result = all(_su_connected(p, cache) for p, _ in tree.pieces)
        else:
            for v in bits(cutpoints(g)):
                if not is_strongly_unmixed(delete_vertices(g, 1 << v).graph, cache):
                    continue
                sat = saturate(g, v)
                if is_strongly_unmixed(sat, cache) and is_strongly_unmixed(
                    delete_vertices(sat, 1 << v).graph, cache
                ):
                    result = True
                    break
    cache.put(key, result)
    return result


def strongly_unmixed_literal(g: Graph) -> bool:
    """Direct transcription of the recursive definition; test oracle only."""
    comps = components(g)
    if all(induced_subgraph(g, c).graph.is_complete() for c in comps):
        return True
    for c in comps:
        if not unmixedness(induced_subgraph(g, c).graph).ok:
            return False
    cut = 0
    for c in comps:
        part = induced_subgraph(g, c)
        for v in bits(cutpoints(part.graph)):
            cut |= 1 << part.vertices[v]
    for v in bits(cut):
        rest = delete_vertices(g, 1 << v).graph
        sat = saturate(g, v)
        sat_rest = delete_vertices(sat, 1 << v).graph
        if (
            strongly_unmixed_literal(rest)
            and strongly_unmixed_literal(sat)
            and strongly_unmixed_literal(sat_rest)
        ):
            return True
    return False
