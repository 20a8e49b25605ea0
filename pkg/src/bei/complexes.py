"""The simplicial complex of the lexicographic initial ideal of a binomial edge ideal.

Ground set: 2n symbols x_0..x_{n-1}, y_0..y_{n-1} (bit i is x_i, bit n+i is
y_i; the I/O boundary prints 1-based indices).  Facets are indexed by
cutsets T and one chosen vertex per component: the component with choice w
contributes y_j for j <= w and x_j for j >= w.  Minimal nonfaces of this
complex coincide with the initial-ideal generators read off admissible
paths, which the test suite exploits as a dual oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .cutsets import CutsetFamily, cutsets, unmixedness
from .graphs import Graph, bits, is_connected

# -- facet complex -------------------------------------------------------


@dataclass(frozen=True)
class FacetComplex:
    """Inclusion-maximal faces of a complex on the 2n symbol ground set."""

    n: int  # vertex count of the underlying graph; symbols live in 2n bits
    facets: tuple[int, ...]  # deduplicated, maximal, sorted by mask

    @property
    def dimension(self) -> int:
        return max(f.bit_count() for f in self.facets) - 1

    def is_pure(self) -> bool:
        sizes = {f.bit_count() for f in self.facets}
        return len(sizes) == 1

    def is_face(self, mask: int) -> bool:
        return any(mask & ~f == 0 for f in self.facets)


def _maximal(masks) -> tuple[int, ...]:
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: -x.bit_count()):
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


def facets_from_cutsets(g: Graph, fam: CutsetFamily) -> FacetComplex:
    """All facets F(T, choice) over the cutset family, reduced to maximal sets."""
    if fam.graph != g:
        raise ValueError("cutset family does not belong to this graph")
    n = g.n
    raw = []
    for t, comps in fam.sets:
        expected = (n - t.bit_count()) + len(comps)
        per_comp = []
        for c in comps:
            options = []
            for w in bits(c):
                ymask = c & ((1 << (w + 1)) - 1)
                xmask = c & ~((1 << w) - 1)
                options.append(xmask | ymask << n)
            per_comp.append(options)
        for pick in product(*per_comp):
            facet = 0
            for part in pick:
                facet |= part
            if facet.bit_count() != expected:
                raise AssertionError("facet size disagrees with (n - |T|) + c(T)")
            raw.append(facet)
    return FacetComplex(n, _maximal(raw))


def initial_complex(g: Graph) -> FacetComplex:
    """Facet complex of the initial ideal, computing the cutsets internally."""
    if not is_connected(g):
        raise ValueError("initial complex expects a connected graph")
    return facets_from_cutsets(g, cutsets(g))


# -- admissible-path generators -------------------------------------------


@dataclass(frozen=True)
class MonomialSet:
    """Inclusion-minimal squarefree monomials as 2n-bit supports."""

    n: int
    monomials: tuple[int, ...]  # sorted masks forming an antichain


def _minimal(masks, n: int) -> MonomialSet:
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: (x.bit_count(), x)):
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return MonomialSet(n, tuple(sorted(kept)))


def _has_shortcut(g: Graph, i: int, j: int, interior: tuple[int, ...]) -> bool:
    """True if some proper subsequence of the interior already joins i to j."""
    for size in range(len(interior)):
        for sub in combinations(interior, size):
            seq = (i, *sub, j)
            if all(g.has_edge(seq[k], seq[k + 1]) for k in range(len(seq) - 1)):
                return True
    return False


def admissible_path_generators(g: Graph) -> MonomialSet:
    """Initial-ideal generators x_i y_j u from admissible paths i -> j, i < j.

    A path is admissible when it is simple, its interior vertices are all
    below i or above j, and no proper interior subsequence is itself a
    path from i to j.  The interior contributes x_k for k > j and y_k for
    k < i.  The result is reduced to the minimal antichain.
    """
    n = g.n
    monomials: list[int] = []
    for i in range(n):
        for j in range(i + 1, n):
            base = (1 << i) | (1 << (n + j))
            if g.has_edge(i, j):
                # any longer path has the length-one shortcut i-j
                monomials.append(base)
                continue
            allowed = ((1 << i) - 1) | (((1 << n) - 1) >> (j + 1) << (j + 1))
            target = g.adj[j]

            def dfs(v: int, visited: int, interior: tuple[int, ...]) -> None:
                if (1 << v) & target and interior:
                    if not _has_shortcut(g, i, j, interior):
                        mono = base
                        for k in interior:
                            mono |= 1 << k if k > j else 1 << (n + k)
                        monomials.append(mono)
                for u in bits(g.adj[v] & allowed & ~visited):
                    dfs(u, visited | 1 << u, interior + (u,))

            dfs(i, (1 << i) | (1 << j), ())
    return _minimal(monomials, n)


# -- minimal nonfaces ------------------------------------------------------


def minimal_nonfaces(c: FacetComplex) -> MonomialSet:
    """Inclusion-minimal symbol sets contained in no facet.

    Breadth-first growth over faces: a candidate of size k+1 extends a size-k
    face by one higher symbol, so every minimal nonface (all of whose proper
    subsets are faces) is generated exactly once.
    """
    ground = 2 * c.n
    facets = c.facets
    nonfaces: list[int] = []
    faces = {0}
    while faces:
        next_faces = set()
        candidates = []
        for f in faces:
            for s in range(f.bit_length(), ground):
                m = f | 1 << s
                if any(m & ~facet == 0 for facet in facets):
                    next_faces.add(m)
                else:
                    candidates.append(m)
        for m in sorted(candidates):
            if not any(nf & ~m == 0 for nf in nonfaces):
                nonfaces.append(m)
        faces = next_faces
    return MonomialSet(c.n, tuple(sorted(nonfaces)))


# -- links and the Serre S2 condition --------------------------------------


def link(c: FacetComplex, face: int) -> FacetComplex:
    """Link of a face: maximal residues of the facets containing it."""
    diffs = [f & ~face for f in c.facets if face & ~f == 0]
    if not diffs:
        raise ValueError("not a face of the complex")
    return FacetComplex(c.n, _maximal(diffs))


def _link_connected(facet_masks: list[int]) -> bool:
    """Connectivity of the facet-intersection graph by union-find."""
    parent = list(range(len(facet_masks)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(facet_masks)):
        for b in range(a + 1, len(facet_masks)):
            if facet_masks[a] & facet_masks[b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
    roots = {find(a) for a in range(len(facet_masks))}
    return len(roots) <= 1


@dataclass(frozen=True)
class S2Report:
    ok: bool
    witness: int | None = None  # first face (by size, mask) with disconnected link
    reason: str | None = None
    faces_checked: int = 0
    faces_pruned: int = 0
    small_dim_disconnected: int = 0  # diagnostic: disconnections below (n+1)/2

    def __bool__(self) -> bool:
        return self.ok


def _sorted_pattern(face: int, n: int) -> bool:
    """All y indices strictly below all x indices (either side may be empty)."""
    xpart = face & ((1 << n) - 1)
    ypart = face >> n
    if not xpart or not ypart:
        return True
    return ypart.bit_length() - 1 < (xpart & -xpart).bit_length() - 1


def s2_report(g: Graph, prune_sorted_faces: bool = False) -> S2Report:
    """Serre S2 via link connectivity of the initial-ideal complex.

    Not unmixed means not S2 immediately.  Otherwise every face whose link
    has dimension at least one must have a connected link; faces are the
    deduplicated subsets of the facets, visited by increasing (size, mask)
    so the reported witness is minimal in that order.

    ``prune_sorted_faces`` skips faces sorted as y-block below x-block with
    at most n-1 symbols, whose links are connected for unmixed ideals; it
    is off by default and validated against the full scan in the tests.
    """
    un = unmixedness(g)
    if not un.ok:
        return S2Report(False, None, "not-unmixed")
    c = initial_complex(g)
    cover: dict[int, int] = {}
    for idx, facet in enumerate(c.facets):
        # enumerate all subsets of the facet
        sub = facet
        while True:
            cover[sub] = cover.get(sub, 0) | (1 << idx)
            if sub == 0:
                break
            sub = (sub - 1) & facet
    checked = pruned = small_disc = 0
    threshold = (g.n + 1) // 2
    for face in sorted(cover, key=lambda m: (m.bit_count(), m)):
        if prune_sorted_faces and face.bit_count() <= g.n - 1 and _sorted_pattern(face, g.n):
            pruned += 1
            continue
        members = cover[face]
        diffs = [c.facets[i] & ~face for i in bits(members)]
        diffs = [d for d in diffs if d]
        if not diffs or max(d.bit_count() for d in diffs) < 2:
            continue  # link dimension below one
        checked += 1
        if len(diffs) > 1 and not _link_connected(diffs):
            if face.bit_count() <= threshold:
                small_disc += 1
            return S2Report(False, face, "disconnected-link", checked, pruned, small_disc)
    return S2Report(True, None, None, checked, pruned, small_disc)


def is_s2(g: Graph, prune_sorted_faces: bool = False) -> bool:
    return s2_report(g, prune_sorted_faces).ok


# -- enumerative invariants -------------------------------------------------


def f_vector(c: FacetComplex) -> tuple[int, ...]:
    """Face counts by size with the conventional leading 1 for the empty face."""
    seen = set()
    for facet in c.facets:
        sub = facet
        while True:
            seen.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & facet
    d = max(f.bit_count() for f in c.facets)
    counts = [0] * (d + 1)
    for face in seen:
        counts[face.bit_count()] += 1
    return tuple(counts)  # counts[0] == 1 is the empty face


def h_vector(f: tuple[int, ...], d: int) -> tuple[int, ...]:
    """h_k as the alternating binomial sum over the f-vector, k = 0..d."""
    if len(f) != d + 1:
        raise ValueError(f"f-vector of length {len(f)} inconsistent with d={d}")
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def multiplicity(c: FacetComplex) -> int:
    """Number of facets of maximal size."""
    d = max(f.bit_count() for f in c.facets)
    return sum(1 for f in c.facets if f.bit_count() == d)


# -- text serialization ------------------------------------------------------


def symbol_name(bit: int, n: int) -> str:
    """Symbols print 1-based: bit i is x_{i+1}, bit n+i is y_{i+1}."""
    if bit < n:
        return f"x{bit + 1}"
    return f"y{bit - n + 1}"


def parse_symbol(token: str, n: int) -> int:
    kind, idx = token[0], int(token[1:]) - 1
    if not 0 <= idx < n:
        raise ValueError(f"symbol index out of range: {token}")
    if kind == "x":
        return idx
    if kind == "y":
        return n + idx
    raise ValueError(f"bad symbol: {token}")


def format_mask(mask: int, n: int) -> str:
    """Space-separated symbols sorted by vertex index, x before y."""
    key = lambda b: (b % n, b // n)
    return " ".join(symbol_name(b, n) for b in sorted(bits(mask), key=key))


def parse_mask(line: str, n: int) -> int:
    mask = 0
    for token in line.split():
        mask |= 1 << parse_symbol(token, n)
    return mask


def format_facets(c: FacetComplex) -> list[str]:
    return [format_mask(f, c.n) for f in c.facets]


def format_monomials(m: MonomialSet) -> list[str]:
    return [format_mask(x, m.n) for x in m.monomials]
