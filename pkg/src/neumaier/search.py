"""Isomorph-free exhaustive generation by vertex-wise neighbourhood completion.

A :class:`PartialGraph` records decided edges and decided non-edges.  The
search completes one vertex at a time: :func:`extend_vertex` picks every valid
set of new neighbours for ``x`` and keeps one set per orbit under the
automorphisms of the partial graph that fix ``x`` (and preserve degree caps
and the decided relation), so isomorphic subtrees are explored once.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import combinations
from pathlib import Path

from .canon import automorphism_group, canonical_form, set_orbits
from .errors import BudgetExceeded, DomainError
from .graph import Graph, Tag, bits, classify, decode_graph6, encode_graph6, mask_of
from .params import ParameterSet, check_all, is_admissible


# ---------------------------------------------------------------------------
# predicates

@dataclass(frozen=True)
class CommonNeighborCap:
    """Adjacent vertices have at most ``cap`` common neighbours."""
    cap: int

    def admits_edge(self, pg: "PartialGraph", x: int, w: int) -> bool:
        return (pg.one[x] & pg.one[w]).bit_count() <= self.cap

    def violated(self, pg: "PartialGraph") -> bool:
        for u in range(pg.n):
            for w in bits(pg.one[u] >> (u + 1) << (u + 1)):
                if (pg.one[u] & pg.one[w]).bit_count() > self.cap:
                    return True
        return False


@dataclass(frozen=True)
class EdgeRegular:
    """Adjacent vertices end with exactly ``lam`` common neighbours: never more,
    and never so few decided-or-open candidates that ``lam`` is out of reach."""
    lam: int

    def admits_edge(self, pg: "PartialGraph", x: int, w: int) -> bool:
        return (pg.one[x] & pg.one[w]).bit_count() <= self.lam

    def violated(self, pg: "PartialGraph") -> bool:
        for u in range(pg.n):
            ou = pg.open(u)
            ru = pg.degree_caps[u] - pg.one[u].bit_count()
            for w in bits(pg.one[u] >> (u + 1) << (u + 1)):
                have = (pg.one[u] & pg.one[w]).bit_count()
                if have > self.lam:
                    return True
                ow = pg.open(w)
                rw = pg.degree_caps[w] - pg.one[w].bit_count()
                # new common neighbours need an edge at u, at w, or both
                a = (pg.one[u] & ow).bit_count()
                b = (ou & pg.one[w]).bit_count()
                c = (ou & ow).bit_count()
                if have + min(a + b + c, a + ru, b + rw) < self.lam:
                    return True
        return False


@dataclass(frozen=True)
class NoClique:
    """No clique on ``size`` vertices among the decided edges."""
    size: int

    def admits_edge(self, pg, x, w) -> bool:
        return True

    def violated(self, pg: "PartialGraph") -> bool:
        size = self.size

        def grow(cand, depth):
            if depth == size:
                return True
            while cand:
                if depth + cand.bit_count() < size:
                    return False
                low = cand & -cand
                u = low.bit_length() - 1
                cand ^= low
                if grow(cand & pg.one[u], depth + 1):
                    return True
            return False

        return grow((1 << pg.n) - 1, 0)


@dataclass(frozen=True)
class RegularSet:
    """Every vertex outside ``members`` ends with exactly ``e`` neighbours inside it."""
    members: int
    e: int

    def admits_edge(self, pg: "PartialGraph", x: int, w: int) -> bool:
        m = self.members
        xin, win = m >> x & 1, m >> w & 1
        if xin == win:
            return True
        out = w if xin else x
        return (pg.one[out] & m).bit_count() < self.e

    def violated(self, pg: "PartialGraph") -> bool:
        m = self.members
        for u in range(pg.n):
            if m >> u & 1:
                continue
            have = (pg.one[u] & m).bit_count()
            if have > self.e or have + (pg.open(u) & m).bit_count() < self.e:
                return True
        return False


@dataclass(frozen=True)
class ScopedCommonCap:
    """Adjacent vertices inside ``scope`` share at most ``cap`` neighbours inside ``scope``."""
    scope: int
    cap: int

    def admits_edge(self, pg: "PartialGraph", x: int, w: int) -> bool:
        sc = self.scope
        if not (sc >> x & 1 and sc >> w & 1):
            return True
        return (pg.one[x] & pg.one[w] & sc).bit_count() <= self.cap

    def violated(self, pg: "PartialGraph") -> bool:
        sc = self.scope
        for u in bits(sc):
            for w in bits(pg.one[u] & sc & ~((1 << (u + 1)) - 1)):
                if (pg.one[u] & pg.one[w] & sc).bit_count() > self.cap:
                    return True
        return False


# ---------------------------------------------------------------------------
# partial graphs

@dataclass(frozen=True)
class PartialGraph:
    n: int
    one: tuple[int, ...]
    decided: tuple[int, ...]
    degree_caps: tuple[int, ...]
    forbidden: tuple = ()
    exact_degrees: bool = True

    @classmethod
    def start(cls, n: int, caps, forbidden=(), edges=(), decided_pairs=(), exact_degrees=True):
        one = [0] * n
        dec = [0] * n
        for u, w in edges:
            one[u] |= 1 << w
            one[w] |= 1 << u
        for u, w in list(edges) + list(decided_pairs):
            dec[u] |= 1 << w
            dec[w] |= 1 << u
        if isinstance(caps, int):
            caps = [caps] * n
        return cls(n, tuple(one), tuple(dec), tuple(caps), tuple(forbidden), exact_degrees)

    @property
    def graph(self) -> Graph:
        return Graph.trusted(self.n, self.one)

    def degree(self, u: int) -> int:
        return self.one[u].bit_count()

    def open(self, u: int) -> int:
        """Undecided partners of ``u``."""
        return ((1 << self.n) - 1) & ~(self.decided[u] | (1 << u))

    def is_complete(self, u: int) -> bool:
        return not self.open(u)

    def decided_pairs(self) -> set[tuple[int, int]]:
        return {(u, w) for u in range(self.n) for w in bits(self.decided[u]) if u < w}

    def with_neighbors(self, x: int, nbrs, scope: int | None = None) -> "PartialGraph":
        """Join ``x`` to ``nbrs`` and declare every other open pair at ``x`` (inside
        ``scope`` if given) a non-edge."""
        one = list(self.one)
        dec = list(self.decided)
        add = mask_of(nbrs)
        rest = self.open(x) if scope is None else self.open(x) & scope
        one[x] |= add
        for w in bits(add):
            one[w] |= 1 << x
        dec[x] |= rest
        for w in bits(rest):
            dec[w] |= 1 << x
        return replace(self, one=tuple(one), decided=tuple(dec))

    def consistent(self) -> bool:
        for u in range(self.n):
            d = self.one[u].bit_count()
            if d > self.degree_caps[u]:
                return False
            if self.exact_degrees and d + self.open(u).bit_count() < self.degree_caps[u]:
                return False
        return not any(p.violated(self) for p in self.forbidden)

    def symmetry_graph(self) -> tuple[Graph, list[int]]:
        """Edges on ``0..n-1`` and decided non-edges on a copy ``n..2n-1``, copies
        joined by a matching; automorphisms fixing the two halves preserve both relations."""
        n = self.n
        edges = [(u, w) for u in range(n) for w in bits(self.one[u]) if u < w]
        zero = [(n + u, n + w) for u in range(n)
                for w in bits(self.decided[u] & ~self.one[u]) if u < w]
        match = [(u, n + u) for u in range(n)]
        return Graph.from_edges(2 * n, edges + zero + match), list(range(n))


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    completions_found: int = 0
    isomorph_rejections: int = 0
    wall_time: float = 0.0
    budget_hit: bool = False

    def merge(self, other: "SearchStats") -> None:
        self.nodes_expanded += other.nodes_expanded
        self.completions_found += other.completions_found
        self.isomorph_rejections += other.isomorph_rejections

    def as_row(self) -> list[str]:
        return [str(self.nodes_expanded), str(self.completions_found),
                str(self.isomorph_rejections), f"{self.wall_time:.3f}",
                "budget" if self.budget_hit else "exhausted"]


def _stabilizer_gens(pg: PartialGraph, x: int, labels=None):
    g, _ = pg.symmetry_graph()
    n = pg.n
    classes: dict = {}
    for u in range(n):
        key = (u == x, pg.is_complete(u), pg.degree_caps[u], labels[u] if labels else 0)
        classes.setdefault(key, []).append(u)
    cells = [classes[k] for k in sorted(classes)]
    cells += [[n + u for u in c] for c in cells]
    grp = automorphism_group(g, cells)
    return [gen[:n] for gen in grp.generators]


def extend_vertex(partial: PartialGraph, x: int, target_degree: int,
                  scope: int | None = None, labels=None) -> list[PartialGraph]:
    """Children completing ``x`` to ``target_degree``, one per orbit of neighbour sets.

    With ``scope`` only partners inside that mask are considered and closed.
    ``labels`` adds a vertex colouring the symmetries must respect.
    A vertex already at its target comes back unchanged.
    """
    deficit = target_degree - partial.degree(x)
    if deficit < 0:
        return []
    if deficit == 0:
        return [partial]
    avail = partial.open(x) if scope is None else partial.open(x) & scope
    cands = [w for w in bits(avail)
             if partial.degree(w) < partial.degree_caps[w]
             and all(p.admits_edge(partial, x, w) for p in partial.forbidden)]
    if len(cands) < deficit:
        return []
    gens = _stabilizer_gens(partial, x, labels)
    reps = set_orbits(gens, combinations(cands, deficit), partial.n)
    out = []
    for rep in reps:
        child = partial.with_neighbors(x, rep, scope)
        if child.consistent():
            out.append(child)
    return out


# ---------------------------------------------------------------------------
# generic completion driver

def _next_vertex(pg: PartialGraph) -> int | None:
    for u in range(pg.n):
        if not pg.is_complete(u):
            return u
    return None


def _children(pg: PartialGraph, x: int) -> list[PartialGraph]:
    if pg.degree(x) == pg.degree_caps[x]:
        child = pg.with_neighbors(x, ())
        return [child] if child.consistent() else []
    return extend_vertex(pg, x, pg.degree_caps[x])


def complete_all(roots, accept=None, budget: float | None = None, stats: SearchStats | None = None,
                 t0: float | None = None, on_budget=None):
    """Depth-first completion of every root.  Returns canonical representatives
    (key -> Graph) of the completed graphs that pass ``accept``."""
    stats = stats or SearchStats()
    t0 = time.monotonic() if t0 is None else t0
    found: dict = {}
    stack = list(reversed(roots))
    while stack:
        if budget is not None and time.monotonic() - t0 > budget:
            stats.budget_hit = True
            if on_budget:
                on_budget(stack, found)
            break
        pg = stack.pop()
        stats.nodes_expanded += 1
        x = _next_vertex(pg)
        if x is None:
            g = pg.graph
            if accept is not None and not accept(g):
                continue
            stats.completions_found += 1
            key = canonical_form(g).key
            if key in found:
                stats.isomorph_rejections += 1
            else:
                found[key] = g
            continue
        stack.extend(reversed(_children(pg, x)))
    return found, stats


def _sorted_graphs(found: dict) -> list[Graph]:
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------------------
# small-graph oracles

def enumerate_by_degree_sequence(seq) -> list[Graph]:
    """One graph per isomorphism class with the given degree sequence."""
    seq = list(seq)
    n = len(seq)
    if n > 10:
        raise DomainError("degree-sequence enumeration is limited to 10 vertices")
    if sum(seq) % 2 or any(d < 0 or d >= n for d in seq):
        raise DomainError(f"{tuple(seq)} is not a candidate degree sequence")
    order = sorted(range(n), key=lambda i: -seq[i])
    caps = [seq[i] for i in order]
    root = PartialGraph.start(n, caps)
    found, _ = complete_all([root])
    return _sorted_graphs(found)


def enumerate_regular_diamondfree(n: int = 9, degree: int = 4) -> list[Graph]:
    """``degree``-regular graphs on ``n`` vertices without a diamond or K4 subgraph."""
    if n * degree % 2:
        return []
    root = PartialGraph.start(n, degree, (CommonNeighborCap(1), NoClique(4)))
    found, _ = complete_all([root])
    return _sorted_graphs(found)


def triangle_partition(g: Graph) -> list[tuple[int, int, int]] | None:
    """A partition of the vertex set into triangles, or ``None``."""
    if g.n % 3:
        return None

    def rec(left):
        if not left:
            return []
        u = (left & -left).bit_length() - 1
        nb = g.adj[u] & left
        for w in bits(nb):
            for t in bits(nb & g.adj[w] & ~((1 << (w + 1)) - 1)):
                rest = rec(left & ~((1 << u) | (1 << w) | (1 << t)))
                if rest is not None:
                    return [(u, w, t)] + rest
        return None

    return rec((1 << g.n) - 1)


def gamma1() -> Graph:
    """The 4-regular graph on nine vertices without a triangle partition.

    Vertices ``x, a, ..., h`` are ``0..8``.
    """
    x, a, b, c, d, e, f, g, h = range(9)
    edges = [(x, e), (x, f), (x, g), (x, h), (a, b), (b, c),
             (d, e), (d, f), (d, g), (d, h),
             (e, a), (e, b), (f, b), (f, c), (g, c), (g, a), (h, a), (h, c)]
    return Graph.from_edges(9, edges)


# ---------------------------------------------------------------------------
# strictly Neumaier search

def clique_skeletons(p: ParameterSet) -> list[PartialGraph]:
    """Seeds: an ``s``-clique on ``0..s-1`` with every other vertex joined to ``e``
    of its vertices, one seed per isomorphism class of attachment pattern."""
    from .ilp.designs import enumerate_small_designs
    v, k, lam, e, s = p.astuple()
    rest = v - s
    per_vertex = k - s + 1          # outside neighbours of a clique vertex
    per_pair = lam - s + 2          # outside common neighbours of a clique edge
    if per_vertex < 0 or per_pair < 0 or rest * e != s * per_vertex:
        return []
    if e == 1:
        if per_pair:
            return []
        patterns = [[(c,) for c in range(s) for _ in range(per_vertex)]]
    elif e == 0:
        patterns = [[()] * rest] if per_vertex == 0 else []
    else:
        patterns = [list(d.blocks) for d in enumerate_small_designs(s, e, per_pair, rest)]
    caps = [k] * v
    forbidden = (EdgeRegular(lam), NoClique(s + 1))
    seeds = []
    for blocks in patterns:
        blocks = sorted(blocks)
        edges = list(combinations(range(s), 2))
        edges += [(c, s + i) for i, b in enumerate(blocks) for c in b]
        decided = [(c, w) for c in range(s) for w in range(s, v)]
        pg = PartialGraph.start(v, caps, forbidden, edges, decided)
        if pg.consistent():
            seeds.append(pg)
    return seeds


def _accept_strict(p: ParameterSet):
    want = p.astuple()

    def accept(g: Graph) -> bool:
        try:
            verdict = classify(g)
        except DomainError:
            return False
        return verdict.tag is Tag.StrictlyNeumaier and verdict.parameters == want
    return accept


def _pg_to_json(pg: PartialGraph, stage: str) -> dict:
    return {"stage": stage,
            "edges": [[u, w] for u in range(pg.n) for w in bits(pg.one[u]) if u < w],
            "decided": sorted([list(t) for t in pg.decided_pairs()])}


def _pg_from_json(d: dict, p: ParameterSet) -> PartialGraph:
    v, k, lam, e, s = p.astuple()
    return PartialGraph.start(v, [k] * v, (EdgeRegular(lam), NoClique(s + 1)),
                              [tuple(x) for x in d["edges"]], [tuple(x) for x in d["decided"]])


def write_checkpoint(path, p: ParameterSet, frontier, found: dict, stats: SearchStats) -> None:
    data = {"params": str(p.astuple()), "frontier": [_pg_to_json(pg, "strict") for pg in frontier],
            "found": [encode_graph6(found[k]) for k in sorted(found)],
            "nodes_expanded": stats.nodes_expanded}
    Path(path).write_text(json.dumps(data))


def read_checkpoint(path, p: ParameterSet):
    data = json.loads(Path(path).read_text())
    if data["params"] != str(p.astuple()):
        raise DomainError(f"checkpoint is for {data['params']}, not {p.astuple()}")
    frontier = [_pg_from_json(d, p) for d in data["frontier"]]
    found = {canonical_form(g).key: g for g in map(decode_graph6, data["found"])}
    return frontier, found


def _subtree(args):
    p, roots = args
    found, stats = complete_all(roots, _accept_strict(p))
    return found, stats


def exhaustive_strict_search(p: ParameterSet, budget: float | None = None, workers: int = 1,
                             checkpoint=None, resume=None):
    """All strictly Neumaier graphs with parameters ``p``, pairwise non-isomorphic.

    Raises :class:`BudgetExceeded` (with the graphs found so far) when the
    budget in seconds runs out; the open frontier is written to ``checkpoint``.
    """
    if not is_admissible(p):
        raise DomainError(f"{p} is not admissible: {', '.join(check_all(p).ids())}")
    t0 = time.monotonic()
    stats = SearchStats()
    if resume is not None:
        roots, found = read_checkpoint(resume, p)
    else:
        roots, found = clique_skeletons(p), {}
    accept = _accept_strict(p)

    if workers > 1:
        # expand breadth-first until there is enough work to share
        frontier = roots
        while frontier and len(frontier) < 4 * workers:
            nxt = []
            for pg in frontier:
                x = _next_vertex(pg)
                if x is None:
                    nxt.append(pg)
                else:
                    stats.nodes_expanded += 1
                    nxt.extend(_children(pg, x))
            if all(_next_vertex(pg) is None for pg in nxt):
                frontier = nxt
                break
            frontier = nxt
        chunks = [frontier[i::workers * 4] for i in range(workers * 4)]
        with ProcessPoolExecutor(workers) as ex:
            for sub_found, sub_stats in ex.map(_subtree, [(p, c) for c in chunks if c]):
                stats.merge(sub_stats)
                for key, g in sub_found.items():
                    if key in found:
                        stats.isomorph_rejections += 1
                    else:
                        found[key] = g
    else:
        def save(stack, _found):
            if checkpoint is not None:
                write_checkpoint(checkpoint, p, stack, {**found, **_found}, stats)

        sub, _ = complete_all(roots, accept, budget, stats, t0, save)
        for key, g in sub.items():
            if key in found:
                stats.isomorph_rejections += 1
            else:
                found[key] = g
    stats.wall_time = time.monotonic() - t0
    graphs = _sorted_graphs(found)
    if stats.budget_hit:
        raise BudgetExceeded(f"budget of {budget}s exhausted after {stats.nodes_expanded} nodes",
                             graphs, stats)
    return graphs, stats


# ---------------------------------------------------------------------------
# three-stage completion around a vertex, for (25,16,9;3,5)

_L51_BASE = [(5, 10), (10, 6), (6, 11), (11, 5), (5, 6), (6, 7), (7, 11), (11, 12), (12, 6),
             (7, 12), (10, 11), (5, 8), (8, 10), (10, 9), (9, 5), (7, 8), (8, 12), (12, 9),
             (9, 7), (1, 6), (2, 6), (3, 6), (4, 6), (13, 11), (14, 11), (15, 11), (16, 11),
             (7, 3), (7, 4), (7, 13), (7, 14), (12, 1), (12, 2), (12, 15), (12, 16)]

# the last four two-edge paths x_a - x_mid - x_b differ between the four seeds
_L51_SEEDS = {
    "a": [(1, 5, 2), (13, 5, 14), (3, 10, 4), (15, 10, 16)],
    "b": [(1, 5, 2), (13, 5, 15), (3, 10, 4), (14, 10, 16)],
    "c": [(1, 5, 3), (13, 5, 15), (2, 10, 4), (14, 10, 16)],
    "d": [(1, 5, 3), (13, 5, 14), (2, 10, 4), (15, 10, 16)],
    # d is isomorphic to b; e is the one configuration class that a..d miss
    "e": [(1, 5, 2), (15, 5, 16), (3, 10, 4), (13, 10, 14)],
}

L51_PARAMS = (25, 16, 9, 3, 5)
_U = 0
_GAMMA1 = mask_of(range(1, 17))
_GAMMA2 = mask_of(range(17, 25))
_L51_LABELS = [0] + [1] * 16 + [2] * 8


def lemma51_seed(name: str) -> PartialGraph:
    """Vertex ``0`` is ``u``, ``1..16`` are its neighbours ``x_1..x_16``, ``17..24`` the rest."""
    v, k, lam, e, s = L51_PARAMS
    edges = [(_U, i) for i in range(1, 17)] + _L51_BASE
    for a, mid, b in _L51_SEEDS[name]:
        edges += [(a, mid), (mid, b)]
    decided = [(_U, w) for w in range(17, 25)]
    caps = [k] * v
    # each x_i has k-1-lam = 6 neighbours among the 8 far vertices, so two of them share at
    # least 4 there and adjacent ones at most lam-1-4 = 4 inside the neighbourhood of u
    far = v - 1 - k
    inner_cap = lam - 1 - max(0, 2 * (k - 1 - lam) - far)
    forbidden = (EdgeRegular(lam), NoClique(s + 1), ScopedCommonCap(_GAMMA1, inner_cap),
                 RegularSet(mask_of((_U, 5, 6, 10, 11)), e), RegularSet(mask_of((_U, 6, 7, 11, 12)), e))
    return PartialGraph.start(v, caps, forbidden, edges, decided)


def _stage_key(pg: PartialGraph):
    g, _ = pg.symmetry_graph()
    cells = [[0], list(range(1, 17)), list(range(17, 25))]
    cells += [[25 + u for u in c] for c in cells]
    return canonical_form(g, cells).key


def _run_stage(roots, steps, t0, budget, stats):
    """Apply ``steps`` (vertex, target degree, scope) in turn, deduping after each step.

    The completions of a partial graph do not depend on the order in which its
    vertices are finished, so isomorphic partial graphs can be merged early.
    """
    level = {_stage_key(pg): pg for pg in roots}
    for x, target, scope in steps:
        nxt: dict = {}
        for key in sorted(level):
            if budget is not None and time.monotonic() - t0 > budget:
                stats.budget_hit = True
                return [level[k] for k in sorted(level)]
            pg = level[key]
            stats.nodes_expanded += 1
            if pg.degree(x) == target:
                kids = [c for c in [pg.with_neighbors(x, (), scope)] if c.consistent()]
            else:
                kids = extend_vertex(pg, x, target, scope, _L51_LABELS)
            for c in kids:
                ck = _stage_key(c)
                if ck in nxt:
                    stats.isomorph_rejections += 1
                else:
                    nxt[ck] = c
        level = nxt
    return [level[k] for k in sorted(level)]


def lemma51_pipeline(seeds=("a", "b", "c", "d", "e"), budget: float | None = None, progress=None):
    """Complete each seed through three stages: edges inside ``Γ(u)``, edges between
    ``Γ(u)`` and the second subconstituent, then the second subconstituent itself.

    Returns the completed Neumaier graphs up to isomorphism and a table of the
    number of partial graphs surviving each stage per seed.
    """
    v, k, lam, e, s = L51_PARAMS
    t0 = time.monotonic()
    stats = SearchStats()
    inner = list(range(1, 17))
    order = sorted(inner, key=lambda i: (-lemma51_seed("a").degree(i), i))
    stage1 = [(x, 1 + lam, _GAMMA1) for x in order]
    stage2 = [(x, k, _GAMMA2) for x in inner]
    stage3 = [(w, k, None) for w in range(17, 25)]
    found: dict = {}
    table = []
    for name in seeds:
        level = [lemma51_seed(name)]
        row = [name]
        for steps in (stage1, stage2, stage3):
            level = _run_stage(level, steps, t0, budget, stats)
            row.append(len(level))
            if progress:
                progress(f"seed {name}: {len(level)} after stage {len(row) - 1}")
            if stats.budget_hit:
                raise BudgetExceeded(f"budget of {budget}s exhausted in seed {name}",
                                     _sorted_graphs(found), stats)
        table.append(tuple(row))
        for pg in level:
            g = pg.graph
            prof = classify(g)
            if prof.tag in (Tag.StrictlyNeumaier, Tag.NeumaierStronglyRegular) and \
                    prof.parameters == L51_PARAMS:
                stats.completions_found += 1
                key = canonical_form(g).key
                if key in found:
                    stats.isomorph_rejections += 1
                else:
                    found[key] = g
    stats.wall_time = time.monotonic() - t0
    return _sorted_graphs(found), table, stats
