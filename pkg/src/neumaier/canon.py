"""Canonical labelling, isomorphism and automorphism groups.

Individualization-refinement search over ordered partitions.  Each node is
refined to the coarsest equitable partition; the refinement trace is an
isomorphism invariant used to prune branches.  The canonical leaf is the one
with the lexicographically largest (trace sequence, relabelled graph) key.
Automorphisms found against the first leaf are used for orbit pruning at the
nodes of the first path, and the group order is the product of the orbit
lengths along that path.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graph import Graph, bits, encode_graph6

Coloring = Sequence[Sequence[int]]


@dataclass(frozen=True)
class CanonicalCertificate:
    canonical_labeling: tuple[int, ...]   # vertex -> canonical position
    canonical_string: str
    cell_sizes: tuple[int, ...] = ()

    @property
    def key(self) -> tuple[str, tuple[int, ...]]:
        return (self.canonical_string, self.cell_sizes)


@dataclass(frozen=True)
class AutGroup:
    generators: tuple[tuple[int, ...], ...]
    order: int
    vertex_orbits: tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# partition refinement

def _initial(n: int, coloring: Coloring | None) -> tuple[list[int], list[int]]:
    if not coloring:
        return list(range(n)), [n] + [0] * (n - 1) if n else []
    lab: list[int] = []
    csize = [0] * n
    seen = set()
    for cell in coloring:
        cell = sorted(cell)
        if not cell:
            continue
        csize[len(lab)] = len(cell)
        lab.extend(cell)
        seen.update(cell)
    if len(seen) != n or len(lab) != n:
        raise ValueError("coloring must partition the vertex set")
    return lab, csize


def _refine(adj: Sequence[int], lab: list[int], csize: list[int], queue: deque) -> tuple:
    n = len(lab)
    inq = set(queue)
    trace = []
    while queue:
        w = queue.popleft()
        inq.discard(w)
        wmask = 0
        for v in lab[w:w + csize[w]]:
            wmask |= 1 << v
        start = 0
        while start < n:
            size = csize[start]
            if size > 1:
                cell = lab[start:start + size]
                counts = [(adj[v] & wmask).bit_count() for v in cell]
                lo = min(counts)
                if lo != max(counts):
                    pairs = sorted(zip(counts, cell))
                    lab[start:start + size] = [v for _, v in pairs]
                    p = start
                    prev = pairs[0][0]
                    sig = []
                    for i in range(1, size + 1):
                        if i == size or pairs[i][0] != prev:
                            part = start + i - p
                            csize[p] = part
                            sig.append((prev, part))
                            if p not in inq:
                                queue.append(p)
                                inq.add(p)
                            p = start + i
                            if i < size:
                                prev = pairs[i][0]
                    trace.append((w, start, tuple(sig)))
            start += size
    return tuple(trace)


def equitable_partition(g: Graph, coloring: Coloring | None = None) -> list[list[int]]:
    """Coarsest equitable partition refining ``coloring`` (ordered cells)."""
    lab, csize = _initial(g.n, coloring)
    _refine(g.adj, lab, csize, deque(i for i in range(g.n) if csize[i]))
    out = []
    i = 0
    while i < g.n:
        out.append(lab[i:i + csize[i]])
        i += csize[i]
    return out


def _individualize(lab: list[int], csize: list[int], start: int, v: int) -> None:
    size = csize[start]
    i = lab.index(v, start, start + size)
    lab[start], lab[i] = lab[i], lab[start]
    csize[start] = 1
    csize[start + 1] = size - 1


def _target_cell(csize: list[int]) -> int | None:
    best = None
    bsize = 1 << 30
    i = 0
    n = len(csize)
    while i < n:
        s = csize[i]
        if 1 < s < bsize:
            best, bsize = i, s
            if s == 2:
                break
        i += s
    return best


class _Orbits:
    """Union-find orbits of a permutation set."""

    def __init__(self, n: int, gens):
        self.parent = list(range(n))
        for g in gens:
            for v, w in enumerate(g):
                self.union(v, w)

    def find(self, v):
        p = self.parent
        while p[v] != v:
            p[v] = p[p[v]]
            v = p[v]
        return v

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def orbits(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for v in range(len(self.parent)):
            groups.setdefault(self.find(v), []).append(v)
        return sorted(tuple(x) for x in groups.values())


# ---------------------------------------------------------------------------
# search

class _Search:
    def __init__(self, g: Graph, coloring: Coloring | None):
        self.g = g
        self.n = g.n
        self.adj = g.adj
        self.gens: list[tuple[int, ...]] = []
        self.first_path: list[int] = []
        self.first_traces: list[tuple] = []
        self.first_cert = None
        self.first_lab = None
        self.best_traces: list[tuple] = []
        self.best_cert = None
        self.best_lab = None
        self.orbit_lengths: list[int] = []
        lab, csize = _initial(self.n, coloring)
        self.cell_sizes = tuple(len(c) for c in coloring if c) if coloring else (self.n,)
        self.root = (lab, csize)

    def _cert(self, lab: list[int]) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(lab):
            pos[v] = i
        rows = [0] * self.n
        adj = self.adj
        for v in range(self.n):
            m = 0
            for w in bits(adj[v]):
                m |= 1 << pos[w]
            rows[pos[v]] = m
        return tuple(rows)

    def run(self) -> None:
        if self.n == 0:
            self.best_lab = []
            return
        lab, csize = self.root
        trace = _refine(self.adj, lab, csize, deque(i for i in range(self.n) if csize[i]))
        self._first(lab, csize, trace, 0)

    # the first path: explored before anything else, with orbit pruning
    def _first(self, lab, csize, trace, level):
        self.first_traces.append(trace)
        self.best_traces.append(trace)
        target = _target_cell(csize)
        if target is None:
            cert = self._cert(lab)
            self.first_cert = self.best_cert = cert
            self.first_lab = self.best_lab = list(lab)
            return
        cell = sorted(lab[target:target + csize[target]])
        c0 = cell[0]
        self.first_path.append(c0)
        l2, c2 = list(lab), list(csize)
        _individualize(l2, c2, target, c0)
        t2 = _refine(self.adj, l2, c2, deque([target]))
        self._first(l2, c2, t2, level + 1)
        explored = [c0]
        prefix = self.first_path[:level]
        for v in cell[1:]:
            stab = [g for g in self.gens if all(g[x] == x for x in prefix)]
            orb = _Orbits(self.n, stab)
            if any(orb.find(v) == orb.find(u) for u in explored):
                continue
            explored.append(v)
            l2, c2 = list(lab), list(csize)
            _individualize(l2, c2, target, v)
            t2 = _refine(self.adj, l2, c2, deque([target]))
            self._other(l2, c2, (trace, t2), level + 1, True, True, level, prefix + [v])
        stab = [g for g in self.gens if all(g[x] == x for x in prefix)]
        orb = _Orbits(self.n, stab)
        r = orb.find(c0)
        self.orbit_lengths.append(sum(1 for u in range(self.n) if orb.find(u) == r))

    def _other(self, lab, csize, traces, level, eq_first, eq_best, home, path):
        """Explore a node off the first path.  Returns True to abort up to ``home``."""
        trace = traces[-1]
        if eq_first and (level >= len(self.first_traces) or self.first_traces[level] != trace):
            eq_first = False
        if eq_best:
            if level >= len(self.best_traces) or trace > self.best_traces[level]:
                del self.best_traces[level:]
                self.best_traces.append(trace)
                self.best_cert = None
            elif trace < self.best_traces[level]:
                eq_best = False
        if not eq_first and not eq_best:
            return False
        target = _target_cell(csize)
        if target is None:
            cert = self._cert(lab)
            if eq_first and cert == self.first_cert:
                self._add_auto(self.first_lab, lab)
                return True
            if eq_best:
                if self.best_cert is None or cert > self.best_cert:
                    self.best_cert = cert
                    self.best_lab = list(lab)
                elif cert == self.best_cert:
                    self._add_auto(self.best_lab, lab)
            return False
        explored: list[int] = []
        for v in sorted(lab[target:target + csize[target]]):
            # children swapped by an automorphism fixing the path have equivalent subtrees
            if explored and self.gens:
                orb = _Orbits(self.n, [g for g in self.gens if all(g[x] == x for x in path)])
                if any(orb.find(v) == orb.find(u) for u in explored):
                    continue
            explored.append(v)
            l2, c2 = list(lab), list(csize)
            _individualize(l2, c2, target, v)
            t2 = _refine(self.adj, l2, c2, deque([target]))
            # eq_best must be re-read: a sibling may have replaced the best path
            eb = eq_best and len(self.best_traces) > level and self.best_traces[level] == trace
            if self._other(l2, c2, traces + (t2,), level + 1, eq_first, eb, home, path + [v]):
                return True
        return False

    def _add_auto(self, lab1, lab2):
        gamma = [0] * self.n
        for i in range(self.n):
            gamma[lab2[i]] = lab1[i]
        gamma = tuple(gamma)
        if any(gamma[i] != i for i in range(self.n)) and gamma not in self.gens:
            self.gens.append(gamma)

    # results
    def labeling(self) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(self.best_lab):
            pos[v] = i
        return tuple(pos)

    def order(self) -> int:
        out = 1
        for x in self.orbit_lengths:
            out *= x
        return out


def _run(g: Graph, coloring: Coloring | None) -> _Search:
    s = _Search(g, coloring)
    s.run()
    return s


def canonical_form(g: Graph, coloring: Coloring | None = None) -> CanonicalCertificate:
    s = _run(g, coloring)
    lab = s.labeling()
    return CanonicalCertificate(lab, encode_graph6(g.relabel(lab)), s.cell_sizes)


def canonical_graph(g: Graph, coloring: Coloring | None = None) -> Graph:
    return g.relabel(canonical_form(g, coloring).canonical_labeling)


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A bijection ``phi`` with ``g.relabel(phi) == h``, or ``None``."""
    if g.n != h.n or sorted(g.degrees()) != sorted(h.degrees()):
        return None
    cg, ch = canonical_form(g), canonical_form(h)
    if cg.canonical_string != ch.canonical_string:
        return None
    inv_h = [0] * h.n
    for v, p in enumerate(ch.canonical_labeling):
        inv_h[p] = v
    return [inv_h[cg.canonical_labeling[v]] for v in range(g.n)]


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def automorphism_group(g: Graph, coloring: Coloring | None = None) -> AutGroup:
    s = _run(g, coloring)
    orb = _Orbits(g.n, s.gens)
    return AutGroup(tuple(s.gens), s.order(), tuple(orb.orbits()))


def pair_orbits(g: Graph, candidate_pairs, coloring: Coloring | None = None,
                group: AutGroup | None = None) -> list[tuple[int, int]]:
    """One representative (the lexicographic minimum) per orbit of ``candidate_pairs``."""
    grp = group or automorphism_group(g, coloring)
    pairs = sorted({(min(p), max(p)) for p in candidate_pairs})
    index = {p: i for i, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for gen in grp.generators:
        for i, (a, b) in enumerate(pairs):
            x, y = gen[a], gen[b]
            j = index.get((min(x, y), max(x, y)))
            if j is not None:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    return [pairs[i] for i in range(len(pairs)) if find(i) == i]


def set_orbits(group_gens, sets, n: int) -> list:
    """Orbit representatives (lexicographically smallest sorted tuple) of a family of vertex sets."""
    items = sorted({tuple(sorted(s)) for s in sets})
    index = {t: i for i, t in enumerate(items)}
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for gen in group_gens:
        for i, t in enumerate(items):
            j = index.get(tuple(sorted(gen[x] for x in t)))
            if j is not None:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    return [items[i] for i in range(len(items)) if find(i) == i]


def all_pairs(n: int):
    return combinations(range(n), 2)
