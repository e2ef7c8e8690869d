"""Block designs on the regular coclique and the fixed edges they induce.

In the complement of a strictly Neumaier graph the coclique neighbourhoods of
the exterior vertices form a 2-(s, e', mu') design, possibly with repeated
blocks.  Points are ``0..s-1`` internally and ``1..s`` in files.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path

from ..errors import InputFormatError, NotApplicable, ShapeMismatch
from ..graph import Graph
from ..params import ComplementParameters, partition_fixing_applies


@dataclass(frozen=True)
class DesignShape:
    points: int
    block_size: int
    lambda_d: int
    block_count: int
    partition_fixing: bool

    def __str__(self):
        return f"2-({self.points},{self.block_size},{self.lambda_d}) with {self.block_count} blocks"


@dataclass(frozen=True)
class Design:
    s: int
    block_size: int
    lambda_d: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for b in self.blocks:
            if len(b) != self.block_size or len(set(b)) != len(b):
                raise ShapeMismatch(f"block {[x + 1 for x in b]} does not have {self.block_size} distinct points")
            if not all(0 <= x < self.s for x in b):
                raise ShapeMismatch(f"block {[x + 1 for x in b]} has points outside 1..{self.s}")
        cover = self.pair_counts()
        bad = [p for p in combinations(range(self.s), 2) if cover[p] != self.lambda_d]
        if bad:
            u, w = bad[0]
            raise ShapeMismatch(f"pair {{{u + 1},{w + 1}}} lies in {cover[bad[0]]} blocks, "
                                f"expected {self.lambda_d}")

    def pair_counts(self) -> Counter:
        c: Counter = Counter()
        for b in self.blocks:
            for p in combinations(sorted(b), 2):
                c[p] += 1
        return c

    @classmethod
    def from_blocks(cls, s: int, blocks, lambda_d: int | None = None) -> "Design":
        blocks = tuple(sorted(tuple(sorted(b)) for b in blocks))
        size = len(blocks[0]) if blocks else 0
        if lambda_d is None:
            lambda_d = Counter(p for b in blocks for p in combinations(b, 2)).get((0, 1), 0)
        return cls(s, size, lambda_d, blocks)

    def incidence_graph(self) -> tuple[Graph, list[list[int]]]:
        """Point-block incidence graph plus the (points, blocks) colouring."""
        n = self.s + len(self.blocks)
        edges = [(p, self.s + i) for i, b in enumerate(self.blocks) for p in b]
        return Graph.from_edges(n, edges), [list(range(self.s)), list(range(self.s, n))]

    def to_text(self) -> str:
        return "".join(" ".join(str(p + 1) for p in b) + "\n" for b in self.blocks)


def parse_design(text: str, s: int | None = None) -> Design:
    blocks = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            pts = [int(x) - 1 for x in line.split()]
        except ValueError:
            raise InputFormatError(f"non-integer point in {line!r}", lineno) from None
        if any(p < 0 for p in pts):
            raise InputFormatError("points are 1-based", lineno)
        blocks.append(tuple(pts))
    if not blocks:
        raise InputFormatError("design file has no blocks")
    npoints = s if s is not None else max(max(b) for b in blocks) + 1
    return Design.from_blocks(npoints, blocks)


def read_design(path, s: int | None = None) -> Design:
    return parse_design(Path(path).read_text(), s)


def write_design(path, d: Design) -> None:
    Path(path).write_text(f"# 2-({d.s},{d.block_size},{d.lambda_d}) design, {len(d.blocks)} blocks\n"
                          + d.to_text())


def derive_design_shape(cp: ComplementParameters) -> DesignShape:
    """Exterior coclique-neighbourhoods form a 2-(s, e', mu') design with v-s blocks."""
    return DesignShape(cp.s, cp.e_c, cp.mu_c, cp.v - cp.s, partition_fixing_applies(cp))


def fixed_edges_from_design(d: Design, cp: ComplementParameters) -> set[tuple[int, int]]:
    """Coclique ``0..s-1``; exterior vertex ``s+i`` is joined to the points of block ``i``."""
    shape = derive_design_shape(cp)
    got = (d.s, d.block_size, d.lambda_d, len(d.blocks))
    want = (shape.points, shape.block_size, shape.lambda_d, shape.block_count)
    if got != want:
        raise ShapeMismatch(f"design is 2-({got[0]},{got[1]},{got[2]}) with {got[3]} blocks; "
                            f"parameters need {shape}")
    return {(p, cp.s + i) for i, b in enumerate(d.blocks) for p in b}


def partition_fixing(cp: ComplementParameters, require_group_adjacency: bool) -> set[tuple[int, int]]:
    """Fixed edges when the common neighbourhoods of coclique pairs partition the exterior.

    Exterior vertices are split into consecutive groups of ``mu'``, one group per
    coclique pair in lexicographic order, each joined to both points of its pair.
    """
    if not partition_fixing_applies(cp):
        raise NotApplicable(f"partition fixing needs e'=2 and v-s = C(s,2)*mu'; got e'={cp.e_c}, "
                            f"v-s={cp.v - cp.s}, C(s,2)*mu'={comb(cp.s, 2) * cp.mu_c}")
    edges = set()
    nxt = cp.s
    for i, j in combinations(range(cp.s), 2):
        group = list(range(nxt, nxt + cp.mu_c))
        nxt += cp.mu_c
        for w in group:
            edges.add((i, w))
            edges.add((j, w))
        if require_group_adjacency:
            edges.update(combinations(group, 2))
    return edges


def partition_design(cp: ComplementParameters) -> Design:
    """The design that partition fixing realises: every coclique pair repeated mu' times."""
    blocks = [p for p in combinations(range(cp.s), 2) for _ in range(cp.mu_c)]
    return Design.from_blocks(cp.s, blocks, cp.mu_c)


def _design_key(s: int, blocks, fixed_points: int):
    from ..canon import canonical_form
    n = s + len(blocks)
    g = Graph.from_edges(n, [(p, s + i) for i, b in enumerate(blocks) for p in b])
    cells = [list(range(fixed_points)), list(range(fixed_points, s)), list(range(s, n))]
    return canonical_form(g, [c for c in cells if c]).key


def enumerate_small_designs(s: int, block_size: int, lambda_d: int,
                            block_count: int | None = None) -> list[Design]:
    """All 2-(s, block_size, lambda_d) designs with repeated blocks allowed, up to point permutation.

    Pairs are completed point by point; after the pairs of points ``0..j`` are
    covered the partial designs are reduced up to isomorphism, treating those
    points as a distinguished set (a stage's completions depend only on that).
    """
    if block_size < 2 or block_size > s:
        raise ValueError("block size must lie in 2..s")
    npairs = comb(s, 2)
    if (npairs * lambda_d) % comb(block_size, 2):
        return []
    b_total = npairs * lambda_d // comb(block_size, 2)
    if block_count is not None and block_count != b_total:
        return []
    pair_index = {p: i for i, p in enumerate(combinations(range(s), 2))}
    block_pairs = {}

    def pairs_of(b):
        r = block_pairs.get(b)
        if r is None:
            r = block_pairs[b] = [pair_index[p] for p in combinations(b, 2)]
        return r

    def complete_point(a, blocks, cover, out):
        # first pair (a, c) still short of lambda_d
        for c in range(a + 1, s):
            need = lambda_d - cover[pair_index[(a, c)]]
            if need:
                break
        else:
            out.append((tuple(blocks), tuple(cover)))
            return
        cands = [b for b in combinations(range(a + 1, s), block_size - 1) if c in b]
        cands = [(a, *b) for b in cands]
        cands = [b for b in cands if all(cover[i] < lambda_d for i in pairs_of(b))]

        def choose(start, left):
            if left == 0:
                complete_point(a, blocks, cover, out)
                return
            for idx in range(start, len(cands)):
                b = cands[idx]
                ps = pairs_of(b)
                if all(cover[i] < lambda_d for i in ps):
                    for i in ps:
                        cover[i] += 1
                    blocks.append(b)
                    choose(idx, left - 1)
                    blocks.pop()
                    for i in ps:
                        cover[i] -= 1

        choose(0, need)

    frontier = [((), (0,) * npairs)]
    for a in range(s - 1):
        nxt = []
        for blocks, cover in frontier:
            complete_point(a, list(blocks), list(cover), nxt)
        seen = {}
        for blocks, cover in nxt:
            key = _design_key(s, blocks, a + 1)
            seen.setdefault(key, (blocks, cover))
        frontier = list(seen.values())
    final = {}
    for blocks, _ in frontier:
        final.setdefault(_design_key(s, blocks, 0), blocks)
    designs = [Design.from_blocks(s, b, lambda_d) for b in final.values()]
    return sorted(designs, key=lambda d: d.blocks)
