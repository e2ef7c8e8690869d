"""Bitset graphs, the graph6 codec, regularity profiles, cliques and the
Neumaier classification verdict.

Vertices are ``0..n-1``; ``adj[u]`` is an ``int`` whose bit ``w`` is set iff
``u ~ w``.  Graphs are immutable values.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import CompleteGraph, DomainError, InvalidGraph6

MAX_VERTICES = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise DomainError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise DomainError("adjacency has wrong number of rows")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise DomainError(f"row {u} has bits beyond n")
            if row >> u & 1:
                raise DomainError(f"loop at vertex {u}")
            for w in bits(row):
                if not self.adj[w] >> u & 1:
                    raise DomainError(f"asymmetric adjacency at {u},{w}")

    # construction -------------------------------------------------------
    @classmethod
    def trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        """Skip validation; for hot loops whose rows are symmetric by construction."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << u) for u in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, w in edges:
            if u == w:
                raise DomainError(f"loop at vertex {u}")
            rows[u] |= 1 << w
            rows[w] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        """Build from a square 0/1 array-like.  Symmetry and the diagonal are checked."""
        rows = [list(map(int, r)) for r in matrix]
        n = len(rows)
        out = []
        for u, r in enumerate(rows):
            if len(r) != n:
                raise DomainError("adjacency matrix is not square")
            m = 0
            for w, x in enumerate(r):
                if x:
                    m |= 1 << w
            out.append(m)
        return cls(n, tuple(out))

    # queries ------------------------------------------------------------
    def has_edge(self, u: int, w: int) -> bool:
        return bool(self.adj[u] >> w & 1)

    def neighbors(self, u: int) -> list[int]:
        return list(bits(self.adj[u]))

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def common(self, u: int, w: int) -> int:
        return (self.adj[u] & self.adj[w]).bit_count()

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        m = mask_of(vs)
        return all((self.adj[v] | 1 << v) & m == m for v in vs)

    def to_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u, w in self.edges():
            a[u, w] = a[w, u] = 1
        return a

    # transformations ----------------------------------------------------
    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph in which old vertex ``u`` becomes ``perm[u]``."""
        rows = [0] * self.n
        for u in range(self.n):
            pu = perm[u]
            m = 0
            for w in bits(self.adj[u]):
                m |= 1 << perm[w]
            rows[pu] = m
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[w]) for u, w in combinations(vertices, 2) if self.has_edge(u, w)]
        return Graph.from_edges(len(vertices), edges)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.adj)
        for u, w in edges:
            rows[u] |= 1 << w
            rows[w] |= 1 << u
        return Graph(self.n, tuple(rows))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges()}, g6={encode_graph6(self)!r})"


# ---------------------------------------------------------------------------
# graph6

def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def encode_graph6(g: Graph) -> str:
    out = [_g6_size(g.n)]
    acc = nbits = 0
    for w in range(1, g.n):
        row = g.adj[w]
        for u in range(w):
            acc = acc << 1 | (row >> u & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise InvalidGraph6("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise InvalidGraph6("character outside the range 63..126")
    if codes[0] == 63:
        if len(codes) >= 2 and codes[1] == 63:
            raise InvalidGraph6("graphs with more than 64 vertices are not supported")
        if len(codes) < 4:
            raise InvalidGraph6("truncated size header")
        n = codes[1] << 12 | codes[2] << 6 | codes[3]
        body = codes[4:]
    else:
        n = codes[0]
        body = codes[1:]
    if n > MAX_VERTICES:
        raise InvalidGraph6(f"n={n} exceeds {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise InvalidGraph6(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    rows = [0] * n
    k = 0
    for w in range(1, n):
        for u in range(w):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[u] |= 1 << w
                rows[w] |= 1 << u
            k += 1
    pad = len(body) * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise InvalidGraph6("nonzero padding bits")
    return Graph(n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ row ^ (1 << u) for u, row in enumerate(g.adj)))


# ---------------------------------------------------------------------------
# regularity

@dataclass(frozen=True)
class RegularityProfile:
    degree: int | None
    edge_regular_lambda: int | None
    co_edge_regular_mu: int | None
    lambda_values: Counter = field(compare=False)
    mu_values: Counter = field(compare=False)

    @property
    def is_strongly_regular(self) -> bool:
        return self.edge_regular_lambda is not None and self.co_edge_regular_mu is not None


def regularity_profile(g: Graph) -> RegularityProfile:
    if g.n < 2:
        raise DomainError("regularity profile needs at least two vertices")
    degs = set(g.degrees())
    k = degs.pop() if len(degs) == 1 else None
    lam: Counter = Counter()
    mu: Counter = Counter()
    for u in range(g.n):
        au = g.adj[u]
        for w in range(u + 1, g.n):
            c = (au & g.adj[w]).bit_count()
            if au >> w & 1:
                lam[c] += 1
            else:
                mu[c] += 1
    er = next(iter(lam)) if k is not None and len(lam) == 1 else None
    cer = next(iter(mu)) if k is not None and len(mu) == 1 else None
    return RegularityProfile(k, er, cer, lam, mu)


# ---------------------------------------------------------------------------
# cliques

def enumerate_maximal_cliques(g: Graph) -> list[frozenset[int]]:
    """All maximal cliques, sorted by their sorted member tuples."""
    out: list[tuple[int, ...]] = []
    adj = g.adj

    def expand(r: list[int], p: int, x: int) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        # pivot maximizing |P ∩ N(u)|
        pu = max(bits(p | x), key=lambda u: (p & adj[u]).bit_count())
        for v in bits(p & ~adj[pu]):
            r.append(v)
            expand(r, p & adj[v], x & adj[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand([], (1 << g.n) - 1, 0)
    out.sort()
    return [frozenset(c) for c in out]


def clique_number(g: Graph) -> int:
    return max((len(c) for c in enumerate_maximal_cliques(g)), default=0)


def has_clique_of_size(g: Graph, size: int) -> bool:
    adj = g.adj

    def grow(p: int, need: int) -> bool:
        if need == 0:
            return True
        if p.bit_count() < need:
            return False
        for v in bits(p):
            p &= ~(1 << v)
            if grow(p & adj[v], need - 1):
                return True
            if p.bit_count() < need:
                return False
        return False

    return grow((1 << g.n) - 1, size)


@dataclass(frozen=True)
class CliqueCertificate:
    vertices: frozenset[int]
    e: int | None

    @property
    def s(self) -> int:
        return len(self.vertices)


def clique_regularity(g: Graph, clique: Iterable[int]) -> int | None:
    """The common number of clique-neighbours of outside vertices, if constant and positive."""
    m = mask_of(clique)
    counts = {(g.adj[w] & m).bit_count() for w in range(g.n) if not m >> w & 1}
    if len(counts) == 1:
        e = counts.pop()
        return e if e > 0 else None
    return None


def find_regular_cliques(g: Graph) -> list[CliqueCertificate]:
    certs = []
    for c in enumerate_maximal_cliques(g):
        e = clique_regularity(g, c)
        if e is not None:
            certs.append(CliqueCertificate(c, e))
    return certs


# ---------------------------------------------------------------------------
# classification

class Tag(enum.Enum):
    NotEdgeRegular = "NotEdgeRegular"
    EdgeRegularNoRegularClique = "EdgeRegularNoRegularClique"
    NeumaierStronglyRegular = "NeumaierStronglyRegular"
    StrictlyNeumaier = "StrictlyNeumaier"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Witness:
    """A vertex pair showing why a stronger verdict fails, with the offending count."""

    pair: tuple[int, int]
    count: int
    reason: str


@dataclass(frozen=True)
class NeumaierVerdict:
    tag: Tag
    profile: RegularityProfile
    regular_cliques: list[CliqueCertificate]
    witness: Witness | None = None
    n: int = 0

    @property
    def parameters(self) -> tuple[int, int, int, int, int] | None:
        """``(v, k, lambda, e, s)`` for Neumaier verdicts, otherwise ``None``."""
        if not self.regular_cliques or self.profile.edge_regular_lambda is None:
            return None
        c = self.regular_cliques[0]
        return (self.n, self.profile.degree, self.profile.edge_regular_lambda, c.e, c.s)


def _irregularity_witness(g: Graph, prof: RegularityProfile) -> Witness:
    if prof.degree is None:
        degs = g.degrees()
        u = 0
        w = next(i for i, d in enumerate(degs) if d != degs[0])
        return Witness((u, w), g.common(u, w), f"degrees {degs[u]} and {degs[w]} differ")
    if not prof.lambda_values:
        return Witness((0, 1), g.common(0, 1), "graph has no edges")
    first = None
    for u, w in g.edges():
        c = g.common(u, w)
        if first is None:
            first = c
        elif c != first:
            return Witness((u, w), c, f"adjacent pair has {c} common neighbours, another has {first}")
    raise AssertionError("unreachable")


def classify(g: Graph) -> NeumaierVerdict:
    if g.n < 4:
        raise DomainError("classification needs at least four vertices")
    if g.num_edges() == g.n * (g.n - 1) // 2:
        raise CompleteGraph("classification is undefined for complete graphs")
    prof = regularity_profile(g)
    if prof.edge_regular_lambda is None:
        return NeumaierVerdict(Tag.NotEdgeRegular, prof, [], _irregularity_witness(g, prof), g.n)
    certs = find_regular_cliques(g)
    if not certs:
        cliques = enumerate_maximal_cliques(g)
        big = max(cliques, key=len)
        m = mask_of(big)
        outside = [w for w in range(g.n) if not m >> w & 1]
        counts = [(g.adj[w] & m).bit_count() for w in outside]
        w1 = next((outside[i] for i, c in enumerate(counts) if c != counts[0]), outside[0])
        wit = Witness((outside[0], w1), counts[0],
                      f"maximum clique {sorted(big)} is not regular")
        return NeumaierVerdict(Tag.EdgeRegularNoRegularClique, prof, [], wit, g.n)
    if prof.co_edge_regular_mu is not None:
        return NeumaierVerdict(Tag.NeumaierStronglyRegular, prof, certs, None, g.n)
    return NeumaierVerdict(Tag.StrictlyNeumaier, prof, certs, None, g.n)
