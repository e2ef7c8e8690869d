"""Latin-square graphs, the 3x3 block alphabet, and the 25-vertex strictly
Neumaier graph obtained from an order-5 Latin-square graph by switching three
triangles.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (AsymmetricSpec, DiagonalNonzero, EdgeAlreadyPresent, InputFormatError,
                     InvalidSquare, MissingEdge)
from .graph import Graph


@dataclass(frozen=True)
class LatinSquare:
    n: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = self.cells
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise InvalidSquare(f"expected a {self.n}x{self.n} grid")
        want = set(range(1, self.n + 1))
        for i, r in enumerate(rows):
            if set(r) != want:
                raise InvalidSquare(f"row {i + 1} is not a permutation of 1..{self.n}")
        for j in range(self.n):
            if {r[j] for r in rows} != want:
                raise InvalidSquare(f"column {j + 1} is not a permutation of 1..{self.n}")

    @classmethod
    def from_rows(cls, rows) -> "LatinSquare":
        cells = tuple(tuple(int(x) for x in r) for r in rows)
        return cls(len(cells), cells)

    @classmethod
    def cyclic(cls, n: int) -> "LatinSquare":
        return cls.from_rows([[(i + j) % n + 1 for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, text: str) -> "LatinSquare":
        rows = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rows.append([int(x) for x in line.split()])
            except ValueError:
                raise InputFormatError(f"non-integer entry in {line!r}", lineno) from None
        return cls.from_rows(rows)

    def color(self, i: int, j: int) -> int:
        """Colour of the cell in (1-based) row ``i`` and column ``j``."""
        return self.cells[i - 1][j - 1]

    def vertex(self, i: int, j: int) -> int:
        return self.n * (i - 1) + (j - 1)


def random_latin_square(n: int, rng: np.random.Generator) -> LatinSquare:
    """A random Latin square: shuffle rows, columns and symbols of the cyclic square."""
    base = np.add.outer(np.arange(n), np.arange(n)) % n
    base = base[rng.permutation(n)][:, rng.permutation(n)]
    symbols = rng.permutation(n) + 1
    return LatinSquare.from_rows(symbols[base].tolist())


def latin_square_graph(sq: LatinSquare) -> Graph:
    n = sq.n
    if n < 2:
        raise InvalidSquare("order must be at least 2")
    cells = [(i, j, sq.cells[i][j]) for i in range(n) for j in range(n)]
    edges = [(a, b) for (a, (i1, j1, c1)), (b, (i2, j2, c2)) in combinations(enumerate(cells), 2)
             if i1 == i2 or j1 == j2 or c1 == c2]
    return Graph.from_edges(n * n, edges)


def square_order5() -> LatinSquare:
    return LatinSquare.from_rows([
        [1, 2, 3, 4, 5],
        [2, 1, 4, 5, 3],
        [3, 5, 1, 2, 4],
        [4, 3, 5, 1, 2],
        [5, 4, 2, 3, 1],
    ])


# ---------------------------------------------------------------------------
# block alphabet

_I = np.eye(3, dtype=np.int8)
_A = np.roll(_I, 1, axis=1)  # A[i, i+1] = 1
_B = _A + _A.T
_E = [np.zeros((3, 3), dtype=np.int8) for _ in range(3)]
for _i in range(3):
    _E[_i][_i] = 1
_EBAR = [1 - e for e in _E]

BLOCKS: dict[str, np.ndarray] = {
    "O": np.zeros((3, 3), dtype=np.int8),
    "I": _I, "A": _A, "At": _A.T.copy(), "B": _B,
    "I+A": _I + _A, "I+At": _I + _A.T,
    **{f"E{i + 1}": _E[i] for i in range(3)},
    **{f"E{i + 1}t": _E[i].T.copy() for i in range(3)},
    **{f"Ebar{i + 1}": _EBAR[i] for i in range(3)},
    **{f"Ebar{i + 1}t": _EBAR[i].T.copy() for i in range(3)},
}


def _block(symbol: str, rows: int, cols: int) -> np.ndarray:
    if symbol == "0":
        return np.zeros((rows, cols), dtype=np.int8)
    if symbol == "j":
        return np.ones((rows, cols), dtype=np.int8) if rows == 1 else None
    if symbol == "jt":
        return np.ones((rows, cols), dtype=np.int8) if cols == 1 else None
    if (rows, cols) == (3, 3) and symbol in BLOCKS:
        return BLOCKS[symbol]
    return None


@dataclass(frozen=True)
class BlockSpec:
    """A symmetric block matrix: ``symbols[r][c]`` names block (r, c).

    Block sizes default to one 1-wide block followed by eight 3-wide blocks.
    """

    symbols: tuple[tuple[str, ...], ...]
    sizes: tuple[int, ...] = (1, 3, 3, 3, 3, 3, 3, 3, 3)

    def matrix(self) -> np.ndarray:
        parts = []
        for r, row in enumerate(self.symbols):
            line = []
            for c, sym in enumerate(row):
                blk = _block(sym, self.sizes[r], self.sizes[c])
                if blk is None:
                    raise AsymmetricSpec(f"block ({r},{c}) symbol {sym!r} does not fit "
                                         f"{self.sizes[r]}x{self.sizes[c]}")
                line.append(blk)
            parts.append(line)
        return np.block(parts)


def assemble_from_blocks(spec: BlockSpec) -> Graph:
    m = spec.matrix()
    if np.any(np.diag(m)):
        raise DiagonalNonzero("block matrix has a nonzero diagonal entry")
    if not np.array_equal(m, m.T):
        bad = np.argwhere(m != m.T)[0]
        raise AsymmetricSpec(f"block matrix is not symmetric at {tuple(int(x) for x in bad)}")
    if np.any((m != 0) & (m != 1)):
        raise AsymmetricSpec("block matrix has entries other than 0/1")
    return Graph.from_matrix(m)


_M_ROWS = [
    "0    j     j    j     j     0     0     0     0",
    "jt   B     E1   E2    E3    Ebar1 Ebar2 Ebar3 O",
    "jt   E1t   B    I     I     I+A   A     I     B",
    "jt   E2t   I    B     I     I     I+A   A     I+At",
    "jt   E3t   I    I     B     A     I     I+A   I+A",
    "0    Ebar1t I+At I    At    B     A     At    I+At",
    "0    Ebar2t At  I+At  I     At    B     A     I+A",
    "0    Ebar3t I   At    I+At  A     At    B     B",
    "0    O     B    I+A   I+At  I+A   I+At  B     O",
]

# the six blocks among the last-but-one three block rows/columns become I
_SWITCHED = {(5, 6), (5, 7), (6, 5), (6, 7), (7, 5), (7, 6)}

M_SPEC = BlockSpec(tuple(tuple(r.split()) for r in _M_ROWS))
M_PRIME_SPEC = BlockSpec(tuple(
    tuple("I" if (r, c) in _SWITCHED else sym for c, sym in enumerate(row))
    for r, row in enumerate(M_SPEC.symbols)))

# cells (row, column), 1-based, in block order: x11; L' minus x11; C1..C3 minus L';
# C'1..C'3 minus L'; the three remaining cells.  Inside C'1 and C'3 the cells are
# rotated so that the blocks A, At, I+A, ... line up with the Latin square exactly.
BLOCK_ORDER_CELLS: tuple[tuple[int, int], ...] = (
    (1, 1),
    (1, 2), (2, 1), (2, 2),
    (1, 3), (1, 4), (1, 5),
    (3, 1), (4, 1), (5, 1),
    (3, 3), (4, 4), (5, 5),
    (2, 5), (2, 3), (2, 4),
    (3, 2), (4, 2), (5, 2),
    (5, 3), (3, 4), (4, 5),
    (3, 5), (4, 3), (5, 4),
)


def cell_label(index: int) -> str:
    """Name of block-order vertex ``index`` as ``x_ij``."""
    i, j = BLOCK_ORDER_CELLS[index]
    return f"x{i}{j}"


def block_order_permutation() -> list[int]:
    """``perm[u]`` = block-order index of Latin-square-graph vertex ``u``."""
    perm = [0] * 25
    for idx, (i, j) in enumerate(BLOCK_ORDER_CELLS):
        perm[5 * (i - 1) + (j - 1)] = idx
    return perm


def latin_graph_block_order() -> Graph:
    """The order-5 Latin-square graph in block order, i.e. the graph of ``M``."""
    return assemble_from_blocks(M_SPEC)


def gamma25() -> Graph:
    """The 25-vertex strictly Neumaier graph, i.e. the graph of ``M'``."""
    return assemble_from_blocks(M_PRIME_SPEC)


# ---------------------------------------------------------------------------
# triangle switching

@dataclass(frozen=True)
class TriangleSwitch:
    removed: tuple[tuple[int, int, int], ...]
    added: tuple[tuple[int, int, int], ...]

    def removed_edges(self) -> set[frozenset[int]]:
        return {frozenset(p) for t in self.removed for p in combinations(t, 2)}

    def added_edges(self) -> set[frozenset[int]]:
        return {frozenset(p) for t in self.added for p in combinations(t, 2)}

    def inverse(self) -> "TriangleSwitch":
        return TriangleSwitch(self.added, self.removed)


def apply_triangle_switch(g: Graph, sw: TriangleSwitch) -> Graph:
    rows = list(g.adj)
    for u, w in sorted(tuple(sorted(e)) for e in sw.removed_edges()):
        if not rows[u] >> w & 1:
            raise MissingEdge(f"edge {u}-{w} is not present")
        rows[u] &= ~(1 << w)
        rows[w] &= ~(1 << u)
    for u, w in sorted(tuple(sorted(e)) for e in sw.added_edges()):
        if rows[u] >> w & 1:
            raise EdgeAlreadyPresent(f"edge {u}-{w} already present")
        rows[u] |= 1 << w
        rows[w] |= 1 << u
    return Graph(g.n, tuple(rows))


def _triangles_covering(n: int, edges: set[frozenset[int]]) -> tuple[tuple[int, int, int], ...]:
    """Partition an edge set into vertex-disjoint triangles, or fail."""
    g = Graph.from_edges(n, [tuple(e) for e in edges])
    tris = []
    seen = set()
    for u in range(n):
        if u in seen or not g.adj[u]:
            continue
        nb = g.neighbors(u)
        if len(nb) != 2 or not g.has_edge(*nb):
            raise ValueError("edge set is not a disjoint union of triangles")
        t = tuple(sorted([u, *nb]))
        seen.update(t)
        tris.append(t)
    return tuple(tris)


def switch_from_diff(before: Graph, after: Graph) -> TriangleSwitch:
    """Recover the triangle switch turning ``before`` into ``after`` from their edge diff."""
    e1 = {frozenset(e) for e in before.edges()}
    e2 = {frozenset(e) for e in after.edges()}
    return TriangleSwitch(_triangles_covering(before.n, e1 - e2), _triangles_covering(before.n, e2 - e1))


def gamma25_switch() -> TriangleSwitch:
    """The switch taking the graph of ``M`` to the graph of ``M'`` (block-order labels)."""
    return switch_from_diff(latin_graph_block_order(), gamma25())
