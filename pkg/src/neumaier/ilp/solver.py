"""Embedded feasibility solver for :class:`IlpModel`.

Depth-first search over the undecided pairs with bitset propagation.  The
``y`` variables are never materialised: common-neighbour counts are read off
the decided edge and non-edge sets.  Propagators:

* degree: ``k'`` decided edges per vertex, forcing the rest when tight;
* coclique: ``x = 0`` inside, ``e'`` coclique neighbours outside;
* co-edge window: a decided non-edge has exactly ``mu'`` common neighbours,
  an undecided pair whose count cannot be ``mu'`` becomes an edge;
* branch window on the pair ``{p, q}`` when present;
* parity: every constraint that has become linear in the undecided pairs
  (degrees, coclique degrees, non-edges whose common neighbours are linear)
  must hold modulo 2, checked by Gaussian elimination over GF(2).  Counting
  propagators are blind to handshake-type parity obstructions; this is what
  refutes the partition-fixed models with odd mu' at the root.

Symmetry is broken with lex-leader constraints ``x >= g(x)`` (in branching
order) for generators ``g`` of the automorphism group of the fixed-edge
skeleton that preserve the coclique and the branch pair.  Those permutations
map solutions to solutions, so the lexicographically largest member of every
solution orbit survives.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from itertools import combinations

from ..canon import automorphism_group
from ..graph import Graph, bits
from .model import BranchSense, IlpModel


class Outcome(enum.Enum):
    Infeasible = "Infeasible"
    Feasible = "Feasible"
    Timeout = "Timeout"

    def __str__(self):
        return self.value


@dataclass
class SolveStats:
    nodes: int = 0
    forced: int = 0
    wall_time: float = 0.0


@dataclass
class SolveResult:
    outcome: Outcome
    graph: Graph | None = None
    stats: SolveStats = field(default_factory=SolveStats)

    def __str__(self):
        if self.outcome is Outcome.Feasible:
            from ..graph import encode_graph6
            return f"Feasible({encode_graph6(self.graph)})"
        return str(self.outcome)


class _Conflict(Exception):
    pass


def branching_order(m: IlpModel) -> list[tuple[int, int]]:
    """Pairs with an endpoint in the coclique first, then the rest, each lexicographic."""
    pairs = m.x_pairs()
    return sorted(pairs, key=lambda p: (p[0] >= m.s, p))


def model_symmetries(m: IlpModel) -> list[tuple[int, ...]]:
    """Generators of the permutations fixing the coclique, ``S`` and ``{p, q}`` setwise."""
    skeleton = Graph.from_edges(m.v, sorted(m.fixed_edges))
    cells = [list(range(m.s)), [u for u in range(m.s, m.v)]]
    if m.has_branch:
        pq = set(m.branch_pair)
        cells = [[u for u in c if u not in pq] for c in cells]
        cells += [[u] for u in sorted(pq) if u < m.s] + [[u for u in sorted(pq) if u >= m.s]]
    grp = automorphism_group(skeleton, [c for c in cells if c])
    return [g for g in grp.generators if any(g[u] != u for u in range(m.v))]


class _State:
    """Decided edges ``one[u]`` and decided non-edges ``zero[u]`` as bitsets,
    plus the resume position of every lex-leader constraint (-1 once satisfied)."""

    __slots__ = ("one", "zero", "lex")

    def __init__(self, one, zero, lex):
        self.one = one
        self.zero = zero
        self.lex = lex

    def copy(self) -> "_State":
        return _State(list(self.one), list(self.zero), list(self.lex))


class _Propagator:
    def __init__(self, m: IlpModel, order, symmetries=()):
        self.m = m
        self.order = order
        index = {p: i for i, p in enumerate(order)}
        # partner[g][i]: position of the image of pair order[i] under generator g
        self.partner = []
        for g in symmetries:
            self.partner.append([index[(min(g[u], g[w]), max(g[u], g[w]))] for u, w in order])
        self.v = m.v
        self.full = (1 << m.v) - 1
        self.cocl = (1 << m.s) - 1
        self.lo = self.hi = None
        if m.has_branch:
            p, q = m.branch_pair
            if m.branch_sense is BranchSense.MoreThanLambda:
                self.lo, self.hi = m.branch_bound, m.v
            else:
                self.lo, self.hi = 0, m.branch_bound
        self.forced = 0

    def free(self, st: _State, u: int) -> int:
        return self.full & ~(st.one[u] | st.zero[u] | (1 << u))

    def assign(self, st: _State, u: int, w: int, val: int, dirty: set) -> None:
        bu, bw = 1 << u, 1 << w
        if val:
            if st.zero[u] & bw:
                raise _Conflict
            if st.one[u] & bw:
                return
            st.one[u] |= bw
            st.one[w] |= bu
        else:
            if st.one[u] & bw:
                raise _Conflict
            if st.zero[u] & bw:
                return
            st.zero[u] |= bw
            st.zero[w] |= bu
        self.forced += 1
        dirty.add(u)
        dirty.add(w)

    def _card(self, st, u, mask, target, dirty):
        """Exactly ``target`` edges from ``u`` into ``mask``."""
        have = (st.one[u] & mask).bit_count()
        free = self.free(st, u) & mask
        nfree = free.bit_count()
        if have > target or have + nfree < target:
            raise _Conflict
        if nfree and have == target:
            for w in bits(free):
                self.assign(st, u, w, 0, dirty)
        elif nfree and have + nfree == target:
            for w in bits(free):
                self.assign(st, u, w, 1, dirty)

    def _window(self, st, a, b, lo, hi, dirty):
        """Common neighbours of ``a`` and ``b`` lie in ``[lo, hi]``."""
        one_a, one_b = st.one[a], st.one[b]
        pos_a = one_a | self.free(st, a)
        pos_b = one_b | self.free(st, b)
        must = one_a & one_b
        may = pos_a & pos_b & ~((1 << a) | (1 << b))
        nmust, nmay = must.bit_count(), may.bit_count()
        if nmust > hi or nmay < lo:
            raise _Conflict
        if nmust == hi:
            for t in bits(may & ~must):
                if one_a >> t & 1:
                    self.assign(st, b, t, 0, dirty)
                elif one_b >> t & 1:
                    self.assign(st, a, t, 0, dirty)
        if nmay == lo:
            for t in bits(may & ~must):
                self.assign(st, a, t, 1, dirty)
                self.assign(st, b, t, 1, dirty)

    def _pair(self, st, a, b, dirty):
        mu = self.m.mu_c
        bb = 1 << b
        if st.zero[a] & bb:
            self._window(st, a, b, mu, mu, dirty)
        elif st.one[a] & bb:
            if self.lo is not None and (a, b) in (self.m.branch_pair, self.m.branch_pair[::-1]):
                self._window(st, a, b, self.lo, self.hi, dirty)
        else:
            must = (st.one[a] & st.one[b]).bit_count()
            may = ((st.one[a] | self.free(st, a)) & (st.one[b] | self.free(st, b))
                   & ~((1 << a) | bb)).bit_count()
            if must > mu or may < mu:
                self.assign(st, a, b, 1, dirty)

    def linear_rows(self, st: _State):
        """Constraints that are linear in the undecided pairs, as (pairs, rhs) over the integers."""
        m = self.m
        out = []
        for u in range(self.v):
            f = self.free(st, u)
            if f:
                have = st.one[u].bit_count()
                out.append(([(u, w) for w in bits(f)], m.k_c - have))
                if u >= m.s and f & self.cocl:
                    out.append(([(u, w) for w in bits(f & self.cocl)],
                                m.e_c - (st.one[u] & self.cocl).bit_count()))
        for a in range(self.v):
            for b in bits(st.zero[a] & ~((1 << (a + 1)) - 1)):
                fa, fb = self.free(st, a), self.free(st, b)
                if fa & fb:
                    continue  # a product of two free pairs: not linear
                terms = [(b, t) for t in bits(st.one[a] & fb)] + [(a, t) for t in bits(st.one[b] & fa)]
                if terms:
                    out.append((terms, m.mu_c - (st.one[a] & st.one[b]).bit_count()))
        return out

    def parity(self, st: _State) -> None:
        """Gaussian elimination of the linear constraints modulo 2."""
        index: dict = {}
        pivots: dict = {}
        for terms, rhs in self.linear_rows(st):
            row = rhs & 1
            for u, w in terms:
                key = (u, w) if u < w else (w, u)
                i = index.setdefault(key, len(index) + 1)
                row ^= 1 << i
            while row > 1:
                top = row.bit_length() - 1
                piv = pivots.get(top)
                if piv is None:
                    pivots[top] = row
                    break
                row ^= piv
            if row == 1:
                raise _Conflict

    def _value(self, st, i):
        u, w = self.order[i]
        if st.one[u] >> w & 1:
            return 1
        if st.zero[u] >> w & 1:
            return 0
        return None

    def _lex(self, st, dirty) -> None:
        order = self.order
        n = len(order)
        for gi, partner in enumerate(self.partner):
            i = st.lex[gi]
            if i < 0:
                continue
            while i < n:
                j = partner[i]
                if j != i:
                    a, b = self._value(st, i), self._value(st, j)
                    if a is None:
                        if b == 1:
                            self.assign(st, *order[i], 1, dirty)
                        else:
                            break
                    elif b is None:
                        if a == 0:
                            self.assign(st, *order[j], 0, dirty)
                        else:
                            break
                    elif a != b:
                        if a < b:
                            raise _Conflict
                        i = -1
                        break
                i += 1
            st.lex[gi] = i

    def run(self, st: _State, dirty: set) -> None:
        while True:
            self._run_local(st, dirty)
            if self.partner:
                self._lex(st, dirty)
            if not dirty:
                return

    def _run_local(self, st: _State, dirty: set) -> None:
        m = self.m
        while dirty:
            u = min(dirty)
            dirty.discard(u)
            self._card(st, u, self.full & ~(1 << u), m.k_c, dirty)
            if u >= m.s:
                self._card(st, u, self.cocl, m.e_c, dirty)
            for w in range(self.v):
                if w != u:
                    self._pair(st, u, w, dirty)

    def initial(self) -> _State:
        m = self.m
        st = _State([0] * m.v, [0] * m.v, [0] * len(self.partner))
        dirty: set = set()
        for u, w in combinations(range(m.s), 2):
            self.assign(st, u, w, 0, dirty)
        for u, w in sorted(m.fixed_edges):
            self.assign(st, u, w, 1, dirty)
        if m.has_branch:
            self.assign(st, *m.branch_pair, 1, dirty)
        dirty.update(range(m.v))
        self.run(st, dirty)
        return st


def solve_feasibility(m: IlpModel, budget: float | None = 3600.0,
                      symmetry: bool = True, parity: bool = True,
                      edges_first: bool = True, parity_depth: int | None = 8) -> SolveResult:
    """Decide the model exactly, or return ``Timeout`` once ``budget`` seconds pass.

    ``symmetry`` and ``parity`` switch the lex-leader and GF(2) propagators; the
    parity check runs at the root and at nodes shallower than ``parity_depth``
    (``None``: everywhere).  ``edges_first`` explores ``x = 1`` before ``x = 0``.
    """
    t0 = time.monotonic()
    stats = SolveStats()
    order = branching_order(m)
    prop = _Propagator(m, order, model_symmetries(m) if symmetry else ())

    def done(outcome, graph=None):
        stats.forced = prop.forced
        stats.wall_time = time.monotonic() - t0
        return SolveResult(outcome, graph, stats)

    try:
        root = prop.initial()
        if parity:
            prop.parity(root)
    except _Conflict:
        return done(Outcome.Infeasible)
    stack = [(root, 0, 0)]
    values = (0, 1) if edges_first else (1, 0)
    nvar = len(order)
    while stack:
        st, pos, depth = stack.pop()
        stats.nodes += 1
        if budget is not None and stats.nodes % 64 == 0 and time.monotonic() - t0 > budget:
            return done(Outcome.Timeout)
        while pos < nvar:
            u, w = order[pos]
            if not (st.one[u] | st.zero[u]) >> w & 1:
                break
            pos += 1
        if pos == nvar:
            return done(Outcome.Feasible, Graph(m.v, tuple(st.one)))
        u, w = order[pos]
        # the last value pushed is explored first
        for val in values:
            child = st.copy()
            try:
                dirty: set = set()
                prop.assign(child, u, w, val, dirty)
                prop.run(child, dirty)
                if parity and (parity_depth is None or depth < parity_depth):
                    prop.parity(child)
            except _Conflict:
                continue
            stack.append((child, pos, depth + 1))
    return done(Outcome.Infeasible)
