"""The feasibility ILP for the complement of a strictly Neumaier graph.

Vertices ``0..v-1``; the regular coclique is ``0..s-1``.  A binary ``x`` per
vertex pair and a binary ``y`` per (pair, third vertex) encode the graph and
its common neighbours.  Constraint families:

    degree        sum_w x_uw = k'                               per vertex
    y-link        y_tuw >= x_tu + x_tw - 1, y_tuw <= x_tu, y_tuw <= x_tw
    co-edge       sum_t y_tuw >= mu'(1 - x_uw),  sum_t y_tuw <= mu' + (v - mu') x_uw
    coclique      x_uw = 0 inside the coclique; sum_{w in coclique} x_uw = e' outside
    fixed         x_uw = 1 for every fixed edge
    no-ER branch  x_pq = 1 and sum_t y_tpq >= lambda'+1  (or <= lambda'-1)
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator

from ..errors import InconsistentFixedEdges, NonIntegralLambdaBranch
from ..params import ComplementParameters


class BranchSense(enum.Enum):
    MoreThanLambda = "more"
    FewerThanLambda = "fewer"

    def __str__(self):
        return self.value


def _pair(u: int, w: int) -> tuple[int, int]:
    return (u, w) if u < w else (w, u)


@dataclass(frozen=True)
class IlpModel:
    v: int
    k_c: int
    lambda_c: Fraction
    mu_c: int
    e_c: int
    s: int
    fixed_edges: frozenset = field(default_factory=frozenset)
    branch_pair: tuple[int, int] | None = None
    branch_sense: BranchSense | None = None

    @property
    def has_branch(self) -> bool:
        return self.branch_pair is not None and self.branch_sense is not None

    @property
    def branch_bound(self) -> int:
        """The right-hand side of the branch window constraint."""
        lam = int(self.lambda_c)
        return lam + 1 if self.branch_sense is BranchSense.MoreThanLambda else lam - 1

    # variables ----------------------------------------------------------
    def x_pairs(self) -> list[tuple[int, int]]:
        return list(combinations(range(self.v), 2))

    def y_triples(self) -> Iterator[tuple[int, int, int]]:
        """``(t, u, w)`` with ``u < w`` and ``t`` outside the pair."""
        for u, w in combinations(range(self.v), 2):
            for t in range(self.v):
                if t != u and t != w:
                    yield (t, u, w)

    def num_x(self) -> int:
        return comb(self.v, 2)

    def num_y(self) -> int:
        return comb(self.v, 2) * (self.v - 2)

    def family_counts(self) -> dict[str, int]:
        v, s = self.v, self.s
        return {
            "degree": v,
            "y_link": 3 * comb(v, 2) * (v - 2),
            "co_edge": 2 * comb(v, 2),
            "coclique_pairs": comb(s, 2),
            "coclique_degree": v - s,
            "fixed": len(self.fixed_edges),
            "branch": 2 if self.has_branch else 0,
        }


def build_model(cp: ComplementParameters, fixed_edges=(), branch_pair=None,
                branch_sense: BranchSense | None = None, include_er_branch: bool = True) -> IlpModel:
    """Assemble the model for complement parameters ``cp``.

    With ``include_er_branch`` the pair ``branch_pair`` (0-based) is forced to be an
    edge whose common-neighbour count lies strictly above or below lambda'.
    """
    s = cp.s
    fixed = frozenset(_pair(u, w) for u, w in fixed_edges)
    for u, w in fixed:
        if u == w or not (0 <= u < cp.v and 0 <= w < cp.v):
            raise InconsistentFixedEdges(f"bad fixed edge {(u, w)}")
        if u < s and w < s:
            raise InconsistentFixedEdges(f"fixed edge {(u + 1, w + 1)} lies inside the coclique")
    if include_er_branch:
        if not cp.lambda_integral:
            raise NonIntegralLambdaBranch(
                f"lambda' = {cp.lambda_c} is not an integer; no edge-regular complement exists")
        if branch_pair is None or branch_sense is None:
            raise ValueError("the edge-regularity branch needs a pair and a sense")
        p, q = _pair(*branch_pair)
        if p < s and q < s:
            raise InconsistentFixedEdges("branch pair lies inside the coclique")
        return IlpModel(cp.v, cp.k_c, cp.lambda_c, cp.mu_c, cp.e_c, s, fixed, (p, q), branch_sense)
    return IlpModel(cp.v, cp.k_c, cp.lambda_c, cp.mu_c, cp.e_c, s, fixed)
