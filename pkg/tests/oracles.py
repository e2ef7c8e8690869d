"""Independent reference implementations used as test oracles.

Nothing here imports the package's search or solver code; graphs are plain
numpy adjacency matrices or networkx graphs.
"""
from __future__ import annotations

from itertools import combinations

import networkx as nx
import numpy as np


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def matrix(g) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, w in g.edges():
        a[u, w] = a[w, u] = 1
    return a


def all_labeled(n: int):
    """Every labelled graph on n vertices as an adjacency matrix."""
    pairs = list(combinations(range(n), 2))
    iu = np.array([p[0] for p in pairs]), np.array([p[1] for p in pairs])
    for code in range(1 << len(pairs)):
        a = np.zeros((n, n), dtype=np.int64)
        bitsv = (code >> np.arange(len(pairs))) & 1
        a[iu] = bitsv
        yield a + a.T


def iso_classes(mats) -> list[nx.Graph]:
    reps: list[nx.Graph] = []
    for a in mats:
        h = nx.from_numpy_array(a)
        if not any(nx.is_isomorphic(h, r) for r in reps):
            reps.append(h)
    return reps


def meets_model(a: np.ndarray, v, k_c, mu_c, e_c, s, fixed=(), branch=None, sense=None, lam_c=None) -> bool:
    """Constraints (1)-(10) evaluated directly on the candidate complement graph."""
    if not (a.sum(axis=1) == k_c).all():
        return False
    common = a @ a
    off = ~np.eye(v, dtype=bool)
    non = (a == 0) & off
    if not (common[non] == mu_c).all():
        return False
    if a[:s, :s].any():
        return False
    if not (a[s:, :s].sum(axis=1) == e_c).all():
        return False
    for u, w in fixed:
        if a[u, w] != 1:
            return False
    if branch is not None:
        p, q = branch
        if a[p, q] != 1:
            return False
        c = common[p, q]
        lam = int(lam_c)
        if sense == "more" and c < lam + 1:
            return False
        if sense == "fewer" and c > lam - 1:
            return False
    return True


def is_edge_regular(h: nx.Graph):
    degs = {d for _, d in h.degree()}
    if len(degs) != 1 or h.number_of_edges() == 0:
        return None
    lams = {len(set(h[u]) & set(h[w])) for u, w in h.edges()}
    return lams.pop() if len(lams) == 1 else None


def regular_cliques(h: nx.Graph) -> list[tuple[frozenset, int]]:
    out = []
    for c in nx.find_cliques(h):
        c = frozenset(c)
        counts = {len(set(h[w]) & c) for w in h if w not in c}
        if len(counts) == 1 and (e := counts.pop()) > 0:
            out.append((c, e))
    return out


class TooLarge(Exception):
    pass


def model_solutions(v, k_c, mu_c, e_c, s, fixed=(), branch=None, sense=None, lam_c=None,
                    node_cap=200_000):
    """Every labelled graph meeting the model, by row-wise enumeration.

    Rows are filled vertex by vertex; only degrees, the coclique and forced
    pairs prune the walk.  Everything else is checked on complete matrices.
    Raises TooLarge after ``node_cap`` nodes.
    """
    forced = {tuple(sorted(p)) for p in fixed}
    if branch is not None:
        forced.add(tuple(sorted(branch)))
    a = np.zeros((v, v), dtype=np.int64)
    deg = [0] * v
    cdeg = [0] * v
    out = []
    nodes = [0]

    def ok_pair(u, w):
        return not (u < s and w < s)

    def row(u):
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise TooLarge
        if u == v:
            if meets_model(a, v, k_c, mu_c, e_c, s, fixed, branch, sense, lam_c):
                out.append(a.copy())
            return
        if u >= s and cdeg[u] != e_c:
            return
        need = k_c - deg[u]
        later = list(range(u + 1, v))
        must = [w for w in later if (u, w) in forced]
        free = [w for w in later if (u, w) not in forced and ok_pair(u, w) and deg[w] < k_c
                and not (u < s and cdeg[w] >= e_c)]
        if any(not ok_pair(u, w) for w in must):
            return
        rest = need - len(must)
        if rest < 0 or rest > len(free):
            return
        for extra in combinations(free, rest):
            chosen = must + list(extra)
            if any(deg[w] >= k_c for w in chosen):
                continue
            for w in chosen:
                a[u, w] = a[w, u] = 1
                deg[w] += 1
                if u < s:
                    cdeg[w] += 1
            deg[u] += len(chosen)
            row(u + 1)
            deg[u] -= len(chosen)
            for w in chosen:
                a[u, w] = a[w, u] = 0
                deg[w] -= 1
                if u < s:
                    cdeg[w] -= 1

    row(0)
    return out
