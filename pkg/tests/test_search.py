from __future__ import annotations

from collections import Counter, defaultdict
from itertools import combinations

import networkx as nx
import pytest

from neumaier.canon import are_isomorphic, canonical_form
from neumaier.errors import BudgetExceeded, DomainError
from neumaier.graph import Graph, Tag, classify, find_regular_cliques, has_clique_of_size, mask_of
from neumaier.params import ParameterSet
from neumaier.search import (CommonNeighborCap, EdgeRegular, NoClique, PartialGraph, RegularSet,
                             ScopedCommonCap, enumerate_by_degree_sequence, enumerate_regular_diamondfree,
                             exhaustive_strict_search, extend_vertex, gamma1, lemma51_pipeline,
                             lemma51_seed, read_checkpoint, triangle_partition)

from oracles import to_nx


def atlas_by_degree_sequence():
    """Isomorphism classes of graphs on up to seven vertices, keyed by sorted degree sequence."""
    out = defaultdict(int)
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == 0:
            continue
        out[tuple(sorted(d for _, d in h.degree()))] += 1
    return out


ATLAS = atlas_by_degree_sequence()


@pytest.mark.parametrize("seq, count", [((1, 3, 3, 3, 3, 5), 1), ((1, 1, 4, 4, 4, 4), 0),
                                        ((1, 2, 2, 3, 5, 5), 0), ((1, 2, 2, 4, 4, 5), 0)])
def test_six_vertex_sequences(seq, count):
    assert len(enumerate_by_degree_sequence(seq)) == count == ATLAS.get(tuple(sorted(seq)), 0)


def test_every_realisation_contains_k4():
    graphs = enumerate_by_degree_sequence((1, 2, 3, 3, 4, 5))
    assert graphs and all(has_clique_of_size(g, 4) for g in graphs)
    assert len(graphs) == ATLAS[(1, 2, 3, 3, 4, 5)]


@pytest.mark.parametrize("n", range(1, 8))
def test_degree_sequence_completeness(n):
    for seq, count in ATLAS.items():
        if len(seq) != n:
            continue
        graphs = enumerate_by_degree_sequence(seq)
        assert len(graphs) == count, seq
        assert all(sorted(g.degrees()) == list(seq) for g in graphs)
        keys = {canonical_form(g).key for g in graphs}
        assert len(keys) == len(graphs)


def test_degree_sequence_errors():
    with pytest.raises(DomainError):
        enumerate_by_degree_sequence((1, 1, 1))
    with pytest.raises(DomainError):
        enumerate_by_degree_sequence((3, 1, 1, 1, 0, 6))
    with pytest.raises(DomainError):
        enumerate_by_degree_sequence((1,) * 12)
    assert enumerate_by_degree_sequence((2, 2, 2, 2, 2, 2, 2, 2, 2, 2)) != []


def diamond_free(g: Graph) -> bool:
    return all(g.common(u, w) <= 1 for u, w in g.edges())


def test_diamond_free_classification():
    graphs = enumerate_regular_diamondfree(9, 4)
    assert all(set(g.degrees()) == {4} and diamond_free(g) and not has_clique_of_size(g, 4)
               for g in graphs)
    assert len({canonical_form(g).key for g in graphs}) == len(graphs)
    special = [g for g in graphs if are_isomorphic(g, gamma1())]
    assert len(special) == 1
    for g in graphs:
        assert are_isomorphic(g, gamma1()) or triangle_partition(g) is not None
    assert triangle_partition(gamma1()) is None


def test_diamond_free_degenerate():
    assert enumerate_regular_diamondfree(4, 3) == []


@pytest.mark.parametrize("n, d", [(6, 2), (6, 3), (7, 2), (7, 4), (6, 4)])
def test_diamond_free_against_atlas(n, d):
    want = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n
            and all(x == d for _, x in h.degree())
            and all(len(set(h[a]) & set(h[b])) <= 1 for a, b in h.edges())
            and max((len(c) for c in nx.find_cliques(h)), default=0) < 4]
    assert len(enumerate_regular_diamondfree(n, d)) == len(want)


def test_triangle_partition_oracle():
    rng = __import__("random").Random(5)
    for _ in range(40):
        g = Graph.from_edges(6, [e for e in combinations(range(6), 2) if rng.random() < 0.6])
        tp = triangle_partition(g)
        brute = any(g.is_clique(a) and g.is_clique(tuple(set(range(6)) - set(a)))
                    for a in combinations(range(6), 3))
        assert (tp is not None) == brute
        if tp:
            assert sorted(x for t in tp for x in t) == list(range(6))


def test_gamma1_shape():
    g = gamma1()
    assert set(g.degrees()) == {4} and diamond_free(g) and not has_clique_of_size(g, 4)


# ---------------------------------------------------------------------------
# extend_vertex

def test_extend_vertex_at_target_returns_partial():
    pg = PartialGraph.start(4, 2, edges=[(0, 1), (0, 2)])
    assert extend_vertex(pg, 0, 2) == [pg]


def test_extend_vertex_without_candidates():
    pg = PartialGraph.start(4, 1, edges=[(1, 2)], decided_pairs=[(0, 3)])
    assert extend_vertex(pg, 0, 2) == []


def test_extend_vertex_one_child_per_orbit():
    pg = PartialGraph.start(6, 3)
    kids = extend_vertex(pg, 0, 3)
    assert len(kids) == 1
    pg = PartialGraph.start(6, [2, 3, 3, 3, 3, 3], edges=[(1, 2)])
    kids = extend_vertex(pg, 0, 2)
    # neighbour sets {1,2}, {1,3}, {3,4} up to the symmetry fixing 0
    assert len(kids) == 3
    assert all(k.is_complete(0) and k.degree(0) == 2 for k in kids)


def neighbourhood_partial():
    """Sixteen vertices x1..x16 (0-based) with the required edges around two 4-cliques."""
    x = lambda i: i - 1
    pairs = [(5, 10), (10, 6), (6, 11), (11, 5), (5, 6), (6, 7), (7, 11), (11, 12), (12, 6), (7, 12),
             (10, 11), (5, 8), (8, 10), (10, 9), (9, 5), (7, 8), (8, 12), (12, 9), (9, 7),
             (1, 6), (2, 6), (3, 6), (4, 6), (13, 11), (14, 11), (15, 11), (16, 11)]
    s1 = mask_of(x(i) for i in (5, 6, 10, 11))
    s2 = mask_of(x(i) for i in (6, 7, 11, 12))
    forbidden = (ScopedCommonCap((1 << 16) - 1, 4), RegularSet(s1, 2), RegularSet(s2, 2))
    return PartialGraph.start(16, 9, forbidden, [(x(a), x(b)) for a, b in pairs])


def test_extend_x7_two_and_two():
    pg = neighbourhood_partial()
    kids = extend_vertex(pg, 6, 9)
    assert len(kids) == 1
    new = set(kids[0].graph.neighbors(6)) - set(pg.graph.neighbors(6))
    low, high = set(range(0, 4)), set(range(12, 16))
    assert len(new & low) == 2 and len(new & high) == 2
    # the same orbit as x7 ~ x3, x4, x13, x14
    want = pg.with_neighbors(6, (2, 3, 12, 13))
    key = lambda p: canonical_form(p.symmetry_graph()[0]).key
    assert key(kids[0]) == key(want)


# ---------------------------------------------------------------------------
# strictly Neumaier search

def test_smallest_strict_graph_is_unique():
    graphs, stats = exhaustive_strict_search(ParameterSet.parse("16,9,4,2,4"))
    assert len(graphs) == 1
    g = graphs[0]
    v = classify(g)
    assert v.tag is Tag.StrictlyNeumaier and v.parameters == (16, 9, 4, 2, 4)
    four = [c for c in find_regular_cliques(g) if c.s == 4]
    assert len(four) == 8 and {c.e for c in four} == {2}
    assert stats.completions_found <= stats.nodes_expanded


def test_strict_search_rejects_inadmissible():
    with pytest.raises(DomainError):
        exhaustive_strict_search(ParameterSet.parse("10,6,3,1,3"))


def test_budget_and_resume(tmp_path):
    p = ParameterSet.parse("16,9,4,2,4")
    ck = tmp_path / "frontier.json"
    with pytest.raises(BudgetExceeded) as exc:
        exhaustive_strict_search(p, budget=0.0, checkpoint=ck)
    assert exc.value.stats.budget_hit
    frontier, found = read_checkpoint(ck, p)
    assert frontier
    graphs, _ = exhaustive_strict_search(p, resume=ck)
    assert len(graphs) == 1


def test_strict_search_parallel_matches_serial():
    p = ParameterSet.parse("16,9,4,2,4")
    a, _ = exhaustive_strict_search(p)
    b, _ = exhaustive_strict_search(p, workers=2)
    assert [canonical_form(g).key for g in a] == [canonical_form(g).key for g in b]


def test_predicates():
    pg = PartialGraph.start(5, 4, edges=[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    assert CommonNeighborCap(1).violated(pg)
    assert not CommonNeighborCap(2).violated(pg)
    assert NoClique(3).violated(pg) and not NoClique(4).violated(pg)
    assert EdgeRegular(1).violated(pg)


def test_edge_regular_uses_degree_caps():
    # 0 is saturated by its edge to 1, so 0 and 1 can never gain a common neighbour
    pg = PartialGraph.start(5, [1, 3, 3, 3, 3], edges=[(0, 1)], exact_degrees=False)
    assert EdgeRegular(1).violated(pg)
    assert not EdgeRegular(0).violated(pg)


# ---------------------------------------------------------------------------
# the (25,16,9;3,5) neighbourhood pipeline

def mols_graph() -> nx.Graph:
    """Cells of a 5x5 grid joined when they share a row, a column, or a symbol of
    either of two orthogonal Latin squares."""
    h = nx.Graph()
    cells = [(r, c) for r in range(5) for c in range(5)]
    for (r1, c1), (r2, c2) in combinations(cells, 2):
        if r1 == r2 or c1 == c2 or (r1 + c1 - r2 - c2) % 5 == 0 or (r1 + 2 * c1 - r2 - 2 * c2) % 5 == 0:
            h.add_edge((r1, c1), (r2, c2))
    return h


@pytest.fixture(scope="module")
def pipeline():
    return lemma51_pipeline()


def _inner(pg) -> nx.Graph:
    return to_nx(pg.graph).subgraph(range(1, 17))


def test_neighbourhood_seeds_cover_every_class():
    """Split x1..x4 and x13..x16 into pairs hung off x5 and x10 in every way; the
    seeds must meet each isomorphism class of the result."""
    base = lemma51_seed("a")
    core = [(u, w) for u, w in base.graph.edges() if u != 0 and not
            ((u in (5, 10) and w in (1, 2, 3, 4, 13, 14, 15, 16)) or
             (w in (5, 10) and u in (1, 2, 3, 4, 13, 14, 15, 16)))]
    classes: list[nx.Graph] = []
    for top in ((1, 2), (1, 3), (1, 4)):
        for bottom in combinations((13, 14, 15, 16), 2):
            rest_top = tuple(x for x in (1, 2, 3, 4) if x not in top)
            rest_bottom = tuple(x for x in (13, 14, 15, 16) if x not in bottom)
            h = nx.Graph(core)
            h.add_edges_from((5, x) for x in top + bottom)
            h.add_edges_from((10, x) for x in rest_top + rest_bottom)
            if not any(nx.is_isomorphic(h, c) for c in classes):
                classes.append(h)
    assert len(classes) == 4
    hit = {i for n in "abcde" for i, c in enumerate(classes) if nx.is_isomorphic(_inner(lemma51_seed(n)), c)}
    assert hit == {0, 1, 2, 3}
    assert nx.is_isomorphic(_inner(lemma51_seed("b")), _inner(lemma51_seed("d")))
    for n in "abcde":
        assert lemma51_seed(n).consistent()


def test_neighbourhood_pipeline_single_graph(pipeline):
    graphs, table, stats = pipeline
    assert len(graphs) == 1
    g = graphs[0]
    v = classify(g)
    assert v.profile.is_strongly_regular
    assert v.parameters == (25, 16, 9, 3, 5)
    assert nx.is_isomorphic(to_nx(g), mols_graph())
    assert [row[0] for row in table] == list("abcde")
    assert not stats.budget_hit


def test_neighbourhood_pipeline_first_two_seeds_die_at_edge_stage(pipeline):
    _, table, _ = pipeline
    rows = {row[0]: row[1:] for row in table}
    assert rows["a"][1] == 0
    assert rows["b"][1] == 0
