from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

from neumaier.canon import are_isomorphic
from neumaier.constructions import (M_SPEC, BlockSpec, LatinSquare, TriangleSwitch,
                                    apply_triangle_switch, assemble_from_blocks, block_order_permutation,
                                    cell_label, gamma25, gamma25_switch, latin_graph_block_order,
                                    latin_square_graph, random_latin_square, square_order5)
from neumaier.errors import (AsymmetricSpec, DiagonalNonzero, EdgeAlreadyPresent, InputFormatError,
                             InvalidSquare, MissingEdge)
from neumaier.graph import Graph, classify, enumerate_maximal_cliques, regularity_profile

from oracles import to_nx


def test_order_two_is_k4():
    assert latin_square_graph(LatinSquare.cyclic(2)) == Graph.complete(4)


def test_cyclic_order_three():
    p = regularity_profile(latin_square_graph(LatinSquare.cyclic(3)))
    assert (p.degree, p.edge_regular_lambda, p.co_edge_regular_mu) == (6, 3, 6)


@pytest.mark.parametrize("n", range(2, 8))
def test_random_squares_are_edge_regular(n):
    rng = np.random.default_rng(n)
    for _ in range(3):
        g = latin_square_graph(random_latin_square(n, rng))
        p = regularity_profile(g)
        assert p.degree == 3 * (n - 1) and p.edge_regular_lambda == (n if n > 2 else 2)


def test_square_order5_cells():
    sq = square_order5()
    assert sq.color(1, 1) == 1 and sq.color(2, 2) == 1
    assert [list(r) for r in sq.cells] == [[1, 2, 3, 4, 5], [2, 1, 4, 5, 3], [3, 5, 1, 2, 4],
                                           [4, 3, 5, 1, 2], [5, 4, 2, 3, 1]]


def test_invalid_squares():
    with pytest.raises(InvalidSquare):
        LatinSquare.from_rows([[1, 2], [1, 2]])
    with pytest.raises(InputFormatError) as exc:
        LatinSquare.parse("1 2\n2 x\n")
    assert exc.value.line == 2


def test_m_is_the_latin_square_graph(latin5):
    m = latin_graph_block_order()
    assert m == latin5.relabel(block_order_permutation())
    assert are_isomorphic(m, latin5)


def test_m_prime_differs_by_nine_and_nine(g25):
    a = {frozenset(e) for e in latin_graph_block_order().edges()}
    b = {frozenset(e) for e in g25.edges()}
    assert len(a - b) == 9 and len(b - a) == 9


def test_switch_triangles_by_cell():
    sw = gamma25_switch()
    named = lambda tris: {frozenset(cell_label(u) for u in t) for t in tris}
    assert named(sw.removed) == {frozenset(t) for t in
                                 [("x24", "x32", "x34"), ("x25", "x42", "x45"), ("x23", "x52", "x53")]}
    assert named(sw.added) == {frozenset(t) for t in
                               [("x24", "x45", "x52"), ("x25", "x32", "x53"), ("x23", "x34", "x42")]}


def test_switch_applied_to_latin_graph(g25, latin5):
    sw = gamma25_switch()
    m = latin_graph_block_order()
    assert apply_triangle_switch(m, sw) == g25
    assert apply_triangle_switch(apply_triangle_switch(m, sw), sw.inverse()) == m
    assert apply_triangle_switch(m, TriangleSwitch((), ())) == m
    with pytest.raises(MissingEdge):
        apply_triangle_switch(m, sw.inverse())
    with pytest.raises(EdgeAlreadyPresent):
        apply_triangle_switch(g25, TriangleSwitch((), sw.removed[:1] + sw.added[:1]))


def test_gamma25_certificate(g25, g25_decoded):
    v = classify(g25)
    assert str(v.tag) == "StrictlyNeumaier" and v.parameters == (25, 12, 5, 2, 5)
    assert nx.is_isomorphic(to_nx(g25), to_nx(g25_decoded))
    five = [c for c in enumerate_maximal_cliques(g25) if len(c) == 5]
    assert len(five) == 6 and max(map(len, enumerate_maximal_cliques(g25))) == 5


def test_triangles_block_diagonal():
    syms = [["O"] * 8 for _ in range(8)]
    for i in range(8):
        syms[i][i] = "B"
    g = assemble_from_blocks(BlockSpec(tuple(map(tuple, syms)), (3,) * 8))
    comps = list(nx.connected_components(to_nx(g)))
    assert len(comps) == 8 and all(len(c) == 3 for c in comps) and g.num_edges() == 24


def test_block_spec_errors():
    bad = [list(r) for r in M_SPEC.symbols]
    bad[1][2] = "I"
    with pytest.raises(AsymmetricSpec):
        assemble_from_blocks(BlockSpec(tuple(map(tuple, bad))))
    diag = [list(r) for r in M_SPEC.symbols]
    diag[1][1] = "I"
    with pytest.raises(DiagonalNonzero):
        assemble_from_blocks(BlockSpec(tuple(map(tuple, diag))))
