"""Build the 25-vertex strictly Neumaier graph and print everything that certifies it.

    python3 demos/gamma25_certificate.py
"""
from __future__ import annotations

from neumaier.canon import are_isomorphic, automorphism_group
from neumaier.constructions import (apply_triangle_switch, gamma25, gamma25_switch,
                                    latin_graph_block_order)
from neumaier.graph import classify, encode_graph6, enumerate_maximal_cliques, regularity_profile


def describe(name, g) -> None:
    prof = regularity_profile(g)
    v = classify(g)
    grp = automorphism_group(g)
    fives = [c for c in enumerate_maximal_cliques(g) if len(c) == 5]
    print(f"{name}: {v.tag}, params {v.parameters}")
    print(f"  degree {prof.degree}, lambda {prof.edge_regular_lambda}, mu {prof.co_edge_regular_mu}")
    print(f"  maximal 5-cliques {len(fives)}, |Aut| {grp.order}, vertex orbits {len(grp.vertex_orbits)}")


def main() -> None:
    m = latin_graph_block_order()
    describe("Latin-square graph", m)
    sw = gamma25_switch()
    print("switch removes", sw.removed)
    print("switch adds   ", sw.added)
    g = apply_triangle_switch(m, sw)
    describe("after the switch", g)
    print("equal to gamma25():", are_isomorphic(g, gamma25()))
    print("graph6:", encode_graph6(g))


if __name__ == "__main__":
    main()
