"""Run the ILP campaigns that settle the small open parameter sets, and the
neighbourhood completion for (25,16,9;3,5).

    python3 demos/nonexistence.py            # fast campaigns only
    python3 demos/nonexistence.py --all      # also the neighbourhood pipeline (~1 min)
"""
from __future__ import annotations

import sys
from pathlib import Path

from neumaier.graph import classify
from neumaier.ilp import CampaignOptions, run_campaign
from neumaier.params import ParameterSet
from neumaier.search import lemma51_pipeline

DESIGNS = Path(__file__).resolve().parent.parent / "data" / "designs"


def campaign(text: str, **kw) -> None:
    rep = run_campaign(ParameterSet.parse(text), opts=CampaignOptions(budget=600, **kw))
    outcomes = {}
    for r in rep.runs:
        outcomes[r.outcome] = outcomes.get(r.outcome, 0) + 1
    note = f" ({rep.note})" if rep.note else ""
    print(f"{text}: {rep.verdict} after {len(rep.runs)} runs {outcomes}{note}")


def main(everything: bool) -> None:
    campaign("35,22,12,3,5")
    campaign("55,34,18,3,5")
    campaign("25,16,9,3,5", group_adjacency=True)
    if everything:
        graphs, table, stats = lemma51_pipeline(progress=lambda m: print(" ", m))
        print("seed  stage1  stage2  stage3")
        for row in table:
            print("  ".join(f"{x:>5}" for x in row))
        for g in graphs:
            print("found:", classify(g).tag, classify(g).parameters)
        print(f"{stats.nodes_expanded} nodes in {stats.wall_time:.1f}s")


if __name__ == "__main__":
    main("--all" in sys.argv[1:])
