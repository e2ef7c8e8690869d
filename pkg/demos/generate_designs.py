"""Write one file per isomorphism class of the small block designs used by campaigns.

    python3 demos/generate_designs.py [OUTDIR]

Produces OUTDIR/2-7-3-3/ (10 files) and OUTDIR/2-9-3-2/ (36 files).
"""
from __future__ import annotations

import sys
import time
from pathlib import Path

from neumaier.ilp.designs import enumerate_small_designs, write_design

SHAPES = [(7, 3, 3, 21), (9, 3, 2, 24)]


def main(out: Path) -> None:
    for s, b, lam, blocks in SHAPES:
        t0 = time.monotonic()
        designs = enumerate_small_designs(s, b, lam, blocks)
        target = out / f"2-{s}-{b}-{lam}"
        target.mkdir(parents=True, exist_ok=True)
        for i, d in enumerate(designs):
            write_design(target / f"design{i:02d}.txt", d)
        print(f"2-({s},{b},{lam}): {len(designs)} designs in {time.monotonic() - t0:.1f}s -> {target}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data/designs"))
