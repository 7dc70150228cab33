#!/usr/bin/env python3
"""Brill-Noether numbers w^1_d of realized discrete Martens-special chains, by brute force."""

import argparse
import sys
import time

from cyclechain.chain_model import MartensSpec, martens_special_profile, realize_discrete_chain
from cyclechain.finite_graph_oracle import wrd_discrete


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--genus", type=int, default=5)
    ap.add_argument("--positions", default="3", help="j_1,j_2,...")
    ap.add_argument("--max-degree", type=int, help="default k + 2")
    args = ap.parse_args(argv)

    spec = MartensSpec(args.genus, tuple(int(s) for s in args.positions.split(",")))
    G = realize_discrete_chain(martens_special_profile(spec, "discrete")).graph()
    top = args.max_degree or spec.k + 2
    print(f"{spec.label()}: {G.n_vertices} vertices, {len(G.edges)} edges")
    for d in range(1, top + 1):
        start = time.perf_counter()
        w = wrd_discrete(G, 1, d)
        print(f"w^1_{d} = {w}  ({time.perf_counter() - start:.2f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
