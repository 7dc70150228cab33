#!/usr/bin/env python3
"""Compare tableau ranks against Baker-Norine ranks on every small discrete chain.

Covers all chains with g <= --max-genus and cycle sizes <= --max-size, and all
divisors with coefficients in 0..3 and degree <= 2g - 2.  Riemann-Roch is
checked on the same divisors.
"""

import argparse
import itertools
import sys
import time

from cyclechain.chain_model import Cycle, DiscreteChain
from cyclechain.finite_graph_oracle import VertexDivisor, canonical_divisor, dhar_reduce, rank_baker_norine
from cyclechain.rank_engine import rank_discrete


def small_divisors(n, max_degree, max_coeff=3):
    for coeffs in itertools.product(range(max_coeff + 1), repeat=n):
        if sum(coeffs) <= max_degree:
            yield VertexDivisor(coeffs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-genus", type=int, default=3)
    ap.add_argument("--max-size", type=int, default=4)
    args = ap.parse_args(argv)

    options = [Cycle(k, j) for k in range(2, args.max_size + 1) for j in range(2, k + 1)]
    start = time.perf_counter()
    total = bad = rr = 0
    for g in range(1, args.max_genus + 1):
        for cycles in itertools.product(options, repeat=g):
            chain = DiscreteChain(cycles)
            G = chain.graph()
            K = canonical_divisor(G)
            cache = {}

            def bn(D):
                key = dhar_reduce(G, D, 0)
                if key not in cache:
                    cache[key] = rank_baker_norine(G, D)
                return cache[key]

            for D in small_divisors(G.n_vertices, 2 * g - 2):
                total += 1
                oracle = bn(D)
                if rank_discrete(chain, D).rank != oracle:
                    bad += 1
                    print(f"mismatch: {chain.to_json()} {D.coefficients}")
                if oracle - bn(K - D) != D.degree - g + 1:
                    rr += 1
                    print(f"riemann-roch: {chain.to_json()} {D.coefficients}")
        print(f"g={g}: {total} divisors so far, {bad} mismatches, {rr} RR violations "
              f"({time.perf_counter() - start:.1f}s)")
    return 1 if bad or rr else 0


if __name__ == "__main__":
    sys.exit(main())
