#!/usr/bin/env python3
"""Print computed gonality sequences next to the closed form for a range of Martens-special specs."""

import argparse
import csv
import sys

from cyclechain.chain_model import martens_special_profile
from cyclechain.rank_engine import gonality_sequence
from cyclechain.theorem_suite import theorem_b_value, valid_specs


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-genus", type=int, default=10)
    ap.add_argument("--max-type", type=int, default=2)
    ap.add_argument("--kind", choices=("metric", "discrete"), default="metric")
    args = ap.parse_args(argv)

    out = csv.writer(sys.stdout)
    out.writerow(["spec", "r", "g_r", "formula", "match"])
    mismatches = 0
    for spec in valid_specs(args.max_genus, args.max_type):
        g = spec.genus
        seq = gonality_sequence(martens_special_profile(spec, args.kind), g + 2).sequence
        for r, gr in sorted(seq.items()):
            want = theorem_b_value(g, spec.k, r)
            mismatches += gr != want
            out.writerow([spec.label(), r, gr, want, int(gr == want)])
    print(f"# mismatches: {mismatches}", file=sys.stderr)
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
