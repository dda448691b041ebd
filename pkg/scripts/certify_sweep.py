#!/usr/bin/env python3
"""Certify the 1/2-approximation guarantee on a fresh seeded corpus.

Runs the MaxSAT interval sweep and the MaxATSP contract-match-expand
algorithm against their brute-force oracles and prints one row per
instance plus a summary.  Example:

    python3 scripts/certify_sweep.py --maxsat 30 --maxatsp 12 --alpha 1/2
"""

import argparse
import time
from fractions import Fraction

from mobal.instances import GeneratorSpec, generate
from mobal.maxatsp import maxatsp_approx, tsp_oracle
from mobal.maxsat import maxsat_approx, maxsat_oracle
from mobal.pareto import is_alpha_approx_set


def fmt_ratio(r):
    return "inf" if r is None else f"{r} (~{float(r):.3f})"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--maxsat", type=int, default=20, help="cnf instance count")
    ap.add_argument("--maxatsp", type=int, default=9, help="graph instance count")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--alpha", default="1/2")
    args = ap.parse_args()
    alpha = Fraction(args.alpha)

    failures = 0
    t0 = time.time()
    for i in range(args.maxsat):
        inst = generate(
            GeneratorSpec(
                kind="cnf", seed=args.seed + i,
                m=4 + (i % 7), clauses=5 + (i % 11), dim=1 + (i % 2), bound=20,
            )
        )
        cert = is_alpha_approx_set(maxsat_approx(inst), maxsat_oracle(inst), alpha)
        ratios = [r for r in cert.cover_ratios() if r is not None]
        worst = min(ratios) if ratios else None
        print(
            f"maxsat  seed={args.seed + i:<6} vars={inst.num_vars:<3} "
            f"clauses={len(inst.clauses):<3} k={inst.dimension} "
            f"{'OK ' if cert.ok else 'FAIL'} worst cover {fmt_ratio(worst)}"
        )
        failures += not cert.ok

    for i in range(args.maxatsp):
        g = generate(
            GeneratorSpec(
                kind="graph", seed=args.seed + i,
                vertices=(4, 6, 8)[i % 3], dim=2, bound=30,
            )
        )
        cert = is_alpha_approx_set(maxatsp_approx(g), tsp_oracle(g), alpha)
        ratios = [r for r in cert.cover_ratios() if r is not None]
        worst = min(ratios) if ratios else None
        print(
            f"maxatsp seed={args.seed + i:<6} |V|={g.num_vertices:<2} "
            f"{'OK ' if cert.ok else 'FAIL'} worst cover {fmt_ratio(worst)}"
        )
        failures += not cert.ok

    total = args.maxsat + args.maxatsp
    print(
        f"\n{total - failures}/{total} certified at alpha={alpha} "
        f"in {time.time() - t0:.1f}s"
    )
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
