#!/usr/bin/env python3
"""Sweep seeded balancing instances and report the observed worst-case
imbalance as a fraction of the proven bound.

The searches guarantee 2nz (paired) / 4nz (integer); whether those
constants are tight is unknown, so this script only reports what the
sweep saw.  Example:

    python3 scripts/observed_imbalance.py --count 2000 --bound 50
"""

import argparse
from fractions import Fraction

from mobal.balancing import balance_integer, balance_paired, verify_balance
from mobal.instances import GeneratorSpec, generate


def paired_ratio(inst, res):
    dim = inst.dimension
    total = [sum(v[c] for v in inst.x) + sum(v[c] for v in inst.y) for c in range(dim)]
    worst = Fraction(0)
    for c in range(dim):
        bound = 4 * inst.n * inst.z[c]
        if bound:
            dev = abs(2 * (res.in_sum[c] + res.out_sum[c]) - total[c])
            worst = max(worst, Fraction(dev, bound))
    return worst


def integer_ratio(inst, res):
    worst = Fraction(0)
    for c in range(inst.dimension):
        bound = 4 * inst.n * inst.z[c]
        if bound:
            worst = max(worst, Fraction(abs(res.in_sum[c] - res.out_sum[c]), bound))
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-m", type=int, default=16)
    ap.add_argument("--bound", type=int, default=50)
    args = ap.parse_args()

    for kind, variant, runner, ratio in (
        ("balance-paired", "paired", lambda i: balance_paired(i), paired_ratio),
        ("balance-integer", "integer", lambda i: balance_integer(i.x, i.z), integer_ratio),
    ):
        worst = Fraction(0)
        worst_seed = None
        for i in range(args.count):
            spec = GeneratorSpec(
                kind=kind,
                seed=args.seed + i,
                m=1 + (i * 7) % args.max_m,
                n=1 + (i % 2),
                bound=args.bound,
            )
            inst = generate(spec)
            res = runner(inst)
            assert verify_balance(inst, res, variant)
            r = ratio(inst, res)
            if r > worst:
                worst, worst_seed = r, spec.seed
        print(
            f"{variant:>8}: {args.count} instances, observed worst "
            f"|imbalance|/bound = {worst} (~{float(worst):.3f}) at seed {worst_seed}"
        )
    print("note: observed ratios make no claim about tightness of the bound")


if __name__ == "__main__":
    main()
