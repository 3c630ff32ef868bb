#!/usr/bin/env python3
"""Speed versus momentum for the time-space deformed shell: tabulate the
ordinary speed against the two deformed projections and flag where the
projected speeds cross 1."""
import sys

import numpy as np

from poismech.kappa import KappaSpec, closed_form_speeds

EPSILONS = (0.1, 0.3, 0.5)
MASS = 1.0
P_GRID = np.linspace(0.3, 3.0, 10)


def ordinary_speed(mass, p):
    return p / np.hypot(mass, p)


def main():
    for eps in EPSILONS:
        spec = KappaSpec(eps)
        print(f"eps = {eps}")
        print(f"  {'p':>6} {'ordinary':>12} {'left':>12} {'right':>12}")
        first_cross = None
        for p in P_GRID:
            v0 = ordinary_speed(MASS, p)
            vl, vr = closed_form_speeds(spec, MASS, float(p))
            mark = ""
            if max(vl, vr) > 1.0 and first_cross is None:
                first_cross = p
                mark = "  <- projected speed exceeds 1"
            print(f"  {p:>6.2f} {v0:>12.6f} {vl:>12.6f} {vr:>12.6f}{mark}")
        if first_cross is None:
            print("  projections stay below 1 on this grid")
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
