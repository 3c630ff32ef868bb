#!/usr/bin/env python3
"""Deformation-strength sweep: how fast does each model approach its
undeformed free motion?  Prints the deviation table and the fitted
log-log slope (expected: 2, all models)."""
import argparse
import sys

import numpy as np

from poismech import kappa, minkowski2d, su2
from poismech.fitting import fit_loglog_slope

MODELS = {
    "minkowski2d": minkowski2d.classical_limit_deviation,
    "kappa": kappa.classical_limit_deviation,
    "su2": su2.classical_limit_deviation,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--eps-max", type=float, default=1e-2)
    parser.add_argument("--levels", type=int, default=4,
                        help="number of halvings of eps-max")
    args = parser.parse_args()

    eps_grid = args.eps_max / 2.0 ** np.arange(args.levels)
    header = "eps".ljust(12) + "".join(name.rjust(16) for name in MODELS)
    print(header)
    devs = {name: [] for name in MODELS}
    for eps in eps_grid:
        row = f"{eps:<12.3e}"
        for name, fn in MODELS.items():
            d = fn(float(eps))
            devs[name].append(d)
            row += f"{d:>16.6e}"
        print(row)
    print("-" * len(header))
    row = "slope".ljust(12)
    ok = True
    for name in MODELS:
        slope = fit_loglog_slope(eps_grid, np.array(devs[name]))
        ok = ok and 1.8 < slope < 2.2
        row += f"{slope:>16.4f}"
    print(row)
    print("second-order in the deformation:", "yes" if ok else "NO")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
