#!/usr/bin/env python3
"""Euler-product stability study for the modular surface.

Evaluates log Z(s) at growing trace cutoffs and prints the observed
increments next to the heuristic tail estimates, for a crude empirical
check that the estimate dominates.

    python scripts/selberg_convergence.py --s 2.0 --cutoffs 20 40 80 160
"""

import argparse

from zal.lengthspec import modular_spectrum
from zal.selberg import selberg_zeta


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--s", type=float, default=2.0)
    ap.add_argument("--cutoffs", type=int, nargs="+", default=[20, 40, 80, 160])
    args = ap.parse_args()

    prev = None
    print("cutoff,classes,log_zeta,tail_estimate,observed_change")
    for T in args.cutoffs:
        sp = modular_spectrum(T)
        z = selberg_zeta(sp, args.s)
        change = "" if prev is None else f"{abs(z.log_value - prev):.3e}"
        print(f"{T},{sp.total_classes()},{z.log_value:.15f},"
              f"{z.tail_estimate:.3e},{change}")
        prev = z.log_value


if __name__ == "__main__":
    main()
