"""Print review-sample sizes over a confidence x margin grid.

Useful when deciding how many flagged casts a manual review pass has to
cover before committing to it:

    python3 scripts/sample_size_sweep.py --population 1368
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from castlens.analysis import sample_size

CONFIDENCES = (0.80, 0.90, 0.95, 0.99)
MARGINS = (0.10, 0.08, 0.06, 0.05, 0.04, 0.03)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--population", type=int, default=1368, help="flagged casts to sample from")
    parser.add_argument("--p", type=float, default=0.5, help="expected proportion (0.5 is worst case)")
    args = parser.parse_args()

    print(f"population={args.population}  p={args.p}  (finite population correction applied)")
    header = "margin".ljust(8) + "".join(f"{c:.0%}".rjust(8) for c in CONFIDENCES)
    print(header)
    for margin in MARGINS:
        cells = ""
        for conf in CONFIDENCES:
            n = sample_size(args.population, conf, margin, args.p)
            cells += str(n).rjust(8)
        print(f"{margin:<8.2f}{cells}")


if __name__ == "__main__":
    main()
