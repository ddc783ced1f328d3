"""Number of decompositions into two mutually inscribed simplices per class.

    python scripts/decomposition_census.py --max-n 6
"""
import argparse

from mobiuspair.analysis import special_decompositions
from mobiuspair.config import build
from mobiuspair.oracle import enumerate_decompositions
from mobiuspair.perm import conjugacy_class_reps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    for n in range(3, args.max_n + 1):
        for rep in conjugacy_class_reps(n):
            M = build(n, rep)
            found = enumerate_decompositions(M)
            special = [list(X) for X, _ in special_decompositions(M)]
            extra = f"  special X: {special}" if special else ""
            print(f"{n:>2}  {str(rep):<22} {len(found):>3}{extra}")


if __name__ == "__main__":
    main()
