"""Compare k-subpairs found by exhaustive deletion with phi-invariant (n-k)-sets.

Prints every (n, phi, k) where the two disagree, with a deletion witness.

    python scripts/subpair_census.py --max-n 6
"""
import argparse

from mobiuspair.config import build
from mobiuspair.oracle import find_subpairs
from mobiuspair.perm import conjugacy_class_reps, invariant_subsets


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    total = mismatched = 0
    for n in range(args.min_n, args.max_n + 1):
        for rep in conjugacy_class_reps(n):
            M = build(n, rep)
            for k in range(3, n):
                total += 1
                found = find_subpairs(M, k, first_only=True)
                sets = invariant_subsets(rep, n - k)
                if bool(found) == bool(sets):
                    continue
                mismatched += 1
                line = f"{n}  {rep}  k={k}: subpair {'found' if found else 'absent'}, invariant set {'present' if sets else 'absent'}"
                if found:
                    w = found[0]
                    deleted = " ".join(map(str, w.deleted_points + w.deleted_blocks))
                    line += f"\n    delete {deleted} -> cycle type {list(w.cycle_type)}"
                print(line)
    print(f"{mismatched} of {total} (n, phi, k) cases disagree")


if __name__ == "__main__":
    main()
