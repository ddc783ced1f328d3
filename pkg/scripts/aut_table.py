"""Automorphism group orders per conjugacy class: oracle, structured set, and the
claimed product formula.

    python scripts/aut_table.py --max-n 6 --workers 4
"""
import argparse
import json

from mobiuspair.autgrp import aut_report, structured_set_complete
from mobiuspair.config import build
from mobiuspair.perm import conjugacy_class_reps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--json", action="store_true", help="one JSON object per class instead of a table")
    args = ap.parse_args()

    header = f"{'n':>2}  {'phi':<22} {'oracle':>7} {'struct':>7} {'closure':>7} {'claimed':>8}  equal"
    if not args.json:
        print(header)
        print("-" * len(header))
    for n in range(args.min_n, args.max_n + 1):
        for rep in conjugacy_class_reps(n):
            r = aut_report(build(n, rep), workers=args.workers)
            if args.json:
                row = {"n": n, "phi": str(rep), "in_scope": structured_set_complete(rep), **r.to_dict()}
                row.pop("generators", None)
                print(json.dumps(row, sort_keys=True))
                continue
            flag = "yes" if r.structured_equals_oracle else "no"
            print(
                f"{n:>2}  {str(rep):<22} {r.oracle_order:>7} {r.structured_set_order:>7}"
                f" {r.structured_order:>7} {r.claimed_order:>8}  {flag}"
            )


if __name__ == "__main__":
    main()
