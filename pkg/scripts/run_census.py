"""Print the census of extended Rauzy classes and each class's label."""

import argparse
import time

from strata.classify import classify_permutation
from strata.perm import Permutation
from strata.rauzy import census


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-m", type=int, default=4)
    ap.add_argument("--max-m", type=int, default=9)
    args = ap.parse_args()
    start = time.time()
    for m in range(args.min_m, args.max_m + 1):
        result = census(m)
        for row in result.rows:
            print(row.to_line())
        for profile, members in result.classes:
            c = classify_permutation(Permutation(members[0]))
            par = "-" if c.spin_parity is None else c.spin_parity
            print(f"  {c.label}  size={len(members)}  parity={par}  rep={members[0].text()}")
    print(f"done in {time.time() - start:.1f}s")


if __name__ == "__main__":
    main()
