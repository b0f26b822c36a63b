"""Table of the H/O/E diagrams: realizability, symmetry and spin parity."""

import argparse

from strata.diagram import (
    cylinder_count,
    diagram_to_surface,
    is_hyperelliptic_diagram,
    is_realizable,
    make_canonical,
)
from strata.surface import singularity_profile, spin_parity_surface


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-g", type=int, default=6)
    args = ap.parse_args()
    print("kind g cylinders realizable hyperelliptic squares parity")
    for g in range(2, args.max_g + 1):
        for kind in "HOE":
            if kind == "E" and g < 3:
                continue
            d = make_canonical(kind, g)
            s = diagram_to_surface(d)
            assert singularity_profile(s).stratum == (2 * g - 2,)
            print(kind, g, cylinder_count(d), is_realizable(d), is_hyperelliptic_diagram(d),
                  s.n_squares, spin_parity_surface(s))


if __name__ == "__main__":
    main()
