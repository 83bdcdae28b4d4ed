"""Watch the largest distance of a modified ultrametric climb toward 2*r1.

Stage k relabels 2**k balls of radius r1 with values spread evenly through
(r1, 2*r1); the maximum rises every stage and never reaches 2*r1.
"""

import argparse
from fractions import Fraction

from ultrametrics import (BallRelabeling, ball_partition, distance_set, dlps_space, largest_element_check,
                          modify_ultrametric)
from ultrametrics.rational import format_rat, parse_rat


def stage(k: int, r1: Fraction):
    m = 2 ** k
    space = dlps_space([Fraction(0), r1 / 2] + [r1 * i for i in range(1, m)])
    part = ball_partition(space, r1)
    g = BallRelabeling.for_partition(part, [r1 * (1 + Fraction(j, m + 1)) for j in range(1, m + 1)])
    return distance_set(modify_ultrametric(space, r1, g))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--stages", type=int, default=6)
    ap.add_argument("--r1", default="1")
    args = ap.parse_args()
    r1 = parse_rat(args.r1)
    print(f"{'balls':>6}  {'max distance':>14}  {'gap to 2r1':>12}  attained")
    for k in range(1, args.stages + 1):
        ds = stage(k, r1)
        print(f"{2 ** k:>6}  {format_rat(ds.largest):>14}  {format_rat(2 * r1 - ds.largest):>12}  "
              f"{largest_element_check(ds, 2 * r1)}")


if __name__ == "__main__":
    main()
