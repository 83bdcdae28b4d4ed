"""Count, per number of points, how many matrices over a small distance pool
are metrics, ultrametrics, and isosceles metrics (the last two must agree).

Matrices are enumerated up to relabeling of points 1..n-1 (row 0 sorted).
"""

import argparse
from itertools import combinations_with_replacement, product

from ultrametrics import FiniteSpace, isosceles_witnesses, validate_metric, validate_ultrametric
from ultrametrics.rational import parse_rat_list


def spaces(n, pool):
    rest = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
    labels = [str(i) for i in range(n)]
    for row0 in combinations_with_replacement(range(len(pool)), n - 1):
        for tail in product(range(len(pool)), repeat=len(rest)):
            idx = [[0] * n for _ in range(n)]
            for j, k in enumerate(row0, start=1):
                idx[0][j] = idx[j][0] = k
            for (i, j), k in zip(rest, tail):
                idx[i][j] = idx[j][i] = k
            yield FiniteSpace.from_index(labels, pool, idx)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pool", default="0,1/2,1,3", help="sorted distinct rationals, starting with 0")
    ap.add_argument("--max-points", type=int, default=5)
    args = ap.parse_args()
    pool = tuple(sorted(set(parse_rat_list(args.pool))))
    print(f"{'n':>2} {'matrices':>9} {'metric':>8} {'ultra':>7} {'isosceles':>10} {'disagree':>9}")
    for n in range(1, args.max_points + 1):
        total = metric = ultra = iso = disagree = 0
        for s in spaces(n, pool):
            total += 1
            m = validate_metric(s).valid
            u = validate_ultrametric(s).valid
            i = m and not isosceles_witnesses(s)
            metric += m
            ultra += u
            iso += i
            disagree += u != i
        print(f"{n:>2} {total:>9} {metric:>8} {ultra:>7} {iso:>10} {disagree:>9}")


if __name__ == "__main__":
    main()
