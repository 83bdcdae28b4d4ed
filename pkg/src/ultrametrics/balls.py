"""Open balls, ball partitions and dendrograms of finite ultrametric spaces.

Ball membership is a step function of the radius that only changes at
distances, so "for every radius" checks run over the positive values of the
distance set plus one radius above the diameter. Balls are handled
internally as integer bitmasks over point positions.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .rational import as_rat, format_rat
from .spaces import FiniteSpace, NotUltrametricError, SpaceError, ValidationReport, Witness


@dataclass(frozen=True)
class Ball:
    center: str
    radius: Fraction
    members: frozenset


@dataclass(frozen=True)
class BallPartition:
    radius: Fraction
    classes: tuple[Ball, ...]

    def representatives(self) -> list[str]:
        return [b.center for b in self.classes]

    def class_of(self, label) -> Ball:
        for b in self.classes:
            if label in b.members:
                return b
        raise SpaceError(f"{label!r} is not covered by the partition")


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[max(x, y)] = min(x, y)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask_at(space: FiniteSpace, c: int, k: int) -> int:
    row = space.index[c]
    m = 0
    for x in range(len(space)):
        if row[x] < k:
            m |= 1 << x
    return m


def _radius_cut(space: FiniteSpace, r: Fraction) -> int:
    """Number of values strictly below ``r``; ``d < r`` iff ``index < cut``."""
    lo, hi = 0, len(space.values)
    while lo < hi:
        mid = (lo + hi) // 2
        if space.values[mid] < r:
            lo = mid + 1
        else:
            hi = mid
    return lo


def sweep_radii(space: FiniteSpace) -> list[Fraction]:
    """Positive distances plus ``diameter + 1``: one radius per distinct ball family."""
    vals = list(space.values)
    return [v for v in vals if v > 0] + [vals[-1] + 1]


def _ball_table(space: FiniteSpace) -> list[list[int]]:
    """``table[k][c]``: mask of ``B_r(c)`` for the k-th sweep radius.

    Sweep radius ``values[k]`` (k >= 1) cuts at index ``k``; the final
    radius above the diameter cuts at ``len(values)``.
    """
    n = len(space)
    cuts = list(range(1, len(space.values) + 1))
    table = [[0] * n for _ in cuts]
    for c in range(n):
        row = space.index[c]
        order = sorted(range(n), key=row.__getitem__)
        m, p = 0, 0
        for t, cut in enumerate(cuts):
            while p < n and row[order[p]] < cut:
                m |= 1 << order[p]
                p += 1
            table[t][c] = m
    return table


def open_ball(space: FiniteSpace, c, r) -> Ball:
    r = as_rat(r)
    if r <= 0:
        raise SpaceError(f"radius must be positive, got {format_rat(r)}")
    ci = space.position(c)
    mask = _mask_at(space, ci, _radius_cut(space, r))
    return Ball(space.labels[ci], r, frozenset(space.labels[i] for i in _bits(mask)))


def balls_at(space: FiniteSpace, r) -> list[Ball]:
    return [open_ball(space, c, r) for c in space.labels]


def center_invariance_check(space: FiniteSpace) -> ValidationReport:
    """Every member of a ball is a center of it.

    Witness ``(c, a)`` with ``lhs = rhs = r``: ``a`` lies in ``B_r(c)`` but
    ``B_r(a) != B_r(c)``.
    """
    if len(space) == 0:
        return ValidationReport()
    radii = sweep_radii(space)
    labels = space.labels
    witnesses = []
    for r, row in zip(radii, _ball_table(space)):
        centers = defaultdict(int)
        for c, m in enumerate(row):
            centers[m] |= 1 << c
        for m, cs in centers.items():
            if m == cs:
                continue
            strangers = _bits(m & ~cs)
            for c in _bits(cs):
                for a in strangers:
                    witnesses.append(Witness((labels[c], labels[a]), "center-invariance", r, r))
    return ValidationReport(tuple(witnesses))


def nested_or_disjoint_check(space: FiniteSpace) -> ValidationReport:
    """Intersecting balls are nested, and equal when the radii agree.

    Witness ``(c1, c2)`` with ``lhs = r1 <= rhs = r2``: ``B_r1(c1)`` meets
    ``B_r2(c2)`` but is not contained in it, or the radii are equal and the
    balls differ.
    """
    if len(space) == 0:
        return ValidationReport()
    radii = sweep_radii(space)
    # distinct ball sets, with the sweep indices and centers producing each
    where: dict[int, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    for k, row in enumerate(_ball_table(space)):
        for c, m in enumerate(row):
            where[m][k].append(c)
    sets = list(where)
    lo = {m: min(where[m]) for m in sets}
    hi = {m: max(where[m]) for m in sets}
    labels = space.labels
    witnesses = []
    for s1 in sets:
        for s2 in sets:
            if s1 == s2 or not s1 & s2:
                continue
            contained = s1 & ~s2 == 0
            if contained:
                if not set(where[s1]) & set(where[s2]):
                    continue
            elif lo[s1] > hi[s2]:
                continue
            for k1, cs1 in where[s1].items():
                for k2, cs2 in where[s2].items():
                    if k1 > k2 or (contained and k1 != k2):
                        continue
                    for c1 in cs1:
                        for c2 in cs2:
                            witnesses.append(
                                Witness((labels[c1], labels[c2]), "nested-or-disjoint", radii[k1], radii[k2])
                            )
    return ValidationReport(tuple(witnesses))


def _require_ultrametric(space: FiniteSpace, what: str) -> None:
    if not space.is_ultrametric:
        raise NotUltrametricError(f"{what} needs an ultrametric space")


def ball_partition(space: FiniteSpace, r, candidates: Iterable | None = None) -> BallPartition:
    """Group candidate centers whose radius-``r`` balls meet and keep one
    ball per group, centered at the group's earliest label.

    The result covers exactly the union of all candidate balls and its balls
    are pairwise disjoint.
    """
    r = as_rat(r)
    if r <= 0:
        raise SpaceError(f"radius must be positive, got {format_rat(r)}")
    _require_ultrametric(space, "ball_partition")
    if candidates is None:
        idx = list(range(len(space)))
    else:
        idx = sorted(set(space.position(c) for c in candidates))
    if not idx:
        raise SpaceError("ball_partition needs at least one candidate")
    cut = _radius_cut(space, r)
    masks = {c: _mask_at(space, c, cut) for c in idx}
    uf = UnionFind(idx)
    for a_pos, a in enumerate(idx):
        for b in idx[a_pos + 1:]:
            if masks[a] & masks[b]:
                uf.union(a, b)
    reps = sorted(set(uf.find(c) for c in idx))
    labels = space.labels
    classes = tuple(
        Ball(labels[c], r, frozenset(labels[i] for i in _bits(masks[c]))) for c in reps
    )
    return BallPartition(r, classes)


@dataclass(frozen=True)
class Leaf:
    label: str


@dataclass(frozen=True)
class Node:
    level: Fraction
    children: tuple


Dendrogram = Union[Leaf, Node]


class DendrogramError(SpaceError):
    pass


def leaves(tree: Dendrogram) -> list[str]:
    if isinstance(tree, Leaf):
        return [tree.label]
    out = []
    for child in tree.children:
        out.extend(leaves(child))
    return out


def levels(tree: Dendrogram) -> set[Fraction]:
    if isinstance(tree, Leaf):
        return set()
    out = {tree.level}
    for child in tree.children:
        out |= levels(child)
    return out


def check_dendrogram(tree) -> None:
    seen = set()

    def walk(t, ceiling):
        if isinstance(t, Leaf):
            if t.label in seen:
                raise DendrogramError(f"duplicate leaf label {t.label!r}")
            seen.add(t.label)
            return
        if not isinstance(t, Node):
            raise DendrogramError(f"not a dendrogram node: {t!r}")
        if not isinstance(t.level, Fraction) or t.level <= 0:
            raise DendrogramError(f"node level must be a positive rational, got {t.level!r}")
        if ceiling is not None and not t.level < ceiling:
            raise DendrogramError(
                f"level {format_rat(t.level)} does not decrease below its parent {format_rat(ceiling)}"
            )
        if len(t.children) < 2:
            raise DendrogramError("internal nodes need at least two children")
        for child in t.children:
            walk(child, t.level)

    walk(tree, None)


def build_dendrogram(space: FiniteSpace) -> Dendrogram:
    """Tree whose internal levels are the positive distances; two leaves meet
    at the level equal to their distance. Children are ordered by their
    earliest point in the space's label order."""
    if len(space) == 0:
        raise SpaceError("dendrogram of an empty space")
    _require_ultrametric(space, "build_dendrogram")
    index, labels, values = space.index, space.labels, space.values

    def build(block: list[int]) -> Dendrogram:
        if len(block) == 1:
            return Leaf(labels[block[0]])
        first = index[block[0]]
        top = max(first[q] for q in block)
        children = []
        remaining = block
        while remaining:
            p = index[remaining[0]]
            inside = [q for q in remaining if p[q] < top]
            remaining = [q for q in remaining if p[q] >= top]
            children.append(build(inside))
        return Node(values[top], tuple(children))

    return build(list(range(len(space))))


def dendrogram_to_space(tree: Dendrogram) -> FiniteSpace:
    """Distances are the level of the lowest common ancestor; leaves are
    ordered depth first."""
    check_dendrogram(tree)
    order = leaves(tree)
    pos = {lab: i for i, lab in enumerate(order)}
    values = [Fraction(0)] + sorted(levels(tree))
    rank = {v: k for k, v in enumerate(values)}
    n = len(order)
    index = [[0] * n for _ in range(n)]

    def fill(t) -> list[int]:
        if isinstance(t, Leaf):
            return [pos[t.label]]
        k = rank[t.level]
        groups = [fill(c) for c in t.children]
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                for i in groups[a]:
                    row = index[i]
                    for j in groups[b]:
                        row[j] = k
                        index[j][i] = k
        return [i for g in groups for i in g]

    fill(tree)
    return FiniteSpace.from_index(order, values, index)
