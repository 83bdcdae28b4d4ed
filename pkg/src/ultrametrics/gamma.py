"""Ultrametric distances valued in a finite totally ordered set."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rational import as_rat, format_rat
from .spaces import FiniteSpace, SpaceError, StructuralError, ValidationReport, Witness


@dataclass(frozen=True)
class OrderedGamma:
    """Elements listed in strictly ascending order; the first is the bottom."""

    elements: tuple[str, ...]

    def __post_init__(self):
        els = tuple(str(e) for e in self.elements)
        if not els:
            raise StructuralError("the value set must be nonempty")
        if len(set(els)) != len(els):
            raise StructuralError("value set elements must be distinct")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "_rank", {e: k for k, e in enumerate(els)})

    @property
    def smallest(self) -> str:
        return self.elements[0]

    def rank(self, e) -> int:
        try:
            return self._rank[e]
        except KeyError:
            raise StructuralError(f"{e!r} is not in the value set") from None

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e) -> bool:
        return e in self._rank


class GammaDistance:
    def __init__(self, gamma: OrderedGamma | Sequence[str], labels: Sequence, matrix: Sequence[Sequence]):
        if not isinstance(gamma, OrderedGamma):
            gamma = OrderedGamma(tuple(gamma))
        labels = tuple(str(x) for x in labels)
        n = len(labels)
        if len(set(labels)) != n:
            raise StructuralError("labels are not distinct")
        rows = [list(r) for r in matrix]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise StructuralError("matrix is not square")
        ranks = []
        for i, row in enumerate(rows):
            out = []
            for j, e in enumerate(row):
                if e not in gamma:
                    raise StructuralError(f"entry [{i}][{j}]: {e!r} is not in the value set")
                out.append(gamma.rank(e))
            ranks.append(tuple(out))
        for i in range(n):
            if ranks[i][i] != 0:
                raise StructuralError(f"diagonal entry [{i}][{i}] is not the smallest value")
            for j in range(i + 1, n):
                if ranks[i][j] != ranks[j][i]:
                    raise StructuralError(f"asymmetric entries [{i}][{j}] and [{j}][{i}]")
        self.gamma = gamma
        self.labels = labels
        self.ranks = tuple(ranks)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def matrix(self) -> tuple[tuple[str, ...], ...]:
        els = self.gamma.elements
        return tuple(tuple(els[k] for k in row) for row in self.ranks)

    def d(self, a, b) -> str:
        i, j = self.position(a), self.position(b)
        return self.gamma.elements[self.ranks[i][j]]

    def position(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise SpaceError(f"unknown label {label!r}") from None


def identity_witnesses(gd: GammaDistance) -> list[Witness]:
    g0 = gd.gamma.smallest
    return [
        Witness((gd.labels[i], gd.labels[j]), "identity", g0, g0)
        for i in range(len(gd))
        for j in range(i + 1, len(gd))
        if gd.ranks[i][j] == 0
    ]


def sublevel_witnesses(gd: GammaDistance) -> list[Witness]:
    """``(x, y, z)`` and gamma with ``d(x,y) <= gamma``, ``d(y,z) <= gamma``
    but not ``d(x,z) <= gamma``. Recorded as ``lhs = d(x,z)``, ``rhs = gamma``."""
    R, els, labels = gd.ranks, gd.gamma.elements, gd.labels
    n = len(gd)
    out = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for g in range(len(els)):
                    if R[x][y] <= g and R[y][z] <= g and not R[x][z] <= g:
                        out.append(Witness((labels[x], labels[y], labels[z]), "sublevel", els[R[x][z]], els[g]))
    return out


def max_form_witnesses(gd: GammaDistance) -> list[Witness]:
    """``(x, y, z)`` with ``d(x,y)`` above ``max{d(x,z), d(z,y)}``."""
    R, els, labels = gd.ranks, gd.gamma.elements, gd.labels
    n = len(gd)
    out = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                m = max(R[x][z], R[z][y])
                if R[x][y] > m:
                    out.append(Witness((labels[x], labels[y], labels[z]), "max-form", els[R[x][y]], els[m]))
    return out


def validate_gamma_distance(gd: GammaDistance) -> ValidationReport:
    """Identity and the sublevel law; symmetry and the bottom diagonal are enforced
    when the matrix is built."""
    return ValidationReport(tuple(identity_witnesses(gd) + sublevel_witnesses(gd)))


def gamma_ball(gd: GammaDistance, c, gamma) -> frozenset:
    """Points strictly below ``gamma`` from ``c``."""
    k = gd.gamma.rank(gamma)
    if k == 0:
        raise SpaceError("balls are defined for values above the smallest element")
    row = gd.ranks[gd.position(c)]
    return frozenset(gd.labels[x] for x in range(len(gd)) if row[x] < k)


def gamma_base_check(gd: GammaDistance) -> ValidationReport:
    """Whether all gamma-balls form a base: they cover the points and every
    point of an intersection of two balls has a ball around it inside the
    intersection. Witness ``(c1, c2, p)`` with ``lhs``/``rhs`` the two radii."""
    if len(gd.gamma) < 2:
        raise SpaceError("a base needs at least two values")
    family = {}
    for g in gd.gamma.elements[1:]:
        for c in gd.labels:
            family.setdefault(gamma_ball(gd, c, g), (c, g))
    balls = list(family)
    witnesses = []
    covered = frozenset().union(*balls) if balls else frozenset()
    for x in gd.labels:
        if x not in covered:
            witnesses.append(Witness((x,), "cover", None, None))
    for b1 in balls:
        for b2 in balls:
            inter = b1 & b2
            for p in inter:
                if not any(p in b3 and b3 <= inter for b3 in balls):
                    (c1, g1), (c2, g2) = family[b1], family[b2]
                    witnesses.append(Witness((c1, c2, p), "base", g1, g2))
    return ValidationReport(tuple(witnesses))


def gamma_to_space(gd: GammaDistance, embedding: Sequence | None = None) -> FiniteSpace:
    """Replace each value by a rational through an order isomorphism
    (by default the k-th element goes to ``k``)."""
    k = len(gd.gamma)
    vals = [Fraction(i) for i in range(k)] if embedding is None else [as_rat(v) for v in embedding]
    if len(vals) != k or vals[0] != 0 or any(not a < b for a, b in zip(vals, vals[1:])):
        raise SpaceError("embedding must be strictly increasing, start at 0, and cover the value set")
    return FiniteSpace.from_index(gd.labels, vals, gd.ranks)


def space_to_gamma(space: FiniteSpace) -> GammaDistance:
    """The value set is the distance set, named by the canonical rationals."""
    gamma = OrderedGamma(tuple(format_rat(v) for v in space.values))
    return GammaDistance(gamma, space.labels, [[format_rat(v) for v in row] for row in space.matrix])
