"""Explicit ultrametric constructions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .balls import BallPartition, ball_partition
from .distsets import Description, DistanceSet, TailDescription
from .preserving import PreservingFunction, preserving_violation
from .rational import as_rat, format_rat
from .spaces import FiniteSpace, NotUltrametricError, SpaceError, Witness


class ConstructionError(SpaceError):
    pass


def dlps_space(A: Iterable) -> FiniteSpace:
    """Points are the elements of ``A``; ``d(x, y) = max{x, y}`` for x != y."""
    pts = [as_rat(a) for a in A]
    if len(set(pts)) != len(pts):
        raise ConstructionError("elements of A must be distinct")
    if any(a < 0 for a in pts):
        raise ConstructionError("elements of A must be nonnegative")
    if Fraction(0) not in pts:
        raise ConstructionError("0 must belong to A (a distance set always contains 0)")
    pts.sort()
    matrix = [[Fraction(0) if x == y else max(x, y) for y in pts] for x in pts]
    return FiniteSpace([format_rat(x) for x in pts], matrix)


def partition_discrete(classes: Sequence[Iterable]) -> FiniteSpace:
    """``d(x, y) = max{1/n, 1/m}`` for x != y in the n-th and m-th classes."""
    labels, cls = [], []
    for n, block in enumerate(classes, start=1):
        block = [str(x) for x in block]
        if not block:
            raise ConstructionError(f"class {n} is empty")
        labels.extend(block)
        cls.extend([n] * len(block))
    if len(set(labels)) != len(labels):
        raise ConstructionError("classes must be pairwise disjoint")
    matrix = [
        [Fraction(0) if i == j else max(Fraction(1, cls[i]), Fraction(1, cls[j])) for j in range(len(labels))]
        for i in range(len(labels))
    ]
    return FiniteSpace(labels, matrix)


def compose_preserving(space: FiniteSpace, f: PreservingFunction) -> FiniteSpace:
    """The space with every distance replaced by ``f(distance)``.

    ``f`` must be nondecreasing on the distance set and vanish exactly at 0
    there; otherwise a :class:`ConstructionError` carrying ``.violation`` is
    raised.
    """
    if not space.is_ultrametric:
        raise NotUltrametricError("compose_preserving needs an ultrametric space")
    bad = preserving_violation(f, space.values)
    if bad is not None:
        err = ConstructionError(
            f"{f.name} breaks the preserving condition on the distance set: "
            + ", ".join(format_rat(v) if isinstance(v, Fraction) else v for v in bad)
        )
        err.violation = bad
        raise err
    images = [f(v) for v in space.values]
    new_values = sorted(set(images))
    remap = [new_values.index(v) for v in images]
    index = [[remap[k] for k in row] for row in space.index]
    return FiniteSpace.from_index(space.labels, new_values, index)


def image_violations(space: FiniteSpace, f: PreservingFunction) -> list[Witness]:
    """Axioms broken by the raw matrix ``f(d(x, y))`` (diagonal included)."""
    n = len(space)
    img = [[f(space.dist(i, j)) for j in range(n)] for i in range(n)]
    labels = space.labels
    out = []
    for i in range(n):
        if img[i][i] != 0:
            out.append(Witness((labels[i], labels[i]), "identity", img[i][i], Fraction(0)))
        for j in range(i + 1, n):
            if img[i][j] == 0:
                out.append(Witness((labels[i], labels[j]), "identity", img[i][j], Fraction(0)))
            for z in range(n):
                if z in (i, j):
                    continue
                if img[i][j] > max(img[i][z], img[z][j]):
                    out.append(
                        Witness((labels[i], labels[j], labels[z]), "strong-triangle", img[i][j], max(img[i][z], img[z][j]))
                    )
    return out


def preserving_counterexample(f: PreservingFunction, pool: Iterable) -> FiniteSpace | None:
    """A space of at most three points whose image under ``f`` is not an
    ultrametric, or ``None`` when ``f`` passes the preserving condition on
    ``pool``. Candidates are DLPS spaces on ``{0, s}`` and ``{0, s, t}``."""
    pool = sorted(set(as_rat(v) for v in pool))
    positive = [v for v in pool if v > 0]
    if Fraction(0) not in pool or len(positive) < 2:
        raise ConstructionError("pool must contain 0 and at least two positive values")
    if preserving_violation(f, pool) is None:
        return None
    for size in (1, 2):
        for extra in combinations(positive, size):
            space = dlps_space((Fraction(0),) + extra)
            if image_violations(space, f):
                return space
    raise AssertionError(f"{f.name} fails on the pool but no small witness was found")


@dataclass(frozen=True)
class BallRelabeling:
    """New cross-ball level for each partition ball, keyed by the ball's center."""

    assignments: Mapping[str, Fraction]
    r1: Fraction

    def __post_init__(self):
        r1 = as_rat(self.r1)
        if r1 <= 0:
            raise ConstructionError("r1 must be positive")
        vals = {str(k): as_rat(v) for k, v in self.assignments.items()}
        for k, v in vals.items():
            if not r1 < v < 2 * r1:
                raise ConstructionError(
                    f"value {format_rat(v)} for ball {k!r} is outside the window "
                    f"({format_rat(r1)}, {format_rat(2 * r1)})"
                )
        if len(set(vals.values())) != len(vals):
            raise ConstructionError("relabeling values must be distinct")
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "assignments", vals)

    @property
    def window(self) -> tuple[Fraction, Fraction]:
        return self.r1, 2 * self.r1

    @classmethod
    def for_partition(cls, partition: BallPartition, values: Sequence) -> "BallRelabeling":
        if len(values) != len(partition.classes):
            raise ConstructionError(
                f"{len(values)} values for {len(partition.classes)} partition balls"
            )
        return cls(dict(zip(partition.representatives(), values)), partition.radius)


def modify_ultrametric(space: FiniteSpace, r1, g: BallRelabeling) -> FiniteSpace:
    """Keep distances inside each radius-``r1`` ball; between balls use the
    larger of the two relabeling values. All new distances are below ``2 r1``."""
    r1 = as_rat(r1)
    if g.r1 != r1:
        raise ConstructionError(f"relabeling window is for r1 = {format_rat(g.r1)}, not {format_rat(r1)}")
    if not space.is_ultrametric:
        raise NotUltrametricError("modify_ultrametric needs an ultrametric space")
    part = ball_partition(space, r1)
    reps = part.representatives()
    if set(g.assignments) != set(reps):
        raise ConstructionError(
            f"relabeling domain {sorted(g.assignments)} does not match the partition balls {reps}"
        )
    home = {}
    for b in part.classes:
        for x in b.members:
            home[x] = b.center
    labels = space.labels
    n = len(space)
    matrix = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            bi, bj = home[labels[i]], home[labels[j]]
            if bi == bj:
                matrix[i][j] = space.dist(i, j)
            else:
                matrix[i][j] = max(g.assignments[bi], g.assignments[bj])
    return FiniteSpace(labels, matrix)


def largest_element_check(ds: Description, dia) -> bool:
    """Whether ``dia`` (the diameter, i.e. the supremum) belongs to the set."""
    dia = as_rat(dia)
    if isinstance(ds, (DistanceSet, TailDescription)):
        return dia in ds
    return dia in set(as_rat(v) for v in ds)
