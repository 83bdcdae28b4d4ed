"""Finite metric spaces with exact rational distances, plus validators."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Iterable, Sequence

import numpy as np

from .rational import as_rat, format_rat


class SpaceError(ValueError):
    pass


class StructuralError(SpaceError):
    """The matrix is not a symmetric, zero-diagonal, nonnegative square."""


class NotUltrametricError(SpaceError):
    pass


@dataclass(frozen=True)
class Witness:
    points: tuple
    law: str
    lhs: Any
    rhs: Any

    def to_json(self) -> dict:
        def fmt(v):
            return format_rat(v) if isinstance(v, Fraction) else v

        return {
            "points": list(self.points),
            "law": self.law,
            "lhs": fmt(self.lhs),
            "rhs": fmt(self.rhs),
        }


@dataclass(frozen=True)
class ValidationReport:
    witnesses: tuple[Witness, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.witnesses

    @property
    def verdict(self) -> str:
        return "valid" if self.valid else "invalid"

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


class FiniteSpace:
    """Labeled points with a symmetric exact-rational distance matrix.

    Internally the matrix is stored as the sorted tuple of distinct values
    together with an integer index matrix into it; all comparisons in the
    validators run on those indices.
    """

    def __init__(self, labels: Iterable, matrix: Sequence[Sequence]):
        labels = tuple(str(x) for x in labels)
        rows = [list(row) for row in matrix]
        n = len(labels)
        if len(rows) != n:
            raise StructuralError(f"matrix has {len(rows)} rows for {n} labels")
        table = []
        for i, row in enumerate(rows):
            if len(row) != n:
                raise StructuralError(f"row {i} has {len(row)} entries, expected {n}")
            out = []
            for j, v in enumerate(row):
                try:
                    q = as_rat(v)
                except (TypeError, ValueError) as exc:
                    raise StructuralError(f"entry [{i}][{j}]: {exc}") from None
                out.append(q)
            table.append(out)
        values = sorted(set(q for row in table for q in row))
        rank = {q: k for k, q in enumerate(values)}
        index = tuple(tuple(rank[q] for q in row) for row in table)
        self._init(labels, tuple(values), index)

    @classmethod
    def from_index(cls, labels, values, index) -> "FiniteSpace":
        """Build from sorted distinct ``values`` and an index matrix into them.

        Unused values are dropped so that ``values`` is always the exact
        set of matrix entries.
        """
        used = sorted(set(k for row in index for k in row))
        if len(used) != len(values):
            remap = {k: i for i, k in enumerate(used)}
            values = tuple(values[k] for k in used)
            index = tuple(tuple(remap[k] for k in row) for row in index)
        obj = cls.__new__(cls)
        obj._init(tuple(str(x) for x in labels), tuple(values), tuple(map(tuple, index)))
        return obj

    def _init(self, labels, values, index):
        n = len(labels)
        if len(set(labels)) != n:
            raise StructuralError("labels are not distinct")
        if len(index) != n or any(len(row) != n for row in index):
            raise StructuralError("matrix is not square")
        if any(not values[k] < values[k + 1] for k in range(len(values) - 1)):
            raise StructuralError("values are not strictly increasing")
        if values and values[0] < 0:
            i, j = next((i, j) for i in range(n) for j in range(n) if values[index[i][j]] < 0)
            raise StructuralError(f"entry [{i}][{j}] is negative: {format_rat(values[index[i][j]])}")
        for i in range(n):
            if values[index[i][i]] != 0:
                raise StructuralError(f"nonzero diagonal entry [{i}][{i}]")
            row = index[i]
            for j in range(i + 1, n):
                if row[j] != index[j][i]:
                    raise StructuralError(f"asymmetric entries [{i}][{j}] and [{j}][{i}]")
        self.labels = labels
        self.values = values
        self.index = index
        self._pos = {lab: i for i, lab in enumerate(labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FiniteSpace(labels={list(self.labels)!r}, n_values={len(self.values)})"

    def position(self, label) -> int:
        try:
            return self._pos[str(label)]
        except KeyError:
            raise SpaceError(f"unknown label {label!r}") from None

    def dist(self, i: int, j: int) -> Fraction:
        return self.values[self.index[i][j]]

    def d(self, a, b) -> Fraction:
        return self.dist(self.position(a), self.position(b))

    @property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        vals = self.values
        return tuple(tuple(vals[k] for k in row) for row in self.index)

    def restrict(self, labels: Iterable) -> "FiniteSpace":
        idx = [self.position(x) for x in labels]
        sub = [[self.index[i][j] for j in idx] for i in idx]
        return FiniteSpace.from_index([self.labels[i] for i in idx], self.values, sub)

    def _canonical(self):
        return frozenset(
            (frozenset((self.labels[i], self.labels[j])), self.dist(i, j))
            for i in range(len(self)) for j in range(i, len(self))
        )

    def __eq__(self, other) -> bool:
        # labeled point sets: equal when the labels and every pairwise distance agree
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        if set(self.labels) != set(other.labels):
            return False
        for i, a in enumerate(self.labels):
            for j in range(i + 1, len(self)):
                if self.dist(i, j) != other.d(a, self.labels[j]):
                    return False
        return True

    def __hash__(self) -> int:
        return hash(self._canonical())

    @cached_property
    def rank_array(self) -> np.ndarray:
        return np.asarray(self.index, dtype=np.int64).reshape(len(self), len(self))

    @cached_property
    def scaled(self) -> tuple[tuple[int, ...], ...]:
        """Integer matrix proportional to the distances (common denominator)."""
        den = math.lcm(*(q.denominator for q in self.values)) if self.values else 1
        ints = [q.numerator * (den // q.denominator) for q in self.values]
        return tuple(tuple(ints[k] for k in row) for row in self.index)

    @cached_property
    def is_ultrametric(self) -> bool:
        return validate_ultrametric(self).valid


def _identity_witnesses(space: FiniteSpace) -> list[Witness]:
    zero = Fraction(0)
    if len(space) < 2:
        return []
    out = []
    labels, index = space.labels, space.index
    for i in range(len(space)):
        row = index[i]
        for j in range(i + 1, len(space)):
            if row[j] == 0:
                out.append(Witness((labels[i], labels[j]), "identity", zero, zero))
    return out


def validate_metric(space: FiniteSpace) -> ValidationReport:
    """Check identity of indiscernibles and the triangle inequality.

    Symmetry is a structural invariant of :class:`FiniteSpace`. Triangle
    witnesses are ``(x, y, z)`` with ``lhs = d(x, y)`` and
    ``rhs = d(x, z) + d(z, y)``.
    """
    witnesses = _identity_witnesses(space)
    n = len(space)
    s = space.scaled
    labels = space.labels
    for x in range(n):
        sx = s[x]
        for y in range(x + 1, n):
            sy = s[y]
            dxy = sx[y]
            for z in range(n):
                if z != x and z != y and dxy > sx[z] + sy[z]:
                    witnesses.append(
                        Witness(
                            (labels[x], labels[y], labels[z]),
                            "triangle",
                            space.dist(x, y),
                            space.dist(x, z) + space.dist(z, y),
                        )
                    )
    return ValidationReport(tuple(witnesses))


def validate_ultrametric(space: FiniteSpace) -> ValidationReport:
    """Check that ``space`` is an ultrametric.

    Identity failures are reported as in :func:`validate_metric`; every
    ``(x, y, z)`` with ``d(x, y) > max{d(x, z), d(z, y)}`` is a
    ``"strong-triangle"`` witness.
    """
    witnesses = _identity_witnesses(space)
    n = len(space)
    index = space.index
    labels = space.labels
    for x in range(n):
        rx = index[x]
        for y in range(x + 1, n):
            ry = index[y]
            rxy = rx[y]
            for z in range(n):
                if rxy > rx[z] and rxy > ry[z] and z != x and z != y:
                    witnesses.append(
                        Witness(
                            (labels[x], labels[y], labels[z]),
                            "strong-triangle",
                            space.dist(x, y),
                            max(space.dist(x, z), space.dist(z, y)),
                        )
                    )
    return ValidationReport(tuple(witnesses))


def isosceles_witnesses(space: FiniteSpace) -> list[tuple]:
    """Unordered triples whose two largest sides differ."""
    out = []
    index, labels = space.index, space.labels
    for i, j, k in combinations(range(len(space)), 3):
        a, b, c = index[i][j], index[i][k], index[j][k]
        if a < b:
            a, b = b, a
        if b < c:
            b, c = c, b
            if a < b:
                a, b = b, a
        if a != b:
            out.append((labels[i], labels[j], labels[k]))
    return out


def four_point_check(space: FiniteSpace) -> list[tuple]:
    """Ordered 4-tuples ``(a, b, c, d)`` of distinct points breaking the
    four-point law: ``d(a,b) > d(a,d)`` and ``d(a,b) > d(b,c)`` force
    ``d(a,b) = d(c,d)`` in an ultrametric space.
    """
    n = len(space)
    if n < 4:
        return []
    R = space.rank_array
    ab = R[:, :, None, None]
    mask = (ab > R[:, None, None, :]) & (ab > R[None, :, :, None]) & (ab != R[None, None, :, :])
    eye = np.eye(n, dtype=bool)
    distinct = ~(
        eye[:, :, None, None]
        | eye[:, None, :, None]
        | eye[:, None, None, :]
        | eye[None, :, :, None]
        | eye[None, :, None, :]
        | eye[None, None, :, :]
    )
    labels = space.labels
    hits = np.argwhere(mask & distinct)
    return [tuple(labels[k] for k in row) for row in hits.tolist()]


def diameter(space: FiniteSpace) -> Fraction:
    if len(space) == 0:
        raise SpaceError("diameter of an empty space")
    return space.values[-1]
