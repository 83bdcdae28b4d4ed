"""Countable spaces given by a closed-form distance rule on indices 1, 2, ...

Only finite prefixes are ever materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .preserving import PreservingFunction
from .rational import format_rat
from .sequences import Rule
from .spaces import FiniteSpace, SpaceError

KINDS = ("dlps", "partition", "composed")


@dataclass(frozen=True)
class GeneratedSpace:
    """Distance oracle over indices ``1..budget``.

    * ``dlps``: point k is the rational ``sequence.term(k)``, distance is the max.
    * ``partition``: point k lies in class ``ceil(k / class_size)`` or
      ``class_of[k - 1]``; distance is ``max{1/n, 1/m}``.
    * ``composed``: ``f`` applied to the distances of ``base``.
    """

    kind: str
    budget: int
    sequence: Rule | None = None
    class_size: int | None = None
    class_of: tuple[int, ...] | None = None
    base: "GeneratedSpace | None" = None
    f: PreservingFunction | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpaceError(f"unknown generated space kind {self.kind!r}")
        if self.budget < 1:
            raise SpaceError("prefix budget must be positive")
        if self.kind == "dlps" and self.sequence is None:
            raise SpaceError("dlps oracle needs a sequence rule")
        if self.kind == "partition":
            if (self.class_size is None) == (self.class_of is None):
                raise SpaceError("partition oracle needs exactly one of class_size, class_of")
            if self.class_size is not None and self.class_size < 1:
                raise SpaceError("class_size must be positive")
            if self.class_of is not None:
                if self.budget > len(self.class_of):
                    raise SpaceError("budget exceeds the explicit class list")
                if any(c < 1 for c in self.class_of):
                    raise SpaceError("class indices start at 1")
        if self.kind == "composed":
            if self.base is None or self.f is None:
                raise SpaceError("composed oracle needs a base and a function")
            if self.budget > self.base.budget:
                raise SpaceError("budget exceeds the base oracle's budget")

    @classmethod
    def dlps(cls, sequence: Rule, budget: int) -> "GeneratedSpace":
        return cls("dlps", budget, sequence=sequence)

    @classmethod
    def partition(cls, budget: int, class_size: int | None = None, class_of=None) -> "GeneratedSpace":
        return cls("partition", budget, class_size=class_size,
                   class_of=None if class_of is None else tuple(class_of))

    @classmethod
    def composed(cls, base: "GeneratedSpace", f: PreservingFunction) -> "GeneratedSpace":
        return cls("composed", base.budget, base=base, f=f)

    def class_index(self, k: int) -> int:
        if self.class_size is not None:
            return -(-k // self.class_size)
        return self.class_of[k - 1]

    def label(self, k: int) -> str:
        if self.kind == "dlps":
            return format_rat(self.sequence.term(k))
        if self.kind == "composed":
            return self.base.label(k)
        return str(k)

    def distance(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if self.kind == "dlps":
            return max(self.sequence.term(i), self.sequence.term(j))
        if self.kind == "partition":
            return Fraction(1, min(self.class_index(i), self.class_index(j)))
        return self.f(self.base.distance(i, j))


def prefix(gen: GeneratedSpace, n: int) -> FiniteSpace:
    """The subspace on indices ``1..n``."""
    if n < 1:
        raise SpaceError("prefix length must be positive")
    if n > gen.budget:
        raise SpaceError(f"prefix length {n} exceeds the budget {gen.budget}")
    idx = range(1, n + 1)
    labels = [gen.label(k) for k in idx]
    if len(set(labels)) != n:
        raise SpaceError("oracle produced repeated points")
    return FiniteSpace(labels, [[gen.distance(i, j) for j in idx] for i in idx])


class Stability(NamedTuple):
    included: bool
    new_values: tuple[Fraction, ...]

    def __bool__(self) -> bool:
        return self.included


def distance_stability_check(gen: GeneratedSpace, n: int, m: int) -> Stability:
    """Whether the distances of the n-prefix all reappear in the m-prefix,
    and which values the longer prefix adds."""
    if not 1 <= n <= m:
        raise SpaceError("need 1 <= n <= m")
    small = set(prefix(gen, n).values)
    large = set(prefix(gen, m).values)
    return Stability(small <= large, tuple(sorted(large - small)))
