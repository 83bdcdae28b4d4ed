"""Distance sets and their order types as subposets of the nonnegative reals.

Infinite sets are described by a finite head plus a tail rule from
:mod:`ultrametrics.sequences`; every order question is answered from the
rule's exact direction and limit, never from sampled terms.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .rational import as_rat, format_rat
from .sequences import Rule, RuleError, blocks_of, iter_terms
from .spaces import FiniteSpace, SpaceError
from .generated import Stability, distance_stability_check  # noqa: F401  (re-export)


@dataclass(frozen=True)
class DistanceSet:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_rat(v) for v in self.values)
        if not vals or vals[0] != 0:
            raise SpaceError("a distance set starts with 0")
        if any(not a < b for a, b in zip(vals, vals[1:])):
            raise SpaceError("distance set values must be strictly increasing")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, values: Iterable) -> "DistanceSet":
        return cls(tuple(sorted(set(as_rat(v) for v in values))))

    def __contains__(self, x) -> bool:
        return as_rat(x) in self.values

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __le__(self, other: "DistanceSet") -> bool:
        return set(self.values) <= set(other.values)

    @property
    def largest(self) -> Fraction:
        return self.values[-1]


@dataclass(frozen=True)
class TailDescription:
    """``head`` together with the set of terms of ``tail``."""

    head: tuple[Fraction, ...]
    tail: Rule

    def __post_init__(self):
        head = tuple(sorted(set(as_rat(v) for v in self.head)))
        if head and head[0] < 0:
            raise RuleError("head values must be nonnegative")
        object.__setattr__(self, "head", head)

    @property
    def blocks(self) -> tuple:
        return blocks_of(self.tail)

    def __contains__(self, x) -> bool:
        x = as_rat(x)
        return x in self.head or self.tail.contains(x)


Description = Union[DistanceSet, TailDescription]

FINITE_CHAIN = "FiniteChain"
ONE_PLUS_OMEGA_STAR = "OnePlusOmegaStar"
OTHER = "Other"


@dataclass(frozen=True)
class OrderTypeClass:
    tag: str
    evidence: str
    size: int | None = None

    def __str__(self) -> str:
        return f"{self.tag}({self.size})" if self.tag == FINITE_CHAIN else self.tag


def distance_set(space: FiniteSpace) -> DistanceSet:
    if len(space) == 0:
        raise SpaceError("distance set of an empty space")
    return DistanceSet(space.values)


def _first_term_at_most(block, bound: Fraction) -> Fraction:
    for t in iter_terms(block):
        if t <= bound:
            return t


def classify_order_type(desc: Description) -> OrderTypeClass:
    """Decide whether ``desc`` is a finite chain, has type 1 + omega*, or neither.

    A countable chain has type 1 + omega* exactly when it is infinite, has
    a smallest element, and every element above the smallest has only
    finitely many elements above it.
    """
    if isinstance(desc, DistanceSet):
        n = len(desc)
        return OrderTypeClass(FINITE_CHAIN, f"finite chain of {n} element(s)", n)
    if not isinstance(desc, TailDescription):
        raise RuleError(f"not a description: {desc!r}")

    blocks = desc.blocks
    for b in blocks:
        if not b.decreasing:
            if b.limit not in desc:
                return OrderTypeClass(
                    OTHER,
                    f"largest element clause fails: increasing tail approaches "
                    f"{format_rat(b.limit)} which is not in the set",
                )
            return OrderTypeClass(
                OTHER,
                f"immediate predecessor clause fails: {format_rat(b.limit)} is "
                f"approached from below by an increasing tail",
            )

    limits = sorted(set(b.limit for b in blocks))
    bottom = min(list(desc.head) + limits)
    if bottom not in desc:
        return OrderTypeClass(
            OTHER,
            f"bottom accumulation clause fails: infimum {format_rat(bottom)} "
            f"is not attained, so there is no smallest element",
        )
    for b in blocks:
        L = b.limit
        if L == bottom:
            continue
        # an element in (bottom, L] would have infinitely many elements above it
        witness = None
        if L in desc:
            witness = L
        else:
            below = [h for h in desc.head if bottom < h <= L]
            if below:
                witness = below[-1]
            else:
                for other in blocks:
                    if other.limit < L:
                        witness = _first_term_at_most(other, L)
                        break
        if witness is not None:
            n_acc = len(limits)
            return OrderTypeClass(
                OTHER,
                f"bottom accumulation clause fails: {n_acc} accumulation point(s); "
                f"element {format_rat(witness)} is not above the accumulation point "
                f"{format_rat(L)}, so infinitely many elements lie above it",
            )
    top = max(list(desc.head) + [b.term(b.start) for b in blocks])
    return OrderTypeClass(
        ONE_PLUS_OMEGA_STAR,
        f"largest element {format_rat(top)}; every element above the smallest "
        f"{format_rat(bottom)} has an immediate predecessor; the only accumulation "
        f"from above within the set is at the bottom {format_rat(bottom)}",
    )


def accumulation_at_zero(desc: Description) -> bool:
    if isinstance(desc, DistanceSet):
        return False
    return any(b.limit == 0 for b in desc.blocks)


@dataclass(frozen=True)
class TotallyBoundedCheck:
    """Both routes to deciding whether a set is the distance set of an
    infinite totally bounded ultrametric space."""

    holds: bool
    order_type: OrderTypeClass
    accumulates_at_zero: bool
    normal_form: bool
    evidence: str

    @property
    def agree(self) -> bool:
        return self.holds == self.normal_form

    def __bool__(self) -> bool:
        return self.holds


def decreasing_enumeration(desc: TailDescription, count: int) -> list[Fraction]:
    """First ``count`` positive elements of ``desc`` in decreasing order.

    Only meaningful when every tail block decreases to zero; the merge then
    lists the set as one strictly decreasing sequence.
    """
    heap = [(-h, -1, None) for h in desc.head if h > 0]
    iters = [iter_terms(b) for b in desc.blocks]
    for k, it in enumerate(iters):
        heap.append((-next(it), k, it))
    heapq.heapify(heap)
    out: list[Fraction] = []
    while heap and len(out) < count:
        neg, k, it = heapq.heappop(heap)
        if not out or -neg < out[-1]:
            out.append(-neg)
        if it is not None:
            heapq.heappush(heap, (-next(it), k, it))
    return out


def _normal_form(desc: Description) -> tuple[bool, str]:
    if isinstance(desc, DistanceSet):
        return False, f"finite set of {len(desc)} element(s); no infinite sequence"
    if 0 not in desc:
        return False, "0 is not in the set"
    for b in desc.blocks:
        if not b.decreasing:
            return False, f"tail increasing to {format_rat(b.limit)}"
        if b.limit != 0:
            return False, f"tail decreases to {format_rat(b.limit)}, not to 0"
    prefix = decreasing_enumeration(desc, 12)
    if any(not a > b for a, b in zip(prefix, prefix[1:])):
        return False, "merged enumeration is not strictly decreasing"
    shown = ", ".join(format_rat(x) for x in prefix[:6])
    return True, f"{{0}} together with the decreasing sequence {shown}, ... -> 0"


def tb_distance_set_check(desc: Description) -> TotallyBoundedCheck:
    order_type = classify_order_type(desc)
    at_zero = accumulation_at_zero(desc)
    holds = order_type.tag == ONE_PLUS_OMEGA_STAR and at_zero
    normal, nf_evidence = _normal_form(desc)
    if holds:
        evidence = f"order type 1 + omega* with accumulation at 0; {nf_evidence}"
    elif order_type.tag != ONE_PLUS_OMEGA_STAR:
        evidence = f"order type is {order_type}: {order_type.evidence}"
    else:
        evidence = f"order type 1 + omega* but 0 is not an accumulation point; {nf_evidence}"
    return TotallyBoundedCheck(holds, order_type, at_zero, normal, evidence)


def description_catalog() -> dict[str, Description]:
    """Named descriptions covering every branch of the classification."""
    from .sequences import Concat, Geometric, Reciprocal, Shifted

    z = (Fraction(0),)
    F = Fraction
    return {
        "finite {0}": DistanceSet.of([0]),
        "finite {0,1}": DistanceSet.of([0, 1]),
        "finite {0,1/3,1/2,2}": DistanceSet.of([0, F(1, 3), F(1, 2), 2]),
        "{0} + 1/n": TailDescription(z, Reciprocal()),
        "{0} + 1+1/n": TailDescription(z, Shifted(1, 1)),
        "{0} + 1/n + 1+1/n": TailDescription(z, Concat((Reciprocal(), Shifted(1, 1)))),
        "{0} + 2^-n": TailDescription(z, Geometric(1, F(1, 2))),
        "{0,5} + 3/n from 2": TailDescription((F(0), F(5)), Reciprocal(3, start=2)),
        "{0} + 1/n + 2^-n": TailDescription(z, Concat((Reciprocal(), Geometric(1, F(1, 2))))),
        "{0} + 1/n + 3^-n + 5/n": TailDescription(
            z, Concat((Reciprocal(), Geometric(1, F(1, 3)), Reciprocal(5)))),
        "1/n without 0": TailDescription((), Reciprocal()),
        "{1/2} + 1/n": TailDescription((F(1, 2),), Reciprocal()),
        "{0} + 2-1/n": TailDescription(z, Shifted(2, -1)),
        "{0,2} + 2-1/n": TailDescription((F(0), F(2)), Shifted(2, -1)),
        "{0,1} + 1+1/n": TailDescription((F(0), F(1)), Shifted(1, 1)),
        "{1} + 1+1/n": TailDescription((F(1),), Shifted(1, 1)),
        "{0,1/2} + 1+1/n": TailDescription((F(0), F(1, 2)), Shifted(1, 1)),
        "{0,3} + 1+1/n": TailDescription((F(0), F(3)), Shifted(1, 1)),
        "{0} + 1+1/n + 2+1/n": TailDescription(z, Concat((Shifted(1, 1), Shifted(2, 1)))),
        "{0} + 1/n + 1-1/n": TailDescription(z, Concat((Reciprocal(), Shifted(1, -1, start=2)))),
        "{0} + 1/(2n) + 1/n": TailDescription(z, Concat((Reciprocal(F(1, 2)), Reciprocal()))),
        "{0} + 4*(2/3)^n from 3": TailDescription(z, Geometric(4, F(2, 3), start=3)),
        "{0} + 1+2^-n": TailDescription(z, Concat((Shifted(1, 1), Geometric(1, F(1, 2))))),
    }
