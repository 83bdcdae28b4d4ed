"""Closed catalog of strictly monotone rational sequences.

Each rule knows its terms, its direction and its limit exactly, so order
questions about the set of terms can be answered symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .rational import as_rat, format_rat, parse_rat


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Shifted:
    """``shift + scale / n`` for ``n >= start``.

    Positive ``scale`` decreases to ``shift``; negative ``scale`` increases
    to it (e.g. ``2 - 1/n``).
    """

    shift: Fraction = Fraction(1)
    scale: Fraction = Fraction(1)
    start: int = 1

    name = "shifted"

    def __post_init__(self):
        object.__setattr__(self, "shift", as_rat(self.shift))
        object.__setattr__(self, "scale", as_rat(self.scale))
        if self.start < 1:
            raise RuleError("start index must be positive")
        if self.scale == 0:
            raise RuleError("scale must be nonzero")
        if self.shift < 0 or self.term(self.start) < 0:
            raise RuleError("terms must be nonnegative")

    @property
    def decreasing(self) -> bool:
        return self.scale > 0

    @property
    def limit(self) -> Fraction:
        return self.shift

    def term(self, n: int) -> Fraction:
        return self.shift + self.scale / n

    def contains(self, x: Fraction) -> bool:
        if x == self.shift:
            return False
        n = self.scale / (x - self.shift)
        return n.denominator == 1 and n >= self.start

    def params(self) -> dict:
        return {"shift": format_rat(self.shift), "scale": format_rat(self.scale), "start": self.start}


@dataclass(frozen=True, init=False)
class Reciprocal(Shifted):
    """``scale / n``, decreasing to zero."""

    name = "reciprocal"

    def __init__(self, scale=Fraction(1), start: int = 1):
        object.__setattr__(self, "shift", Fraction(0))
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "start", start)
        self.__post_init__()

    def __post_init__(self):
        super().__post_init__()
        if self.shift != 0 or self.scale <= 0:
            raise RuleError("reciprocal rule needs shift 0 and positive scale")

    def params(self) -> dict:
        return {"scale": format_rat(self.scale), "start": self.start}


@dataclass(frozen=True)
class Geometric:
    """``q * r**n`` with ``q > 0`` and ``0 < r < 1``."""

    q: Fraction
    r: Fraction
    start: int = 1

    name = "geometric"

    def __post_init__(self):
        object.__setattr__(self, "q", as_rat(self.q))
        object.__setattr__(self, "r", as_rat(self.r))
        if self.q <= 0 or not 0 < self.r < 1:
            raise RuleError("geometric rule needs q > 0 and 0 < r < 1")
        if self.start < 1:
            raise RuleError("start index must be positive")

    decreasing = True
    limit = Fraction(0)

    def term(self, n: int) -> Fraction:
        return self.q * self.r**n

    def contains(self, x: Fraction) -> bool:
        if x <= 0:
            return False
        n = self.start
        t = self.term(n)
        while t > x:
            n += 1
            t *= self.r
        return t == x

    def params(self) -> dict:
        return {"q": format_rat(self.q), "r": format_rat(self.r), "start": self.start}


Simple = Union[Shifted, Geometric]


@dataclass(frozen=True)
class Concat:
    """Union of two or more simple rules; terms interleave block by block."""

    blocks: tuple

    name = "concat"

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if len(blocks) < 2:
            raise RuleError("concat needs at least two blocks")
        if any(isinstance(b, Concat) or not isinstance(b, (Shifted, Geometric)) for b in blocks):
            raise RuleError("concat blocks must be simple rules")
        object.__setattr__(self, "blocks", blocks)

    def term(self, n: int) -> Fraction:
        k = len(self.blocks)
        block = self.blocks[(n - 1) % k]
        return block.term(block.start + (n - 1) // k)

    def contains(self, x: Fraction) -> bool:
        return any(b.contains(x) for b in self.blocks)

    def params(self) -> dict:
        return {"blocks": [rule_to_json(b) for b in self.blocks]}


Rule = Union[Shifted, Geometric, Concat]


def blocks_of(rule: Rule) -> tuple:
    return rule.blocks if isinstance(rule, Concat) else (rule,)


def iter_terms(rule: Simple) -> Iterator[Fraction]:
    n = rule.start
    while True:
        yield rule.term(n)
        n += 1


def rule_to_json(rule: Rule) -> dict:
    return {"rule": rule.name, "params": rule.params()}


def rule_from_json(obj) -> Rule:
    if not isinstance(obj, dict) or "rule" not in obj:
        raise RuleError(f"tail rule must be an object with a 'rule' key, got {obj!r}")
    name = obj["rule"]
    params = obj.get("params") or {}
    if not isinstance(params, dict):
        raise RuleError("rule params must be an object")
    try:
        start = int(params.get("start", 1))
        if name == "reciprocal":
            return Reciprocal(scale=parse_rat(params.get("scale", "1")), start=start)
        if name == "shifted":
            return Shifted(
                shift=parse_rat(params.get("shift", "1")),
                scale=parse_rat(params.get("scale", "1")),
                start=start,
            )
        if name == "geometric":
            return Geometric(q=parse_rat(params["q"]), r=parse_rat(params["r"]), start=start)
        if name == "concat":
            return Concat(tuple(rule_from_json(b) for b in params["blocks"]))
    except KeyError as exc:
        raise RuleError(f"rule {name!r} is missing parameter {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, RuleError):
            raise
        raise RuleError(f"rule {name!r}: {exc}") from None
    raise RuleError(f"unknown tail rule {name!r}")
