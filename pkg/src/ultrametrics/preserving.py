"""Piecewise functions on the nonnegative rationals.

A function preserves ultrametrics exactly when it is nondecreasing and
vanishes only at 0; on a finite set of arguments that condition is
decidable, which is what :func:`preserving_violation` checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .rational import as_rat, format_rat


class FunctionError(ValueError):
    pass


def step_function_f(t) -> Fraction:
    """0 at 0, 1 from 1 upward, and ``1/n`` on ``(1/(n+1), 1/n]``."""
    t = as_rat(t)
    if t < 0:
        raise FunctionError(f"step function is defined on t >= 0, got {format_rat(t)}")
    if t == 0:
        return Fraction(0)
    if t >= 1:
        return Fraction(1)
    return Fraction(1, math.floor(1 / t))


RULES = ("const", "affine", "step", "reciprocal")


@dataclass(frozen=True)
class Piece:
    lo: Fraction
    hi: Fraction | None  # None is +infinity
    lo_closed: bool
    hi_closed: bool
    rule: str
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __contains__(self, t: Fraction) -> bool:
        if t < self.lo or (t == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        return t < self.hi or (t == self.hi and self.hi_closed)

    def __call__(self, t: Fraction) -> Fraction:
        if self.rule == "const":
            return self.a
        if self.rule == "affine":
            return self.a * t + self.b
        if self.rule == "step":
            return step_function_f(t)
        if self.rule == "reciprocal":
            return self.a / t
        raise FunctionError(f"unknown piece rule {self.rule!r}")


class PreservingFunction:
    """A total function on the nonnegative rationals given by finitely many
    pieces. The pieces must tile ``[0, inf)`` without gaps or overlap."""

    def __init__(self, name: str, pieces: Iterable[Piece]):
        self.name = name
        self.pieces = tuple(sorted(pieces, key=lambda p: (p.lo, not p.lo_closed)))
        self._check_tiling()

    def _check_tiling(self):
        ps = self.pieces
        if not ps or ps[0].lo != 0 or not ps[0].lo_closed:
            raise FunctionError(f"{self.name}: pieces must start at [0")
        for p, q in zip(ps, ps[1:]):
            if p.hi is None or p.hi != q.lo or p.hi_closed == q.lo_closed:
                raise FunctionError(f"{self.name}: pieces do not tile the half-line")
        if ps[-1].hi is not None:
            raise FunctionError(f"{self.name}: last piece must be unbounded")
        for p in ps:
            if p.rule not in RULES:
                raise FunctionError(f"{self.name}: unknown piece rule {p.rule!r}")
            if p.hi is not None and p.hi < p.lo:
                raise FunctionError(f"{self.name}: empty piece")
            if p.rule == "reciprocal" and p.lo == 0 and p.lo_closed:
                raise FunctionError(f"{self.name}: reciprocal piece must stay away from 0")
            if p.rule == "affine" and p.a < 0 and p.hi is None:
                raise FunctionError(f"{self.name}: decreasing affine piece must be bounded")
            ends = [p.lo] + ([p.hi] if p.hi is not None else [])
            if any(p(e) < 0 for e in ends if p.rule != "reciprocal"):
                raise FunctionError(f"{self.name}: negative values")

    def __call__(self, t) -> Fraction:
        t = as_rat(t)
        if t < 0:
            raise FunctionError(f"{self.name} is defined on t >= 0")
        for p in self.pieces:
            if t in p:
                return p(t)
        raise FunctionError(f"{self.name}: no piece covers {format_rat(t)}")

    def __repr__(self) -> str:
        return f"PreservingFunction({self.name!r})"


def _p(lo, hi, lo_closed, hi_closed, rule, a=0, b=0) -> Piece:
    return Piece(
        as_rat(lo),
        None if hi is None else as_rat(hi),
        lo_closed,
        hi_closed,
        rule,
        as_rat(a),
        as_rat(b),
    )


def identity() -> PreservingFunction:
    return PreservingFunction("identity", [_p(0, None, True, False, "affine", 1, 0)])


def step() -> PreservingFunction:
    return PreservingFunction("step", [_p(0, None, True, False, "step")])


def indicator(c=1) -> PreservingFunction:
    """0 at 0, ``c`` elsewhere."""
    return PreservingFunction(
        f"indicator({format_rat(as_rat(c))})",
        [_p(0, 0, True, True, "const", 0), _p(0, None, False, False, "const", c)],
    )


def affine(a, b=0) -> PreservingFunction:
    """0 at 0, ``a*t + b`` for t > 0."""
    a, b = as_rat(a), as_rat(b)
    return PreservingFunction(
        f"affine({format_rat(a)},{format_rat(b)})",
        [_p(0, 0, True, True, "const", 0), _p(0, None, False, False, "affine", a, b)],
    )


def capped(c) -> PreservingFunction:
    """``min(t, c)``."""
    c = as_rat(c)
    return PreservingFunction(
        f"capped({format_rat(c)})",
        [_p(0, c, True, True, "affine", 1, 0), _p(c, None, False, False, "const", c)],
    )


def vanishing_below(c) -> PreservingFunction:
    """0 on ``[0, c]``, identity above."""
    c = as_rat(c)
    return PreservingFunction(
        f"vanishing_below({format_rat(c)})",
        [_p(0, c, True, True, "const", 0), _p(c, None, False, False, "affine", 1, 0)],
    )


def constant(c) -> PreservingFunction:
    c = as_rat(c)
    return PreservingFunction(f"constant({format_rat(c)})", [_p(0, None, True, False, "const", c)])


def reciprocal(c=1) -> PreservingFunction:
    """0 at 0, ``c/t`` for t > 0 (decreasing)."""
    c = as_rat(c)
    return PreservingFunction(
        f"reciprocal({format_rat(c)})",
        [_p(0, 0, True, True, "const", 0), _p(0, None, False, False, "reciprocal", c)],
    )


def reflected(c) -> PreservingFunction:
    """``c - t`` on ``[0, c]``, identity above: decreasing near 0 and zero at ``c``."""
    c = as_rat(c)
    return PreservingFunction(
        f"reflected({format_rat(c)})",
        [_p(0, c, True, True, "affine", -1, c), _p(c, None, False, False, "affine", 1, 0)],
    )


def with_points(overrides: Mapping) -> PreservingFunction:
    """Identity except at finitely many points."""
    pts = sorted((as_rat(k), as_rat(v)) for k, v in overrides.items())
    pieces = []
    lo, lo_closed = Fraction(0), True
    for x, y in pts:
        if x > lo or (x == lo and not lo_closed):
            pieces.append(_p(lo, x, lo_closed, False, "affine", 1, 0))
        pieces.append(_p(x, x, True, True, "const", y))
        lo, lo_closed = x, False
    pieces.append(_p(lo, None, lo_closed, False, "affine", 1, 0))
    name = "with_points(" + ",".join(f"{format_rat(x)}->{format_rat(y)}" for x, y in pts) + ")"
    return PreservingFunction(name, pieces)


def preserving_violation(f: PreservingFunction, values: Iterable) -> tuple | None:
    """First failure of "nondecreasing and zero exactly at zero" on ``values``.

    Returns ``("zero", s)`` or ``("monotone", s, t)`` with ``s < t`` and
    ``f(s) > f(t)``, or ``None`` when the condition holds.
    """
    vals = sorted(set(as_rat(v) for v in values))
    images = [f(v) for v in vals]
    for v, fv in zip(vals, images):
        if (fv == 0) != (v == 0):
            return ("zero", v)
    for k in range(len(vals) - 1):
        if images[k] > images[k + 1]:
            return ("monotone", vals[k], vals[k + 1])
    return None


def catalog() -> dict[str, PreservingFunction]:
    fs = [
        identity(),
        step(),
        indicator(1),
        indicator(Fraction(7, 3)),
        affine(2),
        affine(1, 1),
        affine(Fraction(1, 3), Fraction(1, 2)),
        capped(1),
        capped(Fraction(1, 2)),
        with_points({1: 2, 2: 1}),
        with_points({Fraction(1, 2): 3}),
        vanishing_below(Fraction(1, 2)),
        constant(1),
        reciprocal(1),
        reflected(1),
        with_points({0: 1}),
    ]
    return {f.name: f for f in fs}


def function_by_name(name: str) -> PreservingFunction:
    """Resolve a CLI name: ``identity``, ``step``, ``indicator``, or a catalog name."""
    simple = {"identity": identity, "step": step, "indicator": indicator}
    if name in simple:
        return simple[name]()
    cat = catalog()
    if name in cat:
        return cat[name]
    raise FunctionError(f"unknown function {name!r}; known: {', '.join(sorted(set(simple) | set(cat)))}")
