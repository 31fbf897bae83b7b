"""Piecewise-linear homeomorphisms of the line with exact rational breakpoints."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InvariantViolation

ZERO = Fraction(0)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PLMap:
    """Monotone PL map sending ``breakpoints[i]`` to ``values[i]``.

    Affine between consecutive breakpoints, slope-1 translation beyond the two
    extremes.
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        xs = tuple(Fraction(x) for x in self.breakpoints)
        ys = tuple(Fraction(y) for y in self.values)
        if not xs or len(xs) != len(ys):
            raise InvariantViolation("a PLMap needs matching, nonempty breakpoint and value lists")
        for i in range(1, len(xs)):
            if not xs[i - 1] < xs[i]:
                raise InvariantViolation(f"breakpoints not strictly increasing at {xs[i - 1]}, {xs[i]}")
            if not ys[i - 1] < ys[i]:
                raise InvariantViolation(
                    f"values not strictly increasing: {xs[i - 1]}->{ys[i - 1]}, {xs[i]}->{ys[i]}"
                )
        object.__setattr__(self, "breakpoints", xs)
        object.__setattr__(self, "values", ys)

    @classmethod
    def from_pairs(cls, pairs):
        pairs = sorted((Fraction(x), Fraction(y)) for x, y in pairs)
        return cls(tuple(x for x, _ in pairs), tuple(y for _, y in pairs))

    @classmethod
    def identity(cls):
        return cls((ZERO,), (ZERO,))

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        xs, ys = self.breakpoints, self.values
        if x <= xs[0]:
            return x + (ys[0] - xs[0])
        if x >= xs[-1]:
            return x + (ys[-1] - xs[-1])
        lo, hi = 0, len(xs) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if xs[mid] <= x:
                lo = mid
            else:
                hi = mid
        t = (x - xs[lo]) / (xs[hi] - xs[lo])
        return ys[lo] + t * (ys[hi] - ys[lo])

    def inverse(self) -> "PLMap":
        return PLMap(self.values, self.breakpoints)

    def hull(self):
        return self.breakpoints[0], self.breakpoints[-1]


def phi(x) -> Fraction:
    """Order-preserving bijection R -> (-1, 0): ``(x / (1 + |x|) - 1) / 2``."""
    x = Fraction(x)
    return (x / (1 + abs(x)) - 1) / 2


def phi_inverse(y) -> Fraction:
    y = Fraction(y)
    if not -1 < y < 0:
        raise DomainError(f"{y} is outside (-1, 0)")
    z = 2 * y + 1
    return z / (1 - abs(z))


@dataclass(frozen=True)
class CompressedMap:
    """``phi o inner o phi^-1`` on (-1, 0), extended by fixing 0."""

    inner: PLMap

    def __call__(self, y) -> Fraction:
        y = Fraction(y)
        if y == 0:
            return ZERO
        return phi(self.inner(phi_inverse(y)))

    def orbit(self, start, n: int) -> list:
        out, y = [], Fraction(start)
        for _ in range(n):
            y = self(y)
            out.append(y)
        return out


def compress_to_negative_ray(m: PLMap) -> CompressedMap:
    return CompressedMap(m)


def strictly_increasing(seq: Sequence) -> bool:
    return all(a < b for a, b in zip(seq, seq[1:]))
