"""Exact rational angles mod 1 and the angle-doubling dynamics on them.

Only odd denominators are representable: those are exactly the angles that
are purely periodic under doubling, and every object downstream (ray pairs,
kneading data, itineraries) lives on such angles.  No floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class RationalAngle:
    """A reduced fraction num/den in [0, 1) with odd denominator."""

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0 or self.den % 2 == 0:
            raise ValueError(f"denominator must be odd and positive, got {self.den}")
        if not 0 <= self.num < self.den:
            raise ValueError(f"numerator {self.num} out of range for den {self.den}")
        if gcd(self.num, self.den) != 1 and self.num != 0:
            raise ValueError(f"{self.num}/{self.den} is not reduced")

    def __str__(self):
        return f"{self.num}/{self.den}"

    def __lt__(self, other):
        return self.num * other.den < other.num * self.den

    def __le__(self, other):
        return self.num * other.den <= other.num * self.den

    def scaled_num(self, p: int) -> int:
        """Numerator over the common denominator 2^p - 1 (p a period multiple)."""
        full = 2**p - 1
        if full % self.den != 0:
            raise ValueError(f"{self} does not have period dividing {p}")
        return self.num * (full // self.den)


def angle(num: int, den: int) -> RationalAngle:
    """Reduced representative of num/den mod 1; even denominators are rejected."""
    if den <= 0 or den % 2 == 0:
        raise ValueError(f"denominator must be odd and positive, got {den}")
    num %= den
    g = gcd(num, den)
    if num == 0:
        return RationalAngle(0, 1)
    return RationalAngle(num // g, den // g)


def double(theta: RationalAngle) -> RationalAngle:
    # 2 is invertible mod an odd denominator, so the result stays reduced
    return RationalAngle(2 * theta.num % theta.den, theta.den) if theta.den > 1 else theta


@dataclass(frozen=True)
class AngleOrbit:
    """Doubling orbit, listed in dynamical order starting at its least element."""

    angles: tuple[RationalAngle, ...]
    period: int


def exact_period(theta: RationalAngle) -> int:
    """Least p with 2^p * theta = theta mod 1 (multiplicative order of 2)."""
    if theta.den == 1:
        return 1
    t, p = 2 % theta.den, 1
    while t != 1:
        t = 2 * t % theta.den
        p += 1
    return p


def orbit(theta: RationalAngle) -> AngleOrbit:
    points = [theta]
    current = double(theta)
    while current != theta:
        points.append(current)
        current = double(current)
    start = points.index(min(points))
    return AngleOrbit(tuple(points[start:] + points[:start]), len(points))


def binary_cycle(theta: RationalAngle) -> str:
    """Repeating block of the binary expansion: p bits for exact period p."""
    p = exact_period(theta)
    k = theta.num * (2**p - 1) // theta.den
    return format(k, f"0{p}b")


def conjugate(theta: RationalAngle) -> RationalAngle:
    """The reflected angle 1 - theta (bitwise complement of the expansion)."""
    return RationalAngle((theta.den - theta.num) % theta.den, theta.den)
