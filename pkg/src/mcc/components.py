"""Hyperbolic components of the Mandelbrot set as characteristic angle pairs.

The pairing is built period by period: angles of each exact period are
matched by a circular stack sweep that respects every chord already drawn
for lower periods, which is the classical non-crossing (Lavaurs) matching.
Primitivity is orbit-disjointness of the two angles; the PER2 subset keeps
the primitive components whose angles avoid the closed middle-third arc.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .angles import RationalAngle, angle
from .counting import Family, divisors
from .cycles import Kneading, kneading_of_angle

_MAX_PERIOD = 20


class PairingError(RuntimeError):
    """The sweep failed to produce a perfect non-crossing matching."""


@dataclass(frozen=True)
class HyperbolicComponent:
    """A period-p component: its two characteristic angles plus derived data.

    ``label`` is the display numerator over 2^p - 1: the angle farther from
    1/2, ties broken toward the smaller numerator.
    """

    period: int
    pair: tuple[RationalAngle, RationalAngle]
    primitive: bool
    kneading: Kneading
    label: int

    @property
    def low(self) -> RationalAngle:
        return self.pair[0]

    @property
    def high(self) -> RationalAngle:
        return self.pair[1]

    def scaled_pair(self) -> tuple[int, int]:
        return (self.low.scaled_num(self.period), self.high.scaled_num(self.period))

    def is_real(self) -> bool:
        """Conjugation-fixed: the two angles sum to 1."""
        return self.low.num * self.high.den + self.high.num * self.low.den == self.low.den * self.high.den

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "period": self.period,
            "angles": [str(self.low), str(self.high)],
            "primitive": self.primitive,
            "kneading": str(self.kneading),
        }


@lru_cache(maxsize=None)
def _exact_numerators(n: int) -> tuple[int, ...]:
    """Numerators k so that k/(2^n - 1) has exact doubling period n."""
    full = 2**n - 1
    # k has period d | n iff k is a multiple of full/(2^d - 1); excluding the
    # maximal proper divisor periods is enough
    quotients = [full // (2**d - 1) for d in divisors(n) if d < n]
    return tuple(
        k for k in range(1, full) if all(k % quot != 0 for quot in quotients)
    )


@lru_cache(maxsize=None)
def _pairs_fraction(n: int) -> tuple[tuple[Fraction, Fraction], ...]:
    """Non-crossing matching of the exact-period-n angles, as Fractions.

    One circular sweep over all angles of period <= n: lower-period chords
    act as brackets that must close cleanly, and a new period-n angle pairs
    with the most recent unmatched period-n angle in the same region.
    """
    events = []  # (position, kind, payload); kind 0 = new angle, 1 = open, 2 = close
    for m in range(2, n):
        for lo, hi in _pairs_fraction(m):
            events.append((lo, 1, (lo, hi)))
            events.append((hi, 2, (lo, hi)))
    for k in _exact_numerators(n):
        events.append((Fraction(k, 2**n - 1), 0, None))
    events.sort(key=lambda e: e[0])

    pairs = []
    stack = []
    for pos, kind, chord in events:
        if kind == 0:
            if stack and stack[-1][0] == 0:
                pairs.append((stack.pop()[1], pos))
            else:
                stack.append((0, pos))
        elif kind == 1:
            stack.append((1, chord))
        else:
            if not stack or stack[-1] != (1, chord):
                raise PairingError(f"period-{n} angle trapped inside chord {chord}")
            stack.pop()
    if stack:
        raise PairingError(f"unmatched period-{n} angles remain: {stack}")
    pairs.sort()
    return tuple(pairs)


def _check_period(p: int) -> None:
    if not 2 <= p <= _MAX_PERIOD:
        raise ValueError(f"supported periods are 2 <= p <= {_MAX_PERIOD}, got {p}")


def lavaurs_pairs(p: int) -> list[tuple[RationalAngle, RationalAngle]]:
    """Characteristic angle pairs of all period-p components, sorted by low angle."""
    _check_period(p)
    return [
        (angle(lo.numerator, lo.denominator), angle(hi.numerator, hi.denominator))
        for lo, hi in _pairs_fraction(p)
    ]


def _same_orbit(a: RationalAngle, b: RationalAngle) -> bool:
    if a.den != b.den:
        return False
    m = a.num
    for _ in range(64):
        if m == b.num:
            return True
        m = 2 * m % a.den
        if m == a.num:
            return False
    raise AssertionError("orbit scan exceeded bound")


def display_label(pair: tuple[RationalAngle, RationalAngle], p: int) -> int:
    """Display numerator over 2^p - 1: farther from 1/2, ties to the smaller."""
    full = 2**p - 1
    k_lo, k_hi = pair[0].scaled_num(p), pair[1].scaled_num(p)
    d_lo, d_hi = abs(2 * k_lo - full), abs(2 * k_hi - full)
    if d_lo == d_hi:
        return min(k_lo, k_hi)
    return k_lo if d_lo > d_hi else k_hi


def odd_label(component: HyperbolicComponent) -> int:
    """The odd member of the scaled numerator pair (exactly one is odd).

    This is the naming convention for edges over the critical-2-cycle family,
    whose bubble rays carry the negated polynomial angles.
    """
    k_lo, k_hi = component.scaled_pair()
    if (k_lo + k_hi) % 2 == 0:
        raise AssertionError(f"pair {component.pair} has equal-parity numerators")
    return k_lo if k_lo % 2 == 1 else k_hi


@lru_cache(maxsize=None)
def all_components(p: int) -> tuple[HyperbolicComponent, ...]:
    """Every period-p component (primitive and satellite), sorted by low angle."""
    _check_period(p)
    out = []
    for lo, hi in lavaurs_pairs(p):
        out.append(
            HyperbolicComponent(
                period=p,
                pair=(lo, hi),
                primitive=not _same_orbit(lo, hi),
                kneading=kneading_of_angle(lo),
                label=display_label((lo, hi), p),
            )
        )
    return tuple(out)


def _outside_middle_third(theta: RationalAngle) -> bool:
    return 3 * theta.num < theta.den or 3 * theta.num > 2 * theta.den


def primitive_components(family: Family, p: int) -> tuple[HyperbolicComponent, ...]:
    """PER1: all primitive components; PER2: those outside the 1/3..2/3 arc."""
    comps = tuple(c for c in all_components(p) if c.primitive)
    if family is Family.PER1:
        return comps
    return tuple(
        c
        for c in comps
        if _outside_middle_third(c.low) and _outside_middle_third(c.high)
    )
