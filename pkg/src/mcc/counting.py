"""Closed-form counts for the cell decompositions of marked cycle curves.

Everything here is exact integer arithmetic: Mobius/totient convolutions over
the point counts of z^2 and z^-2 on the unit circle, plus the self-conjugate
cycle counts that control face counts and genus.  Python integers never wrap,
so every "must not overflow" contract is satisfied by construction; exactness
of the various divisions is asserted instead of assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache


class Family(IntEnum):
    """The two quadratic families, indexed as in the genus formulas.

    PER1 is the polynomial family z^2 + c; PER2 is the family of quadratic
    rational maps with a superattracting 2-cycle.  The integer value is the
    ``m`` appearing in the face-count denominator m + 1.
    """

    PER1 = 1
    PER2 = 2

    @property
    def tag(self):
        return "per1" if self is Family.PER1 else "per2"

    @classmethod
    def from_tag(cls, tag: str) -> "Family":
        try:
            return {"per1": cls.PER1, "per2": cls.PER2}[tag.lower()]
        except KeyError:
            raise ValueError(f"unknown family {tag!r}; expected per1 or per2") from None


def _check_positive(n) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"expected a positive integer, got {n!r}")


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, ascending."""
    _check_positive(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    """Mobius function: (-1)^k on squarefree n with k prime factors, else 0."""
    _check_positive(n)
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    """Euler's totient: count of 1 <= k <= n coprime to n."""
    _check_positive(n)
    result = n
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if n > 1:
        result -= result // n
    return result


def dirichlet(f, g, n: int) -> int:
    """Dirichlet convolution (f * g)(n) = sum over d | n of f(n/d) g(d)."""
    _check_positive(n)
    return sum(f(n // d) * g(d) for d in divisors(n))


def _exact_div(num: int, den: int, what: str) -> int:
    if num % den != 0:
        raise ArithmeticError(f"{what}: {num} is not divisible by {den}")
    return num // den


def points_div(family: Family, n: int) -> int:
    """Circle points of period dividing n: 2^n - 1 (PER1), 2^n - (-1)^n (PER2)."""
    _check_positive(n)
    if family is Family.PER1:
        return 2**n - 1
    return 2**n - (-1) ** n


@lru_cache(maxsize=None)
def points_exact(family: Family, n: int) -> int:
    """Circle points of exact period n (Mobius transform of points_div)."""
    return dirichlet(mobius, lambda d: points_div(family, d), n)


@lru_cache(maxsize=None)
def cyc(family: Family, n: int) -> int:
    """Number of abstract n-cycles of the model map.

    PER2 at n = 2 is the lone special value: the unique 2-cycle is the
    critical one, which lives off the invariant circle, so the circle-point
    formula (which gives 0) undercounts it by one.
    """
    _check_positive(n)
    if family is Family.PER2 and n == 2:
        return 1
    return _exact_div(points_exact(family, n), n, f"cyc({family.tag},{n})")


@lru_cache(maxsize=None)
def hyp(family: Family, n: int) -> int:
    """Hyperbolic components of period n (PER2: outside the 1/3..2/3 limb)."""
    _check_positive(n)
    if n == 1:
        return 1
    return _exact_div(points_exact(family, n), family + 1, f"hyp({family.tag},{n})")


@lru_cache(maxsize=None)
def sat(family: Family, n: int) -> int:
    """Satellite components of period n; n = 1 is rejected, n = 2 is pinned."""
    if n < 2:
        raise ValueError(f"sat is defined for n >= 2, got {n}")
    if n == 2:
        return hyp(family, 2)
    return dirichlet(totient, lambda d: hyp(family, d), n) - hyp(family, n)


@lru_cache(maxsize=None)
def prim(family: Family, n: int) -> int:
    """Primitive components of period n; n = 1 is rejected, n = 2 is pinned 0."""
    if n < 2:
        raise ValueError(f"prim is defined for n >= 2, got {n}")
    if n == 2:
        return 0
    return hyp(family, n) - sat(family, n)


@lru_cache(maxsize=None)
def q(family: Family, n: int) -> int:
    """Cycles of exact period n invariant under the model symmetry.

    PER1: Q1(2k) = (1/2k) sum over d | k with k/d odd of mu(k/d) 2^d, and
    Q1 vanishes on odd n.  PER2: Q2(3k) = (2/3k) sum over d | k with k/d
    not divisible by 3 of mu(k/d) p2~(d), zero off multiples of 3 except
    Q2(2) = 1 (the critical 2-cycle again).
    """
    _check_positive(n)
    if family is Family.PER1:
        if n % 2 != 0:
            return 0
        k = n // 2
        total = sum(mobius(k // d) * 2**d for d in divisors(k) if (k // d) % 2 != 0)
        return _exact_div(total, n, f"q(per1,{n})")
    if n == 2:
        return 1
    if n % 3 != 0:
        return 0
    k = n // 3
    total = sum(
        mobius(k // d) * points_div(Family.PER2, d)
        for d in divisors(k)
        if (k // d) % 3 != 0
    )
    return _exact_div(2 * total, n, f"q(per2,{n})")


def faces(family: Family, n: int) -> int:
    """Face count (cyc + m q) / (m + 1); the division is always exact."""
    m = int(family)
    return _exact_div(cyc(family, n) + m * q(family, n), m + 1, f"faces({family.tag},{n})")


def genus(family: Family, n: int) -> int:
    """Genus of the period-n marked cycle curve (may be negative: p=3, PER2)."""
    if family is Family.PER1:
        numer = 2 * prim(family, n) - 3 * cyc(family, n) - q(family, n)
        return 1 + _exact_div(numer, 4, f"genus(per1,{n})")
    numer = 3 * prim(family, n) - 4 * cyc(family, n) - 2 * q(family, n)
    return 1 + _exact_div(numer, 6, f"genus(per2,{n})")


def capital_phi(p: int) -> int:
    """Totient partial sum over 0 <= k < p, with the k = 0 term set to 0."""
    _check_positive(p)
    return sum(totient(k) for k in range(1, p))


@dataclass(frozen=True)
class CountRow:
    """One row of the summary table for a given period."""

    p: int
    cyc1: int
    cyc2: int
    prim1: int
    prim2: int
    q1: int
    q2: int
    f1: int
    f2: int
    g1: int
    g2: int

    COLUMNS = ("p", "cyc1", "cyc2", "prim1", "prim2", "q1", "q2", "f1", "f2", "g1", "g2")

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, c) for c in self.COLUMNS)


def count_row(p: int) -> CountRow:
    """Assemble the full table row for period p (requires p >= 2)."""
    if p < 2:
        raise ValueError(f"count rows start at p = 2, got {p}")
    return CountRow(
        p=p,
        cyc1=cyc(Family.PER1, p),
        cyc2=cyc(Family.PER2, p),
        prim1=prim(Family.PER1, p),
        prim2=prim(Family.PER2, p),
        q1=q(Family.PER1, p),
        q2=q(Family.PER2, p),
        f1=faces(Family.PER1, p),
        f2=faces(Family.PER2, p),
        g1=genus(Family.PER1, p),
        g2=genus(Family.PER2, p),
    )
