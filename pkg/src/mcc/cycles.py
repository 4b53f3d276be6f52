"""Abstract cycles: binary/ternary necklaces, their symmetry classes, kneading
sequences and perturbations, and the two ternary codings of angles.

A necklace is stored as the lexicographically least rotation of its word (via
Booth's algorithm) and always has exact period equal to its length.  All
angle-to-word codings are computed with integer arithmetic on numerators over
the angle's own denominator, so membership in a partition interval is decided
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .angles import RationalAngle, exact_period
from .counting import Family, divisors


def least_rotation(s: str) -> str:
    """Lexicographically least rotation of s (Booth's algorithm, O(len))."""
    doubled = s + s
    f = [-1] * len(doubled)
    k = 0
    for j in range(1, len(doubled)):
        sj = doubled[j]
        i = f[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return s[k:] + s[:k]


def word_exact_period(word: str) -> int:
    """Smallest d dividing len(word) such that word is a repeat of word[:d]."""
    n = len(word)
    for d in divisors(n):
        if word == word[:d] * (n // d):
            return d
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class BinaryNecklace:
    """Cyclic word over {0,1} of exact period len(word), canonical rotation."""

    word: str

    def __post_init__(self):
        if not self.word or set(self.word) - {"0", "1"}:
            raise ValueError(f"not a binary word: {self.word!r}")
        if self.word != least_rotation(self.word):
            raise ValueError(f"{self.word!r} is not in canonical rotation")
        if word_exact_period(self.word) != len(self.word):
            raise ValueError(f"{self.word!r} has a shorter period")

    @property
    def period(self) -> int:
        return len(self.word)

    def __str__(self):
        return self.word

    def __lt__(self, other):
        return self.word < other.word


@dataclass(frozen=True)
class TernaryNecklace:
    """Cyclic word over {0,1,2}, no two equal cyclically-adjacent digits.

    Length-1 words are admissible by convention: they stand for the three
    fixed points of the anti-doubling map, which sit on the boundary of the
    coding partition and have no honest itinerary.
    """

    word: str

    def __post_init__(self):
        if not self.word or set(self.word) - {"0", "1", "2"}:
            raise ValueError(f"not a ternary word: {self.word!r}")
        if len(self.word) > 1:
            for i, c in enumerate(self.word):
                if c == self.word[(i + 1) % len(self.word)]:
                    raise ValueError(f"{self.word!r} has equal adjacent digits")
        if self.word != least_rotation(self.word):
            raise ValueError(f"{self.word!r} is not in canonical rotation")
        if word_exact_period(self.word) != len(self.word):
            raise ValueError(f"{self.word!r} has a shorter period")

    @property
    def period(self) -> int:
        return len(self.word)

    def __str__(self):
        return self.word

    def __lt__(self, other):
        return self.word < other.word


def binary_necklace(word: str) -> BinaryNecklace:
    return BinaryNecklace(least_rotation(word))


def ternary_necklace(word: str) -> TernaryNecklace:
    return TernaryNecklace(least_rotation(word))


def complement(nu: BinaryNecklace) -> BinaryNecklace:
    flipped = "".join("1" if c == "0" else "0" for c in nu.word)
    return binary_necklace(flipped)


def rotate_digits(xi: TernaryNecklace) -> TernaryNecklace:
    rotated = "".join(str((int(c) + 1) % 3) for c in xi.word)
    return ternary_necklace(rotated)


@dataclass(frozen=True)
class CycleClass:
    """Duo (binary, closed under complement) or trio (ternary, under digit
    rotation); members are canonical words, sorted."""

    family: Family
    members: tuple[str, ...]

    @property
    def representative(self) -> str:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)

    def __str__(self):
        return "[" + " ".join(self.members) + "]"

    def __lt__(self, other):
        return self.members < other.members


def duo(nu: BinaryNecklace) -> CycleClass:
    members = sorted({nu.word, complement(nu).word})
    return CycleClass(Family.PER1, tuple(members))


def trio(xi: TernaryNecklace) -> CycleClass:
    rho = rotate_digits(xi)
    members = sorted({xi.word, rho.word, rotate_digits(rho).word})
    return CycleClass(Family.PER2, tuple(members))


def is_reflexive(cls: CycleClass) -> bool:
    """A duo fixed by complementation (single member)."""
    if cls.family is not Family.PER1:
        raise ValueError("reflexivity is a duo notion; use is_rot_invariant")
    return cls.size == 1


def is_rot_invariant(cls: CycleClass) -> bool:
    """A trio fixed by digit rotation (single member)."""
    if cls.family is not Family.PER2:
        raise ValueError("rotation invariance is a trio notion; use is_reflexive")
    return cls.size == 1


# ---------------------------------------------------------------------------
# enumeration

_ENUM_BUDGET = 24


def _check_budget(p):
    if not 1 <= p <= _ENUM_BUDGET:
        raise ValueError(f"enumeration supports 1 <= p <= {_ENUM_BUDGET}, got {p}")


@lru_cache(maxsize=None)
def enumerate_binary(p: int) -> tuple[BinaryNecklace, ...]:
    """All binary necklaces of exact period p, sorted by canonical word.

    Duval's algorithm generates Lyndon words of length <= p in lex order;
    those of length exactly p are precisely the canonical forms of the
    aperiodic necklaces.  p = 1 yields the two constant words.
    """
    _check_budget(p)
    if p == 1:
        return (BinaryNecklace("0"), BinaryNecklace("1"))
    out = []
    w = [0]
    while w:
        if len(w) == p:
            out.append(BinaryNecklace("".join(map(str, w))))
        w = (w * (p // len(w) + 1))[:p]
        while w and w[-1] == 1:
            w.pop()
        if w:
            w[-1] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_ternary(p: int) -> tuple[TernaryNecklace, ...]:
    """All admissible ternary necklaces of exact period p, sorted.

    p = 1 returns the three constants (anti-doubling fixed points); p = 2
    returns nothing, since the alternating two-digit words do not correspond
    to circle cycles of the anti-doubling map (they contract onto partition
    boundary points).  For p >= 3 the naive admissible count agrees with the
    circle-point formula.
    """
    _check_budget(p)
    if p == 1:
        return tuple(TernaryNecklace(c) for c in "012")
    if p == 2:
        return ()
    # Admissible necklaces of period >= 3 use all three digits, so their
    # canonical rotation starts with 0.  DFS over admissible words, keeping
    # the aperiodic canonical ones.
    out = []
    word = ["0"] * p

    def extend(i: int) -> None:
        if i == p:
            w = "".join(word)
            if word[-1] != "0" and w == least_rotation(w) and word_exact_period(w) == p:
                out.append(TernaryNecklace(w))
            return
        for c in "012":
            if c != word[i - 1]:
                word[i] = c
                extend(i + 1)

    extend(1)
    out.sort()
    return tuple(out)


# ---------------------------------------------------------------------------
# kneading data

@dataclass(frozen=True)
class Kneading:
    """Kneading sequence prefix of length p-1; the final symbol is '*'."""

    prefix: str

    def __post_init__(self):
        if set(self.prefix) - {"0", "1"}:
            raise ValueError(f"bad kneading prefix {self.prefix!r}")

    @property
    def period(self) -> int:
        return len(self.prefix) + 1

    def __str__(self):
        return self.prefix + "*"


def kneading_of_angle(theta: RationalAngle) -> Kneading:
    """Itinerary of theta's orbit relative to the diagonal {theta/2, (theta+1)/2}.

    Digit j is 1 iff 2^j theta lies on the arc (theta/2, (theta+1)/2), the side
    containing theta itself.  The final orbit point lands exactly on the
    diagonal and is recorded as '*'; any earlier boundary hit is impossible
    for an angle of exact period p and is asserted.
    """
    p = exact_period(theta)
    if p < 2:
        raise ValueError(f"kneading needs exact period >= 2, got {theta}")
    k, den = theta.num, theta.den
    digits = []
    m = k
    for j in range(p):
        t = 2 * m
        on_boundary = t == k or t == k + den
        if j == p - 1:
            if not on_boundary:
                raise AssertionError(f"orbit of {theta} missed the diagonal at step {j}")
            break
        if on_boundary:
            raise AssertionError(f"orbit of {theta} hit the diagonal early at step {j}")
        digits.append("1" if k < t < k + den else "0")
        m = t % den
    return Kneading("".join(digits))


def perturbations(k: Kneading) -> tuple[BinaryNecklace, BinaryNecklace]:
    """The two necklaces obtained by resolving '*' to 0 and to 1.

    Both must have exact period p; a shorter period means the kneading comes
    from a non-primitive component, which is an error here.
    """
    p = k.period
    out = []
    for last in "01":
        w = k.prefix + last
        if word_exact_period(w) != p:
            raise ValueError(f"perturbation {w} of {k} is not of exact period {p}")
        out.append(binary_necklace(w))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# ternary codings

def _reject_coding_boundary(theta: RationalAngle) -> None:
    if theta.den == 1:
        raise ValueError(f"{theta} is a partition boundary point (angle 0)")
    if theta.den == 3:
        raise ValueError(f"{theta} is a partition boundary point (1/3 or 2/3)")


def _ladder_steps(t: int, den: int) -> int:
    # number of doublings of t = 3*m that stay strictly below den;
    # equality is impossible because den is odd
    n = 0
    while t * 2 < den:
        t *= 2
        n += 1
    return n


def _basilica_digit(m: int, den: int) -> str:
    """Digit of the angle m/den in the three-piece basilica partition.

    The middle arc (1/3, 2/3) is digit 1.  Below 1/3 the arcs between the
    points 1/(3*2^n) alternate, digit 0 on (1/6, 1/3) outward; above 2/3 the
    mirrored arcs alternate with digit 2 on (2/3, 5/6) outward.
    """
    t = 3 * m
    if t < den:
        return "0" if _ladder_steps(t, den) % 2 == 0 else "2"
    if t > 2 * den:
        return "2" if _ladder_steps(3 * (den - m), den) % 2 == 0 else "0"
    return "1"


def basilica_label(theta: RationalAngle) -> TernaryNecklace:
    """Ternary necklace coding theta's doubling orbit in the basilica partition.

    Rejects angles whose orbit meets the partition boundary; for reduced
    odd-denominator angles that means exactly 0, 1/3 and 2/3.
    """
    _reject_coding_boundary(theta)
    p = exact_period(theta)
    den = theta.den
    digits = []
    m = theta.num
    for _ in range(p):
        digits.append(_basilica_digit(m, den))
        m = 2 * m % den
    return ternary_necklace("".join(digits))


def antidoubling_label(theta: RationalAngle) -> TernaryNecklace:
    """Itinerary of theta under t -> -2t with respect to the thirds partition.

    The orbit is the anti-doubling one, so its length (and the output period)
    need not equal the doubling period of theta.
    """
    _reject_coding_boundary(theta)
    den = theta.den
    digits = []
    m = theta.num
    while True:
        t = 3 * m
        if t % den == 0:
            raise ValueError(f"anti-doubling orbit of {theta} hits a thirds boundary")
        digits.append(str(t // den))
        m = -2 * m % den
        if m == theta.num:
            break
    return ternary_necklace("".join(digits))
