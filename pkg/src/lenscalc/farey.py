"""Exact arithmetic on the Farey circle and decorated-path classification.

Slopes are primitive integer vectors num/den with den >= 0 and infinity = 1/0.
The circle is ordered clockwise: starting at infinity, the finite rationals
appear in increasing order and wrap back to infinity.  All operations are
pure functions over immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import DegenerateInputError, InvariantError, PreconditionError


def _bezout(a: int, b: int) -> tuple[int, int]:
    """Return (x, y) with a*x + b*y = 1; requires gcd(a, b) = 1."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r == -1:
        old_r, old_x, old_y = 1, -old_x, -old_y
    if old_r != 1:
        raise DegenerateInputError(f"gcd({a}, {b}) = {old_r}, expected 1")
    return old_x, old_y


@dataclass(frozen=True)
class Slope:
    """A point of the Farey circle as a primitive integer vector."""

    num: int
    den: int

    def __post_init__(self) -> None:
        n, d = self.num, self.den
        if n == 0 and d == 0:
            raise DegenerateInputError("0/0 is not a point of the Farey circle")
        g = gcd(n, d)
        n //= g
        d //= g
        if d < 0 or (d == 0 and n < 0):
            n, d = -n, -d
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    @property
    def is_infinity(self) -> bool:
        return self.den == 0

    def as_fraction(self) -> Fraction:
        if self.den == 0:
            raise DegenerateInputError("infinity has no finite value")
        return Fraction(self.num, self.den)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        text = text.strip()
        if text in ("inf", "-inf", "1/0"):
            return cls(1, 0)
        if "/" in text:
            n, d = text.split("/", 1)
            return cls(int(n), int(d))
        return cls(int(text), 1)

    def __str__(self) -> str:
        if self.den == 0:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"


INFINITY = Slope(1, 0)
ZERO = Slope(0, 1)


@dataclass(frozen=True)
class IntMat2:
    """Row-major 2x2 integer matrix acting on slopes as column vectors."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "IntMat2":
        return cls(1, 0, 0, 1)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "IntMat2":
        det = self.det()
        if det == 1:
            return IntMat2(self.d, -self.b, -self.c, self.a)
        if det == -1:
            return IntMat2(-self.d, self.b, self.c, -self.a)
        raise PreconditionError(f"matrix with det {det} is not invertible over Z")

    def apply_vec(self, x: int, y: int) -> tuple[int, int]:
        return self.a * x + self.b * y, self.c * x + self.d * y

    def apply(self, s: Slope) -> Slope:
        return Slope(*self.apply_vec(s.num, s.den))


def farey_sum(u: Slope, v: Slope) -> Slope:
    """Mediant of the two primitive representatives."""
    n, d = u.num + v.num, u.den + v.den
    if n == 0 and d == 0:
        raise DegenerateInputError(f"Farey sum of {u} and {v} is degenerate")
    return Slope(n, d)


def farey_mult(u: Slope, v: Slope) -> int:
    """u.num*v.den - u.den*v.num; |result| = 1 iff u, v span a Farey edge."""
    return u.num * v.den - u.den * v.num


def is_farey_edge(u: Slope, v: Slope) -> bool:
    return abs(farey_mult(u, v)) == 1


def _linear_key(s: Slope):
    # Infinity first, then finite slopes in increasing order; clockwise order
    # around the circle is this linear order read cyclically.
    if s.is_infinity:
        return (0, 0)
    return (1, Fraction(s.num, s.den))


def cw_between(a: Slope, x: Slope, b: Slope) -> bool:
    """True iff x lies strictly inside the clockwise arc from a to b."""
    if a == b or x == a or x == b:
        return False
    ka, kx, kb = _linear_key(a), _linear_key(x), _linear_key(b)
    return (ka < kx < kb) or (kb < ka < kx) or (kx < kb < ka)


def unimodular_to_infinity(u: Slope) -> IntMat2:
    """A determinant +1 matrix sending u to infinity."""
    x, y = _bezout(u.num, u.den)
    return IntMat2(x, y, -u.den, u.num)


def minimal_path(src: Slope, dst: Slope) -> list[Slope]:
    """The unique chord-free clockwise Farey path from src to dst.

    Computed by mediant descent: map the current vertex to infinity by a
    determinant +1 matrix and step to the largest integer strictly below the
    image of the target.
    """
    if src == dst:
        raise PreconditionError("path endpoints must be distinct")
    path = [src]
    cur = src
    while cur != dst:
        if is_farey_edge(cur, dst):
            path.append(dst)
            break
        mat = unimodular_to_infinity(cur)
        image = mat.apply(dst)
        step = (image.num - 1) // image.den
        cur = mat.inverse().apply(Slope(step, 1))
        path.append(cur)
    return path


def farey_neighbors(s: Slope) -> tuple[Slope, Slope]:
    """Return ((s)^c, (s)^a): the numerically largest and smallest neighbors.

    For infinity the numeric reading degenerates; the circular-order fallback
    returns the adjacent integer pair straddling the wrap point, so that the
    clockwise order (s)^a, s, (s)^c still holds.
    """
    if s.is_infinity:
        return Slope(-1, 1), Slope(0, 1)
    a, b = s.num, s.den
    candidates: list[Slope] = []
    for rhs in (1, -1):
        # solve a*d - b*n = rhs; family (n, d) = (n0, d0) + k*(a, b)
        d0, y = _bezout(a, b)
        n0 = -y
        if rhs == -1:
            d0, n0 = -d0, -n0
        kf = (-d0) // b
        kc = -(d0 // b)
        for k in {kf, kc, kf - 1, kc + 1}:
            den = d0 + k * b
            if den != 0:
                candidates.append(Slope(n0 + k * a, den))
    best_c = max(candidates, key=lambda v: Fraction(v.num, v.den))
    best_a = min(candidates, key=lambda v: Fraction(v.num, v.den))
    return best_c, best_a


class EdgeSign(Enum):
    PLUS = "+"
    MINUS = "-"
    RING = "o"

    def __str__(self) -> str:
        return "∘" if self is EdgeSign.RING else self.value


class Classification(Enum):
    TIGHT = "Tight"
    UNIVERSALLY_TIGHT = "UniversallyTight"
    VIRTUALLY_OVERTWISTED = "VirtuallyOvertwisted"
    OVERTWISTED = "Overtwisted"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class DecoratedPath:
    """A strictly clockwise Farey path with signed edges."""

    slopes: tuple[Slope, ...]
    signs: tuple[EdgeSign, ...]

    def __post_init__(self) -> None:
        slopes = tuple(self.slopes)
        signs = tuple(self.signs)
        object.__setattr__(self, "slopes", slopes)
        object.__setattr__(self, "signs", signs)
        if len(slopes) < 2:
            raise InvariantError("a decorated path needs at least one edge")
        if len(signs) != len(slopes) - 1:
            raise InvariantError("need exactly one sign per edge")
        for u, v in zip(slopes, slopes[1:]):
            if not is_farey_edge(u, v):
                raise InvariantError(f"{u} and {v} are not Farey-adjacent")
        anchor = slopes[0]
        ka = _linear_key(anchor)
        prev = None
        for s in slopes[1:]:
            if s == anchor:
                raise InvariantError("path returns to its starting slope")
            k = _linear_key(s)
            # rank in clockwise order as seen from the anchor
            rank = (0 if k > ka else 1, k)
            if prev is not None and rank <= prev:
                raise InvariantError("path is not strictly clockwise")
            prev = rank

    def is_minimal(self) -> bool:
        n = len(self.slopes)
        for i in range(n):
            for j in range(i + 2, n):
                if is_farey_edge(self.slopes[i], self.slopes[j]):
                    return False
        return True

    def is_closed_lens_path(self) -> bool:
        if len(self.signs) < 2:
            return False
        if self.signs[0] is not EdgeSign.RING or self.signs[-1] is not EdgeSign.RING:
            return False
        return all(s is not EdgeSign.RING for s in self.signs[1:-1])

    def to_json_obj(self) -> dict:
        return {
            "slopes": [[str(s.num), str(s.den)] for s in self.slopes],
            "signs": [s.value for s in self.signs],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "DecoratedPath":
        try:
            slopes = tuple(Slope(int(n), int(d)) for n, d in obj["slopes"])
            signs = tuple(EdgeSign(s) for s in obj["signs"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvariantError(f"malformed decorated path: {exc}") from exc
        return cls(slopes, signs)


@dataclass(frozen=True)
class ShorteningResult:
    path: DecoratedPath
    removed_any: bool
    opposite_sign_junction: bool


def shorten(p: DecoratedPath) -> ShorteningResult:
    """Remove interior blocks flanked by Farey-adjacent vertices until minimal.

    Records whether any removed junction had a + edge on one side and a -
    edge on the other.  The merged edge keeps the first non-Ring flanking
    sign; merged signs only matter through the opposite-sign flag.
    """
    slopes = list(p.slopes)
    signs = list(p.signs)
    removed_any = False
    opposite = False
    changed = True
    while changed:
        changed = False
        n = len(slopes)
        # prefer the shortest shortening (single-vertex removals first)
        for width in range(2, n):
            for i in range(0, n - width):
                j = i + width
                if is_farey_edge(slopes[i], slopes[j]):
                    left, right = signs[i], signs[j - 1]
                    if {left, right} == {EdgeSign.PLUS, EdgeSign.MINUS}:
                        opposite = True
                    merged = left if left is not EdgeSign.RING else right
                    slopes[i + 1 : j] = []
                    signs[i : j] = [merged]
                    removed_any = True
                    changed = True
                    break
            if changed:
                break
    out = DecoratedPath(tuple(slopes), tuple(signs))
    return ShorteningResult(out, removed_any, opposite)


def classify(p: DecoratedPath) -> Classification:
    """Giroux-Honda classification of the contact structure a closed
    lens-space path encodes."""
    if not p.is_closed_lens_path():
        raise InvariantError(
            "classification needs Ring on the outermost edges and signed interior edges"
        )
    result = shorten(p)
    if not result.removed_any:
        interior = set(p.signs[1:-1])
        if len(interior) <= 1:
            return Classification.UNIVERSALLY_TIGHT
        return Classification.VIRTUALLY_OVERTWISTED
    if result.opposite_sign_junction:
        return Classification.OVERTWISTED
    return Classification.UNDETERMINED


def totally_inconsistent_path(lens_slope: Slope, at: Slope) -> DecoratedPath:
    """The totally inconsistent decorated path for the lens space with the
    given surgery slope, bending at the slope `at`."""
    if not cw_between(lens_slope, at, ZERO):
        raise PreconditionError(
            f"{at} is not strictly inside the clockwise arc from {lens_slope} to 0"
        )
    first = minimal_path(lens_slope, at)
    second = minimal_path(at, ZERO)
    slopes = tuple(first + second[1:])
    n1 = len(first) - 1
    n2 = len(second) - 1
    signs = [EdgeSign.PLUS] * n1 + [EdgeSign.MINUS] * n2
    signs[0] = EdgeSign.RING
    signs[-1] = EdgeSign.RING
    return DecoratedPath(slopes, tuple(signs))
