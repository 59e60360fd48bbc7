"""Lens-space normal forms, homeomorphism tests, torus-knot classification,
and the connected-sum output of surgery along the torus framing.

Convention: L(r,s) is -r/s surgery on the unknot, so L(-r,s) is the
orientation reversal L(r,-s).  A torus knot T_{p,q} sits on the Heegaard
torus in class p*lambda + q*mu and has Farey point q/p, project-wide.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from math import gcd

from .errors import DegenerateInputError, PreconditionError
from .farey import ZERO, Slope, _bezout, cw_between


def _canonical_pair(r: int, s: int) -> tuple[int, int]:
    """Orientation-preserving normal form: r >= 0, s the smaller of
    {s mod r, s^{-1} mod r}; S^3 is (1, 0) and S^1 x S^2 is (0, 1)."""
    if r < 0:
        r, s = -r, -s
    if r == 0:
        return (0, 1)
    if r == 1:
        return (1, 0)
    s %= r
    return (r, min(s, pow(s, -1, r)))


@dataclass(frozen=True)
class LensSpace:
    """L(r,s); the raw coefficients are kept, equality and hashing use the
    orientation-preserving normal form."""

    r: int
    s: int

    def __post_init__(self) -> None:
        if gcd(self.r, self.s) != 1:
            raise PreconditionError(f"gcd({self.r},{self.s}) != 1")

    @property
    def canonical(self) -> tuple[int, int]:
        return _canonical_pair(self.r, self.s)

    @property
    def mirror_canonical(self) -> tuple[int, int]:
        return _canonical_pair(self.r, -self.s)

    def is_s3(self) -> bool:
        return self.canonical == (1, 0)

    def is_s1xs2(self) -> bool:
        return self.canonical == (0, 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LensSpace):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def __str__(self) -> str:
        if self.is_s3():
            return "S3"
        if self.is_s1xs2():
            return "S1xS2"
        return "L(%d,%d)" % self.canonical


class Orientation(Enum):
    PRESERVING = "preserving"
    EITHER = "either"


def lens_homeomorphic(l1: LensSpace, l2: LensSpace, orientation: Orientation) -> bool:
    if l1.canonical == l2.canonical:
        return True
    if orientation is Orientation.EITHER:
        return l1.canonical == l2.mirror_canonical
    return False


def boundary_Bpq(p: int, q: int) -> LensSpace:
    """Boundary of the rational homology ball B_{p,q}: L(p^2, pq-1)."""
    if p < 1:
        raise PreconditionError("p must be at least 1")
    if gcd(p, q) != 1:
        raise PreconditionError(f"gcd({p},{q}) != 1")
    return LensSpace(p * p, p * q - 1)


S3 = LensSpace(1, 0)
S1XS2 = LensSpace(0, 1)


@dataclass(frozen=True)
class ThreeManifold:
    """Connected sum of lens-space atoms; S^3 summands are absorbed and the
    empty sum is S^3.  Summand order is kept for deterministic output;
    comparisons are multiset comparisons."""

    summands: tuple[LensSpace, ...]

    def __post_init__(self) -> None:
        kept = tuple(l for l in self.summands if not l.is_s3())
        object.__setattr__(self, "summands", kept)

    def is_s3(self) -> bool:
        return not self.summands

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThreeManifold):
            return NotImplemented
        return sorted(l.canonical for l in self.summands) == sorted(
            l.canonical for l in other.summands
        )

    def __hash__(self) -> int:
        return hash(tuple(sorted(l.canonical for l in self.summands)))

    def homeomorphic(self, other: "ThreeManifold", orientation: Orientation) -> bool:
        if orientation is Orientation.PRESERVING:
            return self == other
        mine = sorted(l.canonical for l in self.summands)
        for flips in range(1 << len(other.summands)):
            theirs = sorted(
                l.mirror_canonical if flips >> i & 1 else l.canonical
                for i, l in enumerate(other.summands)
            )
            if mine == theirs:
                return True
        return False

    def to_json_obj(self) -> list:
        return [{"lens": list(l.canonical)} for l in self.summands]

    def __str__(self) -> str:
        if self.is_s3():
            return "S3"
        return " # ".join(str(l) for l in self.summands)


@dataclass(frozen=True)
class TorusKnot:
    """T_{p,q} on the Heegaard torus of a lens space; Farey point q/p."""

    p: int
    q: int
    ambient: LensSpace

    def __post_init__(self) -> None:
        if gcd(self.p, self.q) != 1:
            raise PreconditionError(f"gcd({self.p},{self.q}) != 1")

    @property
    def farey_point(self) -> Slope:
        return Slope(self.q, self.p)


class KnotClass(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    TRIVIAL = "Trivial"


def ambient_slope(l: LensSpace) -> Slope:
    """The surgery slope -r/s of the ambient lens space (raw coefficients)."""
    return Slope(-l.r, l.s)


def classify_torus_knot(k: TorusKnot) -> KnotClass:
    sigma = k.farey_point
    amb = ambient_slope(k.ambient)
    if sigma == amb or sigma == ZERO:
        raise DegenerateInputError(f"slope {sigma} is a Heegaard-torus meridian slope")
    trivial_q = abs(k.q) == 1
    trivial_p = abs(k.p) == 1
    if trivial_q != trivial_p and abs(k.p * k.ambient.r + k.q * k.ambient.s) != 1:
        warnings.warn(
            "the |q|=1 and |p|=1 triviality readings disagree for "
            f"T_({k.p},{k.q}); using |q|=1",
            stacklevel=2,
        )
    if abs(k.p * k.ambient.r + k.q * k.ambient.s) == 1 or trivial_q:
        return KnotClass.TRIVIAL
    if cw_between(ZERO, sigma, amb):
        return KnotClass.POSITIVE
    return KnotClass.NEGATIVE


def lens_from_meridian_slopes(m1: Slope, m2: Slope) -> LensSpace:
    """The lens space glued from two solid tori with the given meridian
    slopes on the splitting torus.

    A determinant +1 change of basis sends m2 to 0; the image a/b of m1
    is read as L(a,-b).  The sign conventions are pinned by the surgery
    examples in the test suite.
    """
    if m1 == m2:
        return S1XS2
    u, v = _bezout(m2.num, m2.den)
    a = m2.den * m1.num - m2.num * m1.den
    b = u * m1.num + v * m1.den
    return LensSpace(a, -b)


def surgery_splitting(sigma: Slope, amb: Slope) -> ThreeManifold:
    """Torus-framed surgery along the curve with Farey point sigma splits the
    ambient space along the Heegaard torus into two lens spaces."""
    return ThreeManifold(
        (lens_from_meridian_slopes(sigma, ZERO), lens_from_meridian_slopes(amb, sigma))
    )


def nonloose_surgery_result(k: TorusKnot) -> ThreeManifold:
    """Connected sum produced by surgery along a negative nontrivial torus
    knot with the torus framing."""
    cls = classify_torus_knot(k)
    if cls is not KnotClass.NEGATIVE:
        raise PreconditionError(
            f"surgery statement needs a negative nontrivial torus knot, got {cls.value}"
        )
    return surgery_splitting(k.farey_point, ambient_slope(k.ambient))
