"""Genus-1 horizontal handle diagrams: Dehn-twist surgery calculus,
boundary identification, CP^2 recognition, and the mutation handle slide.

Curves are classes a*mu + b*lambda on the Heegaard torus; matrices act on
(lambda; mu) column vectors.  Surgery with framing one less than the surface
framing acts on the splitting torus as the right-handed Dehn twist
v -> v + det(v, gamma) * gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

from .errors import InternalConsistencyError, InvariantError, PreconditionError
from .farey import ZERO, IntMat2, Slope
from .lens import ThreeManifold, lens_from_meridian_slopes
from .markov import MarkovTriple, QTriple, verify_q


@dataclass(frozen=True)
class TorusCurve:
    """The class mu*mu_U + lam*lambda_U with a surface-relative framing."""

    mu: int
    lam: int
    framing: int = -1

    def __post_init__(self) -> None:
        if gcd(self.mu, self.lam) != 1:
            raise InvariantError(f"curve ({self.mu},{self.lam}) is not primitive")
        if self.framing not in (-1, 1):
            raise InvariantError("framing offset must be -1 or +1")

    def __str__(self) -> str:
        return f"{self.mu}*mu + {self.lam}*lambda (framing {self.framing:+d})"


def intersection(c1: TorusCurve, c2: TorusCurve) -> int:
    """Algebraic intersection number on the torus."""
    return c1.mu * c2.lam - c2.mu * c1.lam


def twist_matrix(c: TorusCurve) -> IntMat2:
    """Action of surgery along c on (lambda; mu): the right-handed Dehn twist
    for framing -1, its inverse for framing +1."""
    m = IntMat2(1 + c.mu * c.lam, -c.lam * c.lam, c.mu * c.mu, 1 - c.mu * c.lam)
    return m if c.framing == -1 else m.inverse()


def push_past(v: TorusCurve, surgery: TorusCurve) -> TorusCurve:
    """Image of the class v when pushed past a surgery curve."""
    lam, mu = twist_matrix(surgery).apply_vec(v.lam, v.mu)
    return TorusCurve(mu, lam, v.framing)


@dataclass(frozen=True)
class HorizontalDiagram:
    """Ordered surface-framed curves on nested torus levels, innermost
    first, plus one 0- and one 1-handle and the listed 3-/4-handles."""

    curves: tuple[TorusCurve, ...]
    n3: int = 0
    n4: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "curves", tuple(self.curves))
        if self.n3 < 0 or self.n4 < 0:
            raise InvariantError("handle counts must be non-negative")

    def to_json_obj(self) -> dict:
        return {
            "curves": [
                {"mu": str(c.mu), "lambda": str(c.lam), "framing": c.framing}
                for c in self.curves
            ],
            "handles": {
                "h0": 1,
                "h1": 1,
                "h3": self.n3,
                "h4": self.n4,
            },
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "HorizontalDiagram":
        try:
            curves = tuple(
                TorusCurve(int(c["mu"]), int(c["lambda"]), int(c["framing"]))
                for c in obj["curves"]
            )
            handles = obj.get("handles", {})
            n3 = int(handles.get("h3", 0))
            n4 = int(handles.get("h4", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvariantError(f"malformed diagram: {exc}") from exc
        return cls(curves, n3, n4)


def composite_twist(d: HorizontalDiagram) -> IntMat2:
    """Product of the twist matrices, innermost curve applied first: the
    outward transit map for classes on the inner torus."""
    m = IntMat2.identity()
    for c in d.curves:
        m = twist_matrix(c) @ m
    return m


def composite_twist_inverse(d: HorizontalDiagram) -> IntMat2:
    """Inward transit map: inverse twists composed outermost first."""
    m = IntMat2.identity()
    for c in reversed(d.curves):
        m = twist_matrix(TorusCurve(c.mu, c.lam, -c.framing)) @ m
    return m


def boundary_of_diagram(d: HorizontalDiagram) -> ThreeManifold:
    """Boundary three-manifold: push the inner longitude (the meridian disk
    of the outer solid torus) out through all surgery levels and read the
    resulting slope against the inner meridian."""
    lam, mu = 1, 0
    for c in d.curves:
        lam, mu = twist_matrix(c).apply_vec(lam, mu)
        if gcd(lam, mu) != 1:
            raise InternalConsistencyError("imprimitive class after a Dehn twist")
    outer = Slope(mu, lam)
    return ThreeManifold((lens_from_meridian_slopes(outer, ZERO),))


def build_X(t: MarkovTriple, q: QTriple) -> HorizontalDiagram:
    """The closed diagram with three framing -1 curves determined by a
    Markov triple and a verified companion q-triple."""
    if not verify_q(t, q).passed:
        raise PreconditionError(f"q-triple {q.entries()} fails verification for {t}")
    curves = (
        TorusCurve(-t.p2, q.q2),
        TorusCurve(t.p1, q.q1),
        TorusCurve(t.p3, q.q3),
    )
    return HorizontalDiagram(curves, n3=1, n4=1)


def recognize_cp2(d: HorizontalDiagram) -> tuple[bool, tuple[int, int, int]]:
    """Markov-equation recognition: with x_i the pairwise intersection
    numbers, the diagram closes up to CP^2 iff x != 0 and
    x1^2 + x2^2 + x3^2 = x1*x2*x3."""
    if len(d.curves) != 3:
        raise PreconditionError("recognition needs exactly three curves")
    if any(c.framing != -1 for c in d.curves):
        raise PreconditionError("recognition needs all framings -1")
    g1, g2, g3 = d.curves
    x = (intersection(g2, g3), intersection(g1, g3), intersection(g1, g2))
    ok = x != (0, 0, 0) and (
        x[0] * x[0] + x[1] * x[1] + x[2] * x[2] == x[0] * x[1] * x[2]
    )
    return ok, x


class Slot(Enum):
    FIRST = "first"
    SECOND = "second"


def slide_mutation(d: HorizontalDiagram, slot: Slot) -> HorizontalDiagram:
    """Mutation handle slide on the innermost pair of curves.

    With the pair encoding (p2, q2) and (p1, q1), the slide replaces the
    chosen entry by its Markov mutation: slot FIRST yields (p1', q1') with
    p1' = 3 p2 p3 - p1, realized by flipping orientation and pushing the
    moved curve past the fixed one; slot SECOND mutates (p2, q2)."""
    if len(d.curves) < 2:
        raise PreconditionError("mutation slide needs at least two curves")
    g1, g2 = d.curves[0], d.curves[1]
    p2, q2 = -g1.mu, g1.lam
    p1, q1 = g2.mu, g2.lam
    if slot is Slot.FIRST:
        m = IntMat2(1 + p2 * q2, -q2 * q2, p2 * p2, 1 - p2 * q2)
        a, b = m.apply_vec(-q1, p1)
        new_q1, new_p1 = -a, -b
        new_pair = (TorusCurve(-p2, -q2), TorusCurve(new_p1, new_q1))
    else:
        m = IntMat2(1 + p1 * q1, -q1 * q1, p1 * p1, 1 - p1 * q1)
        a, b = m.apply_vec(-q2, p2)
        new_q2, new_p2 = -a, -b
        new_pair = (TorusCurve(-p1, -q1), TorusCurve(new_p2, new_q2))
    return HorizontalDiagram(new_pair + d.curves[2:], d.n3, d.n4)


def two_curve_subdiagram(d: HorizontalDiagram) -> HorizontalDiagram:
    if len(d.curves) < 2:
        raise PreconditionError("need at least two curves")
    return HorizontalDiagram(d.curves[:2])
