"""Linear fractional transformations on the extended complex plane.

The algebra lives on 2x2 coefficient matrices: a map z -> (a z + b)/(c z + d)
with ad - bc != 0 composes like a matrix product and inverts like the adjugate.
The point at infinity is a dedicated sentinel (not a float inf) so that
anti-conformal circle inversions stay well defined alongside the conformal maps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

_EPS = 1e-14            # exact-branch guard (c == 0, identity detection)
_CLASS_TOL = 1e-9       # tr^2 = 4 boundary and double fixed point tolerance
_POLE_TOL = 1e-9        # pole-on-circle rejection tolerance


class DegenerateMapError(ValueError):
    """Coefficients with ad - bc = 0 do not define a transformation."""


class NoIsometricCircleError(ValueError):
    """Maps with c = 0 have no isometric circle."""


class PoleOnCircleError(ValueError):
    """The circle passes through the pole; its image is a line, not a circle."""


class PointAtInfinity:
    """Sentinel for the point at infinity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = PointAtInfinity()

ExtendedComplex = complex | PointAtInfinity


def is_infinite(z: ExtendedComplex) -> bool:
    return z is INFINITY


class MapClass(Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    LOXODROMIC = "loxodromic"


class FixedPointKind(Enum):
    TWO_DISTINCT = "two_distinct"
    DOUBLE = "double"
    ONE_FINITE_ONE_INFINITE = "one_finite_one_infinite"
    ALL_POINTS = "all_points"


@dataclass(frozen=True)
class FixedPoints:
    kind: FixedPointKind
    points: tuple[ExtendedComplex, ...]

    @property
    def finite_points(self) -> tuple[complex, ...]:
        return tuple(p for p in self.points if not is_infinite(p))


@dataclass(frozen=True)
class Circle:
    """Circle given by center and strictly positive radius."""

    center: complex
    radius: float

    def __post_init__(self):
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError(f"circle radius must be positive and finite, got {self.radius}")

    def point_at(self, angle: float) -> complex:
        return self.center + self.radius * cmath.exp(1j * angle)

    def invert(self, z: ExtendedComplex) -> ExtendedComplex:
        """Reflect z in this circle: T(z) = a + r^2 / conj(z - a).

        The center maps to infinity and vice versa; boundary points are fixed.
        """
        if is_infinite(z):
            return self.center
        w = z - self.center
        if w == 0:
            return INFINITY
        return self.center + (self.radius * self.radius) / w.conjugate()

    def distance_to(self, z: complex) -> float:
        """Distance from a point to the circle (the curve, not the disc)."""
        return abs(abs(z - self.center) - self.radius)


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (a z + b)/(c z + d) with ad - bc != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if self.det == 0:
            raise DegenerateMapError(f"ad - bc = 0 for coefficients {(self.a, self.b, self.c, self.d)}")

    @classmethod
    def identity(cls) -> MoebiusMap:
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __call__(self, z: ExtendedComplex) -> ExtendedComplex:
        if is_infinite(z):
            return self.a / self.c if self.c != 0 else INFINITY
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        return (self.a * z + self.b) / den

    def compose(self, other: MoebiusMap) -> MoebiusMap:
        """Return self after other, via the 2x2 matrix product."""
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return MoebiusMap(
            a1 * a2 + b1 * c2,
            a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2,
            c1 * b2 + d1 * d2,
        )

    def __matmul__(self, other: MoebiusMap) -> MoebiusMap:
        return self.compose(other)

    def inverse(self) -> MoebiusMap:
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def normalized(self) -> MoebiusMap:
        """Rescale coefficients so the determinant is 1 (up to sign of the root)."""
        s = cmath.sqrt(self.det)
        return MoebiusMap(self.a / s, self.b / s, self.c / s, self.d / s)

    def trace(self) -> complex:
        return self.a + self.d

    @property
    def pole(self) -> ExtendedComplex:
        """Preimage of infinity."""
        return -self.d / self.c if self.c != 0 else INFINITY


def classify(g: MoebiusMap) -> MapClass:
    """Classify by the squared trace of the det-1 normalization.

    Real tr^2 in [0, 4) is elliptic, = 4 parabolic, > 4 hyperbolic; anything
    off the ray [0, inf) (negative or non-real) is loxodromic.
    """
    m = g.normalized()
    t = m.a + m.d
    t2 = t * t
    if abs(t2.imag) > _CLASS_TOL:
        return MapClass.LOXODROMIC
    x = t2.real
    if abs(x - 4.0) <= _CLASS_TOL:
        return MapClass.PARABOLIC
    if x < -_CLASS_TOL:
        return MapClass.LOXODROMIC
    if x < 4.0:
        return MapClass.ELLIPTIC
    return MapClass.HYPERBOLIC


def fixed_points(g: MoebiusMap) -> FixedPoints:
    """Solve g(z) = z, i.e. c z^2 + (d - a) z - b = 0.

    For c != 0 the roots are ((a - d) +- sqrt((d - a)^2 + 4 b c)) / (2 c); a
    vanishing discriminant means tr^2 = 4 and the double point sits at
    (a - d)/(2 c). For c = 0 one fixed point is infinity, joined by b/(d - a)
    unless the map is a pure translation (double point at infinity).
    """
    if g.is_identity:
        return FixedPoints(FixedPointKind.ALL_POINTS, ())
    m = g.normalized()
    a, b, c, d = m.a, m.b, m.c, m.d
    if abs(c) <= _EPS:
        if abs(a - d) <= _EPS:
            return FixedPoints(FixedPointKind.DOUBLE, (INFINITY,))
        return FixedPoints(FixedPointKind.ONE_FINITE_ONE_INFINITE, (b / (d - a), INFINITY))
    disc = (d - a) ** 2 + 4 * b * c
    if abs(disc) <= _CLASS_TOL:
        return FixedPoints(FixedPointKind.DOUBLE, ((a - d) / (2 * c),))
    root = cmath.sqrt(disc)
    return FixedPoints(
        FixedPointKind.TWO_DISTINCT,
        ((a - d + root) / (2 * c), (a - d - root) / (2 * c)),
    )


def isometric_circle(g: MoebiusMap) -> Circle:
    """Locus |c z + d| = sqrt(|det|): center -d/c, radius sqrt(|det|)/|c|.

    For a det-1 map this is the classical center -d/c, radius 1/|c|.
    """
    if g.c == 0:
        raise NoIsometricCircleError("maps with c = 0 have no isometric circle")
    return Circle(-g.d / g.c, math.sqrt(abs(g.det)) / abs(g.c))


def circle_through(z1: complex, z2: complex, z3: complex) -> Circle:
    """Circle through three non-collinear points."""
    w = (z3 - z1) / (z2 - z1)
    if abs(w.imag) <= 1e-13 * (1.0 + abs(w)):
        raise ValueError(f"points {z1}, {z2}, {z3} are collinear")
    center = (z2 - z1) * (w - abs(w) ** 2) / (2j * w.imag) + z1
    return Circle(center, abs(z1 - center))


def _image_circle(transform, pole: ExtendedComplex, circle: Circle) -> Circle:
    """Map three boundary points and fit the image circle.

    Sample angles are chosen a quarter turn away from the pole direction so no
    sample sits near the pole when the pole is merely close to the circle.
    """
    if not is_infinite(pole):
        offset = pole - circle.center
        if abs(abs(offset) - circle.radius) <= _POLE_TOL * max(1.0, circle.radius):
            raise PoleOnCircleError(f"pole {pole} lies on {circle}; image is a line")
        phase = cmath.phase(offset) if offset != 0 else 0.0
    else:
        phase = 0.0
    third = 2.0 * math.pi / 3.0
    points = [transform(circle.point_at(phase + 0.5 * math.pi + k * third)) for k in range(3)]
    return circle_through(*points)


def image_of_circle(g: MoebiusMap, circle: Circle) -> Circle:
    """Image of a circle under a Moebius map (pole off the circle required)."""
    return _image_circle(g, g.pole, circle)


def inversion_image_of_circle(inverting: Circle, circle: Circle) -> Circle:
    """Image of a circle under inversion in another circle."""
    return _image_circle(inverting.invert, inverting.center, circle)


def moebius_from_three_points(
    p1: complex, p2: complex, p3: complex,
    q1: complex, q2: complex, q3: complex,
) -> MoebiusMap:
    """The unique Moebius map sending p1, p2, p3 to q1, q2, q3 (all finite)."""

    def to_zero_one_inf(z1: complex, z2: complex, z3: complex) -> MoebiusMap:
        # z -> (z - z1)(z2 - z3) / ((z - z3)(z2 - z1))
        return MoebiusMap(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))

    return to_zero_one_inf(q1, q2, q3).inverse().compose(to_zero_one_inf(p1, p2, p3))
