"""Fractional linear (Moebius) maps on the extended complex plane.

A map is determined by four complex parameters (a, b, c, d) with
nonzero determinant delta = a*d - b*c and acts as

    M(x) = (a*x + b) / (c*x + d),

extended continuously to the Riemann sphere: M(-d/c) = infinity and
M(infinity) = a/c when c != 0, while M(infinity) = infinity for affine
maps (c == 0).  Parameters are deliberately not normalized; delta is
carried explicitly because transformed-polynomial formulas need it.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .errors import DegenerateMap, PoleEvaluation

__all__ = [
    "ExtComplex",
    "INFINITY",
    "MoebiusMap",
    "make_moebius",
    "as_ext",
    "apply",
    "apply_finite",
    "inverse",
    "compose",
    "derivative",
    "second_derivative",
    "pole",
    "cayley_to_circle",
    "cayley_to_line",
]

#: relative tolerance used by the determinant degeneracy check
DEGENERACY_REL_TOL = 1e-14


class ExtComplex:
    """A point of the extended complex plane: a finite value or infinity.

    Exactly one variant is populated.  Finite values never carry NaN
    components; construct the infinite point via the module constant
    :data:`INFINITY`.
    """

    __slots__ = ("_value",)

    def __init__(self, value):
        if value is not None:
            value = complex(value)
            if cmath.isnan(value):
                raise ValueError("ExtComplex cannot hold NaN")
        self._value = value

    @property
    def is_infinite(self):
        return self._value is None

    @property
    def value(self):
        """The finite complex value; raises on the point at infinity."""
        if self._value is None:
            raise PoleEvaluation("point at infinity has no finite value")
        return self._value

    def __eq__(self, other):
        if isinstance(other, ExtComplex):
            return self._value == other._value
        if isinstance(other, (int, float, complex)):
            return self._value is not None and self._value == complex(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._value)

    def __repr__(self):
        if self._value is None:
            return "ExtComplex(infinity)"
        return f"ExtComplex({self._value!r})"


INFINITY = ExtComplex(None)


def as_ext(x):
    """Coerce a complex number, float infinity, or ExtComplex to ExtComplex."""
    if isinstance(x, ExtComplex):
        return x
    if isinstance(x, (int, float)) and cmath.isinf(complex(x)):
        return INFINITY
    z = complex(x)
    if cmath.isinf(z):
        return INFINITY
    return ExtComplex(z)


@dataclass(frozen=True)
class MoebiusMap:
    """Parameters of a nondegenerate fractional linear map.

    The determinant ``delta = a*d - b*c`` is computed on construction and
    checked against zero relative to the parameter scale, so every
    instance in circulation is a genuine bijection of the sphere.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    delta: complex = field(init=False)

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        det = a * d - b * c
        scale = max(abs(a) * abs(d), abs(b) * abs(c), 1.0)
        if abs(det) <= DEGENERACY_REL_TOL * scale:
            raise DegenerateMap(
                f"determinant {det} is degenerate for parameters "
                f"({a}, {b}, {c}, {d})"
            )
        object.__setattr__(self, "delta", det)

    @property
    def is_affine(self):
        return self.c == 0


def make_moebius(a, b, c, d):
    """Validate parameters and build a :class:`MoebiusMap`."""
    return MoebiusMap(a, b, c, d)


IDENTITY = MoebiusMap(1, 0, 0, 1)
INVERSION = MoebiusMap(0, 1, 1, 0)


def apply(m, x):
    """Evaluate the map at a point of the extended plane.

    Accepts an :class:`ExtComplex` or anything coercible to one and is
    total: the pole goes to infinity and infinity goes to a/c (or stays
    at infinity for affine maps).
    """
    p = as_ext(x)
    if p.is_infinite:
        if m.c == 0:
            return INFINITY
        return ExtComplex(m.a / m.c)
    z = p.value
    den = m.c * z + m.d
    if den == 0:
        return INFINITY
    return ExtComplex((m.a * z + m.b) / den)


def apply_finite(m, x):
    """Evaluate (a*x + b)/(c*x + d) on plain complex scalars or arrays.

    No pole handling: the caller is responsible for keeping x away from
    -d/c (a zero denominator produces inf/nan in the usual IEEE way).
    """
    return (m.a * x + m.b) / (m.c * x + m.d)


def inverse(m):
    """The inverse map, with parameters (-d, b, c, -a).

    The parameter choice keeps the determinant equal to delta (rather
    than some rescaling of it), which the transformed-polynomial
    round-trip formulas rely on.
    """
    return MoebiusMap(-m.d, m.b, m.c, -m.a)


def compose(outer, inner):
    """The map x -> outer(inner(x)), via the parameter matrix product."""
    a = outer.a * inner.a + outer.b * inner.c
    b = outer.a * inner.b + outer.b * inner.d
    c = outer.c * inner.a + outer.d * inner.c
    d = outer.c * inner.b + outer.d * inner.d
    return MoebiusMap(a, b, c, d)


def derivative(m, x):
    """M'(x) = delta / (c*x + d)^2 at a finite non-pole point."""
    den = m.c * complex(x) + m.d
    if den == 0:
        raise PoleEvaluation("derivative requested at the pole -d/c")
    return m.delta / (den * den)


def second_derivative(m, x):
    """M''(x) = -2*c*delta / (c*x + d)^3 at a finite non-pole point."""
    den = m.c * complex(x) + m.d
    if den == 0:
        raise PoleEvaluation("second derivative requested at the pole -d/c")
    return -2.0 * m.c * m.delta / (den * den * den)


def pole(m):
    """The preimage of infinity: -d/c, or infinity for affine maps."""
    if m.c == 0:
        return INFINITY
    return ExtComplex(-m.d / m.c)


def cayley_to_circle():
    """Cayley-type map with parameters (-i, -i, 1, -1).

    Acts as x -> -i(x + 1)/(x - 1); restricted to the unit circle its
    values are real, and its inverse carries the real line onto the unit
    circle.  Sequences built with this map therefore live on the circle.
    Sends 0 -> i and 1 -> infinity; delta = 2i.
    """
    return MoebiusMap(-1j, -1j, 1, -1)


def cayley_to_line():
    """Cayley-type map x -> (x - i)/(x + i), parameters (1, -i, 1, i).

    Carries the real line onto the unit circle and is exactly
    ``inverse(cayley_to_circle())``, parameters included.
    """
    return MoebiusMap(1, -1j, 1, 1j)
