"""Dense complex polynomials, the homogenizing map transform, and
fixed-order power series.

Polynomials are stored with ascending coefficients and trailing
near-zeros trimmed, so the zero polynomial is the empty tuple with
degree -1.  The central operation is :func:`moebius_transform`, which
sends p of degree at most n to

    q(x) = (c*x + d)^n * p((a*x + b)/(c*x + d))
         = sum_k p_k (a*x + b)^k (c*x + d)^(n-k),

a polynomial of degree at most n.  Its leading coefficient is
c^n * p(a/c) for c != 0, so q drops degree exactly when a/c is a root
of p.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import BadHomogenization, NonInvertibleSeries
from .moebius import inverse

__all__ = [
    "ComplexPoly",
    "ZERO",
    "ONE",
    "X",
    "transform_row",
    "moebius_transform",
    "leading_coefficient_prediction",
    "recover_original",
    "divide_linear",
    "PowerSeries",
    "series_from_poly",
    "series_mul",
    "series_reciprocal",
    "series_exp",
]

#: trailing coefficients below this times max|coeff| are trimmed
#: (roundoff from construction sits near n*eps, a couple of orders
#: lower; genuine but tiny trailing coefficients, like the leading
#: Laguerre ones that decay as 1/n!, must survive)
TRIM_REL_TOL = 1e-15


class ComplexPoly:
    """Immutable dense polynomial with complex coefficients.

    Coefficients are ascending (coeffs[k] multiplies x^k).  Trailing
    coefficients whose magnitude is at most ``TRIM_REL_TOL`` times the
    largest magnitude are dropped at construction, so ``degree`` really
    reflects the numerically supported degree.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [complex(c) for c in coeffs]
        if cs:
            top = max(abs(c) for c in cs)
            cut = TRIM_REL_TOL * top
            while cs and abs(cs[-1]) <= cut:
                cs.pop()
        self._coeffs = tuple(cs)

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        return len(self._coeffs) - 1

    @property
    def is_zero(self):
        return not self._coeffs

    def coeff(self, k):
        """Coefficient of x^k, zero beyond the stored degree."""
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return 0j

    def eval(self, x):
        """Horner evaluation; works on scalars and numpy arrays alike."""
        if isinstance(x, np.ndarray):
            r = np.zeros(x.shape, dtype=complex)
            for c in reversed(self._coeffs):
                r = r * x + c
            return r
        r = 0j
        for c in reversed(self._coeffs):
            r = r * x + c
        return r

    def __add__(self, other):
        n = max(len(self._coeffs), len(other._coeffs))
        return ComplexPoly(
            [self.coeff(k) + other.coeff(k) for k in range(n)]
        )

    def __sub__(self, other):
        n = max(len(self._coeffs), len(other._coeffs))
        return ComplexPoly(
            [self.coeff(k) - other.coeff(k) for k in range(n)]
        )

    def __neg__(self):
        return ComplexPoly([-c for c in self._coeffs])

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return ZERO
        out = [0j] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, ci in enumerate(self._coeffs):
            if ci == 0:
                continue
            for j, cj in enumerate(other._coeffs):
                out[i + j] += ci * cj
        return ComplexPoly(out)

    def scale(self, s):
        s = complex(s)
        return ComplexPoly([s * c for c in self._coeffs])

    def derivative(self):
        return ComplexPoly(
            [k * c for k, c in enumerate(self._coeffs)][1:]
        )

    def shift_compose_linear(self, alpha, beta):
        """The polynomial x -> p(alpha*x + beta), via polynomial Horner."""
        lin = ComplexPoly((beta, alpha))
        out = ZERO
        for c in reversed(self._coeffs):
            out = out * lin + ComplexPoly((c,))
        return out

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"ComplexPoly({list(self._coeffs)!r})"


ZERO = ComplexPoly(())
ONE = ComplexPoly((1,))
X = ComplexPoly((0, 1))


def transform_row(row, m, n_formal):
    """Raw-coefficient core of :func:`moebius_transform`.

    Takes ascending coefficients as given (untrimmed) and returns the
    composed row as a plain tuple, untrimmed.  Keeping the arithmetic
    off ComplexPoly matters: construction-time trimming inside the
    Horner loop would silently drop genuine coefficients that sit far
    below the row maximum, and Laguerre rows carry such entries.
    """
    row = [complex(c) for c in row]
    if len(row) - 1 > n_formal:
        raise BadHomogenization(
            f"formal degree {n_formal} is below deg(p) = {len(row) - 1}"
        )
    row += [0j] * (n_formal + 1 - len(row))
    u = (m.b, m.a)
    v = (m.d, m.c)
    out = [row[n_formal]]
    vpow = [1.0 + 0j]
    for k in range(n_formal - 1, -1, -1):
        nxt = [0j] * (len(out) + 1)
        for i, ci in enumerate(out):
            nxt[i] += ci * u[0]
            nxt[i + 1] += ci * u[1]
        vnxt = [0j] * (len(vpow) + 1)
        for i, ci in enumerate(vpow):
            vnxt[i] += ci * v[0]
            vnxt[i + 1] += ci * v[1]
        vpow = vnxt
        for i, ci in enumerate(vpow):
            nxt[i] += ci * row[k]
        out = nxt
    return tuple(out)


def moebius_transform(p, m, n_formal):
    """Homogenized composition (c*x+d)^n_formal * p((a*x+b)/(c*x+d)).

    ``n_formal`` may exceed deg(p) (needed when a lower-degree member of
    a sequence keeps its sequence index); it must not be smaller, which
    would make the result rational rather than polynomial.

    Uses running powers of v = c*x + d inside a Horner recursion in
    u = a*x + b, so no binomial tables are materialized; near-zeros are
    trimmed once at the end.
    """
    if n_formal < p.degree:
        raise BadHomogenization(
            f"formal degree {n_formal} is below deg(p) = {p.degree}"
        )
    if p.is_zero:
        return ZERO
    return ComplexPoly(transform_row(p.coeffs, m, n_formal))


def leading_coefficient_prediction(p, m):
    """Predicted leading coefficient of moebius_transform(p, m, deg p).

    Equals c^n * p(a/c) when c != 0 (so the transform drops degree
    exactly at roots a/c of p) and a^n * p_n for affine maps.
    """
    n = p.degree
    if n < 0:
        return 0j
    if m.c == 0:
        return (m.a ** n) * p.coeff(n)
    return (m.c ** n) * p.eval(m.a / m.c)


def recover_original(q, m, n):
    """Invert :func:`moebius_transform` at formal degree n.

    If q = (c*x+d)^n p(M(x)) then
    p(x) = (-1)^n delta^(-n) (c*x - a)^n q(M^{-1}(x)), and the right
    side is exactly ``moebius_transform(q, inverse(m), n)`` rescaled,
    because the inverse map's parameter convention makes its
    homogenizing factor (c*x - a)^n.
    """
    w = inverse(m)
    back = moebius_transform(q, w, n)
    return back.scale((-1) ** n / m.delta ** n)


def divide_linear(p, root):
    """Synthetic division by (x - root): returns (quotient, remainder)."""
    if p.is_zero:
        return ZERO, 0j
    cs = p.coeffs
    n = len(cs) - 1
    if n == 0:
        return ZERO, cs[0]
    root = complex(root)
    b = [0j] * n
    b[n - 1] = cs[n]
    for k in range(n - 1, 0, -1):
        b[k - 1] = cs[k] + root * b[k]
    rem = cs[0] + root * b[0]
    return ComplexPoly(b), rem


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series: exactly order+1 coefficients, no trimming."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(complex(c) for c in self.coeffs)
        )
        if not self.coeffs:
            raise ValueError("a power series needs at least one coefficient")

    @property
    def order(self):
        return len(self.coeffs) - 1

    def coeff(self, k):
        return self.coeffs[k] if k <= self.order else 0j


def series_from_poly(p, order):
    """Truncate or zero-pad a polynomial to a series of the given order."""
    return PowerSeries(tuple(p.coeff(k) for k in range(order + 1)))


def _coeffs_to(series_or_poly, order):
    # PowerSeries and ComplexPoly share the coeff(k) accessor
    return [series_or_poly.coeff(k) for k in range(order + 1)]


def series_mul(s1, s2, order=None):
    """Cauchy product truncated to ``order`` (default: s1's order)."""
    if order is None:
        order = s1.order
    a = _coeffs_to(s1, order)
    b = _coeffs_to(s2, order)
    out = [0j] * (order + 1)
    for i in range(order + 1):
        if a[i] == 0:
            continue
        for j in range(order + 1 - i):
            out[i + j] += a[i] * b[j]
    return PowerSeries(out)


def series_reciprocal(s, order=None):
    """Multiplicative inverse, by the standard convolution recursion."""
    if order is None:
        order = s.order
    a = _coeffs_to(s, order)
    if a[0] == 0:
        raise NonInvertibleSeries("constant term is zero")
    b = [0j] * (order + 1)
    b[0] = 1.0 / a[0]
    for n in range(1, order + 1):
        acc = 0j
        for j in range(1, n + 1):
            acc += a[j] * b[n - j]
        b[n] = -acc / a[0]
    return PowerSeries(b)


def series_exp(s, order=None):
    """Exponential of a series or polynomial argument.

    Uses the derivative recursion e_n = (1/n) sum_j j a_j e_{n-j}; a
    nonzero constant term is handled by the scalar factor exp(a_0).
    """
    if isinstance(s, ComplexPoly):
        if order is None:
            order = max(s.degree, 0)
        a = [s.coeff(k) for k in range(order + 1)]
    else:
        if order is None:
            order = s.order
        a = _coeffs_to(s, order)
    e = [0j] * (order + 1)
    e[0] = cmath.exp(a[0])
    for n in range(1, order + 1):
        acc = 0j
        for j in range(1, n + 1):
            acc += j * a[j] * e[n - j]
        e[n] = acc / n
    return PowerSeries(e)
