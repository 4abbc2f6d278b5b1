"""Mapped polynomial sequences and their structural identities.

Applying a fractional linear substitution to a classical family and
homogenizing by the denominator yields a new sequence of polynomials;
this module builds that sequence two independent ways (coefficient
transform of each member, and a transformed three-term recurrence) and
exposes the identities the construction is supposed to satisfy: the
image contour and varying weight, a second-order differential equation
with polynomial coefficients, kernel summation identities in both the
rational and homogenized forms, and the first-order equation the
varying weight obeys.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .calculus import sw_eval, sw_log_derivative
from .errors import (
    CoincidentPoints,
    PoleEvaluation,
    UnsupportedContour,
)
from .families import cd_coupling, generate
from .moebius import ExtComplex, INFINITY, apply, as_ext, inverse
from .polynomial import (
    ComplexPoly,
    ONE,
    divide_linear,
    moebius_transform,
    transform_row,
)
from .zeros import find_roots

__all__ = [
    "ContourSpec",
    "contour_spec",
    "TransformedSequence",
    "build",
    "transformed_ode_coeffs",
    "transformed_ode_residual",
    "reduce_common_factors",
    "cd_rational_residual",
    "cd_rational_confluent_residual",
    "cd_homogeneous_residual",
    "cd_homogeneous_confluent_residual",
    "pearson_residual",
    "pearson_fixed_residual",
]

#: relative imaginary part below which the dropped point counts as real
REAL_TOL = 1e-12

#: relative agreement required from a fourth sample when fitting a circle
CIRCLE_FIT_TOL = 1e-9


@dataclass(frozen=True)
class ContourSpec:
    """Geometry of the image of the base interval under the inverse map.

    ``kind`` is one of segment, circular-arc, full-circle, full-line,
    line-through-infinity.  ``start`` and ``end`` are the oriented
    endpoint images (either may be the point at infinity);
    ``disconnected`` marks the case where the interval interior meets
    the point sent to infinity, splitting the image into two rays.
    Circle kinds carry center, radius, starting angle, and signed
    sweep; the affine full line carries an anchor point and a unit
    direction instead.
    """

    kind: str
    start: ExtComplex
    end: ExtComplex
    disconnected: bool = False
    center: complex = None
    radius: float = None
    theta0: float = None
    sweep: float = None
    anchor: complex = None
    direction: complex = None
    direct_supported: bool = True


def _sample_params(l, r):
    """Three interior probe points, finite whatever the interval."""
    lf = math.isfinite(l)
    rf = math.isfinite(r)
    if lf and rf:
        return [l + q * (r - l) for q in (0.23, 0.52, 0.81)]
    if lf:
        return [l + s for s in (0.4, 1.7, 6.3)]
    if rf:
        return [r - s for s in (6.3, 1.7, 0.4)]
    return [-2.6, 0.3, 3.1]


def _circumcenter(z1, z2, z3):
    den = (
        z1.conjugate() * (z2 - z3)
        + z2.conjugate() * (z3 - z1)
        + z3.conjugate() * (z1 - z2)
    )
    if den == 0:
        raise UnsupportedContour("collinear samples while fitting a circle")
    num = (
        (z1 * z1.conjugate()) * (z2 - z3)
        + (z2 * z2.conjugate()) * (z3 - z1)
        + (z3 * z3.conjugate()) * (z1 - z2)
    )
    return num / den


def _angle_progress(z, center, theta0, sigma):
    """Angle of z around the center, measured from theta0 along sigma,
    reduced to [0, 2*pi)."""
    return (sigma * (cmath.phase(z - center) - theta0)) % (2.0 * math.pi)


def contour_spec(m, interval):
    """Classify the image of the base interval under the inverse map."""
    l, r = interval
    w = inverse(m)
    lam = apply(w, as_ext(l) if math.isfinite(l) else INFINITY)
    rho = apply(w, as_ext(r) if math.isfinite(r) else INFINITY)

    if m.c == 0:
        slope = m.d / m.a
        if math.isfinite(l) and math.isfinite(r):
            return ContourSpec(kind="segment", start=lam, end=rho)
        if math.isfinite(l) or math.isfinite(r):
            return ContourSpec(
                kind="line-through-infinity",
                start=lam,
                end=rho,
                direction=slope / abs(slope),
            )
        return ContourSpec(
            kind="full-line",
            start=lam,
            end=rho,
            anchor=-m.b / m.a,
            direction=slope / abs(slope),
        )

    dropped = m.a / m.c
    if abs(dropped.imag) > REAL_TOL * (1.0 + abs(dropped)):
        params = _sample_params(l, r)
        samples = [apply(w, t).value for t in params]
        center = _circumcenter(*samples)
        radii = [abs(z - center) for z in samples]
        radius = sum(radii) / 3.0
        probe = apply(w, params[0] * 0.4 + params[1] * 0.6).value
        if abs(abs(probe - center) - radius) > CIRCLE_FIT_TOL * radius:
            raise UnsupportedContour(
                "interval image is not reliably circular; the dropped "
                "point sits too close to the real axis"
            )
        if not (math.isfinite(l) or math.isfinite(r)):
            theta0 = cmath.phase(lam.value - center)
            sigma = (
                1.0
                if _angle_progress(samples[0], center, theta0, 1.0)
                < _angle_progress(samples[1], center, theta0, 1.0)
                else -1.0
            )
            return ContourSpec(
                kind="full-circle",
                start=lam,
                end=rho,
                center=center,
                radius=radius,
                theta0=theta0,
                sweep=sigma * 2.0 * math.pi,
            )
        theta0 = cmath.phase(lam.value - center)
        delta = (cmath.phase(rho.value - center) - theta0) % (2.0 * math.pi)
        for sweep in (delta, delta - 2.0 * math.pi):
            sigma = 1.0 if sweep >= 0 else -1.0
            progress = [
                _angle_progress(z, center, theta0, sigma) for z in samples
            ]
            if all(p < abs(sweep) for p in progress) and (
                progress == sorted(progress)
            ):
                return ContourSpec(
                    kind="circular-arc",
                    start=lam,
                    end=rho,
                    center=center,
                    radius=radius,
                    theta0=theta0,
                    sweep=sweep,
                )
        raise UnsupportedContour("could not orient the circular arc")

    p = dropped.real
    if not (math.isfinite(l) or math.isfinite(r)):
        return ContourSpec(
            kind="full-line",
            start=lam,
            end=rho,
            direct_supported=False,
        )
    at_l = math.isfinite(l) and abs(p - l) <= REAL_TOL * (1.0 + abs(l))
    at_r = math.isfinite(r) and abs(p - r) <= REAL_TOL * (1.0 + abs(r))
    if at_l or at_r:
        start = INFINITY if at_l else lam
        end = INFINITY if at_r else rho
        return ContourSpec(
            kind="line-through-infinity",
            start=start,
            end=end,
        )
    if l < p < r:
        return ContourSpec(
            kind="line-through-infinity",
            start=lam,
            end=rho,
            disconnected=True,
        )
    return ContourSpec(kind="segment", start=lam, end=rho)


@dataclass(frozen=True)
class TransformedSequence:
    """A mapped and homogenized polynomial sequence with its base data."""

    fam: object
    map: object
    nmax: int
    polys: tuple
    base: tuple
    contour: ContourSpec
    dual_mismatch: float

    def poly(self, n):
        """The homogenized member of formal degree n."""
        return self.polys[n]

    def base_poly(self, n):
        return self.base[n]

    def eval_rational(self, n, x):
        """The rational form: base member composed with the map."""
        x = np.asarray(x, dtype=complex)
        scalar = x.ndim == 0
        x1 = np.atleast_1d(x)
        den = self.map.c * x1 + self.map.d
        if (den == 0).any():
            raise PoleEvaluation("rational form at the map pole")
        vals = self.base[n].eval((self.map.a * x1 + self.map.b) / den)
        return complex(vals[0]) if scalar else vals

    def eval_rational_derivative(self, n, x):
        """Derivative of the rational form, by the chain rule."""
        x = np.asarray(x, dtype=complex)
        scalar = x.ndim == 0
        x1 = np.atleast_1d(x)
        den = self.map.c * x1 + self.map.d
        if (den == 0).any():
            raise PoleEvaluation("rational form at the map pole")
        mx = (self.map.a * x1 + self.map.b) / den
        vals = self.base[n].derivative().eval(mx) * self.map.delta / den**2
        return complex(vals[0]) if scalar else vals

    def varying_weight(self, m, n, y):
        """The weight pairing members m and n at a point off the pole.

        The (0, 0) case is the fixed weight that serves the rational
        form.
        """
        y = complex(y)
        den = self.map.c * y + self.map.d
        if den == 0:
            raise PoleEvaluation("varying weight at the map pole")
        my = (self.map.a * y + self.map.b) / den
        return (
            self.map.delta
            * sw_eval(self.fam.weight, my)
            / den ** (m + n + 2)
        )

    def recurrence_coeffs(self, n):
        """Step coefficients of the homogenized recurrence at degree n."""
        a_n, b_n, c_n = self.fam.recurrence(n)
        m = self.map
        return (
            m.a * a_n - m.c * b_n,
            m.d * b_n - m.b * a_n,
            c_n,
        )


def build(fam, m, nmax):
    """Construct the mapped sequence, cross-checking two routes.

    Route one transforms each base member's coefficients directly;
    route two runs the homogenized recurrence
    Q_n = (A'_n x - B'_n) Q_{n-1} - C_n (c x + d)^2 Q_{n-2}.  The
    largest relative coefficient disagreement is recorded on the
    result.
    """
    base = generate(fam, nmax)
    if fam._coeffs is not None:
        # feed the untrimmed rows to the composition: trimming first
        # would drop the genuinely tiny trailing base coefficients and
        # the two routes would then describe different polynomials
        rows = [fam._coeffs(n) for n in range(nmax + 1)]
    else:
        rows = [base[n].coeffs for n in range(nmax + 1)]
    direct = [
        ComplexPoly(transform_row(rows[n], m, n)) for n in range(nmax + 1)
    ]
    vsq = ComplexPoly((m.d, m.c)) * ComplexPoly((m.d, m.c))
    by_rec = [ONE]
    prev = ComplexPoly(())
    mismatch = 0.0
    for n in range(1, nmax + 1):
        a_n, b_n, c_n = fam.recurrence(n)
        step = ComplexPoly((-(m.d * b_n - m.b * a_n), m.a * a_n - m.c * b_n))
        nxt = step * by_rec[-1] - (vsq * prev).scale(c_n)
        prev = by_rec[-1]
        by_rec.append(nxt)
    for n in range(nmax + 1):
        scale = max(
            [abs(c) for c in direct[n].coeffs] + [1.0]
        )
        ka = direct[n].coeffs
        kb = by_rec[n].coeffs
        width = max(len(ka), len(kb))
        for k in range(width):
            va = ka[k] if k < len(ka) else 0j
            vb = kb[k] if k < len(kb) else 0j
            mismatch = max(mismatch, abs(va - vb) / scale)
    return TransformedSequence(
        fam=fam,
        map=m,
        nmax=nmax,
        polys=tuple(direct),
        base=tuple(base),
        contour=contour_spec(m, fam.interval),
        dual_mismatch=mismatch,
    )


def transformed_ode_coeffs(seq, n):
    """Polynomial coefficients (F, G, H) with F Q'' + G Q' + H Q = 0.

    F has degree at most four, G at most three, H at most two; they
    come from homogenizing the base equation's coefficient functions
    through the map.
    """
    m = seq.map
    fam = seq.fam
    f2 = moebius_transform(fam.ode_f, m, 2)
    g1 = moebius_transform(fam.ode_g, m, 1)
    v = ComplexPoly((m.d, m.c))
    d2 = m.delta * m.delta
    big_f = (v * v * f2).scale(1.0 / d2)
    big_g = (v * f2).scale(-2.0 * m.c * (n - 1) / d2) + (v * g1).scale(
        1.0 / m.delta
    )
    big_h = (
        f2.scale(m.c * m.c * n * (n - 1) / d2)
        - g1.scale(m.c * n / m.delta)
        + ONE.scale(fam.eigenvalue(n))
    )
    return big_f, big_g, big_h


def transformed_ode_residual(seq, n, x, relative=False):
    """Residual of the mapped equation at x (zero when it holds)."""
    big_f, big_g, big_h = transformed_ode_coeffs(seq, n)
    q = seq.poly(n)
    dq = q.derivative()
    terms = (
        big_f.eval(x) * dq.derivative().eval(x),
        big_g.eval(x) * dq.eval(x),
        big_h.eval(x) * q.eval(x),
    )
    res = terms[0] + terms[1] + terms[2]
    if relative:
        return res / max(max(abs(t) for t in terms), 1.0)
    return res


def _vanishes_at(p, root, tol):
    scale = max(abs(c) for c in p.coeffs) * max(1.0, abs(root)) ** max(
        p.degree, 0
    )
    return abs(p.eval(root)) <= tol * max(scale, 1.0)


def reduce_common_factors(polys, tol=1e-9):
    """Strip linear factors shared by every polynomial in the tuple.

    Returns the reduced tuple and the removed roots (with
    multiplicity).  Zero polynomials are carried through unchanged and
    do not block reduction.
    """
    current = [p for p in polys]
    removed = []
    while True:
        candidates = [p for p in current if not p.is_zero]
        if not candidates:
            break
        pivot = min(candidates, key=lambda p: p.degree)
        if pivot.degree < 1:
            break
        root_found = None
        for root in find_roots(pivot).roots:
            if all(
                p.is_zero or _vanishes_at(p, root, tol) for p in current
            ):
                root_found = root
                break
        if root_found is None:
            break
        current = [
            p if p.is_zero else divide_linear(p, root_found)[0]
            for p in current
        ]
        removed.append(root_found)
    return tuple(current), tuple(removed)


def cd_rational_residual(seq, n, x, y, relative=False):
    """Kernel identity in the rational form at two distinct points."""
    x = complex(x)
    y = complex(y)
    if x == y:
        raise CoincidentPoints("kernel points coincide; use the confluent form")
    m = seq.map
    coup, dees = cd_coupling(seq.fam, n)
    lhs = sum(
        coup[k] * seq.eval_rational(k, x) * seq.eval_rational(k, y)
        for k in range(n + 1)
    )
    vx = m.c * x + m.d
    vy = m.c * y + m.d
    rhs = (
        vx
        * vy
        * (
            seq.eval_rational(n + 1, x) * seq.eval_rational(n, y)
            - seq.eval_rational(n, x) * seq.eval_rational(n + 1, y)
        )
        / (m.delta * dees[n] * (x - y))
    )
    res = lhs - rhs
    if relative:
        return res / max(abs(lhs), abs(rhs), 1.0)
    return res


def cd_rational_confluent_residual(seq, n, x, relative=False):
    """Coincident-point limit of the rational kernel identity."""
    x = complex(x)
    m = seq.map
    coup, dees = cd_coupling(seq.fam, n)
    lhs = sum(coup[k] * seq.eval_rational(k, x) ** 2 for k in range(n + 1))
    vx = m.c * x + m.d
    rhs = (
        vx
        * vx
        * (
            seq.eval_rational_derivative(n + 1, x) * seq.eval_rational(n, x)
            - seq.eval_rational_derivative(n, x) * seq.eval_rational(n + 1, x)
        )
        / (m.delta * dees[n])
    )
    res = lhs - rhs
    if relative:
        return res / max(abs(lhs), abs(rhs), 1.0)
    return res


def cd_homogeneous_residual(seq, n, x, y, relative=False):
    """Kernel identity in the homogenized form at two distinct points."""
    x = complex(x)
    y = complex(y)
    if x == y:
        raise CoincidentPoints("kernel points coincide; use the confluent form")
    m = seq.map
    coup, dees = cd_coupling(seq.fam, n)
    vx = m.c * x + m.d
    vy = m.c * y + m.d
    if vx == 0 or vy == 0:
        raise PoleEvaluation("homogenized kernel at the map pole")
    lhs = sum(
        coup[k]
        * seq.poly(k).eval(x)
        * seq.poly(k).eval(y)
        / (vx * vy) ** k
        for k in range(n + 1)
    )
    rhs = (
        seq.poly(n + 1).eval(x) * seq.poly(n).eval(y) * vy
        - vx * seq.poly(n).eval(x) * seq.poly(n + 1).eval(y)
    ) / (m.delta * dees[n] * vx**n * vy**n * (x - y))
    res = lhs - rhs
    if relative:
        return res / max(abs(lhs), abs(rhs), 1.0)
    return res


def cd_homogeneous_confluent_residual(seq, n, x, relative=False):
    """Coincident-point limit of the homogenized kernel identity."""
    x = complex(x)
    m = seq.map
    coup, dees = cd_coupling(seq.fam, n)
    vx = m.c * x + m.d
    if vx == 0:
        raise PoleEvaluation("homogenized kernel at the map pole")
    lhs = sum(
        coup[k] * seq.poly(k).eval(x) ** 2 / vx ** (2 * k)
        for k in range(n + 1)
    )
    qn = seq.poly(n)
    qn1 = seq.poly(n + 1)
    rhs = (
        (
            qn1.derivative().eval(x) * qn.eval(x)
            - qn.derivative().eval(x) * qn1.eval(x)
        )
        * vx
        - m.c * qn1.eval(x) * qn.eval(x)
    ) / (m.delta * dees[n] * vx ** (2 * n))
    res = lhs - rhs
    if relative:
        return res / max(abs(lhs), abs(rhs), 1.0)
    return res


def pearson_residual(seq, mm, nn, x, relative=False):
    """First-order equation of the varying weight pairing members mm, nn.

    The logarithmic derivative of the pairing weight, computed
    analytically from the base weight and the map, must match
    (half the sum of the two G coefficients minus F') over F.
    """
    x = complex(x)
    m = seq.map
    v = m.c * x + m.d
    if v == 0:
        raise PoleEvaluation("weight equation at the map pole")
    mx = (m.a * x + m.b) / v
    lhs = (
        sw_log_derivative(seq.fam.weight, mx) * m.delta / (v * v)
        - (mm + nn + 2) * m.c / v
    )
    f_mm, g_mm, _ = transformed_ode_coeffs(seq, mm)
    _, g_nn, _ = transformed_ode_coeffs(seq, nn)
    fval = f_mm.eval(x)
    if fval == 0:
        raise PoleEvaluation("second-order coefficient vanishes at the point")
    rhs = (0.5 * (g_mm.eval(x) + g_nn.eval(x)) - f_mm.derivative().eval(x)) / fval
    res = lhs - rhs
    if relative:
        return res / max(abs(lhs), abs(rhs), 1.0)
    return res


def pearson_fixed_residual(seq, x, relative=False):
    """The fixed-weight case of :func:`pearson_residual`."""
    return pearson_residual(seq, 0, 0, x, relative=relative)
