"""Numerical integration on intervals and on mapped contours.

The workhorse is composite Gauss-Legendre with two refinements aimed at
orthogonality integrals: a power-law stretch that absorbs algebraic
endpoint singularities of the weight, and a geometric panel ladder that
resolves whatever the stretch leaves over.  Grids carry exact offsets
from their endpoints alongside the node coordinates, because with deep
grading the absolute coordinate rounds onto the endpoint itself while
the offset is still perfectly representable; weight factors that vanish
at an endpoint are evaluated from the offsets.

Gram matrices come in three routes: the classical weight on its
interval, the pullback of a transformed sequence to the base interval,
and direct quadrature along the image contour.  The transformed routes
share nothing beyond polynomial coefficients, which is the point: they
cross-check each other.  All weight products are accumulated in log
space and flushed to exact zero on underflow before any polynomial
values are attached, so huge polynomial values at far-out nodes never
meet an underflowed weight as inf times zero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .calculus import sw_eval
from .errors import (
    InadmissibleParameters,
    NonFiniteIntegrand,
    UnsupportedContour,
)
from .families import generate
from .moebius import apply_finite, inverse

__all__ = [
    "QuadratureScheme",
    "DEFAULT_SCHEME",
    "Grid",
    "scheme_nodes",
    "integrate_real",
    "GramReport",
    "gram_classical",
    "gram_transformed_pullback",
    "gram_transformed_contour",
]

#: real part of a log-weight below which the node is flushed to zero
LOG_UNDERFLOW = -745.0

#: nodes closer than this (relative) to an interior map pole are nudged out
POLE_BAND = 1e-8

#: a factor root matching a grid anchor this closely uses offset evaluation
ANCHOR_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureScheme:
    """Composite Gauss-Legendre parameters.

    points_per_panel nodes on each panel; a geometric ladder of
    ``levels`` extra panels with the given ratio toward each graded
    endpoint; endpoint grading through the substitution s**power.
    """

    points_per_panel: int = 64
    levels: int = 18
    ratio: float = 0.25
    power: int = 6


DEFAULT_SCHEME = QuadratureScheme()


@dataclass
class Grid:
    """Nodes, quadrature weights, and exact signed offsets z - anchor.

    ``off_lo`` and ``off_hi`` are the node coordinates relative to the
    grid's two anchor points (interval endpoints, or contour start and
    end); either may be None when the corresponding anchor is infinite
    or offsets are not needed at that resolution.
    """

    x: np.ndarray
    w: np.ndarray
    off_lo: np.ndarray | None
    off_hi: np.ndarray | None


@lru_cache(maxsize=None)
def _leggauss(n):
    return np.polynomial.legendre.leggauss(n)


def _panel_nodes(breaks, pts):
    """Gauss-Legendre nodes and weights on consecutive panels."""
    xi, wi = _leggauss(pts)
    xs = []
    ws = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        xs.append(mid + half * xi)
        ws.append(half * wi)
    return np.concatenate(xs), np.concatenate(ws)


def _graded_unit(scheme):
    """Nodes s in (0, 1] graded geometrically toward 0."""
    breaks = [0.0] + [scheme.ratio**j for j in range(scheme.levels, -1, -1)]
    return _panel_nodes(breaks, scheme.points_per_panel)


def _uniform_unit(scheme, npanels):
    breaks = list(np.linspace(0.0, 1.0, npanels + 1))
    return _panel_nodes(breaks, scheme.points_per_panel)


def _half_offsets(scheme):
    """Offsets h(s) = s**power in (0, 1] with quadrature weights in s,
    the derivative factor included: integrates f against dh."""
    s, ws = _graded_unit(scheme)
    k = scheme.power
    offs = s**k
    return offs, ws * k * s ** (k - 1)


def scheme_nodes(scheme, interval):
    """Grid for a real interval, finite or infinite on either side.

    Finite intervals are split at the midpoint with both halves graded
    toward their outer endpoint.  Semi-infinite intervals go through
    t/(1-t) with grading at the finite end and uniform panels toward
    infinity; the whole line goes through t/(1-t**2) on uniform panels.
    Offsets from finite endpoints are exact.
    """
    l, r = interval
    if math.isfinite(l) and math.isfinite(r):
        offs, ws = _half_offsets(scheme)
        mid = 0.5 * (l + r)
        lo_x = l + (mid - l) * offs
        lo_w = (mid - l) * ws
        lo_off_lo = (mid - l) * offs
        hi_x = r + (mid - r) * offs
        hi_w = (r - mid) * ws
        hi_off_hi = (mid - r) * offs
        x = np.concatenate([lo_x, hi_x])
        w = np.concatenate([lo_w, hi_w])
        off_lo = np.concatenate([lo_off_lo, hi_off_hi + (r - l)])
        off_hi = np.concatenate([lo_off_lo - (r - l), hi_off_hi])
        return Grid(x, w, off_lo, off_hi)
    if math.isfinite(l):
        t, wt = _semi_unit(scheme)
        off = t / (1.0 - t)
        return Grid(l + off, wt / (1.0 - t) ** 2, off, None)
    if math.isfinite(r):
        t, wt = _semi_unit(scheme)
        off = t / (1.0 - t)
        return Grid(r - off, wt / (1.0 - t) ** 2, None, -off)
    npan = 2 * (scheme.levels + 1)
    t, wt = _uniform_unit(scheme, npan)
    t = 2.0 * t - 1.0
    wt = 2.0 * wt
    den = 1.0 - t * t
    return Grid(t / den, wt * (1.0 + t * t) / den**2, None, None)


def _semi_unit(scheme):
    """Nodes t in (0, 1): graded toward 0, uniform panels toward 1."""
    offs, ws = _half_offsets(scheme)
    lo_t = 0.5 * offs
    lo_w = 0.5 * ws
    hi_t, hi_w = _uniform_unit(scheme, scheme.levels + 1)
    hi_t = 0.5 + 0.5 * hi_t
    hi_w = 0.5 * hi_w
    t = np.concatenate([lo_t, hi_t])
    wt = np.concatenate([lo_w, hi_w])
    return t, wt


def integrate_real(func, interval, scheme=DEFAULT_SCHEME):
    """Integral of a vectorized function over a real interval."""
    grid = scheme_nodes(scheme, interval)
    vals = np.asarray(func(grid.x), dtype=complex)
    if not np.isfinite(vals).all():
        raise NonFiniteIntegrand("integrand not finite on the grid")
    return complex(np.sum(vals * grid.w))


def _log_linear(grid, cz, c1, lam, rho):
    """log(cz*z + c1) on the grid, through exact offsets when the root
    sits on a grid anchor."""
    if cz == 0:
        if c1 == 0:
            raise ZeroDivisionError("zero linear factor")
        return np.full(grid.x.shape, cmath.log(complex(c1)), dtype=complex)
    root = -complex(c1) / complex(cz)
    if (
        lam is not None
        and grid.off_lo is not None
        and abs(root - lam) <= ANCHOR_TOL * (1.0 + abs(lam))
    ):
        base = cz * (grid.off_lo + (lam - root))
    elif (
        rho is not None
        and grid.off_hi is not None
        and abs(root - rho) <= ANCHOR_TOL * (1.0 + abs(rho))
    ):
        base = cz * (grid.off_hi + (rho - root))
    else:
        base = cz * grid.x + c1
    base = np.asarray(base, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log(base)


def _flush_exp(logvals):
    """exp with underflow flushed to exact zero; -inf maps to zero too."""
    re = np.real(logvals)
    under = (re < LOG_UNDERFLOW) | np.isneginf(re)
    safe = np.where(under, 0.0, logvals)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.exp(safe)
    return np.where(under, 0.0, vals)


def _poly_values(polys, x):
    return np.vstack([p.eval(x) for p in polys])


def _assemble_gram(values, measure):
    return (values * measure) @ values.T


@dataclass
class GramReport:
    """Computed Gram matrix with its diagnostics.

    ``max_offdiag`` is scaled by the geometric mean of the two computed
    diagonal entries; ``max_diag_err`` is relative to the expected
    squared norms.
    """

    matrix: np.ndarray
    expected_diag: tuple
    max_diag_err: float
    max_offdiag: float
    route: str
    nodes: int

    def within(self, diag_tol, offdiag_tol):
        return self.max_diag_err <= diag_tol and self.max_offdiag <= offdiag_tol


def _finish_report(matrix, expected, route, nodes):
    size = matrix.shape[0]
    diag = np.abs(np.diagonal(matrix))
    max_diag_err = max(
        abs(matrix[k, k] - expected[k]) / abs(expected[k]) for k in range(size)
    )
    max_off = 0.0
    for i in range(size):
        for j in range(size):
            if i != j:
                scale = math.sqrt(diag[i] * diag[j])
                max_off = max(max_off, abs(matrix[i, j]) / scale)
    return GramReport(
        matrix=matrix,
        expected_diag=tuple(expected),
        max_diag_err=float(max_diag_err),
        max_offdiag=float(max_off),
        route=route,
        nodes=nodes,
    )


def _classical_log_weight(weight, grid, l, r, arg_shift=None):
    """log w(x) on a real-interval grid, factor bases offset-aware.

    ``arg_shift`` optionally supplies the points used for the
    exponential part instead of the grid coordinates (the pullback
    route feeds the map round trip there).
    """
    acc = np.full(grid.x.shape, cmath.log(complex(weight.constant)), dtype=complex)
    lam = l if (l is not None and math.isfinite(l)) else None
    rho = r if (r is not None and math.isfinite(r)) else None
    for p, q, g in weight.factors:
        if g == 0:
            continue
        acc = acc + g * _log_linear(grid, p, q, lam, rho)
    pts = grid.x if arg_shift is None else arg_shift
    if weight.exp_lin != 0:
        acc = acc + weight.exp_lin * pts
    if weight.exp_quad != 0:
        acc = acc + weight.exp_quad * pts * pts
    return acc


def gram_classical(fam, nmax, scheme=DEFAULT_SCHEME):
    """Gram matrix of the family against its own weight and interval."""
    if not fam.integrable:
        raise InadmissibleParameters(
            f"weight of {fam.name} with {fam.params} is not integrable"
        )
    grid = scheme_nodes(scheme, fam.interval)
    logw = _classical_log_weight(fam.weight, grid, *fam.interval)
    wvals = _flush_exp(logw)
    if fam.weight.poly.degree > 0:
        wvals = wvals * fam.weight.poly.eval(grid.x)
    live = wvals != 0
    measure = wvals[live] * grid.w[live]
    values = _poly_values(generate(fam, nmax), grid.x[live])
    matrix = _assemble_gram(values, measure)
    if not np.isfinite(matrix).all():
        raise NonFiniteIntegrand("classical Gram entries not finite")
    expected = [fam.norm(k) for k in range(nmax + 1)]
    return _finish_report(matrix, expected, "classical", int(live.sum()))


def _guard_interior_pole(grid, m, interval):
    """Nudge base-interval nodes out of a tiny band around the point the
    map sends to infinity, when that point lies strictly inside."""
    if m.c == 0:
        return grid.x
    pole = m.a / m.c
    if abs(pole.imag) > ANCHOR_TOL * (1.0 + abs(pole)):
        return grid.x
    p = pole.real
    l, r = interval
    inside = l < p < r and not (
        math.isclose(p, l, rel_tol=0.0, abs_tol=1e-12 * (1.0 + abs(l)))
        or math.isclose(p, r, rel_tol=0.0, abs_tol=1e-12 * (1.0 + abs(r)))
    )
    if not inside:
        return grid.x
    band = POLE_BAND * (1.0 + abs(p))
    x = grid.x
    close = np.abs(x - p) < band
    if not close.any():
        return grid.x
    shifted = np.where(x >= p, p + band, p - band)
    return np.where(close, shifted, x)


def gram_transformed_pullback(seq, nmax, scheme=DEFAULT_SCHEME):
    """Gram of the mapped sequence by pulling the contour integral back
    to the base interval.

    The integrand is kept in its mapped grouping: values of the base
    polynomials at M(W(t)) computed through both maps, the transformed
    weight's measure factor delta/(c z + d)^2 at z = W(t), and the
    jacobian W'(t), all as separate numeric pieces.  Only the weight's
    vanishing factor bases use the grid's exact offsets in t, since
    those cancel catastrophically in any through-the-map form.
    """
    fam = seq.fam
    m = seq.map
    if not fam.integrable:
        raise InadmissibleParameters(
            f"weight of {fam.name} with {fam.params} is not integrable"
        )
    winv = inverse(m)
    grid = scheme_nodes(scheme, fam.interval)
    t = _guard_interior_pole(grid, m, fam.interval)
    tgrid = Grid(t, grid.w, grid.off_lo, grid.off_hi)
    z = apply_finite(winv, t.astype(complex))
    mz = apply_finite(m, z)
    logw = _classical_log_weight(fam.weight, tgrid, *fam.interval, arg_shift=mz)
    wvals = _flush_exp(logw)
    if fam.weight.poly.degree > 0:
        wvals = wvals * fam.weight.poly.eval(mz)
    live = wvals != 0
    v = m.c * z[live] + m.d
    wprime = winv.delta / (winv.c * t[live] + winv.d) ** 2
    measure = (
        grid.w[live] * wvals[live] * m.delta * (wprime / (v * v))
    )
    values = _poly_values(generate(fam, nmax), mz[live])
    matrix = _assemble_gram(values, measure)
    if not np.isfinite(matrix).all():
        raise NonFiniteIntegrand("pullback Gram entries not finite")
    expected = [fam.norm(k) for k in range(nmax + 1)]
    return _finish_report(matrix, expected, "pullback", int(live.sum()))


def _segment_grid(scheme, lam, rho):
    offs, ws = _half_offsets(scheme)
    span = rho - lam
    lo_off = 0.5 * span * offs
    hi_off = -0.5 * span * offs
    x = np.concatenate([lam + lo_off, rho + hi_off])
    w = np.concatenate([0.5 * span * ws, 0.5 * span * ws])
    off_lo = np.concatenate([lo_off, hi_off + span])
    off_hi = np.concatenate([lo_off - span, hi_off])
    return Grid(x, w, off_lo, off_hi)


def _ray_grid(scheme, start, direction, weight_sign, end_anchor=False,
              stretch=True):
    """Nodes on start + direction*s for s in (0, inf), graded at both
    the anchor and the far end.

    Transformed weights decay only algebraically along the ray, so the
    far end of the t/(1-t) substitution keeps a fractional-power kink
    at t = 1 that uniform panels cannot resolve; plain geometric
    grading handles it while keeping node magnitudes within
    polynomial-evaluation range (the power stretch would not).

    ``stretch`` selects the mesh at the anchor itself: power-stretched
    panels when the anchor carries an algebraic weight singularity
    (image of a finite original endpoint), plain geometric panels when
    the weight instead dies off essentially there (image of an
    infinite endpoint), which shows up as a boundary layer at moderate
    distances that sparse stretched panels step right over.

    ``weight_sign`` times direction becomes the dz factor.
    ``end_anchor`` files the exact offsets under the far anchor slot,
    for rays that end at the contour's right anchor.
    """
    if stretch:
        near_off, near_ws = _half_offsets(scheme)
    else:
        near_off, near_ws = _graded_unit(scheme)
    near_t = 0.5 * near_off
    near_c = 1.0 - near_t
    far_u, far_ws = _graded_unit(scheme)
    far_c = 0.5 * far_u
    far_t = 1.0 - far_c
    t = np.concatenate([near_t, far_t])
    tc = np.concatenate([near_c, far_c])
    wt = np.concatenate([0.5 * near_ws, 0.5 * far_ws])
    s = t / tc
    ds = wt / tc**2
    off = direction * s
    x = start + off
    w = weight_sign * direction * ds
    if end_anchor:
        return Grid(x, w, None, off)
    return Grid(x, w, off, None)


def _line_grid(scheme, z0, direction):
    npan = 2 * (scheme.levels + 1)
    t, wt = _uniform_unit(scheme, npan)
    t = 2.0 * t - 1.0
    wt = 2.0 * wt
    den = 1.0 - t * t
    s = t / den
    ds = wt * (1.0 + t * t) / den**2
    return Grid(z0 + direction * s, direction * ds, None, None)


def _arc_grid(scheme, center, radius, theta0, sweep, uniform):
    """Nodes on a circular arc, endpoint offsets via the half-angle form."""
    span = abs(sweep)
    sigma = 1.0 if sweep >= 0 else -1.0
    if uniform:
        u, wu = _uniform_unit(scheme, 2 * (scheme.levels + 1))
        th = span * u
        wth = span * wu
        th_lo = th
        th_hi = span - th
    else:
        offs, ws = _half_offsets(scheme)
        half = 0.5 * span * offs
        th_lo = np.concatenate([half, span - half])
        th_hi = np.concatenate([span - half, half])
        th = th_lo
        wth = np.concatenate([0.5 * span * ws, 0.5 * span * ws])
    e0 = cmath.exp(1j * theta0)
    e1 = cmath.exp(1j * (theta0 + sweep))
    phase = np.exp(1j * sigma * th)
    z = center + radius * e0 * phase
    w = 1j * sigma * radius * e0 * phase * wth
    off_lo = radius * e0 * np.exp(0.5j * sigma * th_lo) * (
        2j * np.sin(0.5 * sigma * th_lo)
    )
    off_hi = radius * e1 * np.exp(-0.5j * sigma * th_hi) * (
        -2j * np.sin(0.5 * sigma * th_hi)
    )
    return Grid(z, w, off_lo, off_hi)


def _transformed_log_weight(weight, m, grid, lam, rho):
    """log of w(M(z)) on a contour grid, plus log(c z + d) separately.

    Each factor p*M(z) + q is rewritten over the common denominator as
    (p a + q c) z + (p b + q d) over (c z + d); numerator roots are the
    images of the base factor roots, so the grid's exact endpoint
    offsets apply to them directly.
    """
    log_v = _log_linear(grid, m.c, m.d, lam, rho)
    acc = np.full(grid.x.shape, cmath.log(complex(weight.constant)), dtype=complex)
    gsum = 0j
    for p, q, g in weight.factors:
        if g == 0:
            continue
        gsum += g
        cz = p * m.a + q * m.c
        c1 = p * m.b + q * m.d
        acc = acc + g * _log_linear(grid, cz, c1, lam, rho)
    acc = acc - gsum * log_v
    if weight.exp_lin != 0 or weight.exp_quad != 0:
        mz = (m.a * grid.x + m.b) * np.exp(-log_v)
        acc = acc + weight.exp_lin * mz + weight.exp_quad * mz * mz
    return acc, log_v


def _contour_grids(seq, scheme):
    """Concrete quadrature grids along the image contour, oriented."""
    spec = seq.contour
    m = seq.map
    if spec.kind == "segment":
        return [_segment_grid(scheme, spec.start.value, spec.end.value)]
    if spec.kind == "line-through-infinity":
        if m.c == 0:
            e1 = m.d / m.a
        else:
            e1 = m.delta / (m.c * m.c)
        e1 = e1 / abs(e1)
        l, r = seq.fam.interval
        grids = []
        if not spec.start.is_infinite:
            grids.append(
                _ray_grid(
                    scheme, spec.start.value, e1, 1.0,
                    stretch=math.isfinite(l),
                )
            )
        if not spec.end.is_infinite:
            grids.append(
                _ray_grid(
                    scheme, spec.end.value, -e1, -1.0, end_anchor=True,
                    stretch=math.isfinite(r),
                )
            )
        return grids
    if spec.kind == "full-line":
        if m.c != 0:
            raise UnsupportedContour(
                "direct quadrature along a full line through infinity is "
                "not supported; use the pullback route"
            )
        direction = spec.direction
        return [_line_grid(scheme, spec.anchor, direction)]
    if spec.kind == "circular-arc":
        return [
            _arc_grid(
                scheme, spec.center, spec.radius, spec.theta0, spec.sweep, False
            )
        ]
    if spec.kind == "full-circle":
        return [
            _arc_grid(
                scheme, spec.center, spec.radius, spec.theta0, spec.sweep, True
            )
        ]
    raise UnsupportedContour(f"unknown contour kind {spec.kind!r}")


def gram_transformed_contour(seq, nmax, scheme=DEFAULT_SCHEME):
    """Gram of the mapped sequence by direct quadrature on the contour.

    Uses the homogenized polynomials literally: the entry (m, n) pairs
    Q_m Q_n against the varying weight, realized by scaling each Q_m by
    (c z + d)^(-m) so one fixed measure serves the whole matrix.
    """
    fam = seq.fam
    m = seq.map
    if not fam.integrable:
        raise InadmissibleParameters(
            f"weight of {fam.name} with {fam.params} is not integrable"
        )
    spec = seq.contour
    lam = None if spec.start.is_infinite else spec.start.value
    rho = None if spec.end.is_infinite else spec.end.value
    matrix = np.zeros((nmax + 1, nmax + 1), dtype=complex)
    total_live = 0
    for grid in _contour_grids(seq, scheme):
        logw, log_v = _transformed_log_weight(fam.weight, m, grid, lam, rho)
        log_measure = logw + cmath.log(m.delta) - 2.0 * log_v
        meas = _flush_exp(log_measure)
        if fam.weight.poly.degree > 0:
            mz = (m.a * grid.x + m.b) * np.exp(-log_v)
            meas = meas * fam.weight.poly.eval(mz)
        live = meas != 0
        total_live += int(live.sum())
        zl = grid.x[live]
        lvl = log_v[live]
        values = np.vstack(
            [
                seq.poly(k).eval(zl) * _flush_exp(-k * lvl)
                for k in range(nmax + 1)
            ]
        )
        matrix = matrix + _assemble_gram(values, meas[live] * grid.w[live])
    if not np.isfinite(matrix).all():
        raise NonFiniteIntegrand("contour Gram entries not finite")
    expected = [fam.norm(k) for k in range(nmax + 1)]
    return _finish_report(matrix, expected, "contour", total_live)
