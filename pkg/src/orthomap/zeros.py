"""Root finding and zero-pattern checks.

Roots come from an Aberth-Ehrlich simultaneous iteration certified a
posteriori by the dimensionless backward error |p(z)| / sum |a_k||z|^k.
On top of that sit three structural diagnostics: computed roots of a
transformed polynomial against images of the base roots under the
inverse map, interlacing of consecutive members after pulling roots
back through the map, and unit-circle location together with the
self-inversive coefficient symmetry it implies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import linear_sum_assignment

from .errors import NoConvergence, PoleEvaluation
from .moebius import apply, inverse
from .polynomial import moebius_transform

__all__ = [
    "RootSet",
    "find_roots",
    "map_zero_check",
    "interlacing_check",
    "unit_circle_check",
]

MAX_ITERATIONS = 200
STEP_REL_TOL = 1e-13
BACKWARD_ERR_TOL = 1e-10
ANGLE_OFFSET = 0.43
POLISH_STEPS = 2

#: a base root this close (relative) to the dropped point counts as dropped
DROP_REL_TOL = 1e-9


@dataclass(frozen=True)
class RootSet:
    """Roots with their per-root backward errors and iteration count."""

    roots: tuple
    backward_errors: tuple
    iterations: int


def _backward_errors(z, cs):
    scale = npoly.polyval(np.abs(z), np.abs(cs))
    scale = np.where(scale == 0, 1.0, scale)
    return np.abs(npoly.polyval(z, cs)) / scale


def find_roots(p):
    """All roots of the polynomial, certified by backward error.

    Exact zeros at the origin are deflated first (the constructor trims
    trailing coefficients, so a vanishing constant term is an exact
    origin root), degree one is closed form, and the rest go through
    the Aberth-Ehrlich iteration with a Newton polish.  Raises
    :class:`NoConvergence` when any backward error stays above
    tolerance.
    """
    cs = np.asarray(p.coeffs, dtype=complex)
    if cs.size <= 1:
        return RootSet((), (), 0)
    n_origin = 0
    while cs.size > 1 and cs[0] == 0:
        cs = cs[1:]
        n_origin += 1
    origin = (0j,) * n_origin
    origin_err = (0.0,) * n_origin
    m = cs.size - 1
    if m == 0:
        return RootSet(origin, origin_err, 0)
    if m == 1:
        root = -cs[0] / cs[1]
        err = float(_backward_errors(np.array([root]), cs)[0])
        return RootSet(origin + (complex(root),), origin_err + (err,), 0)

    radius = 1.0 + float(np.max(np.abs(cs[:-1] / cs[-1])))
    angles = 2.0 * math.pi * np.arange(m) / m + ANGLE_OFFSET
    z = radius * np.exp(1j * angles)
    dcs = cs[1:] * np.arange(1, m + 1)

    iterations = MAX_ITERATIONS
    for it in range(MAX_ITERATIONS):
        pv = npoly.polyval(z, cs)
        dv = npoly.polyval(z, dcs)
        flat = dv == 0
        if flat.any():
            z = np.where(flat, z * (1.0 + 1e-8) + 1e-8 * radius, z)
            continue
        newton = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        recip = 1.0 / diff
        np.fill_diagonal(recip, 0.0)
        denom = 1.0 - newton * recip.sum(axis=1)
        denom = np.where(denom == 0, 1.0, denom)
        corr = newton / denom
        z = z - corr
        if float(np.max(np.abs(corr))) < STEP_REL_TOL * radius:
            iterations = it + 1
            break

    for _ in range(POLISH_STEPS):
        dv = npoly.polyval(z, dcs)
        safe = dv != 0
        step = np.where(safe, npoly.polyval(z, cs) / np.where(safe, dv, 1.0), 0.0)
        z = z - step

    errs = _backward_errors(z, cs)
    if float(errs.max()) > BACKWARD_ERR_TOL:
        raise NoConvergence(
            f"root backward error {errs.max():.3e} above {BACKWARD_ERR_TOL:.1e}"
        )
    order = np.lexsort((z.imag, z.real))
    roots = origin + tuple(complex(v) for v in z[order])
    berrs = origin_err + tuple(float(v) for v in errs[order])
    return RootSet(roots, berrs, iterations)


def map_zero_check(p, m, n):
    """Compare roots of the transformed polynomial with mapped base roots.

    Transforms p at formal degree n, finds the roots of the result, and
    matches them against the predicted set: images of p's roots under
    the inverse map, minus those sent to infinity (each such root drops
    the transformed degree by one), plus formal-degree excess roots at
    the map's pole.
    """
    q = moebius_transform(p, m, n)
    computed = list(find_roots(q).roots)
    base = find_roots(p).roots
    w = inverse(m)
    predicted = []
    degree_drop = 0
    if m.c != 0:
        drop_point = m.a / m.c
        drop_tol = DROP_REL_TOL * (1.0 + abs(drop_point))
    for xi in base:
        if m.c != 0 and abs(xi - drop_point) <= drop_tol:
            degree_drop += 1
            continue
        img = apply(w, xi)
        if img.is_infinite:
            degree_drop += 1
            continue
        predicted.append(img.value)
    if m.c != 0:
        predicted.extend([-m.d / m.c] * (n - p.degree))

    if len(computed) != len(predicted):
        return {
            "ok": False,
            "computed": tuple(computed),
            "predicted": tuple(predicted),
            "max_relative_mismatch": math.inf,
            "degree_drop": degree_drop,
        }
    if not computed:
        return {
            "ok": True,
            "computed": (),
            "predicted": (),
            "max_relative_mismatch": 0.0,
            "degree_drop": degree_drop,
        }
    carr = np.asarray(computed)
    parr = np.asarray(predicted)
    cost = np.abs(carr[:, None] - parr[None, :])
    rows, cols = linear_sum_assignment(cost)
    rel = cost[rows, cols] / (1.0 + np.abs(parr[cols]))
    worst = float(rel.max())
    return {
        "ok": worst < 1e-7,
        "computed": tuple(carr[rows]),
        "predicted": tuple(parr[cols]),
        "max_relative_mismatch": worst,
        "degree_drop": degree_drop,
    }


def _pullback_points(q, m, n_formal, imag_tol):
    """Real preimages of q's roots under the map, with defect padding.

    Each root z of q pulls back to t = M(z), which should be real up to
    tolerance.  A formal-degree deficit means the base polynomial
    vanished at the point the map drops, so the missing preimages sit
    exactly there; they are appended explicitly.
    """
    ts = []
    max_imag = 0.0
    for z in find_roots(q).roots:
        t = apply(m, z)
        if t.is_infinite:
            raise PoleEvaluation("transformed root at the map pole")
        tv = t.value
        max_imag = max(max_imag, abs(tv.imag) / (1.0 + abs(tv.real)))
        ts.append(tv.real)
    deficit = n_formal - q.degree
    if deficit > 0:
        if m.c == 0:
            return ts, max_imag, deficit, False
        ts.extend([(m.a / m.c).real] * deficit)
    ok = max_imag <= imag_tol
    return ts, max_imag, deficit, ok


def interlacing_check(q_low, q_high, m, n, interval, imag_tol=1e-8):
    """Strict interlacing of pulled-back roots of consecutive members.

    q_low and q_high are the transformed polynomials of formal degree n
    and n+1 for the same map; their roots are pulled back to the base
    interval and must alternate strictly, with the higher degree first
    and last.
    """
    low, max_imag_low, defect_low, ok_low = _pullback_points(
        q_low, m, n, imag_tol
    )
    high, max_imag_high, defect_high, ok_high = _pullback_points(
        q_high, m, n + 1, imag_tol
    )
    report = {
        "t_low": tuple(sorted(low)),
        "t_high": tuple(sorted(high)),
        "max_imag": max(max_imag_low, max_imag_high),
        "defect_low": defect_low,
        "defect_high": defect_high,
    }
    if not (ok_low and ok_high):
        report["ok"] = False
        report["reason"] = "pullback not real within tolerance"
        return report
    if len(low) != n or len(high) != n + 1:
        report["ok"] = False
        report["reason"] = "root count mismatch"
        return report
    l, r = interval
    for t in low + high:
        slack = 1e-8 * (1.0 + abs(t))
        if not (l - slack < t < r + slack):
            report["ok"] = False
            report["reason"] = f"pullback {t} outside base interval"
            return report
    merged = sorted(
        [(t, 0) for t in low] + [(t, 1) for t in high], key=lambda tl: tl[0]
    )
    labels = [lab for _, lab in merged]
    values = [t for t, _ in merged]
    expected = [1 if k % 2 == 0 else 0 for k in range(len(labels))]
    if labels != expected:
        report["ok"] = False
        report["reason"] = "labels do not alternate"
        return report
    if any(values[k] >= values[k + 1] for k in range(len(values) - 1)):
        report["ok"] = False
        report["reason"] = "tied pullback values"
        return report
    report["ok"] = True
    report["reason"] = ""
    return report


def unit_circle_check(q):
    """Distance of roots from the unit circle and coefficient symmetry.

    A polynomial with all roots on the unit circle satisfies
    c_k = u * conj(c_{n-k}) for the unimodular u = c_n / conj(c_0); the
    score reports the worst violation relative to the largest
    coefficient, alongside the largest deviation of any root's modulus
    from one.
    """
    roots = find_roots(q).roots
    if not roots:
        return {
            "max_radius_deviation": 0.0,
            "self_inversive_score": 0.0,
            "unimodular_deviation": 0.0,
            "roots": (),
        }
    radius_dev = max(abs(abs(z) - 1.0) for z in roots)
    cs = q.coeffs
    n = len(cs) - 1
    if cs[0] == 0:
        return {
            "max_radius_deviation": radius_dev,
            "self_inversive_score": math.inf,
            "unimodular_deviation": math.inf,
            "roots": roots,
        }
    u = cs[n] / cs[0].conjugate()
    big = max(abs(c) for c in cs)
    score = max(
        abs(cs[k] - u * cs[n - k].conjugate()) for k in range(n + 1)
    ) / big
    return {
        "max_radius_deviation": radius_dev,
        "self_inversive_score": score,
        "unimodular_deviation": abs(abs(u) - 1.0),
        "roots": roots,
    }
