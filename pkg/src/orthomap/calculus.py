"""Weight functions in closed form, Rodrigues evaluation, and
generating-function series.

A :class:`StructuredWeight` represents

    C * poly(x) * prod_i (p_i x + q_i)^{gamma_i} * exp(r x + s x^2)

and is closed under differentiation: the product rule lowers every
factor exponent by one and folds everything else into the polynomial
part.  Evaluation happens in log space so that huge exponent/decay
combinations (e.g. x^9 e^{-beta/x} near 0) never produce 0 * inf.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BranchConflict, PoleEvaluation
from .moebius import apply_finite
from .polynomial import (
    ComplexPoly,
    ONE,
    PowerSeries,
    series_exp,
    series_mul,
    series_reciprocal,
)

__all__ = [
    "StructuredWeight",
    "sw_eval",
    "sw_derivative",
    "sw_nth_derivative",
    "sw_log_derivative",
    "classical_rodrigues",
    "transformed_rodrigues",
    "GenFunSpec",
    "genfun_series",
    "genfun_series_transformed",
]

#: exponents within this of an integer count as integers for branch checks
INTEGER_TOL = 1e-12

#: real part of the log below which the weight is flushed to exact zero
LOG_UNDERFLOW = -745.0


@dataclass(frozen=True)
class StructuredWeight:
    """Closed-form weight C * poly * prod (p x + q)^gamma * exp(r x + s x^2).

    ``factors`` is a tuple of (p, q, gamma) triples; ``poly`` is a
    :class:`ComplexPoly` (defaults to 1).
    """

    constant: complex = 1.0
    factors: tuple = ()
    exp_lin: complex = 0.0
    exp_quad: complex = 0.0
    poly: ComplexPoly = ONE

    def __post_init__(self):
        object.__setattr__(self, "constant", complex(self.constant))
        object.__setattr__(
            self,
            "factors",
            tuple(
                (complex(p), complex(q), complex(g)) for p, q, g in self.factors
            ),
        )
        object.__setattr__(self, "exp_lin", complex(self.exp_lin))
        object.__setattr__(self, "exp_quad", complex(self.exp_quad))


def _is_integer(g):
    return abs(g.imag) <= INTEGER_TOL and abs(g.real - round(g.real)) <= INTEGER_TOL


def sw_eval(w, x):
    """Evaluate the weight at complex points (scalar or ndarray).

    Factor bases that hit exactly zero give an exact zero result when
    the exponent has positive real part and raise
    :class:`PoleEvaluation` otherwise.  A negative-real base with a
    non-integer exponent raises :class:`BranchConflict` instead of
    silently picking a branch.
    """
    z = np.asarray(x, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    log_acc = np.zeros(z.shape, dtype=complex)
    dead = np.zeros(z.shape, dtype=bool)
    for p, q, g in w.factors:
        if g == 0:
            continue
        base = p * z + q
        zero = base == 0
        if zero.any():
            if g.real > 0 and abs(g.imag) <= INTEGER_TOL:
                dead |= zero
            else:
                raise PoleEvaluation(
                    f"weight factor base {p}*x+{q} vanishes with exponent {g}"
                )
        neg_real = (base.imag == 0) & (base.real < 0) & ~zero
        if neg_real.any() and not _is_integer(g):
            raise BranchConflict(
                f"negative real base for exponent {g}; no principal choice"
            )
        safe = np.where(zero, 1.0, base)
        log_acc = log_acc + g * np.log(safe)
    log_acc = log_acc + w.exp_lin * z + w.exp_quad * z * z
    # flush doomed exponents to exact zero before exponentiating
    under = log_acc.real < LOG_UNDERFLOW
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.exp(np.where(under, 0.0, log_acc))
    vals = np.where(under | dead, 0.0, vals)
    out = w.constant * w.poly.eval(z) * vals
    out = np.where(dead, 0.0, out)
    if scalar:
        return complex(out[0])
    return out


def sw_derivative(w):
    """Exact derivative, staying inside the structured class.

    Every factor exponent drops by one and the polynomial part becomes
    poly' * prod_i l_i + poly * (sum_i gamma_i p_i prod_{j!=i} l_j)
    + poly * (r + 2 s x) * prod_i l_i, with l_i = p_i x + q_i.
    """
    lins = [ComplexPoly((q, p)) for p, q, _ in w.factors]
    prod_all = ONE
    for lin in lins:
        prod_all = prod_all * lin
    cross = ComplexPoly(())
    for i, (p, q, g) in enumerate(w.factors):
        term = ONE
        for j, lin in enumerate(lins):
            if j != i:
                term = term * lin
        cross = cross + term.scale(g * p)
    expd = ComplexPoly((w.exp_lin, 2.0 * w.exp_quad))
    newpoly = (
        w.poly.derivative() * prod_all
        + w.poly * cross
        + w.poly * expd * prod_all
    )
    newfactors = tuple((p, q, g - 1.0) for p, q, g in w.factors)
    return StructuredWeight(
        constant=w.constant,
        factors=newfactors,
        exp_lin=w.exp_lin,
        exp_quad=w.exp_quad,
        poly=newpoly,
    )


def sw_nth_derivative(w, n):
    """n-fold :func:`sw_derivative`."""
    out = w
    for _ in range(n):
        out = sw_derivative(out)
    return out


def sw_log_derivative(w, x):
    """The logarithmic derivative w'(x)/w(x), evaluated analytically.

    poly'(x)/poly(x) + sum_i gamma_i p_i/(p_i x + q_i) + r + 2 s x.
    """
    z = np.asarray(x, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    acc = np.zeros(z.shape, dtype=complex)
    for p, q, g in w.factors:
        if g == 0:
            continue
        base = p * z + q
        if (base == 0).any():
            raise PoleEvaluation("logarithmic derivative at a factor zero")
        acc = acc + g * p / base
    acc = acc + w.exp_lin + 2.0 * w.exp_quad * z
    if not (w.poly.degree == 0):
        pv = w.poly.eval(z)
        if (pv == 0).any():
            raise PoleEvaluation("logarithmic derivative at a polynomial zero")
        acc = acc + w.poly.derivative().eval(z) / pv
    if scalar:
        return complex(acc[0])
    return acc


def classical_rodrigues(fam, n, x):
    """Evaluate the degree-n family member through its Rodrigues formula.

    Computes eps_n / w(x) * d^n/dx^n [f(x)^n w(x)] with the n-th
    derivative taken exactly inside the structured-weight class; the
    family supplies the differentiation numerator f^n w directly with
    the factor exponents already merged.
    """
    numer = sw_nth_derivative(fam.rodrigues_numerator(n), n)
    return fam.rodrigues_eps(n) * sw_eval(numer, x) / sw_eval(fam.weight, x)


def transformed_rodrigues(seq, n, y):
    """Rodrigues evaluation of the transformed polynomial at y.

    Equals delta/(c y + d)^(n+2) * eps_n / omega_{n,n}(y) times the n-th
    derivative of f^n w evaluated at the mapped point M(y); the result
    matches ``seq.poly(n).eval(y)``.
    """
    m = seq.map
    y = complex(y)
    den = m.c * y + m.d
    if den == 0:
        raise PoleEvaluation("transformed Rodrigues at the map pole")
    fam = seq.fam
    numer = sw_nth_derivative(fam.rodrigues_numerator(n), n)
    dval = sw_eval(numer, apply_finite(m, y))
    omega_nn = seq.varying_weight(n, n, y)
    return (
        m.delta
        / den ** (n + 2)
        * fam.rodrigues_eps(n)
        / omega_nn
        * dval
    )


@dataclass(frozen=True)
class GenFunSpec:
    """A closed-form generating function with a known coefficient rule.

    ``kind`` selects the closed form; ``exponential`` records whether
    the series coefficients are P_n(x)/n! (True) or P_n(x) (False).
    """

    kind: str
    exponential: bool


HERMITE_GF = GenFunSpec(kind="hermite-exp", exponential=True)
CHEBYSHEV_GF = GenFunSpec(kind="chebyshev-rational", exponential=False)

_GF_BY_KIND = {s.kind: s for s in (HERMITE_GF, CHEBYSHEV_GF)}


def genfun_spec(kind):
    try:
        return _GF_BY_KIND[kind]
    except KeyError:
        raise KeyError(f"unknown generating-function kind {kind!r}") from None


def genfun_series(spec, x, order):
    """Taylor coefficients in t of the generating function at fixed x.

    hermite-exp: exp(2 x t - t^2), coefficient n is H_n(x)/n!.
    chebyshev-rational: (1 - x t)/(1 - 2 x t + t^2), coefficient n is
    T_n(x).
    """
    if isinstance(spec, str):
        spec = genfun_spec(spec)
    x = complex(x)
    if spec.kind == "hermite-exp":
        return series_exp(ComplexPoly((0.0, 2.0 * x, -1.0)), order)
    if spec.kind == "chebyshev-rational":
        den = PowerSeries(
            tuple(
                {0: 1.0, 1: -2.0 * x, 2: 1.0}.get(k, 0.0)
                for k in range(order + 1)
            )
        )
        num = PowerSeries(
            tuple({0: 1.0, 1: -x}.get(k, 0.0) for k in range(order + 1))
        )
        return series_mul(num, series_reciprocal(den), order)
    raise KeyError(f"unknown generating-function kind {spec.kind!r}")


def genfun_series_transformed(spec, m, y, order):
    """Transformed generating-function coefficients at a point y.

    Substituting x -> M(y) and t -> (c y + d) tau turns the classical
    series into one whose tau^n coefficient is the transformed
    polynomial value (divided by n! in the exponential case); concretely
    the classical coefficients get scaled by (c y + d)^n.
    """
    y = complex(y)
    den = m.c * y + m.d
    if den == 0:
        raise PoleEvaluation("transformed generating function at the map pole")
    base = genfun_series(spec, apply_finite(m, y), order)
    scaled = []
    power = 1.0 + 0j
    for k in range(order + 1):
        scaled.append(base.coeff(k) * power)
        power *= den
    return PowerSeries(scaled)
