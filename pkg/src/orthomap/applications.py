"""Derived constructions: Bessel-type and Romanovski-type families,
and classical limit relations recovered through the map machinery.

Three applications of the mapped-sequence construction live here.
Inverting generalized Laguerre polynomials with an index-dependent
parameter produces the generalized Bessel polynomials together with a
real-line orthogonality relation that holds under an explicit gate.
A Jacobi family at conjugate complex parameters composed with the map
x -> i x yields the Romanovski polynomials, orthogonal along a segment
of the imaginary axis and, under a second gate, on the real line.
Finally, suitable maps turn Jacobi polynomials into Laguerre and
Hermite polynomials in the limit of a large parameter; the functions
here produce the finite-parameter candidates and measure their
convergence.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    InadmissibleParameters,
    NonRealCoefficients,
    NormalizationImpossible,
)
from .families import (
    gen_laguerre,
    generate,
    hermite,
    jacobi,
    laguerre,
    recurrence_values,
)
from .gammafn import complex_gamma, complex_log_gamma
from .moebius import INVERSION, MoebiusMap
from .polynomial import ComplexPoly, moebius_transform
from .quadrature import (
    DEFAULT_SCHEME,
    gram_transformed_contour,
    gram_transformed_pullback,
    integrate_real,
)
from .transform import build

__all__ = [
    "complex_gamma",
    "complex_log_gamma",
    "VaryingParamSequence",
    "bessel_sequence",
    "bessel_base_parameter",
    "bessel_unnormalized",
    "bessel_generalized",
    "bessel_norm",
    "bessel_gate",
    "bessel_ode_residual",
    "bessel_orthogonality_check",
    "bessel_pair_weight_residual",
    "bessel_defective_identity_check",
    "romanovski_map",
    "romanovski_sequence",
    "romanovski",
    "romanovski_norm",
    "romanovski_orthogonality_check",
    "romanovski_finite_real_check",
    "laguerre_from_jacobi",
    "laguerre_from_jacobi_szego",
    "hermite_from_jacobi",
    "coefficient_error",
    "jacobi_to_laguerre_limit_check",
    "jacobi_to_hermite_limit_check",
    "szego_laguerre_check",
    "jacobi_weight_limit_check",
]

#: imaginary residue (relative to the largest coefficient) tolerated
#: before declaring a supposedly real polynomial non-real
REAL_COEFF_TOL = 1e-11

#: candidate/target error ratio per parameter decade for a clean 1/alpha
#: convergence rate
RATIO_BAND = (0.05, 0.2)

STATUS_OK = "ok"
STATUS_UNGATED = "Ungated"


@dataclass(frozen=True)
class VaryingParamSequence:
    """Mapped sequence whose base family changes with the index.

    ``family_for(n)`` supplies the base family used for the degree-n
    member; all members share one map.  The weight pairing members m
    and n is the transformed weight of the higher-index family, per
    the varying-measure convention.
    """

    family_for: object
    map: MoebiusMap

    def member(self, n):
        fam = self.family_for(n)
        base = generate(fam, n)[n]
        return moebius_transform(base, self.map, n)

    def pair_family(self, m, n):
        return self.family_for(max(m, n))

    def pair_weight(self, m, n, y):
        """Weight pairing members m and n at a point off the map pole."""
        seq = build(self.pair_family(m, n), self.map, 0)
        return seq.varying_weight(m, n, y)


# ---------------------------------------------------------------------------
# Bessel-type polynomials from inverted generalized Laguerre members.


def bessel_base_parameter(gamma, n):
    """Laguerre parameter attached to the degree-n Bessel member."""
    return 1.0 - 2.0 * n - gamma


def bessel_sequence(gamma, beta):
    """The inverted Laguerre sequence with index-dependent parameter."""
    return VaryingParamSequence(
        family_for=lambda n: gen_laguerre(bessel_base_parameter(gamma, n), beta),
        map=INVERSION,
    )


def bessel_unnormalized(gamma, beta, n):
    """Degree-n member before constant-term normalization."""
    fam = gen_laguerre(bessel_base_parameter(gamma, n), beta)
    return moebius_transform(generate(fam, n)[n], INVERSION, n)


def bessel_generalized(n, gamma, beta):
    """Generalized Bessel polynomial, constant term normalized to 1."""
    raw = bessel_unnormalized(gamma, beta, n)
    coeffs = raw.coeffs
    const = coeffs[0] if coeffs else 0j
    scale = max([abs(c) for c in coeffs] + [1.0])
    if abs(const) <= 1e-14 * scale:
        raise NormalizationImpossible(
            f"constant term vanishes for n={n}, gamma={gamma}, beta={beta}"
        )
    return raw.scale(1.0 / const)


def bessel_gate(gamma, beta, m, n):
    """Whether the real-line orthogonality relation is asserted."""
    return beta > 0 and gamma < 2.0 - 2.0 * max(m, n)


def bessel_norm(gamma, beta, n):
    """Diagonal value beta^(2n-2+gamma) Gamma(2-n-gamma) / Gamma(n+1)."""
    return complex(
        beta ** (2.0 * n - 2.0 + gamma)
        * complex_gamma(2.0 - n - gamma)
        / math.factorial(n)
    )


def bessel_ode_residual(gamma, beta, n, x, relative=False):
    """Residual of x^2 y'' + (gamma x + beta) y' + n(1-n-gamma) y = 0."""
    x = complex(x)
    p = bessel_generalized(n, gamma, beta)
    dp = p.derivative()
    terms = (
        x * x * dp.derivative().eval(x),
        (gamma * x + beta) * dp.eval(x),
        n * (1.0 - n - gamma) * p.eval(x),
    )
    res = terms[0] + terms[1] + terms[2]
    if relative:
        return res / max(max(abs(t) for t in terms), 1.0)
    return res


def bessel_orthogonality_check(gamma, beta, m, n, scheme=DEFAULT_SCHEME):
    """Real-line pairing of unnormalized members m and n against the
    index-dependent weight, judged only when the gate holds.

    The integral over (0, inf) carries the weight
    x^(|m-n|+gamma-3) exp(-beta/x); substituting t = 1/x turns it into
    a Laguerre-type integral whose value is the gamma-function constant
    on the diagonal and zero off it.
    """
    out = {
        "m": m,
        "n": n,
        "gamma": gamma,
        "beta": beta,
        "gated": bessel_gate(gamma, beta, m, n),
        "status": STATUS_UNGATED,
        "value": None,
        "expected": None,
        "relative_error": None,
    }
    if not out["gated"]:
        return out
    alpha_top = bessel_base_parameter(gamma, max(m, n))
    pm = generate(gen_laguerre(bessel_base_parameter(gamma, m), beta), m)[m]
    pn = generate(gen_laguerre(bessel_base_parameter(gamma, n), beta), n)[n]

    def integrand(t):
        return (pm.eval(t) * pn.eval(t)).real * np.exp(
            alpha_top * np.log(t) - beta * t
        )

    value = integrate_real(integrand, (0.0, math.inf), scheme).real
    out["value"] = value
    if m == n:
        expected = bessel_norm(gamma, beta, n).real
        out["expected"] = expected
        out["relative_error"] = abs(value - expected) / abs(expected)
    else:
        out["expected"] = 0.0
        scale = math.sqrt(
            abs(bessel_norm(gamma, beta, m)) * abs(bessel_norm(gamma, beta, n))
        )
        out["scale"] = scale
        out["relative_error"] = abs(value) / scale
    out["status"] = STATUS_OK
    return out


def bessel_pair_weight_residual(gamma, beta, m, n, x, relative=False):
    """The sequence's generic pair weight against the closed form.

    The varying weight produced by the map machinery must equal
    -x^(|m-n|+gamma-3) exp(-beta/x); the sign reflects the contour
    orientation (the inverse map reverses the half-line).
    """
    x = complex(x)
    seq = bessel_sequence(gamma, beta)
    generic = seq.pair_weight(m, n, x)
    closed = -(x ** (abs(m - n) + gamma - 3.0)) * np.exp(-beta / x)
    res = generic - closed
    if relative:
        return res / max(abs(generic), abs(closed), 1.0)
    return res


def bessel_defective_identity_check(gamma, beta):
    """Coefficientwise match of members n and 1-gamma-n for integer
    gamma <= 0, after shared constant-term normalization."""
    k = round(-gamma)
    if abs(gamma + k) > 1e-12 or k < 0:
        raise ValueError("identity requires an integer gamma <= 0")
    top = 1 + k
    members = [bessel_generalized(j, gamma, beta) for j in range(top + 1)]
    worst = 0.0
    pairs = []
    for n in range(top + 1):
        partner = top - n
        if partner <= n:
            break
        a = members[n].coeffs
        b = members[partner].coeffs
        scale = max([abs(c) for c in a + b] + [1.0])
        width = max(len(a), len(b))
        diff = max(
            abs(
                (a[j] if j < len(a) else 0j)
                - (b[j] if j < len(b) else 0j)
            )
            for j in range(width)
        )
        worst = max(worst, diff / scale)
        pairs.append((n, partner))
    return {"gamma": gamma, "beta": beta, "pairs": pairs, "max_mismatch": worst}


# ---------------------------------------------------------------------------
# Romanovski polynomials from Jacobi at conjugate complex parameters.


def romanovski_map():
    """The map x -> i x, written as (1*x + 0)/(0*x - i)."""
    return MoebiusMap(1.0, 0.0, 0.0, -1j)


def romanovski_sequence(gamma, delta, nmax):
    """The transformed sequence whose members are the Romanovski
    polynomials; coefficients are checked to be real up to roundoff."""
    if delta == 0:
        warnings.warn(
            "delta = 0 collapses the construction to a plain Jacobi "
            "family with equal parameters",
            stacklevel=2,
        )
    fam = jacobi(complex(gamma, delta), complex(gamma, -delta))
    seq = build(fam, romanovski_map(), nmax)
    for p in seq.polys:
        scale = max([abs(c) for c in p.coeffs] + [1.0])
        residue = max([abs(c.imag) for c in p.coeffs] + [0.0])
        if residue > REAL_COEFF_TOL * scale:
            raise NonRealCoefficients(
                f"imaginary residue {residue:.3e} exceeds tolerance at "
                f"gamma={gamma}, delta={delta}"
            )
    return seq


def romanovski(n, gamma, delta):
    """Degree-n Romanovski polynomial with real coefficients."""
    seq = romanovski_sequence(gamma, delta, n)
    return ComplexPoly([complex(c.real, 0.0) for c in seq.poly(n).coeffs])


def romanovski_norm(n, gamma, delta):
    """Diagonal constant of the imaginary-axis orthogonality relation."""
    return (
        2.0 ** (2.0 * gamma + 1.0)
        / (2.0 * n + 2.0 * gamma + 1.0)
        * np.exp(
            complex_log_gamma(n + 1.0 + gamma + 1j * delta)
            + complex_log_gamma(n + 1.0 + gamma - 1j * delta)
            - complex_log_gamma(n + 1.0 + 2.0 * gamma)
            - complex_log_gamma(n + 1.0)
        )
    )


def romanovski_orthogonality_check(m, n, gamma, delta, scheme=DEFAULT_SCHEME):
    """Gram pairing of members m and n along the imaginary segment.

    Both integration routes are reported: pullback to the real Jacobi
    integral, and direct parameterization of the segment between the
    endpoint images.  The gate is gamma > -1 with real delta.
    """
    out = {
        "m": m,
        "n": n,
        "gamma": gamma,
        "delta": delta,
        "gated": gamma > -1.0,
        "status": STATUS_UNGATED,
        "pullback": None,
        "direct": None,
        "expected": None,
        "relative_error": None,
        "route_equivalence": None,
    }
    if not out["gated"]:
        return out
    top = max(m, n)
    seq = romanovski_sequence(gamma, delta, top)
    rep_pull = gram_transformed_pullback(seq, top, scheme)
    rep_dir = gram_transformed_contour(seq, top, scheme)
    val_pull = rep_pull.matrix[m, n]
    val_dir = rep_dir.matrix[m, n]
    out["pullback"] = val_pull
    out["direct"] = val_dir
    if m == n:
        expected = romanovski_norm(n, gamma, delta)
        out["expected"] = expected
        out["relative_error"] = abs(val_pull - expected) / abs(expected)
    else:
        out["expected"] = 0.0
        scale = math.sqrt(
            abs(romanovski_norm(m, gamma, delta))
            * abs(romanovski_norm(n, gamma, delta))
        )
        out["scale"] = scale
        out["relative_error"] = abs(val_pull) / scale
    scale_eq = max(abs(val_pull), abs(val_dir), 1e-300)
    if m == n:
        out["route_equivalence"] = abs(val_pull - val_dir) / scale_eq
    else:
        diag_scale = math.sqrt(
            abs(rep_pull.matrix[m, m].real * rep_pull.matrix[n, n].real)
        )
        out["route_equivalence"] = abs(val_pull - val_dir) / max(
            diag_scale, 1e-300
        )
    out["status"] = STATUS_OK
    return out


def romanovski_finite_real_check(m, n, gamma, delta, scheme=DEFAULT_SCHEME):
    """Real-line pairing, asserted only under m + n + 2 gamma < -1.

    The weight is (x^2+1)^gamma exp(2 delta arctan x).  Off-diagonal
    gated pairs integrate to zero; gated diagonal entries are finite
    and positive, reported without a closed-form expectation.
    """
    out = {
        "m": m,
        "n": n,
        "gamma": gamma,
        "delta": delta,
        "gated": (m + n + 2.0 * gamma) < -1.0,
        "status": STATUS_UNGATED,
        "value": None,
        "relative_error": None,
    }
    if not out["gated"]:
        return out
    top = max(m, n)
    seq = romanovski_sequence(gamma, delta, top)
    members = [
        ComplexPoly([complex(c.real, 0.0) for c in seq.poly(k).coeffs])
        for k in range(top + 1)
    ]

    def pairing(i, j):
        def integrand(x):
            return (members[i].eval(x) * members[j].eval(x)).real * np.exp(
                gamma * np.log(x * x + 1.0) + 2.0 * delta * np.arctan(x)
            )

        return integrate_real(integrand, (-math.inf, math.inf), scheme).real

    value = pairing(m, n)
    out["value"] = value
    if m == n:
        out["relative_error"] = 0.0 if value > 0 else math.inf
    else:
        diag_ok = (2 * m + 2.0 * gamma) < -1.0 and (2 * n + 2.0 * gamma) < -1.0
        if diag_ok:
            scale = math.sqrt(abs(pairing(m, m)) * abs(pairing(n, n)))
        else:
            scale = 1.0
        out["scale"] = scale
        out["relative_error"] = abs(value) / scale
    out["status"] = STATUS_OK
    return out


# ---------------------------------------------------------------------------
# Limit relations: Jacobi to Laguerre and Jacobi to Hermite.


def laguerre_from_jacobi(n, b, alpha):
    """Finite-parameter candidate for the standard Laguerre member.

    Composes the degree-n Jacobi member at parameters (alpha, b) with
    (x - alpha - 1)/(x + alpha + 1) and rescales; exact for n <= 1 and
    within O(1/alpha) coefficientwise beyond.
    """
    member = generate(jacobi(alpha, b), n)[n]
    shift = MoebiusMap(1.0, -(alpha + 1.0), 1.0, alpha + 1.0)
    q = moebius_transform(member, shift, n)
    return q.scale((-1.0) ** n / (alpha + 1.0) ** n)


def laguerre_from_jacobi_szego(n, a, big):
    """The classical large-second-parameter candidate J_n(1 - 2x/big)."""
    member = generate(jacobi(a, big), n)[n]
    return member.shift_compose_linear(-2.0 / big, 1.0)


def hermite_from_jacobi(n, alpha):
    """Finite-parameter candidate for H_n/n! from an ultraspherical
    member at equal parameters, argument shrunk by sqrt(alpha)."""
    member = generate(jacobi(alpha, alpha), n)[n]
    root = math.sqrt(alpha)
    return member.shift_compose_linear(1.0 / root, 0.0).scale((2.0 / root) ** n)


def coefficient_error(candidate, target):
    """Largest coefficient deviation relative to the target's scale."""
    a = candidate.coeffs
    b = target.coeffs
    scale = max([abs(c) for c in b] + [1e-300])
    width = max(len(a), len(b))
    return (
        max(
            abs((a[j] if j < len(a) else 0j) - (b[j] if j < len(b) else 0j))
            for j in range(width)
        )
        / scale
    )


LAGUERRE_SAMPLES = tuple(float(x) for x in np.linspace(0.25, 6.0, 12))
HERMITE_SAMPLES = tuple(float(x) for x in np.linspace(-2.5, 2.5, 11))
EXACT_FLOOR = 1e-12


def _laguerre_route_value(n, b, alpha, x):
    """Mapped-Jacobi candidate value, through the value recurrence.

    Extracting monomial coefficients at large alpha cancels to rubble,
    but the composed value (1 + x/(alpha+1))^n J_n((x-alpha-1)/(x+alpha+1))
    is well conditioned, so the convergence tables sample it directly.
    """
    t = (x - alpha - 1.0) / (x + alpha + 1.0)
    pj = recurrence_values(jacobi(alpha, b), n, t)[n]
    return (-1.0) ** n * (1.0 + x / (alpha + 1.0)) ** n * pj


def _szego_route_value(n, a, big, x):
    return recurrence_values(jacobi(a, big), n, 1.0 - 2.0 * x / big)[n]


def _hermite_route_value(n, alpha, x):
    root = math.sqrt(alpha)
    pj = recurrence_values(jacobi(alpha, alpha), n, x / root)[n]
    return (2.0 / root) ** n * pj


def _sup_error(candidate_vals, target_vals):
    scale = max(max(abs(v) for v in target_vals), 1.0)
    return max(abs(c - t) for c, t in zip(candidate_vals, target_vals)) / scale


def _ratio_table(errors):
    ratios = []
    for j in range(1, len(errors)):
        if errors[j - 1] == 0.0:
            ratios.append(math.nan)
        else:
            ratios.append(errors[j] / errors[j - 1])
    return ratios


def jacobi_to_laguerre_limit_check(n, b, alphas=(1e2, 1e3, 1e4)):
    """Error table for the mapped-Jacobi route to the Laguerre member.

    Errors are sup-norm deviations over a fixed sample grid; halving
    the table to each next alpha should scale them by about 1/10.
    """
    targets = [
        recurrence_values(laguerre(b), n, x)[n] for x in LAGUERRE_SAMPLES
    ]
    errors = [
        _sup_error(
            [_laguerre_route_value(n, b, a, x) for x in LAGUERRE_SAMPLES],
            targets,
        )
        for a in alphas
    ]
    exact = all(e < EXACT_FLOOR for e in errors)
    ratios = [] if exact else _ratio_table(errors)
    ok = exact or all(RATIO_BAND[0] <= r <= RATIO_BAND[1] for r in ratios)
    return {
        "n": n,
        "b": b,
        "alphas": list(alphas),
        "errors": errors,
        "ratios": ratios,
        "exact": exact,
        "ok": ok,
    }


def jacobi_to_hermite_limit_check(n, alphas=(1e2, 1e3, 1e4)):
    """Error table for the equal-parameter route to H_n/n!."""
    fac = math.factorial(n)
    targets = [
        recurrence_values(hermite(), n, x)[n] / fac for x in HERMITE_SAMPLES
    ]
    errors = [
        _sup_error(
            [_hermite_route_value(n, a, x) for x in HERMITE_SAMPLES],
            targets,
        )
        for a in alphas
    ]
    exact = all(e < EXACT_FLOOR for e in errors)
    ratios = [] if exact else _ratio_table(errors)
    ok = exact or all(RATIO_BAND[0] <= r <= RATIO_BAND[1] for r in ratios)
    return {
        "n": n,
        "alphas": list(alphas),
        "errors": errors,
        "ratios": ratios,
        "exact": exact,
        "ok": ok,
    }


def szego_laguerre_check(n, a, bigs=(1e2, 1e3, 1e4)):
    """Error table for the classical large-parameter identity, used to
    confirm the mapped route lands on the same limit."""
    targets = [
        recurrence_values(laguerre(a), n, x)[n] for x in LAGUERRE_SAMPLES
    ]
    errors = [
        _sup_error(
            [_szego_route_value(n, a, big, x) for x in LAGUERRE_SAMPLES],
            targets,
        )
        for big in bigs
    ]
    return {
        "n": n,
        "a": a,
        "bigs": list(bigs),
        "errors": errors,
        "decreasing": all(
            errors[j] < errors[j - 1] for j in range(1, len(errors))
        )
        or all(e < EXACT_FLOOR for e in errors),
    }


def jacobi_weight_limit_check(alphas, b, xs=None):
    """Pointwise convergence of the scaled transformed weight to the
    Laguerre weight x^b e^{-x}.

    The scaled weight is x^b (x+alpha+1)^(-alpha-b-2) alpha^(b+1)
    (alpha+1)^(alpha+1); the relative deviation from x^b e^{-x} is
    computed in log space and is O(1/alpha).
    """
    if xs is None:
        xs = np.linspace(0.1, 8.0, 40)
    xs = np.asarray(xs, dtype=float)
    errors = []
    for a in alphas:
        logdiff = (
            xs
            - (a + b + 2.0) * np.log1p(xs / (a + 1.0))
            - (b + 1.0) * math.log1p(1.0 / a)
        )
        errors.append(float(np.max(np.abs(np.expm1(logdiff)))))
    ratios = _ratio_table(errors)
    ok = all(RATIO_BAND[0] <= r <= RATIO_BAND[1] for r in ratios)
    return {
        "b": b,
        "alphas": list(alphas),
        "errors": errors,
        "ratios": ratios,
        "ok": ok,
    }
