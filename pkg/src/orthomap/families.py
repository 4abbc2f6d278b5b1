"""Classical orthogonal polynomial families.

Each family packages the data the rest of the library consumes: the
three-term recurrence P_n = (A_n x - B_n) P_{n-1} - C_n P_{n-2} with
P_{-1} = 0 and P_0 = 1, the orthogonality interval and weight, squared
norms, the hypergeometric-type differential equation f y'' + g y' +
h_n y = 0, and the Rodrigues data (prefactor eps_n and the product
f(x)^n w(x) with merged factor exponents).

Families are plain data plus small closures; construction never
enforces weight integrability (several constructions downstream run
families at parameters where the weight is not integrable on the
interval), but ``integrable`` records whether the classical
orthogonality integral converges so quadrature code can refuse early.
"""

from __future__ import annotations

import cmath
import dataclasses
import math
from dataclasses import dataclass, field

from .calculus import StructuredWeight, sw_eval
from .errors import CoincidentPoints, InadmissibleParameters, UnknownFamily
from .gammafn import complex_log_gamma
from .polynomial import ComplexPoly, ONE, ZERO

__all__ = [
    "FamilySpec",
    "chebyshev_t",
    "hermite",
    "laguerre",
    "gen_laguerre",
    "jacobi",
    "builtin",
    "BUILTIN_NAMES",
    "generate",
    "ode_residual",
    "cd_coupling",
    "cd_kernel_residual",
    "cd_kernel_residual_confluent",
]


@dataclass(frozen=True)
class FamilySpec:
    """Recurrence, weight, norms, ODE, and Rodrigues data for one family."""

    name: str
    params: dict
    interval: tuple
    weight: StructuredWeight
    ode_f: ComplexPoly
    ode_g: ComplexPoly
    integrable: bool
    _recurrence: callable = field(repr=False)
    _norm: callable = field(repr=False)
    _eigenvalue: callable = field(repr=False)
    _rodrigues_eps: callable = field(repr=False)
    _rodrigues_numerator: callable = field(repr=False)
    _coeffs: callable = field(default=None, repr=False)

    def recurrence(self, n):
        """Coefficients (A_n, B_n, C_n) of the step to degree n >= 1."""
        if n < 1:
            raise ValueError("recurrence index starts at 1")
        return self._recurrence(n)

    def norm(self, n):
        """Squared norm of the degree-n member against the weight."""
        return self._norm(n)

    def eigenvalue(self, n):
        """Eigenvalue h_n in f y'' + g y' + h_n y = 0."""
        return self._eigenvalue(n)

    def rodrigues_eps(self, n):
        return self._rodrigues_eps(n)

    def rodrigues_numerator(self, n):
        """The product f^n w as a structured weight, exponents merged."""
        return self._rodrigues_numerator(n)

    def weight_eval(self, x):
        return sw_eval(self.weight, x)


def chebyshev_t():
    """Chebyshev polynomials of the first kind on (-1, 1)."""

    def rec(n):
        if n == 1:
            return (1.0 + 0j, 0j, 0j)
        return (2.0 + 0j, 0j, 1.0 + 0j)

    def norm(n):
        return complex(math.pi if n == 0 else math.pi / 2.0)

    def eps(n):
        return complex((-2.0) ** n * math.factorial(n) / math.factorial(2 * n))

    def numer(n):
        return StructuredWeight(
            factors=((-1.0, 1.0, n - 0.5), (1.0, 1.0, n - 0.5))
        )

    return FamilySpec(
        name="chebyshev-t",
        params={},
        interval=(-1.0, 1.0),
        weight=StructuredWeight(factors=((-1.0, 1.0, -0.5), (1.0, 1.0, -0.5))),
        ode_f=ComplexPoly((1.0, 0.0, -1.0)),
        ode_g=ComplexPoly((0.0, -1.0)),
        integrable=True,
        _recurrence=rec,
        _norm=norm,
        _eigenvalue=lambda n: complex(n * n),
        _rodrigues_eps=eps,
        _rodrigues_numerator=numer,
    )


def hermite():
    """Physicists' Hermite polynomials on the real line."""

    def rec(n):
        return (2.0 + 0j, 0j, complex(2.0 * (n - 1)))

    def norm(n):
        return complex(2.0**n * math.factorial(n) * math.sqrt(math.pi))

    def numer(n):
        return StructuredWeight(exp_quad=-1.0)

    return FamilySpec(
        name="hermite",
        params={},
        interval=(-math.inf, math.inf),
        weight=StructuredWeight(exp_quad=-1.0),
        ode_f=ONE,
        ode_g=ComplexPoly((0.0, -2.0)),
        integrable=True,
        _recurrence=rec,
        _norm=norm,
        _eigenvalue=lambda n: complex(2.0 * n),
        _rodrigues_eps=lambda n: complex((-1.0) ** n),
        _rodrigues_numerator=numer,
    )


def gen_laguerre(alpha, beta):
    """Laguerre-type polynomials with weight x^alpha e^{-beta x} on (0, inf).

    The degree-n member equals the standard Laguerre polynomial with
    parameter alpha evaluated at beta*x.  beta = 0 collapses the degree
    and is rejected.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    if beta == 0:
        raise InadmissibleParameters("scale parameter must be nonzero")
    integrable = (
        alpha.imag == 0
        and beta.imag == 0
        and alpha.real > -1.0
        and beta.real > 0.0
    )

    def rec(n):
        return (-beta / n, -(2.0 * n - 1.0 + alpha) / n, (n - 1.0 + alpha) / n)

    def norm(n):
        return cmath.exp(
            -(alpha + 1.0) * cmath.log(beta)
            + complex_log_gamma(n + alpha + 1.0)
            - complex_log_gamma(n + 1.0)
        )

    def numer(n):
        return StructuredWeight(
            factors=((1.0, 0.0, n + alpha),), exp_lin=-beta
        )

    def coeffs(n):
        # Descending ratio products: every factor is a small exact
        # ratio, so each coefficient comes out relatively accurate.
        # The coefficient recurrence cannot do that here; the trailing
        # coefficients shrink like beta^n / n! and end up as roundoff
        # below the recurrence's working scale once n is moderate.
        row = [0j] * (n + 1)
        c = 1.0 + 0j
        for j in range(1, n + 1):
            c *= -beta / j
        row[n] = c
        for k in range(n - 1, -1, -1):
            c = c * (k + 1.0) * (alpha + k + 1.0) / (-beta * (n - k))
            row[k] = c
        return tuple(row)

    return FamilySpec(
        name="gen-laguerre",
        params={"alpha": alpha, "beta": beta},
        interval=(0.0, math.inf),
        weight=StructuredWeight(factors=((1.0, 0.0, alpha),), exp_lin=-beta),
        ode_f=ComplexPoly((0.0, 1.0)),
        ode_g=ComplexPoly((alpha + 1.0, -beta)),
        integrable=integrable,
        _recurrence=rec,
        _norm=norm,
        _eigenvalue=lambda n: beta * n,
        _rodrigues_eps=lambda n: complex(1.0 / math.factorial(n)),
        _rodrigues_numerator=numer,
        _coeffs=coeffs,
    )


def laguerre(alpha):
    """Standard Laguerre polynomials, weight x^alpha e^{-x} on (0, inf)."""
    return dataclasses.replace(
        gen_laguerre(alpha, 1.0),
        name="laguerre",
        params={"alpha": complex(alpha)},
    )


def jacobi(alpha, beta):
    """Jacobi polynomials, weight (1-x)^alpha (1+x)^beta on (-1, 1).

    Parameters may be complex; recurrence denominators that vanish for
    a requested degree raise at that degree, not at construction.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    s = alpha + beta
    # complex exponents stay integrable as long as the real parts do:
    # |(1-x)^alpha| = (1-x)^Re(alpha) on the real interval
    integrable = alpha.real > -1.0 and beta.real > -1.0

    def rec(n):
        if n == 1:
            return ((s + 2.0) / 2.0, (beta - alpha) / 2.0, 0j)
        den = 2.0 * n * (n + s) * (2.0 * n + s - 2.0)
        if den == 0:
            raise InadmissibleParameters(
                f"recurrence denominator vanishes at degree {n} "
                f"for parameters ({alpha}, {beta})"
            )
        a = (2.0 * n + s - 1.0) * (2.0 * n + s) * (2.0 * n + s - 2.0) / den
        b = -(2.0 * n + s - 1.0) * (alpha**2 - beta**2) / den
        c = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * (2.0 * n + s) / den
        return (a, b, c)

    def norm(n):
        return cmath.exp(
            (s + 1.0) * math.log(2.0)
            + complex_log_gamma(n + alpha + 1.0)
            + complex_log_gamma(n + beta + 1.0)
            - complex_log_gamma(n + s + 1.0)
            - complex_log_gamma(n + 1.0)
        ) / (2.0 * n + s + 1.0)

    def numer(n):
        return StructuredWeight(
            factors=((-1.0, 1.0, alpha + n), (1.0, 1.0, beta + n))
        )

    def eps(n):
        return complex((-1.0) ** n / (2.0**n * math.factorial(n)))

    return FamilySpec(
        name="jacobi",
        params={"alpha": alpha, "beta": beta},
        interval=(-1.0, 1.0),
        weight=StructuredWeight(
            factors=((-1.0, 1.0, alpha), (1.0, 1.0, beta))
        ),
        ode_f=ComplexPoly((1.0, 0.0, -1.0)),
        ode_g=ComplexPoly((beta - alpha, -(s + 2.0))),
        integrable=integrable,
        _recurrence=rec,
        _norm=norm,
        _eigenvalue=lambda n: n * (n + s + 1.0),
        _rodrigues_eps=eps,
        _rodrigues_numerator=numer,
    )


BUILTIN_NAMES = ("chebyshev-t", "hermite", "laguerre", "gen-laguerre", "jacobi")


def builtin(name, **params):
    """Construct a family by name; raises UnknownFamily for other names."""
    ctors = {
        "chebyshev-t": chebyshev_t,
        "hermite": hermite,
        "laguerre": laguerre,
        "gen-laguerre": gen_laguerre,
        "jacobi": jacobi,
    }
    try:
        ctor = ctors[name]
    except KeyError:
        raise UnknownFamily(
            f"unknown family {name!r}; known: {', '.join(BUILTIN_NAMES)}"
        ) from None
    return ctor(**params)


def generate(fam, nmax):
    """Members of degree 0..nmax.

    Runs the coefficient recurrence unless the family carries a direct
    coefficient rule that is better conditioned (Laguerre does).
    """
    if fam._coeffs is not None:
        return [ComplexPoly(fam._coeffs(n)) for n in range(nmax + 1)]
    polys = [ONE]
    prev = ZERO
    for n in range(1, nmax + 1):
        a, b, c = fam.recurrence(n)
        step = ComplexPoly((-b, a))
        polys.append(step * polys[-1] - prev.scale(c))
        prev = polys[-2]
    return polys


def recurrence_values(fam, nmax, x):
    """Member values at one point by running the recurrence on values.

    At extreme parameters the monomial coefficients cancel
    catastrophically while the values themselves stay well scaled, so
    anything comparing members near a parameter limit should evaluate
    through here rather than through ``generate``.
    """
    x = complex(x)
    vals = [1.0 + 0j]
    prev = 0j
    for n in range(1, nmax + 1):
        a, b, c = fam.recurrence(n)
        vals.append((a * x - b) * vals[-1] - c * prev)
        prev = vals[-2]
    return vals


def ode_residual(fam, n, x, relative=False):
    """Residual of f P_n'' + g P_n' + h_n P_n at x (should vanish)."""
    p = generate(fam, n)[n]
    dp = p.derivative()
    terms = (
        fam.ode_f.eval(x) * dp.derivative().eval(x),
        fam.ode_g.eval(x) * dp.eval(x),
        fam.eigenvalue(n) * p.eval(x),
    )
    res = sum(terms)
    if relative:
        scale = max(max(abs(t) for t in terms), 1.0)
        return res / scale
    return res


def cd_coupling(fam, nmax):
    """The weights A_{k+1}/D_k in the kernel sums, with D_k the product
    of the recurrence's C_j for j = 2..k+1 (D_0 = 1).

    Returns (couplings, D) with couplings[k] = A_{k+1}/D_k for
    k = 0..nmax and D[k] = D_k for k = 0..nmax.
    """
    coup = []
    dees = []
    d = 1.0 + 0j
    for k in range(nmax + 1):
        a_next, _, _ = fam.recurrence(k + 1)
        coup.append(a_next / d)
        dees.append(d)
        if k < nmax:
            _, _, c_next = fam.recurrence(k + 2)
            d = d * c_next
    return coup, dees


def cd_kernel_residual(fam, n, x, y, relative=False):
    """Kernel-sum identity residual at distinct points x, y.

    LHS is sum_{k<=n} (A_{k+1}/D_k) P_k(x) P_k(y); RHS is
    [P_{n+1}(x) P_n(y) - P_n(x) P_{n+1}(y)] / (D_n (x - y)).
    """
    x = complex(x)
    y = complex(y)
    if x == y:
        raise CoincidentPoints("points coincide; use the confluent form")
    polys = generate(fam, n + 1)
    coup, dees = cd_coupling(fam, n)
    lhs = sum(
        coup[k] * polys[k].eval(x) * polys[k].eval(y) for k in range(n + 1)
    )
    rhs = (
        polys[n + 1].eval(x) * polys[n].eval(y)
        - polys[n].eval(x) * polys[n + 1].eval(y)
    ) / (dees[n] * (x - y))
    res = lhs - rhs
    if relative:
        return res / max(abs(lhs), abs(rhs), 1.0)
    return res


def cd_kernel_residual_confluent(fam, n, x, relative=False):
    """The y -> x limit of :func:`cd_kernel_residual`.

    RHS becomes [P_{n+1}'(x) P_n(x) - P_n'(x) P_{n+1}(x)] / D_n.
    """
    x = complex(x)
    polys = generate(fam, n + 1)
    coup, dees = cd_coupling(fam, n)
    lhs = sum(coup[k] * polys[k].eval(x) ** 2 for k in range(n + 1))
    rhs = (
        polys[n + 1].derivative().eval(x) * polys[n].eval(x)
        - polys[n].derivative().eval(x) * polys[n + 1].eval(x)
    ) / dees[n]
    res = lhs - rhs
    if relative:
        return res / max(abs(lhs), abs(rhs), 1.0)
    return res
