"""Classical families: recurrence output against independent references."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from orthomap import InadmissibleParameters, UnknownFamily, builtin, generate
from orthomap.families import (
    cd_coupling,
    cd_kernel_residual,
    cd_kernel_residual_confluent,
    chebyshev_t,
    gen_laguerre,
    hermite,
    jacobi,
    laguerre,
    ode_residual,
    recurrence_values,
)

REF_TOL = 1e-11
GRID = np.linspace(-0.9, 0.9, 7)
POS_GRID = np.linspace(0.2, 5.0, 7)

small_param = st.floats(
    min_value=-0.8, max_value=3.0, allow_nan=False, allow_infinity=False
)


def _max_dev(polys, ref, xs):
    worst = 0.0
    for n, p in enumerate(polys):
        vals = p.eval(np.asarray(xs, dtype=complex))
        scale = max(np.abs(ref[n]).max(), 1.0)
        worst = max(worst, np.abs(vals - ref[n]).max() / scale)
    return worst


def test_hermite_values_at_one():
    polys = generate(hermite(), 4)
    assert [p.eval(1.0).real for p in polys] == [1.0, 2.0, 2.0, -4.0, -20.0]


def test_chebyshev_matches_reference():
    polys = generate(chebyshev_t(), 8)
    ref = [special.eval_chebyt(n, GRID) for n in range(9)]
    assert _max_dev(polys, ref, GRID) < REF_TOL


def test_hermite_matches_reference():
    polys = generate(hermite(), 8)
    ref = [special.eval_hermite(n, GRID * 2.0) for n in range(9)]
    assert _max_dev(polys, ref, GRID * 2.0) < REF_TOL


def test_laguerre_matches_reference():
    polys = generate(laguerre(0.4), 8)
    ref = [special.eval_genlaguerre(n, 0.4, POS_GRID) for n in range(9)]
    assert _max_dev(polys, ref, POS_GRID) < REF_TOL


def test_second_parameter_scales_laguerre_argument():
    polys = generate(gen_laguerre(0.4, 1.5), 8)
    ref = [special.eval_genlaguerre(n, 0.4, 1.5 * POS_GRID) for n in range(9)]
    assert _max_dev(polys, ref, POS_GRID) < REF_TOL


def test_jacobi_matches_reference():
    polys = generate(jacobi(0.3, 0.6), 8)
    ref = [special.eval_jacobi(n, 0.3, 0.6, GRID) for n in range(9)]
    assert _max_dev(polys, ref, GRID) < REF_TOL


def test_generated_degrees_are_exact():
    for fam in (chebyshev_t(), hermite(), laguerre(0.4), jacobi(0.3, 0.6)):
        for n, p in enumerate(generate(fam, 10)):
            assert p.degree == n


def test_ode_coefficient_shapes():
    for fam in (chebyshev_t(), hermite(), laguerre(0.4), jacobi(0.3, 0.6)):
        assert fam.ode_f.degree <= 2
        assert fam.ode_g.degree <= 1


def test_norms_real_and_positive():
    for fam in (chebyshev_t(), hermite(), laguerre(0.4), jacobi(0.3, 0.6)):
        for n in range(9):
            k = fam.norm(n)
            assert abs(k.imag) < 1e-13 * abs(k)
            assert k.real > 0.0


def test_hermite_norm_closed_form():
    fam = hermite()
    for n in range(8):
        expect = math.sqrt(math.pi) * 2**n * math.factorial(n)
        assert abs(fam.norm(n).real - expect) < 1e-12 * expect


def test_jacobi_norm_closed_form():
    a, b = 0.3, 0.6
    fam = jacobi(a, b)
    for n in range(7):
        s = a + b
        expect = (
            2 ** (s + 1)
            / (2 * n + s + 1)
            * special.gamma(n + a + 1)
            * special.gamma(n + b + 1)
            / special.gamma(n + s + 1)
            / math.factorial(n)
        )
        assert abs(fam.norm(n).real - expect) < 1e-11 * expect


def test_value_recurrence_matches_coefficient_route():
    for fam in (chebyshev_t(), jacobi(0.3, 0.6), laguerre(0.4)):
        polys = generate(fam, 8)
        for x in (0.37, -0.52, 0.9 + 0.2j):
            vals = recurrence_values(fam, 8, x)
            for n in range(9):
                ref = polys[n].eval(x)
                assert abs(vals[n] - ref) < 1e-12 * max(abs(ref), 1.0)


def test_weight_positive_inside_interval():
    cases = (
        (chebyshev_t(), GRID),
        (hermite(), GRID * 2.0),
        (laguerre(0.4), POS_GRID),
        (jacobi(0.3, 0.6), GRID),
    )
    for fam, xs in cases:
        for x in xs:
            w = fam.weight_eval(x)
            assert abs(w.imag) < 1e-13 * abs(w)
            assert w.real > 0.0


def test_classical_ode_residuals_vanish():
    for fam in (chebyshev_t(), hermite(), laguerre(0.4), jacobi(0.3, 0.6)):
        for n in (1, 3, 6):
            for x in (0.41, -0.3):
                assert abs(ode_residual(fam, n, x, relative=True)) < 1e-11


def test_classical_kernel_identity():
    for fam in (chebyshev_t(), hermite(), jacobi(0.3, 0.6)):
        for n in (2, 5):
            assert abs(
                cd_kernel_residual(fam, n, 0.31, -0.47, relative=True)
            ) < 1e-10
            assert abs(
                cd_kernel_residual_confluent(fam, n, 0.31, relative=True)
            ) < 1e-10


def test_kernel_coupling_accumulates_recurrence_products():
    fam = jacobi(0.3, 0.6)
    coup, dees = cd_coupling(fam, 5)
    assert dees[0] == 1.0 + 0j
    d = 1.0 + 0j
    for k in range(6):
        a_next, _, _ = fam.recurrence(k + 1)
        assert abs(dees[k] - d) < 1e-13 * abs(d)
        assert abs(coup[k] - a_next / d) < 1e-13 * abs(coup[k])
        _, _, c_next = fam.recurrence(k + 2)
        d = d * c_next


def test_unknown_family_rejected():
    with pytest.raises(UnknownFamily):
        builtin("legendre-q")


def test_builtin_requires_family_parameters():
    fam = builtin("jacobi", alpha=0.3, beta=0.6)
    assert fam.name == "jacobi"
    assert fam.params["alpha"] == 0.3 + 0j


def test_complex_jacobi_parameters_integrable_by_real_part():
    assert jacobi(0.5 + 1j, 0.5 - 1j).integrable
    assert not jacobi(-1.5, 0.0).integrable
    assert not jacobi(0.5, -1.2).integrable


def test_nonpositive_laguerre_scale_not_integrable():
    assert gen_laguerre(0.4, 1.5).integrable
    assert not gen_laguerre(0.4, -1.5).integrable


@settings(deadline=None, max_examples=40)
@given(small_param, small_param, st.integers(2, 8))
def test_jacobi_recurrence_consistency(a, b, n):
    fam = jacobi(a, b)
    x = 0.37
    polys = generate(fam, n)
    an, bn, cn = fam.recurrence(n)
    lhs = polys[n].eval(x)
    rhs = (an * x - bn) * polys[n - 1].eval(x) - cn * polys[n - 2].eval(x)
    assert abs(lhs - rhs) < 1e-9 * max(abs(lhs), 1.0)


@settings(deadline=None, max_examples=40)
@given(small_param, st.integers(1, 8))
def test_laguerre_matches_reference_at_random_parameter(a, n):
    fam = laguerre(a)
    p = generate(fam, n)[n]
    ref = special.eval_genlaguerre(n, a, POS_GRID)
    assert np.abs(p.eval(POS_GRID.astype(complex)) - ref).max() < 1e-9 * max(
        np.abs(ref).max(), 1.0
    )
