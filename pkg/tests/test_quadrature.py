"""Adaptive panel quadrature and Gram matrices on intervals and contours."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from orthomap import (
    INVERSION,
    InadmissibleParameters,
    QuadratureScheme,
    build,
    builtin,
    cayley_to_circle,
    gram_classical,
    gram_transformed_contour,
    gram_transformed_pullback,
    integrate_real,
)
from orthomap.families import chebyshev_t, gen_laguerre, hermite, jacobi, laguerre
from orthomap.quadrature import scheme_nodes

INT_TOL = 1e-12
GRAM_TOL = 1e-10

coeffs = st.lists(
    st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
    min_size=1,
    max_size=7,
)


def test_plain_exponential_tail():
    val = integrate_real(lambda x: np.exp(-x), (0.0, math.inf))
    assert abs(val - 1.0) < INT_TOL


def test_gamma_integral():
    val = integrate_real(
        lambda x: np.exp(2.3 * np.log(x) - x), (0.0, math.inf)
    )
    assert abs(val - special.gamma(3.3)) < INT_TOL * special.gamma(3.3)


def test_two_sided_gaussian():
    val = integrate_real(
        lambda x: np.exp(-x * x), (-math.inf, math.inf)
    )
    assert abs(val - math.sqrt(math.pi)) < INT_TOL


def test_endpoint_singularities_resolved():
    # the nodes grade into the anchors, so integrable blowups at an
    # endpoint converge without any change of variable
    val = integrate_real(
        lambda x: 1.0 / np.sqrt(np.abs(x)), (0.0, 1.0)
    )
    assert abs(val - 2.0) < 1e-11
    val = integrate_real(lambda x: np.log(x), (0.0, 1.0))
    assert abs(val + 1.0) < 1e-11


def test_shifted_finite_interval():
    val = integrate_real(lambda x: x * x, (1.0, 4.0))
    assert abs(val - 21.0) < INT_TOL * 21.0


def test_node_weights_cover_interval():
    grid = scheme_nodes(QuadratureScheme(), (-1.0, 1.0))
    assert abs(np.sum(grid.w) - 2.0) < 1e-13
    assert np.all(grid.w > 0.0)
    # nodes may round onto the anchors; the signed offsets carry the
    # true positions to full precision
    assert grid.x.min() >= -1.0 and grid.x.max() <= 1.0
    assert grid.off_lo is not None and grid.off_hi is not None
    assert np.all(grid.off_lo > 0.0)
    assert np.all(grid.off_hi < 0.0)


def test_smaller_scheme_already_converges():
    lean = QuadratureScheme(points_per_panel=32, levels=12)
    val = integrate_real(lambda x: np.exp(-x), (0.0, math.inf), lean)
    assert abs(val - 1.0) < 1e-10


@settings(deadline=None, max_examples=40)
@given(coeffs)
def test_polynomials_integrate_exactly(cs):
    moments = [2.0 / (k + 1) if k % 2 == 0 else 0.0 for k in range(len(cs))]
    expect = sum(c * mk for c, mk in zip(cs, moments))
    val = integrate_real(
        lambda x, cs=cs: sum(c * x**k for k, c in enumerate(cs)),
        (-1.0, 1.0),
    )
    scale = max(sum(abs(c) for c in cs), 1.0)
    assert abs(val - expect) < 1e-12 * scale


@pytest.mark.parametrize(
    "fam",
    [
        chebyshev_t(),
        hermite(),
        laguerre(0.5),
        gen_laguerre(0.4, 1.5),
        jacobi(0.3, 0.6),
    ],
    ids=lambda f: f.name,
)
def test_classical_gram_is_diagonal(fam):
    rep = gram_classical(fam, 8)
    assert rep.matrix.shape == (9, 9)
    assert rep.max_diag_err < GRAM_TOL
    assert rep.max_offdiag < GRAM_TOL
    assert rep.within(1e-7, 1e-8)


def test_gram_matrix_is_symmetric():
    rep = gram_classical(jacobi(0.3, 0.6), 6)
    sym = np.abs(rep.matrix - rep.matrix.T).max()
    assert sym < 1e-10 * np.abs(np.diag(rep.matrix)).max()


def test_gram_rejects_non_integrable_weight():
    with pytest.raises(InadmissibleParameters):
        gram_classical(jacobi(-1.5, 0.0), 2)


def test_pullback_gram_transformed_sequence():
    seq = build(chebyshev_t(), INVERSION, 6)
    rep = gram_transformed_pullback(seq, 6)
    assert rep.route == "pullback"
    assert rep.max_diag_err < GRAM_TOL
    assert rep.max_offdiag < GRAM_TOL


def test_contour_gram_agrees_with_pullback():
    cases = (
        (chebyshev_t(), INVERSION),
        (laguerre(0.5), INVERSION),
        (jacobi(0.3, 0.6), cayley_to_circle()),
        (hermite(), cayley_to_circle()),
    )
    for fam, m in cases:
        seq = build(fam, m, 6)
        rp = gram_transformed_pullback(seq, 6)
        rd = gram_transformed_contour(seq, 6)
        diag = np.sqrt(np.abs(np.diag(rp.matrix).real))
        scale = np.outer(diag, diag)
        assert np.max(np.abs(rp.matrix - rd.matrix) / scale) < GRAM_TOL


def test_disconnected_contour_norms():
    # the image curve splits into two rays when the inverse map's pole
    # falls inside the base interval
    seq = build(chebyshev_t(), INVERSION, 6)
    assert seq.contour.disconnected
    rep = gram_transformed_contour(seq, 6)
    assert rep.max_diag_err < 1e-9
    assert rep.max_offdiag < 1e-9


def test_transformed_diagonal_keeps_base_norms():
    fam = jacobi(0.3, 0.6)
    seq = build(fam, cayley_to_circle(), 5)
    rep = gram_transformed_pullback(seq, 5)
    for n in range(6):
        expect = fam.norm(n)
        assert abs(rep.matrix[n, n] - expect) < 1e-10 * abs(expect)
