"""Root finding with certification and the geometry of mapped zeros."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthomap import (
    INVERSION,
    MoebiusMap,
    apply,
    build,
    cayley_to_circle,
    find_roots,
    generate,
    interlacing_check,
    map_zero_check,
    unit_circle_check,
)
from orthomap.families import chebyshev_t, hermite, jacobi, laguerre

GENERIC = MoebiusMap(2, -1, 1, 3)

int_coeffs = st.lists(st.integers(-6, 6), min_size=2, max_size=9)


def _match_sets(found, expected, tol):
    left = list(expected)
    for z in found:
        best = min(range(len(left)), key=lambda i: abs(left[i] - z))
        assert abs(left[best] - z) < tol * (1.0 + abs(left[best]))
        left.pop(best)
    assert not left


def test_linear_and_quadratic_closed_forms():
    from orthomap.polynomial import ComplexPoly

    rs = find_roots(ComplexPoly((-1.5, 3.0)))
    assert len(rs.roots) == 1
    assert abs(rs.roots[0] - 0.5) < 1e-13
    rs = find_roots(ComplexPoly((2.0, -3.0, 1.0)))
    _match_sets(rs.roots, [1.0, 2.0], 1e-12)


def test_pure_power_deflates_exactly():
    from orthomap.polynomial import ComplexPoly

    rs = find_roots(ComplexPoly((0.0, 0.0, 0.0, 1.0)))
    assert rs.roots == (0j, 0j, 0j)
    assert all(e == 0.0 for e in rs.backward_errors)


def test_root_count_and_backward_errors():
    polys = generate(jacobi(0.3, 0.6), 10)
    for n in (4, 7, 10):
        rs = find_roots(polys[n])
        assert len(rs.roots) == n
        assert max(rs.backward_errors) < 1e-10


def test_roots_sorted_lexicographically():
    from orthomap.polynomial import ComplexPoly

    p = ComplexPoly((-6.0, 11.0, -6.0, 1.0))  # roots 1, 2, 3
    rs = find_roots(p)
    assert list(rs.roots) == sorted(
        rs.roots, key=lambda z: (z.real, z.imag)
    )


@settings(deadline=None, max_examples=50)
@given(int_coeffs)
def test_roots_match_reference_solver(cs):
    from orthomap.polynomial import ComplexPoly

    p = ComplexPoly([float(c) for c in cs])
    if p.degree < 1:
        return
    ref = np.roots(list(reversed([complex(c) for c in p.coeffs])))
    rs = find_roots(p)
    assert len(rs.roots) == len(ref)
    used = [False] * len(ref)
    for z in rs.roots:
        best, dist = None, math.inf
        for i, r in enumerate(ref):
            if not used[i] and abs(r - z) < dist:
                best, dist = i, abs(r - z)
        used[best] = True
        assert dist < 1e-6 * (1.0 + abs(ref[best]))


@pytest.mark.parametrize(
    "fam, m, n",
    [
        (jacobi(0.3, 0.6), GENERIC, 6),
        (chebyshev_t(), INVERSION, 7),
        (hermite(), cayley_to_circle(), 6),
        (laguerre(0.5), INVERSION, 5),
    ],
    ids=("jacobi-generic", "chebyshev-inversion", "hermite-circle",
         "laguerre-inversion"),
)
def test_transformed_zeros_are_mapped_base_zeros(fam, m, n):
    p = generate(fam, n)[n]
    report = map_zero_check(p, m, n)
    assert report["ok"]
    assert report["max_relative_mismatch"] < 1e-7


def test_degree_drop_counted_per_vanishing_base_root():
    # odd members vanish at the point the inversion sends to infinity
    p = generate(chebyshev_t(), 7)[7]
    report = map_zero_check(p, INVERSION, 7)
    assert report["degree_drop"] == 1
    assert len(report["computed"]) == 6


def test_mapped_zeros_stay_on_the_contour():
    # pulling each root back through the map must land inside the base
    # interval, real to near machine precision
    cases = (
        (jacobi(0.3, 0.6), GENERIC),
        (chebyshev_t(), INVERSION),
        (hermite(), cayley_to_circle()),
    )
    for fam, m in cases:
        seq = build(fam, m, 8)
        l, r = fam.interval
        for n in (3, 8):
            for z in find_roots(seq.poly(n)).roots:
                t = apply(m, z).value
                assert abs(t.imag) < 1e-8 * (1.0 + abs(t.real))
                if math.isfinite(l):
                    assert l < t.real < r


def test_mapped_zeros_are_simple():
    for fam, m in (
        (jacobi(0.3, 0.6), GENERIC),
        (chebyshev_t(), INVERSION),
        (hermite(), cayley_to_circle()),
    ):
        seq = build(fam, m, 9)
        for n in (5, 9):
            roots = find_roots(seq.poly(n)).roots
            span = max(abs(a - b) for a in roots for b in roots)
            gap = min(
                abs(a - b)
                for i, a in enumerate(roots)
                for b in roots[i + 1:]
            )
            assert gap > 1e-6 * span


def test_arc_ordering_matches_pullback_ordering():
    # walking the roots in pullback order must advance monotonically
    # along the circular image, in the contour's own direction
    fam = jacobi(0.3, 0.6)
    seq = build(fam, cayley_to_circle(), 8)
    spec = seq.contour
    roots = find_roots(seq.poly(8)).roots
    pairs = []
    for z in roots:
        t = apply(seq.map, z).value.real
        theta = cmath.phase(z - spec.center)
        progress = (theta - spec.theta0) * math.copysign(1.0, spec.sweep)
        pairs.append((t, progress % (2.0 * math.pi)))
    pairs.sort()
    angles = [ang for _, ang in pairs]
    assert all(a < b for a, b in zip(angles, angles[1:]))


@pytest.mark.parametrize(
    "fam, m",
    [
        (jacobi(0.3, 0.6), GENERIC),
        (chebyshev_t(), INVERSION),
        (hermite(), cayley_to_circle()),
        (laguerre(0.5), INVERSION),
    ],
    ids=("jacobi-generic", "chebyshev-inversion", "hermite-circle",
         "laguerre-inversion"),
)
def test_consecutive_members_interlace(fam, m):
    seq = build(fam, m, 9)
    for n in range(1, 9):
        rep = interlacing_check(
            seq.poly(n), seq.poly(n + 1), seq.map, n, fam.interval
        )
        assert rep["ok"], rep["reason"]


def test_interlacing_rejects_non_interlacing_input():
    seq = build(jacobi(0.3, 0.6), GENERIC, 6)
    rep = interlacing_check(
        seq.poly(2), seq.poly(6), seq.map, 2, jacobi(0.3, 0.6).interval
    )
    assert not rep["ok"]


def test_unit_circle_report_on_mapped_members():
    seq = build(hermite(), cayley_to_circle(), 8)
    for n in (3, 8):
        rep = unit_circle_check(seq.poly(n))
        assert rep["max_radius_deviation"] < 1e-9
        assert rep["self_inversive_score"] < 1e-9
        assert rep["unimodular_deviation"] < 1e-9


def test_unit_circle_report_flags_off_circle_roots():
    p = generate(jacobi(0.3, 0.6), 5)[5]  # roots inside (-1, 1)
    rep = unit_circle_check(p)
    assert rep["max_radius_deviation"] > 0.1
