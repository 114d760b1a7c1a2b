import cmath
import math

import numpy as np
import pytest

from dilbasis import dirichlet as dd
from dilbasis import profiles as pr
from dilbasis.dirichlet import (
    DirichletPolynomial,
    build_support,
    eval_multiplier_truncated,
    eval_poly,
    eval_poly_at,
    eval_series,
    jump_smoothed_multiplier,
    polynomial_for_profile,
)

ZETA3 = 1.2020569031595942854  # mpmath, 20 digits


def test_build_support_trivial():
    s = build_support([1])
    assert s.d == 0
    assert s.primes == ()
    assert s.elements == (1,)


def test_build_support_prime_powers():
    s = build_support([1, 3, 9])
    assert s.primes == (3,)
    assert s.exponent_map() == {3: (1,), 9: (2,)}


def test_build_support_two_primes():
    s = build_support([1, 3, 5, 9, 25])
    assert s.primes == (3, 5)
    assert s.exponent_map() == {3: (1, 0), 5: (0, 1), 9: (2, 0), 25: (0, 2)}


def test_build_support_requires_one_and_positive():
    with pytest.raises(ValueError):
        build_support([3, 9])
    with pytest.raises(ValueError):
        build_support([1, 0])


def test_factorization_round_trip():
    s = build_support([1, 2, 3, 4, 6, 12, 35, 49, 9973])
    for n, nu in zip(s.elements, s.exponents):
        rebuilt = 1
        for p, e in zip(s.primes, nu):
            rebuilt *= p ** e
        assert rebuilt == n


def test_polynomial_coefficient_consistency():
    s = build_support([1, 3, 9])
    poly = DirichletPolynomial.from_map(s, {1: 1.0, 3: -0.5, 9: 0.1})
    assert poly.coefficient_sum() == pytest.approx(0.6)
    assert eval_poly(poly, [0.0]) == pytest.approx(0.6)
    assert eval_series(poly, 0.0) == pytest.approx(0.6)
    with pytest.raises(ValueError):
        DirichletPolynomial.from_map(s, {1: 1.0, 3: -0.5})


def test_eval_poly_constant_case():
    poly = DirichletPolynomial.from_map(build_support([1]), {1: 0.7})
    assert eval_poly(poly, []) == pytest.approx(0.7)


def test_eval_poly_dimension_mismatch():
    poly = DirichletPolynomial.from_map(build_support([1, 3]), {1: 1.0, 3: 0.5})
    with pytest.raises(ValueError):
        eval_poly(poly, [0.1, 0.2])


def test_boundary_identification_single_prime():
    poly = DirichletPolynomial.from_map(
        build_support([1, 3, 9]), {1: 1.0, 3: -0.4, 9: 0.3}
    )
    for th in np.linspace(-math.pi, math.pi, 37):
        direct = abs(1.0 - 0.4 * cmath.exp(1j * th) + 0.3 * cmath.exp(2j * th))
        assert abs(abs(eval_poly(poly, [th])) - direct) < 1e-14


def test_boundary_identification_two_primes_trig_expansion():
    # Real/imaginary parts of p(w) on the torus match the explicit cosine and
    # sine expansion in the two-prime trapezoid polynomial.
    a = 0.035
    spec = pr.trapezoid(a)
    sup = build_support([1, 3, 5, 9, 25])
    poly = polynomial_for_profile(spec, sup)
    g = {n: pr.coeff(spec, n) for n in (1, 3, 5, 9, 25)}
    for x in np.linspace(-math.pi, math.pi, 20):
        for y in np.linspace(-math.pi, math.pi, 20):
            re = (g[1] + g[3] * math.cos(x) + g[9] * math.cos(2 * x)
                  + g[5] * math.cos(y) + g[25] * math.cos(2 * y))
            im = (g[3] * math.sin(x) + g[9] * math.sin(2 * x)
                  + g[5] * math.sin(y) + g[25] * math.sin(2 * y))
            val = eval_poly(poly, [x, y])
            assert abs(val.real - re) < 1e-14
            assert abs(val.imag - im) < 1e-14


def test_series_equals_polynomial_at_prime_powers():
    rng = np.random.default_rng(3)
    s = build_support([1, 2, 3, 4, 6, 9])
    poly = DirichletPolynomial.from_map(
        s, {n: rng.standard_normal() for n in s.elements}
    )
    for _ in range(20):
        z = complex(rng.uniform(0.5, 3.0), rng.uniform(-2.0, 2.0))
        w = [complex(p) ** (-z) for p in s.primes]
        assert abs(eval_series(poly, z) - eval_poly_at(poly, w)) < 1e-12


def test_multiplier_truncated_psine_p2():
    value, tail = eval_multiplier_truncated(pr.psine(2.0), 1.0, 1)
    assert value == pytest.approx(1.0, abs=1e-10)
    assert 0.0 < tail < 0.2


def test_multiplier_truncated_tail_dominates_refinement():
    v4, t4 = eval_multiplier_truncated(pr.trapezoid(0.3), 2.0, 10**4)
    v5, _ = eval_multiplier_truncated(pr.trapezoid(0.3), 2.0, 10**5)
    assert abs(v4 - v5) <= t4
    assert t4 < 1e-6


def test_multiplier_truncated_rejects_jump_and_left_half_plane():
    with pytest.raises(ValueError):
        eval_multiplier_truncated(pr.jump(), 1.0, 100)
    with pytest.raises(ValueError):
        eval_multiplier_truncated(pr.trapezoid(0.2), -0.5, 100)


def test_jump_smoothed_multiplier_zeta_form():
    want = 4.0 / math.pi * (1.0 - 2.0 ** -3) * ZETA3
    assert jump_smoothed_multiplier(1.0, 1.0) == pytest.approx(want, abs=1e-13)


def test_jump_smoothed_multiplier_cross_check():
    eps = 0.5
    closed = jump_smoothed_multiplier(eps, 0.5)
    value, tail = eval_multiplier_truncated(pr.jump_smoothed(eps), 0.5, 10**5)
    assert abs(value - closed) <= tail


def test_jump_smoothed_multiplier_pole_growth():
    eps = 0.5
    vals = [jump_smoothed_multiplier(eps, -eps + 10.0 ** -k).real for k in range(1, 7)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 1e5


def test_jump_smoothed_multiplier_complex_delegates_to_truncation():
    eps = 0.8
    z = complex(1.0, 0.7)
    got = jump_smoothed_multiplier(eps, z, jmax=20000)
    want, tail = eval_multiplier_truncated(pr.jump_smoothed(eps), z, 20000)
    assert got == want
    assert tail < 1e-3


def test_jump_smoothed_multiplier_domain_errors():
    with pytest.raises(ValueError):
        jump_smoothed_multiplier(0.0, 1.0)
    with pytest.raises(ValueError):
        jump_smoothed_multiplier(0.5, -0.6)
