import math

import numpy as np
import pytest
from scipy.integrate import quad

from dilbasis import profiles as pr
from dilbasis.profiles import (
    CoefficientSeries,
    coeff,
    coeffs,
    cubic,
    envelope,
    envelope_sum,
    envelope_tail,
    envelope_values,
    eval_profile,
    jump,
    jump_smoothed,
    psine,
    trapezoid,
    zeta_real,
)
from dilbasis.ptrig import pi_p

PI = math.pi

# mpmath (30-digit) references for the oscillatory coefficient quadrature.
SHAT_15_3 = 0.111323667270646
SHAT_15_9 = 0.00083740965472368314
SHAT_105_3 = 0.40604464152698958
SHAT_12_1 = 1.2147995050067286


def test_zeta_against_mpmath():
    import mpmath as mp

    mp.mp.dps = 25
    for s in [1.5, 2.0, 3.0, 4.0]:
        assert zeta_real(s) == pytest.approx(float(mp.zeta(s)), rel=1e-13)
    assert zeta_real(3.0) == pytest.approx(float(mp.zeta(3)), abs=1e-14)
    # near the pole the 1 - 2^(1-s) prefactor amplifies roundoff
    assert zeta_real(1.0001) == pytest.approx(float(mp.zeta(1.0001)), rel=1e-10)
    with pytest.raises(ValueError):
        zeta_real(1.0)


def test_profile_spec_validation():
    with pytest.raises(ValueError):
        pr.ProfileSpec("trapezoid", 0.6)
    with pytest.raises(ValueError):
        pr.ProfileSpec("cubic", 0.5)
    with pytest.raises(ValueError):
        pr.ProfileSpec("psine", 1.0)
    with pytest.raises(ValueError):
        pr.ProfileSpec("jump_smoothed", -0.1)
    with pytest.raises(ValueError):
        pr.ProfileSpec("nope", 0.1)


def test_eval_trapezoid_plateau():
    assert eval_profile(trapezoid(0.25), 0.5) == 1.0
    assert eval_profile(trapezoid(0.25), 0.125) == pytest.approx(0.5)


def test_eval_jump_signs():
    assert eval_profile(jump(), 0.3) == 1.0
    assert eval_profile(jump(), 1.3) == -1.0
    assert eval_profile(jump_smoothed(0.0), 1.3) == -1.0


def test_eval_cubic_ramp_value():
    # (x/b + 1)^2 (1 - x/(2b)) - 1 at b = 0.2, x = 0.1
    assert eval_profile(cubic(0.2), 0.1) == pytest.approx(0.6875, abs=1e-15)
    assert eval_profile(cubic(0.2), 0.2) == pytest.approx(1.0, abs=1e-15)


def test_eval_psine_matches_sin_p():
    from dilbasis.ptrig import sin_p

    x = np.linspace(-2.0, 2.0, 41)
    got = eval_profile(psine(1.5), x)
    want = sin_p(1.5, pi_p(1.5) * x)
    assert np.max(np.abs(got - want)) < 1e-14


@pytest.mark.parametrize(
    "spec",
    [jump(), trapezoid(0.3), trapezoid(0.5), cubic(0.1), psine(1.3), jump_smoothed(0.7)],
)
def test_profiles_odd_and_periodic(spec):
    x = np.linspace(0.05, 0.95, 19)
    left = eval_profile(spec, -x)
    right = eval_profile(spec, x)
    assert np.max(np.abs(left + right)) < 1e-9
    shifted = eval_profile(spec, x + 2.0)
    assert np.max(np.abs(shifted - right)) < 1e-9


@pytest.mark.parametrize("spec", [jump(), trapezoid(0.3), cubic(0.1), psine(1.3)])
def test_profiles_bounded_by_one(spec):
    x = np.linspace(-3.0, 3.0, 301)
    assert np.max(np.abs(eval_profile(spec, x))) <= 1.0 + 1e-12


def test_smoothed_jump_overshoots_one():
    # The synthesised series exceeds 1 near the plateau centre for eps > 0;
    # at x = 1/2 its value is (4/pi) * sum (-1)^k / (2k+1)^(1+eps) > 1.
    val = eval_profile(jump_smoothed(1.0), 0.5)
    assert 1.0 < val < 1.2


def test_even_coefficients_are_exact_zero():
    for spec in [jump(), jump_smoothed(0.5), trapezoid(0.2), cubic(0.1), psine(1.4)]:
        vals = coeffs(spec, np.arange(2, 41, 2))
        assert np.all(vals == 0.0)


def test_trapezoid_coeff_examples():
    assert coeff(trapezoid(0.5), 1) == pytest.approx(8.0 / PI ** 2, abs=1e-14)
    a = 0.3
    assert coeff(trapezoid(a), 1) == pytest.approx(4 * math.sin(PI * a) / (a * PI ** 2), abs=1e-14)


def test_jump_coeff_example():
    assert coeff(jump_smoothed(0.0), 3) == pytest.approx(4.0 / (3.0 * PI), abs=1e-15)
    assert coeff(jump(), 5) == pytest.approx(4.0 / (5.0 * PI), abs=1e-15)


def _quad_coeff(spec, j):
    # Direct numerical integration of 2 f(x) sin(j pi x) on [0, 1].
    val, _ = quad(
        lambda x: 2.0 * eval_profile(spec, x) * math.sin(j * PI * x),
        0.0,
        1.0,
        limit=400,
        epsabs=1e-12,
        epsrel=1e-12,
    )
    return val


@pytest.mark.parametrize("spec", [trapezoid(0.25), trapezoid(0.07), cubic(0.2), cubic(0.05)])
def test_closed_form_coeffs_match_quadrature(spec):
    for j in range(1, 52, 10):
        assert coeff(spec, j) == pytest.approx(_quad_coeff(spec, j), abs=1e-9)


def test_cubic_coeff_formula_value():
    b = 0.2
    want = 12.0 / (PI ** 3 * b ** 2) * (math.sin(PI * b) / (PI * b) - math.cos(PI * b))
    assert coeff(cubic(b), 1) == pytest.approx(want, abs=1e-14)


def test_psine_p2_coeffs_are_kronecker_delta():
    vals = coeffs(psine(2.0), np.arange(1, 52))
    assert vals[0] == pytest.approx(1.0, abs=1e-10)
    assert np.max(np.abs(vals[1:])) < 1e-10


def test_psine_coeffs_against_mpmath():
    assert coeff(psine(1.5), 3) == pytest.approx(SHAT_15_3, abs=1e-11)
    assert coeff(psine(1.5), 9) == pytest.approx(SHAT_15_9, abs=1e-11)
    assert coeff(psine(1.05), 3) == pytest.approx(SHAT_105_3, abs=1e-10)
    assert coeff(psine(1.2), 1) == pytest.approx(SHAT_12_1, abs=1e-11)


def test_envelope_examples():
    p = 1.7
    assert envelope(psine(p), 5) == pytest.approx(4.0 * pi_p(p) / (25.0 * PI ** 2), abs=1e-14)
    assert envelope(trapezoid(0.2), 2) == 0.0
    b = 0.1
    want = 12.0 / (PI ** 3 * b ** 2) * (1.0 / (81.0 * b * PI) + 1.0 / 27.0)
    assert envelope(cubic(b), 3) == pytest.approx(want, abs=1e-12)
    assert abs(coeff(cubic(b), 3)) <= want


def test_envelope_rejects_jump():
    with pytest.raises(ValueError):
        envelope(jump(), 3)
    with pytest.raises(ValueError):
        envelope_sum(jump_smoothed(0.0))


@pytest.mark.parametrize(
    "spec",
    [trapezoid(0.03), trapezoid(0.25), trapezoid(0.5),
     cubic(0.05), cubic(0.2), cubic(0.4),
     psine(1.05), psine(1.2), psine(2.0), psine(3.0),
     jump_smoothed(0.5)],
)
def test_envelope_dominates_coeffs(spec):
    js = np.arange(1, 1001)
    c = coeffs(spec, js)
    e = envelope_values(spec, js)
    assert np.all(np.abs(c) <= e + 1e-12)


def test_envelope_sums():
    assert envelope_sum(trapezoid(0.05)) == pytest.approx(10.0, abs=1e-12)
    assert envelope_sum(psine(2.0)) == pytest.approx(PI / 2.0, abs=1e-14)
    b = 0.1
    partial = float(np.sum(envelope_values(cubic(b), np.arange(1, 100001))))
    assert envelope_sum(cubic(b)) == pytest.approx(partial, abs=1e-5 * envelope_sum(cubic(b)))
    assert envelope_sum(cubic(b)) > partial


def test_envelope_tail_consistency():
    for spec in [trapezoid(0.07), cubic(0.12), psine(1.3), jump_smoothed(0.8)]:
        total = envelope_sum(spec)
        partial = float(np.sum(envelope_values(spec, np.arange(1, 402))))
        assert envelope_tail(spec, 401) == pytest.approx(total - partial, abs=1e-12)


def test_psine_decay_bound_strict():
    for p in [1.05, 1.2, 2.0, 3.0]:
        js = np.arange(1, 202, 2)
        c = np.abs(coeffs(psine(p), js))
        bound = 4.0 * pi_p(p) / (js.astype(float) ** 2 * PI ** 2)
        assert np.all(c < bound)


@pytest.mark.parametrize("spec", [trapezoid(0.2), cubic(0.15)])
def test_parseval(spec):
    js = np.arange(1, 10001)
    power = float(np.sum(coeffs(spec, js) ** 2))
    norm2, _ = quad(lambda x: eval_profile(spec, x) ** 2, 0.0, 1.0, limit=200)
    assert power == pytest.approx(2.0 * norm2, abs=1e-6)


def test_trapezoid_sum_identity():
    for a in (0.1, 0.25, 0.4):
        lhs, rhs = pr.trapezoid_sum_identity(a)
        assert abs(lhs - rhs) < 1e-8
    with pytest.raises(ValueError):
        pr.trapezoid_sum_identity(0.5)


def test_jump_smoothed_l2_distance():
    assert pr.jump_smoothed_l2_distance(0.0) == 0.0
    d1 = pr.jump_smoothed_l2_distance(0.1)
    d5 = pr.jump_smoothed_l2_distance(0.5)
    assert 0.0 < d1 < d5
    with pytest.raises(ValueError):
        pr.jump_smoothed_l2_distance(-1.0)


def test_series_memoization_consistency():
    series = CoefficientSeries(psine(1.3))
    one_by_one = [series.coeff(j) for j in (9, 3, 1)]
    batch = CoefficientSeries(psine(1.3)).values_upto(9)
    assert one_by_one == [batch[8], batch[2], batch[0]]


def test_series_abs_partial_sum_exclusions():
    series = CoefficientSeries(trapezoid(0.2))
    full = series.abs_partial_sum(25)
    without = series.abs_partial_sum(25, exclude=(1, 9))
    assert without == pytest.approx(
        full - abs(series.coeff(1)) - abs(series.coeff(9)), abs=1e-15
    )


def test_series_concurrent_readers():
    from concurrent.futures import ThreadPoolExecutor

    series = CoefficientSeries(psine(1.25))

    def work(j):
        return series.coeff(2 * j + 1)

    with ThreadPoolExecutor(max_workers=8) as pool:
        vals = list(pool.map(work, range(40)))
    expected = CoefficientSeries(psine(1.25)).values_upto(79)[::2]
    assert np.allclose(vals, expected, rtol=0, atol=0)


def test_coeff_rejects_bad_index():
    with pytest.raises(ValueError):
        coeff(trapezoid(0.2), 0)
