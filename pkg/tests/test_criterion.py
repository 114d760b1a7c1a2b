import math

import numpy as np
import pytest

from dilbasis import criterion as cr
from dilbasis import profiles as pr
from dilbasis.criterion import (
    EQUIVALENT,
    INCONCLUSIVE,
    check_multi_term,
    check_two_term,
    cubic_family_check,
    cubic_plus_condition,
    psine_family_check,
    psine_tail_check,
    trapezoid_tail_lhs,
    trapezoid_tail_margin,
    trapezoid_two_prime_margin,
)

PI = math.pi


def test_trapezoid_one_prime_boundary():
    # With a single correction term the check reduces to the classical
    # envelope comparison whose threshold is near alpha = 0.0751.
    assert check_multi_term(pr.trapezoid(0.08), (1,), 1).verdict == EQUIVALENT
    assert check_multi_term(pr.trapezoid(0.07), (1,), 1).verdict == INCONCLUSIVE


def test_trapezoid_k500():
    rep = check_multi_term(pr.trapezoid(0.05), (1,), 500)
    assert rep.verdict == EQUIVALENT
    assert rep.cond1_margin > 0


def test_psine_p2_report_values():
    rep = check_multi_term(pr.psine(2.0), (1,), 0)
    assert rep.verdict == EQUIVALENT
    assert rep.mu == pytest.approx(1.0, abs=1e-10)
    assert rep.phi == pytest.approx(PI / 2.0, abs=1e-14)
    assert rep.cond2_value == pytest.approx(2.0 - PI / 2.0, abs=1e-6)
    assert rep.correction == 0.0


def test_cubic_family_example():
    rep = check_multi_term(pr.cubic(0.035), (1, 3, 9), 100)
    assert rep.verdict == EQUIVALENT


def test_correction_nonnegative_and_monotone_in_k():
    for spec, support in [
        (pr.trapezoid(0.05), (1,)),
        (pr.psine(1.05), (1, 3, 9)),
    ]:
        values = [
            check_multi_term(spec, support, k).cond2_value for k in range(0, 201, 10)
        ]
        diffs = np.diff(values)
        assert np.all(diffs >= -1e-12)
        assert all(
            check_multi_term(spec, support, k).correction >= 0.0
            for k in (0, 1, 7, 50)
        )


def test_report_determinism():
    a = check_multi_term(pr.trapezoid(0.04), (1, 3, 9), 25)
    b = check_multi_term(pr.trapezoid(0.04), (1, 3, 9), 25)
    assert a == b
    assert a.to_dict() == b.to_dict()


def test_report_serialization_fields():
    rep = check_multi_term(pr.psine(1.2), (1, 3, 9), 9)
    d = rep.to_dict()
    for key in (
        "profile_kind", "profile_param", "support", "k", "mu", "phi",
        "sum_support_abs", "correction", "cond1_margin", "cond2_value", "verdict",
    ):
        assert key in d


def test_check_multi_term_rejects_negative_k():
    with pytest.raises(ValueError):
        check_multi_term(pr.trapezoid(0.1), (1,), -1)


def test_two_term_condition3_gate():
    # The cubic coefficient at index 9 turns negative for beta near 0.18.
    rep = check_two_term(pr.cubic(0.18), 3)
    assert rep.cond3_ok is False
    assert rep.verdict == INCONCLUSIVE
    assert rep.reason


def test_two_term_regimes_and_values():
    rep = check_two_term(pr.psine(1.05), 3)
    assert rep.regime == 1
    assert rep.verdict == EQUIVALENT
    assert rep.mu == pytest.approx(0.959956, abs=1e-5)

    rep2 = check_two_term(pr.trapezoid(0.3), 3)
    assert rep2.cond3_ok
    assert rep2.regime in (1, 2)


@pytest.mark.parametrize(
    "spec", [pr.psine(1.05), pr.psine(1.06), pr.trapezoid(0.1), pr.cubic(0.08)]
)
def test_two_term_matches_multi_term_at_equal_truncation(spec):
    jmax = 1001
    two = check_two_term(spec, 3, jmax=jmax)
    multi = check_multi_term(spec, (1, 3, 9), jmax)
    assert two.verdict == multi.verdict
    if two.regime is not None:
        assert two.mu == pytest.approx(multi.mu, abs=1e-6)
        assert two.margin == pytest.approx(multi.cond2_value, abs=1e-6)


def test_psine_tail_check_published_crossing():
    assert psine_tail_check(1.0390, 61).verdict == EQUIVALENT
    rep = psine_tail_check(1.0380, 61)
    assert rep.verdict == INCONCLUSIVE


def test_psine_tail_check_regression_small_k():
    rep = psine_tail_check(1.05, 9)
    assert rep.cond1_ok and rep.cond2_ok
    assert rep.margin == pytest.approx(-0.2219554503, abs=1e-8)
    assert rep.verdict == INCONCLUSIVE


def test_psine_tail_check_domain():
    with pytest.raises(ValueError):
        psine_tail_check(1.2, 61)
    with pytest.raises(ValueError):
        psine_tail_check(1.05, 8)
    with pytest.raises(ValueError):
        psine_tail_check(1.05, 60)


def test_psine_family_p2_hand_value():
    rep = psine_family_check(2.0, 1, 9)
    expected = (
        1.0 - PI / 2.0 + 1.0
        + (4.0 / PI) * sum(1.0 / j ** 2 for j in (1, 3, 5, 7, 9)) - 1.0
    )
    assert rep.verdict == EQUIVALENT
    assert rep.margin == pytest.approx(expected, abs=1e-6)


def test_psine_family_published_sides():
    assert psine_family_check(1.05, 2, 251).verdict == EQUIVALENT
    assert psine_family_check(1.02, 2, 251).verdict == INCONCLUSIVE


def test_family_support_mapping():
    assert cr.family_support(1) == (1, 3, 9)
    assert cr.family_support(2) == (1, 3, 5, 9, 25)
    with pytest.raises(ValueError):
        cr.family_support(3)


def test_cubic_family_wrapper_consistency():
    direct = check_multi_term(pr.cubic(0.05), (1, 3, 5, 9, 25), 40)
    wrapped = cubic_family_check(0.05, 2, 40)
    assert wrapped.margin == direct.cond2_value
    assert wrapped.plus_margin == direct.cond1_margin
    assert wrapped.verdict == direct.verdict


def test_trapezoid_tail_margin_matches_rescaled_criterion():
    for a in (0.04, 0.05, 0.07):
        k_odd = 120
        display = trapezoid_tail_margin(a, k_odd)
        rep = check_multi_term(pr.trapezoid(a), (1,), 2 * k_odd + 1)
        rescaled = a * PI ** 2 / 4.0 * rep.cond2_value
        assert display == pytest.approx(rescaled, abs=1e-9)


def test_trapezoid_tail_lhs_vectorizes():
    grid = np.linspace(0.02, 0.08, 7)
    vec = trapezoid_tail_lhs(grid, 50)
    scalar = [trapezoid_tail_lhs(float(a), 50) for a in grid]
    assert np.allclose(vec, scalar, rtol=0, atol=1e-15)


def test_two_prime_margin_sign_behavior():
    assert trapezoid_two_prime_margin(0.035, 50) > 0
    assert trapezoid_two_prime_margin(0.02, 50) < 0


def test_cubic_plus_condition_tracks_condition1():
    for b in (0.03, 0.08, 0.14):
        lhs, rhs = cubic_plus_condition(b, 2)
        rep = check_multi_term(pr.cubic(b), (1, 3, 5, 9, 25), 0)
        assert (lhs < rhs) == (rep.cond1_margin > 0)
