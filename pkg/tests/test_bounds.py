import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plapratio.bounds import (
    ProblemParams,
    Regime,
    compute_m,
    constants_table,
    large_p_check,
    max_profile_m,
    gamma_bound,
    ratio_bound,
)
from plapratio.exceptions import InvalidParameterError, NoBoundAvailableError


def brute_force_m(p, points=10**6 + 1):
    x = np.linspace(0.0, 1.0, points)
    return float(np.max((p - x) * x ** (p - 1) + (1 - x) ** p)) ** (1.0 / p)


def test_m_at_two_is_one():
    assert compute_m(2.0) == pytest.approx(1.0, abs=1e-14)


def test_m_matches_grid_scan_at_three_halves():
    assert compute_m(1.5) == pytest.approx(brute_force_m(1.5), abs=1e-8)
    assert compute_m(1.5) == pytest.approx(1.1951439825, abs=1e-9)


def test_m_tends_to_one_from_below_two():
    ms = [compute_m(p) for p in (1.9, 1.99, 1.999)]
    oracle = [brute_force_m(p) for p in (1.9, 1.99, 1.999)]
    np.testing.assert_allclose(ms, oracle, atol=1e-8)
    assert ms[0] > ms[1] > ms[2] > 1.0
    assert ms[2] - 1.0 < 1e-3


def test_m_random_exponents_against_grid_scan():
    rng = np.random.default_rng(20240611)
    for p in 1.0 + (1.0 - rng.random(20)):
        assert compute_m(p) == pytest.approx(brute_force_m(p), abs=1e-8), p


@pytest.mark.parametrize("p", [1.0, 0.5, -2.0])
def test_m_rejects_p_at_most_one(p):
    with pytest.raises(InvalidParameterError):
        compute_m(p)


def test_m_not_exposed_above_two():
    with pytest.raises(InvalidParameterError):
        compute_m(3.0)
    # raw maximization for p > 2 is the endpoint value (p-1)^(1/p)
    assert max_profile_m(3.0) == pytest.approx(2.0 ** (1.0 / 3.0), rel=1e-12)


def test_params_validation_and_conjugate():
    pp = ProblemParams(3.0, 2)
    assert pp.p_conj * (pp.p - 1) == pytest.approx(pp.p, rel=1e-12)
    for bad in [(1.0, 1), (2.0, 0), (2.0, 1.5), (float("nan"), 1)]:
        with pytest.raises(InvalidParameterError):
            ProblemParams(*bad)


def test_constants_p2_n1():
    c = constants_table(ProblemParams(2.0, 1))
    assert c.m_hat == pytest.approx(1.0)
    assert c.k_hat == pytest.approx(1.0)
    assert c.regime is Regime.P_GE_2_N1


def test_constants_p3_n2_golden():
    c = constants_table(ProblemParams(3.0, 2))
    # 2^(1/6) * 2 and 2^(1/2) * 3^(-1) * 2^2
    assert c.m_hat == pytest.approx(2.2449240966187460, rel=1e-13)
    assert c.k_hat == pytest.approx(1.8856180831641267, rel=1e-13)
    assert c.m == 2.0
    assert c.regime is Regime.P_GE_2_NGE2


def test_constants_p15_n1():
    c = constants_table(ProblemParams(1.5, 1))
    assert c.m_hat == c.m == compute_m(1.5)
    assert c.k_hat == 1.0
    assert c.regime is Regime.P_LE_2_N1


@pytest.mark.parametrize("p", [1.1, 1.5, 1.9, 2.0, 2.5, 3.0, 5.0, 10.0])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_constants_at_least_one(p, n):
    c = constants_table(ProblemParams(p, n))
    assert c.m_hat >= 1.0 and c.k_hat >= 1.0
    if p <= 2:
        assert c.k_hat == 1.0
        if n >= 2:
            assert c.m_hat >= c.m


@pytest.mark.parametrize("n", [2, 3, 4])
def test_branch_continuity_at_two(n):
    lo = constants_table(ProblemParams(2.0 - 1e-6, n))
    hi = constants_table(ProblemParams(2.0 + 1e-6, n))
    for a, b in [(lo.m, hi.m), (lo.m_hat, hi.m_hat), (lo.k_hat, hi.k_hat)]:
        assert abs(a - b) <= 1e-4
    at = constants_table(ProblemParams(2.0, n))
    assert at.m_hat == pytest.approx(1.0, abs=1e-9) and at.k_hat == pytest.approx(1.0, abs=1e-9)


def test_ratio_bound_p2_n1_is_five():
    rb = ratio_bound(ProblemParams(2.0, 1))
    assert rb.best == 5.0
    assert rb.ratio_bound_eq7 is None


def test_ratio_bound_p2_n2_is_three():
    rb = ratio_bound(ProblemParams(2.0, 2))
    assert rb.ratio_bound_eq9 == pytest.approx(3.0, rel=1e-14)
    assert rb.ratio_bound_eq7 is None  # N > p fails at N = p = 2


def test_ratio_bound_p2_n3_has_both_branches():
    rb = ratio_bound(ProblemParams(2.0, 3))
    assert rb.ratio_bound_eq7 == pytest.approx(1 + 4 * 3, rel=1e-14)
    assert rb.ratio_bound_eq9 == pytest.approx(1 + 4 / 3, rel=1e-14)
    assert rb.best == rb.ratio_bound_eq9


def test_ratio_bound_unavailable():
    with pytest.raises(NoBoundAvailableError) as exc:
        ratio_bound(ProblemParams(1.5, 1))
    assert exc.value.hypothesis == "N > p"
    assert "N > p" in str(exc.value)


@pytest.mark.parametrize("p", [1.1, 1.5, 1.9, 2.0, 2.5, 3.0, 5.0, 10.0])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ratio_bound_branch_presence(p, n):
    if p < 2 and n <= p:
        with pytest.raises(NoBoundAvailableError):
            ratio_bound(ProblemParams(p, n))
        return
    rb = ratio_bound(ProblemParams(p, n))
    assert (rb.ratio_bound_eq7 is not None) == (p <= 2 and n > p)
    assert (rb.ratio_bound_eq9 is not None) == (p >= 2)
    assert rb.best >= 1.0


@pytest.mark.parametrize("p", [2.0, 2.5, 3.0, 5.0, 10.0])
def test_best_nonincreasing_in_dimension(p):
    bests = [ratio_bound(ProblemParams(p, n)).best for n in range(1, 8)]
    assert all(b2 <= b1 * (1 + 1e-12) for b1, b2 in zip(bests, bests[1:]))


def test_gamma_bound_examples():
    pi2 = math.pi ** 2
    g = gamma_bound(ProblemParams(2.0, 1), pi2)
    assert g.value == pytest.approx(4 * pi2, rel=1e-14)
    assert 3 * pi2 <= g.value  # exact 1-D gap
    assert gamma_bound(ProblemParams(2.0, 2), 1.0).value == pytest.approx(2.0, rel=1e-14)
    g3 = gamma_bound(ProblemParams(3.0, 2), 1.0)
    m_hat = constants_table(ProblemParams(3.0, 2)).m_hat
    assert g3.value == pytest.approx(m_hat ** 3 * 2 ** -1.5 * 27, rel=1e-13)
    assert g3.value == pytest.approx(108.0, rel=1e-12)
    assert g3.gap_kind == "lambda2 - k_hat*lambda1"
    assert gamma_bound(ProblemParams(1.5, 2), 1.0).gap_kind == "lambda2 - lambda1"


def test_gamma_bound_errors():
    with pytest.raises(InvalidParameterError):
        gamma_bound(ProblemParams(2.0, 1), 0.0)
    with pytest.raises(NoBoundAvailableError):
        gamma_bound(ProblemParams(1.5, 1), 1.0)


@settings(max_examples=50, deadline=None)
@given(p=st.floats(2.0, 12.0), n=st.integers(1, 6))
def test_ratio_and_gap_consistent(p, n):
    params = ProblemParams(p, n)
    rb = ratio_bound(params)
    assert rb.ratio_bound_eq9 == pytest.approx(constants_table(params).k_hat + gamma_bound(params, 1.0).value, rel=1e-12)


@pytest.mark.parametrize(
    "p, n, ratio, lhs, rhs",
    [(3.0, 1, 8.0, 2 / 3, 2.0), (2.0, 1, 4.0, 1.0, 1.0), (10.0, 1, 2.0 ** 10, 0.2, 9.0)],
)
def test_large_p_check_examples(p, n, ratio, lhs, rhs):
    c = large_p_check(ProblemParams(p, n), ratio)
    assert c.lhs == pytest.approx(lhs, rel=1e-12)
    assert c.rhs == pytest.approx(rhs, rel=1e-12)
    assert c.satisfied
