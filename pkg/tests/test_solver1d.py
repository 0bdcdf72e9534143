import math

import numpy as np
import pytest
from scipy.integrate import quad

from plapratio.exceptions import InvalidInputError, InvalidParameterError
from plapratio.solver1d import (
    Interval1D,
    closed_form_eigenvalue,
    hardy_check_1d,
    pi_p,
    ratio_1d,
    shoot_eigenvalue,
)

UNIT = Interval1D(0.0, 1.0)


def pi_p_by_quadrature(p):
    # 2 * int_0^1 (1 - s^p)^(-1/p) ds with the endpoint singularity as a weight
    def smooth(s):
        if s >= 1.0:
            return p ** (-1.0 / p)
        return ((1.0 - s ** p) / (1.0 - s)) ** (-1.0 / p)

    val, _ = quad(smooth, 0.0, 1.0, weight="alg", wvar=(0.0, -1.0 / p), epsabs=1e-13, epsrel=1e-13)
    return 2.0 * val


def test_pi_p_at_two_is_pi():
    assert pi_p(2.0) == pytest.approx(math.pi, rel=1e-15)


@pytest.mark.parametrize("p", [1.5, 3.0])
def test_pi_p_matches_quadrature(p):
    assert pi_p(p) == pytest.approx(pi_p_by_quadrature(p), abs=1e-8)


def test_pi_p_random_exponents():
    rng = np.random.default_rng(7)
    for p in rng.uniform(1.1, 10.0, 10):
        assert pi_p(p) == pytest.approx(pi_p_by_quadrature(p), abs=1e-8), p


def test_interval_validation():
    with pytest.raises(InvalidParameterError):
        Interval1D(1.0, 1.0)
    assert Interval1D(-1.0, 2.0).length == 3.0


@pytest.mark.parametrize("n, expected", [(1, math.pi ** 2), (2, 4 * math.pi ** 2)])
def test_shoot_p2_classical(n, expected):
    mode = shoot_eigenvalue(UNIT, 2.0, n)
    assert mode.lam == pytest.approx(expected, rel=1e-6)
    assert mode.zeros == n - 1


def test_shoot_p3_matches_closed_form():
    assert shoot_eigenvalue(UNIT, 3.0, 1).lam == pytest.approx(closed_form_eigenvalue(3.0, 1), rel=1e-6)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sturm_zero_count(p, n):
    mode = shoot_eigenvalue(UNIT, p, n, tol=1e-7)
    assert mode.zeros == n - 1
    assert mode.lam == pytest.approx(closed_form_eigenvalue(p, n), rel=1e-6)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_scaling_law(p):
    length = 2.5
    on_unit = shoot_eigenvalue(UNIT, p, 1).lam
    scaled = shoot_eigenvalue(Interval1D(1.0, 1.0 + length), p, 1).lam
    assert scaled == pytest.approx(length ** -p * on_unit, rel=1e-6)


@pytest.mark.parametrize("p", [1.5, 3.0])
def test_initial_slope_irrelevant(p):
    a = shoot_eigenvalue(UNIT, p, 2, slope=1.0).lam
    b = shoot_eigenvalue(UNIT, p, 2, slope=-7.5).lam
    assert a == pytest.approx(b, rel=1e-8)


@pytest.mark.parametrize("p", [1.2, 1.5, 2.0, 3.0, 5.0])
def test_ratio_law(p):
    lam1 = shoot_eigenvalue(UNIT, p, 1).lam
    lam2 = shoot_eigenvalue(UNIT, p, 2).lam
    assert lam2 / lam1 == pytest.approx(ratio_1d(p), rel=1e-6)


def test_ratio_1d_values():
    assert ratio_1d(2.0) == 4.0
    assert ratio_1d(3.0) == 8.0
    assert ratio_1d(1.5) == pytest.approx(2.8284271247461903)


def test_mode_normalization():
    mode = shoot_eigenvalue(UNIT, 3.0, 1)
    w = np.abs(mode.u) ** 3
    h = mode.x[1] - mode.x[0]
    assert h * (w.sum() - 0.5 * (w[0] + w[-1])) == pytest.approx(1.0, rel=1e-12)
    assert abs(mode.u[-1]) < 1e-6 * np.max(np.abs(mode.u))


@pytest.mark.parametrize("kwargs", [dict(p=1.0), dict(p=2.0, n=0), dict(p=2.0, tol=0.0), dict(p=2.0, slope=0.0)])
def test_shoot_rejects_bad_arguments(kwargs):
    with pytest.raises(InvalidParameterError):
        shoot_eigenvalue(UNIT, **kwargs)


def test_hardy_sine():
    x = np.linspace(0.0, 1.0, 20001)
    entry = hardy_check_1d(x, np.sin(math.pi * x), 2.0)
    oracle, _ = quad(lambda t: (math.sin(math.pi * t) / t) ** 2 if t > 0 else math.pi ** 2, 0.0, 1.0)
    assert entry.lhs == pytest.approx(oracle, rel=1e-6)
    assert entry.rhs == pytest.approx(4 * math.pi ** 2 / 2, rel=1e-6)
    assert entry.slack > 0 and entry.satisfied


def test_hardy_polynomial():
    x = np.linspace(0.0, 1.0, 20001)
    entry = hardy_check_1d(x, x * (1 - x), 2.0)
    assert entry.lhs == pytest.approx(1 / 3, rel=1e-6)
    assert entry.rhs == pytest.approx(4 / 3, rel=1e-6)
    assert entry.slack == pytest.approx(1.0, rel=1e-6)


def test_hardy_on_shooting_mode():
    mode = shoot_eigenvalue(UNIT, 3.0, 1)
    entry = hardy_check_1d(mode.x, mode.u, 3.0)
    assert entry.slack >= 0 and entry.satisfied


def test_hardy_rejects_nonvanishing_field():
    x = np.linspace(0.0, 1.0, 101)
    with pytest.raises(InvalidInputError):
        hardy_check_1d(x, np.cos(x), 2.0)
    with pytest.raises(InvalidInputError):
        hardy_check_1d(x + 1.0, np.sin(math.pi * x), 2.0)
