import math
import time

import numpy as np
import pytest

from nsmeans.constants import (
    P0_BRACKET,
    ConstantsTable,
    constants,
    ineq11_profile,
    p0_equation,
    solve_p0,
    theta1,
    theta2,
)
from nsmeans.kernels import T_STAR
from nsmeans.means import MeanKind, evaluate, log_ratio, make_pair

# mpmath, 60 digits
THETA1 = {0.4: 0.16997202331424, 0.5: 0.171640812797223, 0.6: 0.173527344893655}
THETA2 = {0.4: 0.310368460232405, 0.5: 0.305652868609704, 0.6: 0.300443801675469}
P0 = 1.8435205184311404729

PRINTED = {
    "beta_thm11": "0.1821",
    "lambda_thm12": "0.27828",
    "alpha_ineq11": "0.1345",
    "mu_ineq12": "0.1865",
    "p0": "1.843",
}


@pytest.fixture(scope="module")
def table() -> ConstantsTable:
    return constants()


def test_ranges(table):
    assert 0.18 < table.beta_thm11 < 0.19
    assert 0.27 < table.lambda_thm12 < 0.29
    assert 0.13 < table.alpha_ineq11 < 0.14
    assert 0.18 < table.mu_ineq12 < 0.19
    assert 1.8 < table.p0 < 1.9
    assert 0.88 < table.t_star < 0.89 and table.t_star == math.log(1 + math.sqrt(2))
    assert table.alpha_thm11 < table.beta_thm11
    assert table.lambda_thm12 < table.mu_thm12


@pytest.mark.parametrize("name", sorted(PRINTED))
def test_truncates_to_printed_digits(table, name):
    digits = len(PRINTED[name].split(".")[1])
    value = getattr(table, name)
    assert math.floor(value * 10**digits) / 10**digits == pytest.approx(float(PRINTED[name]), abs=1e-12)


def test_fixed_fields(table):
    assert table.alpha_thm11 == table.beta_ineq11 == table.lambda_ineq12 == 1 / 6
    assert table.mu_thm12 == 8 / 25
    assert set(table.as_dict()) == {
        "alpha_thm11", "beta_thm11", "lambda_thm12", "mu_thm12", "alpha_ineq11",
        "beta_ineq11", "mu_ineq12", "lambda_ineq12", "t_star", "p0",
    }


def test_constants_is_fast():
    start = time.perf_counter()
    constants()
    assert time.perf_counter() - start < 1.0


def test_p0(table):
    assert table.p0 == pytest.approx(P0, abs=1e-12)
    assert abs((table.p0 + 1) ** (1 / table.p0) - 2 * T_STAR) < 1e-12
    lo, hi = P0_BRACKET
    assert p0_equation(lo) * p0_equation(hi) < 0


def test_p0_bad_bracket():
    with pytest.raises(ArithmeticError):
        solve_p0((2.0, 2.5))


def test_constant_ordering(table):
    assert table.alpha_ineq11 < 1 / 6 < table.mu_ineq12
    assert table.beta_thm11 < table.mu_ineq12


@pytest.mark.parametrize("x", [0.4, 0.5, 0.6])
def test_theta_oracle(x):
    assert theta1(x) == pytest.approx(THETA1[x], rel=1e-13)
    assert theta2(x) == pytest.approx(THETA2[x], rel=1e-13)


def test_theta_examples_at_half(table):
    assert 1 / 6 < theta1(0.5) < 0.1822
    assert theta1(0.4) < theta1(0.5) < theta1(0.6)
    assert 0.27828 < theta2(0.5) < 0.32
    assert theta2(0.6) < theta2(0.5) < theta2(0.4)


def test_theta_limits(table):
    assert theta1(1e-9) == pytest.approx(1 / 6, abs=1e-15)
    assert theta2(1e-9) == pytest.approx(8 / 25, abs=1e-15)
    assert theta1(1 - 1e-12) == pytest.approx(table.beta_thm11, abs=1e-10)
    assert theta2(1 - 1e-12) == pytest.approx(table.lambda_thm12, abs=1e-10)


@pytest.mark.parametrize("x", [0.0, 1.0, -0.2, 1.5, math.nan])
def test_theta_domain(x):
    with pytest.raises(ValueError):
        theta1(x)
    with pytest.raises(ValueError):
        theta2(x)


@pytest.mark.parametrize("x", np.round(np.arange(0.1, 1.0, 0.1), 1))
def test_theta_consistency_with_means(x):
    # log(K/A) from means_core; subtracting raw logs would cost ~eps/x^4 here
    lm = float(log_ratio(MeanKind.NEUMAN_SANDOR, x, precise=True))
    lc = float(log_ratio(MeanKind.CONTRA_HARMONIC, x))
    assert lc == pytest.approx(math.log1p(x * x), rel=1e-15)
    direct1 = lm / lc
    direct2 = (lm - lc / 6) / (math.log1p(x * x / 6) - lc / 6)
    assert abs(theta1(x) - direct1) < 1e-12
    assert abs(theta2(x) - direct2) < 1e-12


@pytest.mark.parametrize("x", [0.5, 0.9])
def test_theta_consistency_raw_logs(x):
    pair = make_pair(1 + x, 1 - x)
    M, A, C = (evaluate(k, pair) for k in (MeanKind.NEUMAN_SANDOR, MeanKind.ARITHMETIC,
                                           MeanKind.CONTRA_HARMONIC))
    assert theta1(x) == pytest.approx(math.log(M / A) / math.log(C / A), rel=1e-12)


def test_profiles_monotone_and_pinned(table):
    xs = np.linspace(0.001, 0.999, 1000)
    t1, t2 = theta1(xs), theta2(xs)
    assert np.all(np.diff(t1) > 0)
    assert np.all(np.diff(t2) < 0)
    assert np.all((1 / 6 < t1) & (t1 < table.beta_thm11))
    assert np.all((table.lambda_thm12 < t2) & (t2 < 8 / 25))


def test_ineq11_profile(table):
    assert ineq11_profile(0.0) == 1 / 6
    assert ineq11_profile(1e-7) == pytest.approx(1 / 6, abs=1e-13)
    assert ineq11_profile(1.0) == pytest.approx(table.alpha_ineq11, rel=1e-14)
    xs = np.linspace(0.001, 0.999, 1000)
    prof = ineq11_profile(xs)
    assert np.all(np.diff(prof) < 0)
    pair = make_pair(1.3, 0.7)
    M, A, C = (evaluate(k, pair) for k in (MeanKind.NEUMAN_SANDOR, MeanKind.ARITHMETIC,
                                           MeanKind.CONTRA_HARMONIC))
    assert ineq11_profile(0.3) == pytest.approx((M - A) / (C - A), rel=1e-12)
