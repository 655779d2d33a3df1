import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nsmeans import means
from nsmeans.means import (
    SERIES_THRESHOLD,
    MeanKind,
    asinh,
    eval_difference_mean,
    eval_elementary_mean,
    evaluate,
    generalized_log_mean,
    log_ratio,
    make_pair,
    neuman_sandor,
    ratio_to_arithmetic,
)

# 60-digit values from scripts/make_reference_values.py
M_1_2 = 1.52694997891348721315781343715
T_1_2 = 1.55399887635816915580032004766

positive = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)
FIXED_KINDS = [k for k in MeanKind if k is not MeanKind.GENERALIZED_LOG]


def ulp_close(u, v, n=2):
    return abs(u - v) <= n * math.ulp(max(abs(u), abs(v)))


def test_make_pair_examples():
    assert make_pair(1, 2).x == pytest.approx(-1 / 3, rel=1e-15)
    assert make_pair(3, 3).x == 0.0


@pytest.mark.parametrize("a, b", [(1, 0), (0, 1), (-1, 2), (math.nan, 1), (1, math.inf)])
def test_make_pair_rejects(a, b):
    with pytest.raises(ValueError):
        make_pair(a, b)


def test_elementary_examples():
    assert eval_elementary_mean(MeanKind.ARITHMETIC, make_pair(1, 2)) == 1.5
    assert eval_elementary_mean(MeanKind.CONTRA_HARMONIC, make_pair(1, 2)) == pytest.approx(5 / 3, rel=1e-15)
    assert eval_elementary_mean(MeanKind.GEOMETRIC, make_pair(1, 4)) == 2.0
    assert eval_elementary_mean(MeanKind.GEOMETRIC, make_pair(7, 7)) == 7.0


def test_difference_examples():
    assert eval_difference_mean(MeanKind.LOGARITHMIC, make_pair(1, math.e)) == pytest.approx(math.e - 1, rel=1e-15)
    assert eval_difference_mean(MeanKind.SEIFFERT_SECOND, make_pair(1, 2)) == pytest.approx(T_1_2, rel=1e-14)
    assert eval_difference_mean(MeanKind.SEIFFERT_FIRST, make_pair(4, 4)) == 4.0


def test_kind_guards():
    with pytest.raises(ValueError):
        eval_elementary_mean(MeanKind.LOGARITHMIC, make_pair(1, 2))
    with pytest.raises(ValueError):
        eval_difference_mean(MeanKind.GEOMETRIC, make_pair(1, 2))
    with pytest.raises(ValueError):
        evaluate(MeanKind.GENERALIZED_LOG, make_pair(1, 2))


def test_neuman_sandor_examples():
    assert neuman_sandor(make_pair(1, 2)) == pytest.approx(M_1_2, rel=1e-14)
    assert neuman_sandor(make_pair(5, 5)) == 5.0
    assert neuman_sandor(make_pair(2, 4)) == pytest.approx(2 * neuman_sandor(make_pair(1, 2)), rel=1e-15)


def test_generalized_log_examples():
    p = make_pair(1, 2)
    assert generalized_log_mean(1, p) == pytest.approx(1.5, rel=1e-15)
    assert generalized_log_mean(2, p) == pytest.approx(math.sqrt(7 / 3), rel=1e-15)
    assert generalized_log_mean(-1, make_pair(1, math.e)) == pytest.approx(math.e - 1, rel=1e-15)
    with pytest.raises(ValueError):
        generalized_log_mean(math.inf, p)


def test_generalized_log_continuity_at_zero():
    p = make_pair(1, 2)
    assert abs(generalized_log_mean(1e-8, p) - generalized_log_mean(0, p)) < 1e-7
    assert abs(generalized_log_mean(-1 + 1e-9, p) - generalized_log_mean(-1, p)) < 1e-7


def test_generalized_log_special_cases_match_named_means():
    p = make_pair(2, 9)
    assert generalized_log_mean(-1, p) == pytest.approx(evaluate(MeanKind.LOGARITHMIC, p), rel=1e-15)
    assert generalized_log_mean(1, p) == pytest.approx(evaluate(MeanKind.ARITHMETIC, p), rel=1e-15)
    # L_{-2} is the geometric mean
    assert generalized_log_mean(-2, p) == pytest.approx(evaluate(MeanKind.GEOMETRIC, p), rel=1e-14)


def test_asinh_log1p_form():
    xs = np.array([1e-300, 1e-12, 1e-4, 0.3, 1.0, 7.5, 1e8])
    assert np.allclose(asinh(xs), np.arcsinh(xs), rtol=2e-16, atol=0)
    assert np.array_equal(asinh(-xs), -asinh(xs))


@pytest.mark.parametrize("kind", ["logarithmic", "seiffert-first", "seiffert-second", "neuman-sandor"])
@pytest.mark.parametrize("scale", [0.5, 1.5])
def test_series_and_closed_paths_agree_near_threshold(kind, scale):
    x = SERIES_THRESHOLD * scale
    series = means._series_ratio(means._RATIO_SERIES[kind], x)
    closed = x / means._phi(kind, x)
    assert series == pytest.approx(closed, rel=1e-13)


@pytest.mark.parametrize("p", [-1.0, -0.5, 0.0, 0.5, 2.0, 3.7])
def test_lp_series_branch_matches_closed_branch(p):
    x = np.array([0.9e-3, 1.1e-3])
    got = means._lp_ratio(p, x)
    closed = np.exp(log_ratio(MeanKind.GENERALIZED_LOG, x, p, precise=True))
    assert np.allclose(got, closed, rtol=1e-13, atol=0)


@pytest.mark.parametrize("kind", list(MeanKind))
def test_log_ratio_matches_log_of_ratio(kind):
    p = 0.7 if kind is MeanKind.GENERALIZED_LOG else None
    xs = np.linspace(0.05, 0.95, 19)
    direct = np.log(ratio_to_arithmetic(kind, xs, p))
    for precise in (False, True):
        assert np.allclose(log_ratio(kind, xs, p, precise=precise), direct, rtol=1e-12, atol=1e-15)


def test_precise_log_ratio_resolves_tiny_x():
    # log(M/A) = x^2/6 - 11 x^4/180 + ...
    x = 1e-5
    want = x * x / 6 - 11 * x**4 / 180
    assert log_ratio(MeanKind.NEUMAN_SANDOR, x, precise=True) == pytest.approx(want, rel=1e-15)
    assert log_ratio(MeanKind.NEUMAN_SANDOR, x) == pytest.approx(want, rel=1e-15)


@given(positive, positive)
def test_symmetry(a, b):
    p, q = make_pair(a, b), make_pair(b, a)
    for kind in FIXED_KINDS:
        assert ulp_close(evaluate(kind, p), evaluate(kind, q))
    for lp in (-1.0, 0.0, 0.5, 2.0):
        assert ulp_close(generalized_log_mean(lp, p), generalized_log_mean(lp, q))


@pytest.mark.parametrize("lam", [0.5, 3.0, 1e6])
@given(a=positive, b=positive)
def test_homogeneity(lam, a, b):
    p, q = make_pair(a, b), make_pair(lam * a, lam * b)
    for kind in FIXED_KINDS:
        assert evaluate(kind, q) == pytest.approx(lam * evaluate(kind, p), rel=1e-14)
    assert generalized_log_mean(0.0, q) == pytest.approx(lam * generalized_log_mean(0.0, p), rel=1e-14)


@given(positive, positive, st.floats(min_value=-1, max_value=2))
def test_betweenness(a, b, lp):
    pair = make_pair(a, b)
    lo, hi = min(a, b), max(a, b)
    for kind in FIXED_KINDS:
        if kind is MeanKind.CONTRA_HARMONIC:
            continue
        v = evaluate(kind, pair)
        assert lo * (1 - 4e-16) <= v <= hi * (1 + 4e-16)
    v = generalized_log_mean(lp, pair)
    assert lo * (1 - 1e-15) <= v <= hi * (1 + 1e-15)
    assert evaluate(MeanKind.CONTRA_HARMONIC, pair) >= evaluate(MeanKind.ARITHMETIC, pair) * (1 - 4e-16)


@given(st.floats(min_value=1e-3, max_value=1e3), st.floats(min_value=1.001, max_value=1e6))
def test_ordering_chain(a, ratio):
    # raw values only separate once the gaps (~x^2/6) clear rounding;
    # the verifier covers the near-diagonal regime in log space
    pair = make_pair(a, a * ratio)
    chain = [evaluate(k, pair) for k in (MeanKind.GEOMETRIC, MeanKind.LOGARITHMIC,
                                         MeanKind.SEIFFERT_FIRST, MeanKind.ARITHMETIC,
                                         MeanKind.SEIFFERT_SECOND, MeanKind.CONTRA_HARMONIC)]
    assert all(u < v for u, v in zip(chain, chain[1:]))


def test_extreme_ratio_keeps_precision():
    # 1 - |x| is passed exactly for atanh / arcsin near |x| = 1
    a, b = 1.0, 1e-12
    L = evaluate(MeanKind.LOGARITHMIC, make_pair(a, b))
    assert L == pytest.approx((a - b) / math.log(a / b), rel=1e-14)
    P = evaluate(MeanKind.SEIFFERT_FIRST, make_pair(a, b))
    assert P == pytest.approx((a - b) / (4 * math.atan(math.sqrt(a / b)) - math.pi), rel=1e-14)
