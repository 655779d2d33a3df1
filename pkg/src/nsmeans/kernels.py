"""Hyperbolic-ratio kernels f, g, h (and h1, h2, h') with their power series.

With ``t = asinh(x)`` the exponent profiles of the two main bounds become

    f(t) = log(sinh t / t) / log(cosh t)
    g(t) = [log(sinh t / t) - log(cosh t)/3] / [log(1 + sinh^2 t / 6) - log(cosh t)/3]

and ``h = h1/h2`` is the ratio of derivatives of the numerator and
denominator of ``g``.  All three are 0/0-type quotients near ``t = 0``.

Closed forms here are rearranged so that no two O(1) quantities are
subtracted: ``cosh u - 1 - u^2/2`` and ``sinh u - u - u^3/6`` are computed
from their own Taylor tails below ``u = 2``.  Using the product form from
the derivative computation,

    h1(t) = 8 (6 + sinh^2 t) [ (u/2)(cosh u - 1 - u^2/2) - 3/2 (sinh u - u - u^3/6) ],  u = 2t
    h2(t) = 40 t sinh^4 t

which agrees with the five-term hyperbolic expressions identically.

Coefficients of the series paths are exact :class:`fractions.Fraction`
values, converted to float only when a series is summed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

T_STAR = math.log(1 + math.sqrt(2))
MAX_N = 60
DEFAULT_TERMS = 40
LIMIT_THRESHOLD = 1e-3
# g's closed form loses ~1e-16/t^2 to cancellation; its t^12 series is exact
# to rounding well beyond this point, so the switch sits higher than for f, h.
G_SERIES_BELOW = 0.1
# below this the literal derivative formula loses more than ~1e-10 to cancellation
HPRIME_SERIES_BELOW = 0.15
DEFAULT_GRID = 2000


class ConsistencyError(ArithmeticError):
    """An internal positivity assumption failed (e.g. h2(t) <= 0 for t > 0)."""


class KernelId(str, Enum):
    F = "F"
    G = "G"
    H = "H"
    HPRIME = "HPrime"
    H1 = "H1"
    H2 = "H2"


@dataclass(frozen=True)
class KernelSample:
    kernel: KernelId
    t: float
    value: float
    method: str  # "closed" or "series(N)"


@dataclass(frozen=True)
class CoeffTriple:
    n: int
    a: Fraction
    b: Fraction
    c: int

    @property
    def ratio(self) -> Fraction:
        return self.a / self.b


# ---------------------------------------------------------------------------
# exact coefficient sequences


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"coefficient index must be a non-negative integer, got {n!r}")
    if n > MAX_N:
        raise ValueError(f"coefficient index {n} exceeds the supported maximum {MAX_N}")
    return int(n)


@lru_cache(maxsize=None)
def coeff_h(n: int) -> tuple[Fraction, Fraction]:
    """(a_n, b_n) with h(t) = sum a_n t^{2n} / sum b_n t^{2n}."""
    n = _check_n(n)
    a = Fraction((16 + 13 * n + (2 * n - 1) * 2 ** (2 * n + 2)) * 2 ** (2 * n + 7),
                 math.factorial(2 * n + 5))
    b = Fraction(5 * (2 ** (2 * n + 2) - 1) * 2 ** (2 * n + 6), math.factorial(2 * n + 4))
    return a, b


@lru_cache(maxsize=None)
def coeff_c(n: int) -> int:
    n = _check_n(n)
    return (30 * n * n + 135 * n + 110 - 4 ** (n + 3)) * 4 ** (n + 1) + 11


@lru_cache(maxsize=None)
def coeff_f(n: int) -> tuple[Fraction, Fraction]:
    """(A_n, B_n): series of f1'/f2' = sum A_n t^{2n} / sum B_n t^{2n}."""
    n = _check_n(n)
    A = Fraction(2 ** (2 * n + 2) * (2 * n + 1), math.factorial(2 * n + 3))
    B = Fraction(2 ** (2 * n + 2), math.factorial(2 * n + 2))
    return A, B


def ratio_gap(n: int) -> Fraction:
    """a_{n+1}/b_{n+1} - a_n/b_n from the closed expression in c_n."""
    n = _check_n(n)
    if n + 1 > MAX_N:
        raise ValueError(f"ratio_gap({n}) needs coefficient {n + 1} > {MAX_N}")
    den = 5 * (2 * n + 5) * (2 * n + 7) * (2 ** (2 * n + 2) - 1) * (2 ** (2 * n + 4) - 1)
    return Fraction(-6 * coeff_c(n), den)


def coeff_triple(n: int) -> CoeffTriple:
    a, b = coeff_h(n)
    return CoeffTriple(n, a, b, coeff_c(n))


def h_ratio_sequence(n_max: int = 40) -> list[Fraction]:
    return [coeff_triple(n).ratio for n in range(n_max + 1)]


def f_ratio_sequence(n_max: int = 40) -> list[Fraction]:
    return [A / B for A, B in (coeff_f(n) for n in range(n_max + 1))]


@lru_cache(maxsize=None)
def _h_series_floats(terms: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = zip(*(coeff_h(n) for n in range(terms)))
    return np.array([float(v) for v in a]), np.array([float(v) for v in b])


@lru_cache(maxsize=None)
def _f_series_floats(terms: int) -> tuple[np.ndarray, np.ndarray]:
    A, B = zip(*(coeff_f(n) for n in range(terms)))
    return np.array([float(v) for v in A]), np.array([float(v) for v in B])


# Maclaurin expansions of f and g in t^2 (t^0 .. t^12), used below LIMIT_THRESHOLD.
_F_LIMIT = tuple(float(Fraction(s)) for s in (
    "1/3", "2/45", "-19/2835", "23/17010", "-619/1871100",
    "469897/5108103000", "-2553983/91945854000",
))
_G_LIMIT = tuple(float(Fraction(s)) for s in (
    "8/25", "-104/1575", "1307/70875", "-26888/7016625", "189767527/229864635000",
    "-455241071/2068781715000", "844369375121/12660944095800000",
))


def _even_poly(coeffs, t):
    y = t * t
    acc = np.zeros_like(t)
    for c in coeffs[::-1]:
        acc = acc * y + c
    return acc


def _series_sum(coeffs: np.ndarray, y):
    acc = np.zeros_like(y)
    for c in coeffs[::-1]:
        acc = acc * y + c
    return acc


def _series_sum_deriv(coeffs: np.ndarray, t):
    # d/dt sum c_n t^{2n}
    n = np.arange(len(coeffs))
    d = (2 * n * coeffs)[1:]
    return t * _series_sum(d, t * t)


# ---------------------------------------------------------------------------
# cancellation-free hyperbolic pieces

_TAIL_TERMS = 18
_COSH_TAIL = np.array([1 / math.factorial(2 * k) for k in range(2, 2 + _TAIL_TERMS)])
_SINH_TAIL3 = np.array([1 / math.factorial(2 * k + 1) for k in range(2, 2 + _TAIL_TERMS)])
_SINH_TAIL1 = np.array([1 / math.factorial(2 * k + 1) for k in range(1, 1 + _TAIL_TERMS)])


def _cosh_rem2(u):
    """cosh u - 1 - u^2/2"""
    small = u < 2
    su = np.where(small, u, 0.0)
    series = su**4 * _series_sum(_COSH_TAIL, su * su)
    return np.where(small, series, np.cosh(u) - 1 - u * u / 2)


def _sinh_rem3(u):
    """sinh u - u - u^3/6"""
    small = u < 2
    su = np.where(small, u, 0.0)
    series = su**5 * _series_sum(_SINH_TAIL3, su * su)
    return np.where(small, series, np.sinh(u) - u - u**3 / 6)


def _sinh_rem1(u):
    """sinh u - u"""
    small = u < 2
    su = np.where(small, u, 0.0)
    series = su**3 * _series_sum(_SINH_TAIL1, su * su)
    return np.where(small, series, np.sinh(u) - u)


def _log_sinhc(t):
    """log(sinh t / t)"""
    return np.log1p(_sinh_rem1(t) / t)


def _log_cosh(t):
    return np.log1p(2 * np.sinh(t / 2) ** 2)


def _h1_closed(t):
    u = 2 * t
    inner = (u / 2) * _cosh_rem2(u) - 1.5 * _sinh_rem3(u)
    return 8 * (6 + np.sinh(t) ** 2) * inner


def _h2_closed(t):
    h2 = 40 * t * np.sinh(t) ** 4
    # zero only through underflow of t^5; a negative or NaN value is a bug
    if np.any(~(h2 >= 0)):
        raise ConsistencyError("h2(t) must be positive for t > 0")
    return h2


def _f_closed(t):
    return _log_sinhc(t) / _log_cosh(t)


def _g_closed(t):
    lc = _log_cosh(t) / 3
    return (_log_sinhc(t) - lc) / (np.log1p(np.sinh(t) ** 2 / 6) - lc)


def _h_prime_literal(t):
    c2, s2 = np.cosh(2 * t), np.sinh(2 * t)
    c4, s4 = np.cosh(4 * t), np.sinh(4 * t)
    h1 = _h1_closed(t)
    h2 = _h2_closed(t)
    dh1 = 90 - 80 * c2 + 104 * t * s2 - 10 * c4 + 8 * t * s4
    dh2 = 15 - 20 * c2 - 40 * t * s2 + 5 * c4 + 20 * t * s4
    return dh1 / h2 - dh2 * h1 / h2**2


def _h_series(t, terms):
    a, b = _h_series_floats(terms)
    y = t * t
    return _series_sum(a, y) / _series_sum(b, y)


def _h_prime_series(t, terms):
    a, b = _h_series_floats(terms)
    y = t * t
    num, den = _series_sum(a, y), _series_sum(b, y)
    return (_series_sum_deriv(a, t) * den - num * _series_sum_deriv(b, t)) / den**2


# ---------------------------------------------------------------------------
# public evaluation


def _as_t(t):
    arr = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError("kernels are defined for finite t > 0")
    return arr


def _closed(kernel: KernelId, t):
    if kernel is KernelId.H1:
        return _h1_closed(t)
    if kernel is KernelId.H2:
        return _h2_closed(t)
    small = t < LIMIT_THRESHOLD
    st = np.where(small, 1.0, t)
    if kernel is KernelId.F:
        return np.where(small, _even_poly(_F_LIMIT, t), _f_closed(st))
    if kernel is KernelId.G:
        small = t < G_SERIES_BELOW
        st = np.where(small, 1.0, t)
        return np.where(small, _even_poly(_G_LIMIT, t), _g_closed(st))
    if kernel is KernelId.H:
        return np.where(small, _h_series(t, 4), _h1_closed(st) / _h2_closed(st))
    if kernel is KernelId.HPRIME:
        small = t < HPRIME_SERIES_BELOW
        st = np.where(small, 1.0, t)
        return np.where(small, _h_prime_series(t, DEFAULT_TERMS), _h_prime_literal(st))
    raise KeyError(kernel)


def _series(kernel: KernelId, t, terms: int):
    if kernel in (KernelId.F, KernelId.G):
        raise ValueError(f"kernel {kernel.value} has no series evaluation path")
    if terms < 1:
        raise ValueError("series evaluation needs at least one term")
    if kernel is KernelId.H:
        return _h_series(t, terms)
    if kernel is KernelId.HPRIME:
        return _h_prime_series(t, terms)
    a, b = _h_series_floats(terms)
    coeffs = a if kernel is KernelId.H1 else b
    return t**5 * _series_sum(coeffs, t * t)


def eval_kernel(kernel: KernelId | str, t, method: str = "closed", terms: int = DEFAULT_TERMS):
    """Evaluate one kernel at ``t > 0`` by its closed form or truncated series.

    ``t`` may be a scalar or an array; scalars give back a float.
    """
    kernel = KernelId(kernel)
    arr = _as_t(t)
    if method == "closed":
        out = _closed(kernel, arr)
    elif method == "series":
        out = _series(kernel, arr, terms)
    else:
        raise ValueError(f"unknown method {method!r}; use 'closed' or 'series'")
    return float(out) if np.ndim(out) == 0 else out


def eval_h_prime(t):
    return eval_kernel(KernelId.HPRIME, t)


def h_prime_at_t_star_closed_form() -> float:
    """h'(t*) after substituting sinh(2t*) = 2 sqrt 2, cosh(2t*) = 3, etc."""
    s = T_STAR
    r2 = math.sqrt(2)
    return (-102 * r2 * s * s + 93 * s + 21 * r2) / (5 * s * s)


def h_at_t_star_closed_form() -> float:
    r2 = math.sqrt(2)
    return (280 * T_STAR - 168 * r2) / (40 * T_STAR)


def sample(kernel: KernelId | str, t: float, method: str = "closed",
           terms: int = DEFAULT_TERMS) -> KernelSample:
    kernel = KernelId(kernel)
    value = eval_kernel(kernel, float(t), method, terms)
    tag = "closed" if method == "closed" else f"series({terms})"
    return KernelSample(kernel, float(t), value, tag)


def f_derivative_ratio(t, method: str = "closed", terms: int = DEFAULT_TERMS):
    """f1'(t)/f2'(t) = [t cosh^2 t - sinh t cosh t] / (t sinh^2 t)."""
    arr = _as_t(t)
    if method == "series":
        A, B = _f_series_floats(terms)
        out = _series_sum(A, arr * arr) / _series_sum(B, arr * arr)
    elif method == "closed":
        # t cosh t - sinh t = t^3/3 + t (cosh t - 1 - t^2/2) - (sinh t - t - t^3/6)
        core = arr**3 / 3 + arr * _cosh_rem2(arr) - _sinh_rem3(arr)
        out = np.cosh(arr) * core / (arr * np.sinh(arr) ** 2)
    else:
        raise ValueError(f"unknown method {method!r}")
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# monotonicity scans


def theorem_grid(n: int = DEFAULT_GRID, stop: float = T_STAR) -> np.ndarray:
    """n equally spaced points of (0, stop], excluding 0."""
    if n < 2:
        raise ValueError("a monotonicity grid needs at least two points")
    return np.linspace(stop / n, stop, n)


def first_monotone_failure(values, increasing: bool) -> int | None:
    """Index i of the first pair (i, i+1) breaking strict monotonicity, or None."""
    d = np.diff(np.asarray(values, dtype=float))
    bad = d <= 0 if increasing else d >= 0
    idx = np.flatnonzero(bad)
    return int(idx[0]) if idx.size else None


def sequence_is_strictly_monotone(seq, increasing: bool) -> bool:
    return all((b > a) if increasing else (b < a) for a, b in zip(seq, seq[1:]))


def sign_changes(values) -> int:
    d = np.sign(np.diff(np.asarray(values, dtype=float)))
    d = d[d != 0]
    return int(np.count_nonzero(d[1:] != d[:-1]))


def turning_point(grid, values) -> float | None:
    """Grid location where adjacent differences of ``values`` turn from - to +."""
    d = np.diff(np.asarray(values, dtype=float))
    idx = np.flatnonzero((d[:-1] < 0) & (d[1:] > 0))
    return float(np.asarray(grid)[idx[0] + 1]) if idx.size else None
