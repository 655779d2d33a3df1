"""Bivariate means: arithmetic, geometric, logarithmic, contra-harmonic,
the two Seiffert means, the Neuman-Sandor mean and the generalized
logarithmic mean L_p.

Every difference-type mean is written as ``A * x / phi(x)`` with
``x = (a - b)/(a + b)`` and ``phi`` one of atanh, arcsin, arctan, asinh.
That form has no cancellation in the quotient itself; the only 0/0 is at
``x = 0``, which is handled by an even series in ``x`` for ``|x| < 1e-3``.

The module also exposes :func:`log_ratio`, the logarithmic deviation
``log(K/A)`` of each mean from the arithmetic mean.  Those are the
quantities the verifier compares, and they need more care than the means
themselves because they are O(x^2) near the diagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "SERIES_THRESHOLD",
    "MeanKind",
    "PositivePair",
    "asinh",
    "eval_difference_mean",
    "eval_elementary_mean",
    "evaluate",
    "generalized_log_mean",
    "log_ratio",
    "make_pair",
    "mean_values",
    "neuman_sandor",
    "ratio_to_arithmetic",
    "relative_deficit",
]

SERIES_THRESHOLD = 1e-3
# below this |p| the generic L_p formula loses more (~eps/|p|) than the
# identric limit is off by (~|p|), so the p = 0 form is used instead
P_ZERO_BAND = 1e-8

# Taylor coefficients (in x^0, x^2, x^4, x^6) of K/A for the difference means.
_RATIO_SERIES = {
    "neuman-sandor": (1.0, 1 / 6, -17 / 360, 367 / 15120),
    "logarithmic": (1.0, -1 / 3, -4 / 45, -44 / 945),
    "seiffert-first": (1.0, -1 / 6, -17 / 360, -367 / 15120),
    "seiffert-second": (1.0, 1 / 3, -4 / 45, 44 / 945),
}


class MeanKind(str, Enum):
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    LOGARITHMIC = "logarithmic"
    CONTRA_HARMONIC = "contra-harmonic"
    SEIFFERT_FIRST = "seiffert-first"
    SEIFFERT_SECOND = "seiffert-second"
    NEUMAN_SANDOR = "neuman-sandor"
    GENERALIZED_LOG = "generalized-log"

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]


_SYMBOLS = {
    MeanKind.ARITHMETIC: "A",
    MeanKind.GEOMETRIC: "G",
    MeanKind.LOGARITHMIC: "L",
    MeanKind.CONTRA_HARMONIC: "C",
    MeanKind.SEIFFERT_FIRST: "P",
    MeanKind.SEIFFERT_SECOND: "T",
    MeanKind.NEUMAN_SANDOR: "M",
    MeanKind.GENERALIZED_LOG: "L_p",
}

ELEMENTARY = (MeanKind.ARITHMETIC, MeanKind.GEOMETRIC, MeanKind.CONTRA_HARMONIC)
DIFFERENCE = (MeanKind.LOGARITHMIC, MeanKind.SEIFFERT_FIRST, MeanKind.SEIFFERT_SECOND)


@dataclass(frozen=True)
class PositivePair:
    """A validated pair of positive reals with ``x = (a - b)/(a + b)``."""

    a: float
    b: float
    x: float

    @property
    def arithmetic(self) -> float:
        return (self.a + self.b) / 2

    def swapped(self) -> "PositivePair":
        return make_pair(self.b, self.a)

    def scaled(self, lam: float) -> "PositivePair":
        return make_pair(lam * self.a, lam * self.b)


def make_pair(a: float, b: float) -> PositivePair:
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"means need finite arguments, got a={a!r}, b={b!r}")
    if a <= 0 or b <= 0:
        raise ValueError(f"means need a, b > 0, got a={a!r}, b={b!r}")
    return PositivePair(a, b, (a - b) / (a + b))


def asinh(x):
    """Inverse hyperbolic sine as ``log1p(|x| + x^2/(1 + sqrt(1 + x^2)))``.

    Odd-symmetric and free of cancellation for small ``|x|``.
    """
    ax = np.abs(x)
    r = np.log1p(ax + ax * ax / (1.0 + np.sqrt(1.0 + ax * ax)))
    return np.copysign(r, x)


def _phi(name: str, ax, one_minus=None):
    # one_minus = 1 - |x|, passed in exactly as 2*min(a, b)/(a + b) when known
    if one_minus is None:
        one_minus = 1 - ax
    if name == "neuman-sandor":
        return asinh(ax)
    if name == "logarithmic":
        return 0.5 * np.log1p(2 * ax / one_minus)
    if name == "seiffert-first":
        return np.arctan2(ax, np.sqrt(one_minus * (1 + ax)))
    if name == "seiffert-second":
        return np.arctan(ax)
    raise KeyError(name)


def _series_ratio(coeffs, ax):
    y = ax * ax
    c0, c2, c4, c6 = coeffs
    return c0 + y * (c2 + y * (c4 + y * c6))


def _difference_ratio(name: str, x, one_minus=None):
    """K/A for a difference mean, as a function of the normalized ratio x."""
    ax = np.abs(np.asarray(x, dtype=float))
    small = ax < SERIES_THRESHOLD
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = ax / _phi(name, ax, one_minus)
    return np.where(small, _series_ratio(_RATIO_SERIES[name], ax), closed)


def _lp_series_coeffs(p: float) -> tuple[float, float, float, float]:
    # S(x) = [(1+x)^q - (1-x)^q]/(2qx) = 1 + p*sum_k r_k y^k,  q = p + 1, y = x^2.
    # Coefficients of S^{1/p} = exp(log(S)/p) through y^3; the factor p
    # cancels analytically, so p = 0 (identric) and p = -1 (L) are included.
    r1 = (p - 1) / 6
    r2 = (p - 1) * (p - 2) * (p - 3) / 120
    r3 = (p - 1) * (p - 2) * (p - 3) * (p - 4) * (p - 5) / 5040
    u1 = r1
    u2 = r2 - p * r1 * r1 / 2
    u3 = r3 - p * r1 * r2 + p * p * r1**3 / 3
    return (1.0, u1, u2 + u1 * u1 / 2, u3 + u1 * u2 + u1**3 / 6)


def _lp_ratio(p: float, x):
    ax = np.abs(np.asarray(x, dtype=float))
    small = ax < SERIES_THRESHOLD
    series = _series_ratio(_lp_series_coeffs(p), ax)
    safe = np.where(small, 0.5, ax)
    if p == -1:
        closed = _difference_ratio("logarithmic", safe)
    elif abs(p) < P_ZERO_BAND:
        closed = np.exp(
            -1.0 + ((1 + safe) * np.log1p(safe) - (1 - safe) * np.log1p(-safe)) / (2 * safe)
        )
    else:
        q = p + 1
        with np.errstate(divide="ignore"):
            diff = np.expm1(q * np.log1p(safe)) - np.expm1(q * np.log1p(-safe))
        closed = (diff / (2 * q * safe)) ** (1 / p)
    return np.where(small, series, closed)


def ratio_to_arithmetic(kind: MeanKind, x, p: float | None = None):
    """K(a, b)/A(a, b) as a function of ``x`` (vectorized)."""
    kind = MeanKind(kind)
    x = np.asarray(x, dtype=float)
    if kind is MeanKind.ARITHMETIC:
        return np.ones_like(x)
    if kind is MeanKind.GEOMETRIC:
        return np.sqrt((1 - x) * (1 + x))
    if kind is MeanKind.CONTRA_HARMONIC:
        return 1 + x * x
    if kind is MeanKind.GENERALIZED_LOG:
        if p is None:
            raise ValueError("generalized-log mean needs a parameter p")
        return _lp_ratio(float(p), x)
    return _difference_ratio(kind.value, x)


def mean_values(kind: MeanKind, a, b, p: float | None = None):
    """Vectorized mean of arrays ``a`` and ``b`` (no validation)."""
    kind = MeanKind(kind)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if kind is MeanKind.ARITHMETIC:
        return (a + b) / 2
    if kind is MeanKind.GEOMETRIC:
        return np.sqrt(a * b)
    if kind is MeanKind.CONTRA_HARMONIC:
        return (a * a + b * b) / (a + b)
    s = a + b
    x = (a - b) / s
    if kind in DIFFERENCE or kind is MeanKind.NEUMAN_SANDOR:
        return s / 2 * _difference_ratio(kind.value, x, 2 * np.minimum(a, b) / s)
    if p == -1:
        return s / 2 * _difference_ratio("logarithmic", x, 2 * np.minimum(a, b) / s)
    return s / 2 * ratio_to_arithmetic(kind, x, p)


def eval_elementary_mean(kind: MeanKind, pair: PositivePair) -> float:
    kind = MeanKind(kind)
    if kind not in ELEMENTARY:
        raise ValueError(f"{kind.value} is not an elementary mean")
    return float(mean_values(kind, pair.a, pair.b))


def eval_difference_mean(kind: MeanKind, pair: PositivePair) -> float:
    kind = MeanKind(kind)
    if kind not in DIFFERENCE:
        raise ValueError(f"{kind.value} is not a difference mean")
    return float(mean_values(kind, pair.a, pair.b))


def neuman_sandor(pair: PositivePair) -> float:
    return float(mean_values(MeanKind.NEUMAN_SANDOR, pair.a, pair.b))


def generalized_log_mean(p: float, pair: PositivePair) -> float:
    p = float(p)
    if not math.isfinite(p):
        raise ValueError(f"p must be finite, got {p!r}")
    return float(mean_values(MeanKind.GENERALIZED_LOG, pair.a, pair.b, p))


def evaluate(kind: MeanKind, pair: PositivePair, p: float | None = None) -> float:
    """Dispatch on ``kind``; ``p`` is only used by the generalized-log mean."""
    kind = MeanKind(kind)
    if kind in ELEMENTARY:
        return eval_elementary_mean(kind, pair)
    if kind in DIFFERENCE:
        return eval_difference_mean(kind, pair)
    if kind is MeanKind.NEUMAN_SANDOR:
        return neuman_sandor(pair)
    if p is None:
        raise ValueError("generalized-log mean needs a parameter p")
    return generalized_log_mean(p, pair)


# ---------------------------------------------------------------------------
# logarithmic deviations log(K/A)
#
# Near x = 0 these are O(x^2) while K/A - 1 is formed from O(1) numbers,
# so they are built from the deficits phi(x) - x instead.  ``precise``
# raises the series cutoff from 1e-3 to 0.5 and the term count to 60.


@lru_cache(maxsize=None)
def _deficit_coeffs(name: str, terms: int) -> np.ndarray:
    # phi(x) - x = x * sum_{k>=1} c_k x^{2k}; returns c_1..c_terms.
    out = []
    for k in range(1, terms + 1):
        central = Fraction(math.comb(2 * k, k), 4**k)
        if name == "logarithmic":
            c = Fraction(1, 2 * k + 1)
        elif name == "seiffert-second":
            c = Fraction((-1) ** k, 2 * k + 1)
        elif name == "seiffert-first":
            c = central / (2 * k + 1)
        elif name == "neuman-sandor":
            c = (-1) ** k * central / (2 * k + 1)
        else:
            raise KeyError(name)
        out.append(float(c))
    return np.array(out)


def _poly_y(coeffs: np.ndarray, y):
    # sum_{k>=1} coeffs[k-1] * y^k by Horner
    acc = np.zeros_like(y)
    for c in coeffs[::-1]:
        acc = (acc + c) * y
    return acc


def _cutoff(precise: bool) -> tuple[float, int]:
    return (0.5, 60) if precise else (SERIES_THRESHOLD, 3)


def relative_deficit(kind: MeanKind, x, *, precise: bool = False):
    """``(phi(|x|) - |x|)/|x|`` for a difference mean ``K = A x / phi(x)``.

    Then ``K/A - 1 = -d/(1 + d)`` without cancellation.
    """
    name = MeanKind(kind).value
    ax = np.abs(np.asarray(x, dtype=float))
    cut, terms = _cutoff(precise)
    small = ax < cut
    series = _poly_y(_deficit_coeffs(name, terms), ax * ax)
    safe = np.where(small, 0.5, ax)
    closed = (_phi(name, safe) - safe) / safe
    return np.where(small, series, closed)


def _log_difference_ratio(name: str, ax, precise: bool):
    return -np.log1p(relative_deficit(name, ax, precise=precise))


def _log_lp(p: float, ax, precise: bool):
    if p == -1:
        return _log_difference_ratio("logarithmic", ax, precise)
    cut, terms = _cutoff(precise)
    small = ax < cut
    y = ax * ax
    # R(y) = sum_k r_k y^k with S - 1 = p R
    coeffs = []
    r = 1.0
    for k in range(1, terms + 1):
        # r_k = (p-1)(p-2)...(p-2k+1)/(2k+1)!
        if k == 1:
            r = (p - 1) / 6
        else:
            r *= (p - 2 * k + 2) * (p - 2 * k + 1) / ((2 * k) * (2 * k + 1))
        coeffs.append(r)
    R = _poly_y(np.array(coeffs), y)
    series = R if p == 0 else np.log1p(p * R) / p
    safe = np.where(small, 0.5, ax)
    if abs(p) < P_ZERO_BAND:
        closed = -1.0 + ((1 + safe) * np.log1p(safe) - (1 - safe) * np.log1p(-safe)) / (2 * safe)
    else:
        q = p + 1
        with np.errstate(divide="ignore"):
            diff = np.expm1(q * np.log1p(safe)) - np.expm1(q * np.log1p(-safe))
        closed = np.log(diff / (2 * q * safe)) / p
    return np.where(small, series, closed)


def log_ratio(kind: MeanKind, x, p: float | None = None, *, precise: bool = False):
    """``log(K/A)`` as an accurate function of ``x`` (vectorized, even in x)."""
    kind = MeanKind(kind)
    ax = np.abs(np.asarray(x, dtype=float))
    if kind is MeanKind.ARITHMETIC:
        return np.zeros_like(ax)
    if kind is MeanKind.GEOMETRIC:
        return 0.5 * np.log1p(-ax * ax)
    if kind is MeanKind.CONTRA_HARMONIC:
        return np.log1p(ax * ax)
    if kind is MeanKind.GENERALIZED_LOG:
        if p is None:
            raise ValueError("generalized-log mean needs a parameter p")
        return _log_lp(float(p), ax, precise)
    return _log_difference_ratio(kind.value, ax, precise)
