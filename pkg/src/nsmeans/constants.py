"""Sharp constants of the Neuman-Sandor bounds and their exponent profiles.

Two profiles carry everything.  For ``x = (a - b)/(a + b)`` in (0, 1):

* ``theta1(x) = [log M - log A] / [log C - log A]``, the exponent that makes
  ``C^theta A^(1-theta)`` equal to ``M``; increasing from 1/6 to
  ``-log(log(1 + sqrt 2))/log 2``.
* ``theta2(x)``, the weight that makes
  ``(C/6 + 5A/6)^theta (C^(1/6) A^(5/6))^(1-theta)`` equal to ``M``;
  decreasing from 8/25 to the Theorem-1.2-type lower constant.

Because both are monotone, the best constants of the two-sided bounds are
the endpoint limits, which :func:`constants` evaluates in closed form.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import bisect

from .kernels import T_STAR, KernelId, eval_kernel
from .means import MeanKind, asinh, relative_deficit

P0_BRACKET = (1.5, 2.5)
P0_XTOL = 1e-13

LOG_T_STAR = math.log(T_STAR)

BETA_THM11 = -LOG_T_STAR / math.log(2)
LAMBDA_THM12 = -(6 * LOG_T_STAR + math.log(2)) / (6 * math.log(7 / 6) - math.log(2))
ALPHA_INEQ11 = (1 - T_STAR) / T_STAR
MU_INEQ12 = math.log((math.sqrt(2) + 2) / 3) / math.log(2)

# profile values at the ends of (0, 1)
THETA1_ENDPOINTS = (1 / 6, BETA_THM11)
THETA2_ENDPOINTS = (8 / 25, LAMBDA_THM12)


@dataclass(frozen=True)
class ConstantsTable:
    alpha_thm11: float
    beta_thm11: float
    lambda_thm12: float
    mu_thm12: float
    alpha_ineq11: float
    beta_ineq11: float
    mu_ineq12: float
    lambda_ineq12: float
    t_star: float
    p0: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def p0_equation(p: float) -> float:
    """(p+1)^(1/p) - 2 log(1 + sqrt 2); its root is p0."""
    return (p + 1) ** (1 / p) - 2 * T_STAR


def solve_p0(bracket: tuple[float, float] = P0_BRACKET, xtol: float = P0_XTOL) -> float:
    lo, hi = bracket
    if p0_equation(lo) * p0_equation(hi) >= 0:
        raise ArithmeticError(f"p0 bracket {bracket} does not straddle a sign change")
    return bisect(p0_equation, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)


def constants() -> ConstantsTable:
    return ConstantsTable(
        alpha_thm11=1 / 6,
        beta_thm11=BETA_THM11,
        lambda_thm12=LAMBDA_THM12,
        mu_thm12=8 / 25,
        alpha_ineq11=ALPHA_INEQ11,
        beta_ineq11=1 / 6,
        mu_ineq12=MU_INEQ12,
        lambda_ineq12=1 / 6,
        t_star=T_STAR,
        p0=solve_p0(),
    )


def _profile_arg(x):
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)) or np.any(~(arr < 1)):
        raise ValueError("exponent profiles are defined for x in (0, 1)")
    return asinh(arr)


def theta1(x):
    """Exponent profile of ``C^theta A^(1-theta) = M`` (half of kernel f)."""
    out = eval_kernel(KernelId.F, _profile_arg(x)) / 2
    return float(out) if np.ndim(out) == 0 else out


def theta2(x):
    """Weight profile of ``(C/6+5A/6)^theta (C^(1/6)A^(5/6))^(1-theta) = M`` (kernel g)."""
    out = eval_kernel(KernelId.G, _profile_arg(x))
    return float(out) if np.ndim(out) == 0 else out


def ineq11_profile(x):
    """(M - A)/(C - A), the weight profile of the arithmetic C/A combination."""
    ax = np.abs(np.asarray(x, dtype=float))
    d = relative_deficit(MeanKind.NEUMAN_SANDOR, ax, precise=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -d / ((1 + d) * ax * ax)
    out = np.where(ax == 0, 1 / 6, out)
    return float(out) if np.ndim(out) == 0 else out
