"""Grid certification of the mean inequalities and sharpness probes.

Each family is reduced to a list of *links* ``right - left`` that must all
be positive.  Links are measured in a scale-free way so that one slack
works for every family:

* bounds of the form ``C^w A^(1-w)`` (and the mixed Theorem-1.2 form, and
  the arithmetic ``wC + (1-w)A``) are compared through their exponent
  profile, so a link is ``theta(x) - w``;
* everything else is compared through ``log(K/A)`` and divided by
  ``log(C/A) = log1p(x^2)``.

A link below ``-SLACK`` is a violation.  Links in ``[-SLACK, 0]`` are
recomputed with the high-order deficit series before a verdict is given;
what survives that is reported as indeterminate.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import __version__
from .constants import constants, ineq11_profile, theta1, theta2
from .means import MeanKind, PositivePair, log_ratio, make_pair, mean_values, relative_deficit

SLACK = 1e-13
RATIO_RANGE = (1 + 1e-6, 1e6)
KYFAN_SIDE = 300
KYFAN_RANGE = (0.001, 0.499)
X_PAD = 1e-8
PROBE_START = 1 / 16
PROBE_SHRINK = 1 / 8
PROBE_MAX_STEPS = 200
CHUNK = 1 << 17


class DomainError(ValueError):
    pass


class NoWitnessFound(RuntimeError):
    """A perturbed optimal constant survived the whole witness search."""


class Family(str, Enum):
    THM11 = "THM11"
    THM12 = "THM12"
    INEQ11 = "INEQ11"
    INEQ12 = "INEQ12"
    CHAIN = "CHAIN"
    NS_AMT = "NS_AMT"
    NS_PM_A2 = "NS_PM_A2"
    NS_AT_M2 = "NS_AT_M2"
    KYFAN = "KYFAN"
    LP_BOUNDS = "LP_BOUNDS"

    @classmethod
    def parse(cls, name: str) -> "Family":
        try:
            return cls(name.upper().replace("-", "_"))
        except ValueError:
            choices = ", ".join(f.value.lower() for f in cls)
            raise ValueError(f"unknown family {name!r}; choose from {choices}") from None


PROFILE_FAMILIES = (Family.THM11, Family.THM12, Family.INEQ11, Family.INEQ12)


class Verdict(str, Enum):
    PASS = "pass"
    VIOLATION = "violation"
    INDETERMINATE = "indeterminate"


def default_params(family: Family) -> tuple[float, float] | None:
    """Lower/upper constants each family is checked with."""
    c = constants()
    return {
        Family.THM11: (c.alpha_thm11, c.beta_thm11),
        Family.THM12: (c.lambda_thm12, c.mu_thm12),
        Family.INEQ11: (c.alpha_ineq11, c.beta_ineq11),
        Family.INEQ12: (c.lambda_ineq12, c.mu_ineq12),
        Family.LP_BOUNDS: (c.p0, 2.0),
    }.get(Family(family))


@dataclass(frozen=True)
class BoundCheck:
    family: Family
    pair: PositivePair
    lower: float
    middle: float
    upper: float | None  # None for the one-sided P*M < A^2
    margin: float
    verdict: Verdict

    def as_row(self) -> dict:
        return {
            "family": self.family.value,
            "a": self.pair.a,
            "b": self.pair.b,
            "x": self.pair.x,
            "lower": self.lower,
            "middle": self.middle,
            "upper": self.upper,
            "margin": self.margin,
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class GridSpec:
    kind: str  # "log-ratio" or "kyfan"
    n: int
    lo: float
    hi: float
    scale: float = 1.0

    def describe(self) -> str:
        if self.kind == "kyfan":
            return (f"kyfan uniform {self.n}x{self.n} over ({self.lo!r}, {self.hi!r})^2, "
                    f"diagonal excluded")
        return (f"log-ratio b/a in [{self.lo!r}, {self.hi!r}], n={self.n}, "
                f"a={self.scale!r}")

    def pairs(self) -> tuple[np.ndarray, np.ndarray]:
        if self.kind == "kyfan":
            side = np.linspace(self.lo, self.hi, self.n)
            aa, bb = np.meshgrid(side, side, indexing="ij")
            keep = ~np.eye(self.n, dtype=bool)
            return aa[keep], bb[keep]
        ratios = np.geomspace(self.lo, self.hi, self.n)
        return np.full(self.n, self.scale), self.scale * ratios


@dataclass(frozen=True)
class SweepReport:
    family: Family
    grid_spec: str
    total: int
    violations: int
    indeterminate: int
    worst_margin: float
    worst_witness: PositivePair
    elapsed: float  # seconds

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def as_dict(self, timing: bool = False) -> dict:
        w = self.worst_witness
        return {
            "tool_version": __version__,
            "family": self.family.value,
            "grid_spec": self.grid_spec,
            "total": self.total,
            "violations": self.violations,
            "indeterminate": self.indeterminate,
            "worst_margin": self.worst_margin,
            "worst_witness": {"a": w.a, "b": w.b, "x": w.x},
            "elapsed_ms": round(self.elapsed * 1e3, 3) if timing else None,
        }


# ---------------------------------------------------------------------------
# links


def _ell(kind, x, precise, p=None):
    return log_ratio(kind, x, p, precise=precise)


def _links(family: Family, a, b, params, precise: bool) -> list[np.ndarray]:
    x = (a - b) / (a + b)
    ax = np.abs(x)
    if family is Family.KYFAN:
        return _kyfan_links(a, b, precise)
    if family in (Family.THM11, Family.INEQ12):
        lo, hi = params
        if precise:
            th = _ell(MeanKind.NEUMAN_SANDOR, ax, True) / np.log1p(ax * ax)
        else:
            th = theta1(ax)
        return [th - lo, hi - th]
    if family is Family.THM12:
        lo, hi = params
        th = theta2(ax)
        return [th - lo, hi - th]
    if family is Family.INEQ11:
        lo, hi = params
        k = ineq11_profile(ax)
        return [k - lo, hi - k]

    scale = np.log1p(ax * ax)
    M = _ell(MeanKind.NEUMAN_SANDOR, ax, precise)
    if family is Family.CHAIN:
        G = _ell(MeanKind.GEOMETRIC, ax, precise)
        L = _ell(MeanKind.LOGARITHMIC, ax, precise)
        P = _ell(MeanKind.SEIFFERT_FIRST, ax, precise)
        T = _ell(MeanKind.SEIFFERT_SECOND, ax, precise)
        links = [L - G, P - L, -P, T, scale - T]
    elif family is Family.NS_AMT:
        T = _ell(MeanKind.SEIFFERT_SECOND, ax, precise)
        links = [M, T - M]
    elif family is Family.NS_PM_A2:
        P = _ell(MeanKind.SEIFFERT_FIRST, ax, precise)
        links = [-(P + M)]
    elif family is Family.NS_AT_M2:
        T = _ell(MeanKind.SEIFFERT_SECOND, ax, precise)
        d = relative_deficit(MeanKind.SEIFFERT_SECOND, ax, precise=precise)
        e_t = -d / (1 + d)  # T/A - 1
        links = [2 * M - T, np.log1p(e_t + e_t * e_t / 2) - 2 * M]
    elif family is Family.LP_BOUNDS:
        lo, hi = params
        links = [
            M - _ell(MeanKind.GENERALIZED_LOG, ax, precise, lo),
            _ell(MeanKind.GENERALIZED_LOG, ax, precise, hi) - M,
        ]
    else:
        raise KeyError(family)
    return [link / scale for link in links]


_KYFAN_CHAIN = (
    MeanKind.GEOMETRIC,
    MeanKind.LOGARITHMIC,
    MeanKind.SEIFFERT_FIRST,
    MeanKind.ARITHMETIC,
    MeanKind.NEUMAN_SANDOR,
    MeanKind.SEIFFERT_SECOND,
)


def _kyfan_links(a, b, precise):
    # log K(a,b) - log K(a',b') = [log A - log A'] + ell_K(x) - ell_K(x');
    # the bracket is common to every K and drops out of adjacent differences.
    x = np.abs((a - b) / (a + b))
    xc = np.abs((b - a) / ((1 - a) + (1 - b)))
    r = [_ell(k, x, precise) - _ell(k, xc, precise) for k in _KYFAN_CHAIN]
    scale = np.log1p(x * x)
    return [(hi - lo) / scale for lo, hi in zip(r, r[1:])]


def _margins(family, a, b, params, precise=False):
    links = _links(family, a, b, params, precise)
    return np.minimum.reduce(links) if len(links) > 1 else links[0]


def _classify(family, a, b, params):
    """Margins and verdict codes (0 pass, 1 violation, 2 indeterminate)."""
    m = _margins(family, a, b, params)
    code = np.where(m < -SLACK, 1, 0)
    unsure = np.flatnonzero((m >= -SLACK) & (m <= 0))
    if unsure.size:
        m2 = _margins(family, a[unsure], b[unsure], params, precise=True)
        m[unsure] = m2
        code[unsure] = np.where(m2 < -SLACK, 1, np.where(m2 > 0, 0, 2))
    return m, code


# ---------------------------------------------------------------------------
# mean-space values for reporting


def bound_values(family: Family, a, b, params=None):
    """(lower, middle, upper) in the units of a and b (vectorized)."""
    family = Family(family)
    params = default_params(family) if params is None else params
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)

    def mv(kind, aa=a, bb=b, p=None):
        return mean_values(kind, aa, bb, p)

    A, M = mv(MeanKind.ARITHMETIC), mv(MeanKind.NEUMAN_SANDOR)
    C = mv(MeanKind.CONTRA_HARMONIC)
    if family in (Family.THM11, Family.INEQ12):
        lo, hi = params
        return C**lo * A ** (1 - lo), M, C**hi * A ** (1 - hi)
    if family is Family.THM12:
        lo, hi = params
        base = C ** (1 / 6) * A ** (5 / 6)
        arith = C / 6 + 5 * A / 6
        return arith**lo * base ** (1 - lo), M, arith**hi * base ** (1 - hi)
    if family is Family.INEQ11:
        lo, hi = params
        return lo * C + (1 - lo) * A, M, hi * C + (1 - hi) * A
    if family is Family.CHAIN:
        return mv(MeanKind.GEOMETRIC), A, C
    if family is Family.NS_AMT:
        return A, M, mv(MeanKind.SEIFFERT_SECOND)
    if family is Family.NS_PM_A2:
        return mv(MeanKind.SEIFFERT_FIRST) * M, A * A, np.full_like(A, np.nan)
    if family is Family.NS_AT_M2:
        T = mv(MeanKind.SEIFFERT_SECOND)
        return A * T, M * M, (A * A + T * T) / 2
    if family is Family.LP_BOUNDS:
        lo, hi = params
        return mv(MeanKind.GENERALIZED_LOG, p=lo), M, mv(MeanKind.GENERALIZED_LOG, p=hi)
    if family is Family.KYFAN:
        a2, b2 = 1 - a, 1 - b
        ratio = [mv(k) / mv(k, a2, b2) for k in
                 (MeanKind.GEOMETRIC, MeanKind.ARITHMETIC, MeanKind.SEIFFERT_SECOND)]
        return tuple(ratio)
    raise KeyError(family)


# ---------------------------------------------------------------------------
# public operations


def _check_domain(family: Family, pair: PositivePair) -> None:
    if pair.a == pair.b:
        raise DomainError(f"{family.value} is a strict inequality; it needs a != b")
    if family is Family.KYFAN and not (pair.a < 0.5 and pair.b < 0.5):
        raise DomainError(f"Ky Fan inequalities need 0 < a, b < 1/2, got ({pair.a}, {pair.b})")


def _params(family, params):
    if params is None:
        return default_params(family)
    if family in PROFILE_FAMILIES or family is Family.LP_BOUNDS:
        lo, hi = params
        return float(lo), float(hi)
    return None


def check_family(family: Family | str, pair: PositivePair, params=None) -> BoundCheck:
    family = Family.parse(family) if isinstance(family, str) else family
    _check_domain(family, pair)
    params = _params(family, params)
    a, b = np.array([pair.a]), np.array([pair.b])
    m, code = _classify(family, a, b, params)
    lo, mid, hi = (float(np.asarray(v).ravel()[0]) for v in bound_values(family, a, b, params))
    verdict = (Verdict.PASS, Verdict.VIOLATION, Verdict.INDETERMINATE)[int(code[0])]
    return BoundCheck(family, pair, lo, mid, None if math.isnan(hi) else hi, float(m[0]), verdict)


def check_ky_fan(pair: PositivePair) -> BoundCheck:
    return check_family(Family.KYFAN, pair)


def grid_for(family: Family, n: int, scale: float = 1.0, kyfan_side: int = KYFAN_SIDE) -> GridSpec:
    if family is Family.KYFAN:
        return GridSpec("kyfan", kyfan_side, *KYFAN_RANGE, scale=1.0)
    return GridSpec("log-ratio", n, *RATIO_RANGE, scale=scale)


def _sweep_chunk(family, a, b, params, offset):
    m, code = _classify(family, a, b, params)
    i = int(np.argmin(m))
    return (int(np.count_nonzero(code == 1)), int(np.count_nonzero(code == 2)),
            float(m[i]), offset + i)


def sweep(family: Family | str, n: int = 1_000_000, params=None, *, scale: float = 1.0,
          workers: int = 1, kyfan_side: int = KYFAN_SIDE, chunk: int = CHUNK) -> SweepReport:
    """Check ``family`` on every grid pair and aggregate.

    Counts are order independent; the worst witness is the first minimum
    margin in grid order, so any ``workers`` value gives the same report.
    """
    family = Family.parse(family) if isinstance(family, str) else family
    if n < 1:
        raise ValueError("a sweep needs at least one grid point")
    params = _params(family, params)
    spec = grid_for(family, n, scale, kyfan_side)
    start = time.perf_counter()
    a, b = spec.pairs()
    if np.any(a == b):
        raise DomainError("grid contains pairs with a == b")
    xs = np.abs((a - b) / (a + b))
    if family is not Family.KYFAN and (xs.min() <= X_PAD or xs.max() >= 1 - X_PAD):
        raise DomainError(f"grid leaves the padded range x in ({X_PAD}, 1 - {X_PAD})")

    bounds = range(0, a.size, chunk)
    jobs = [(family, a[s:s + chunk], b[s:s + chunk], params, s) for s in bounds]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _sweep_chunk(*job), jobs))
    else:
        parts = [_sweep_chunk(*job) for job in jobs]

    violations = sum(p[0] for p in parts)
    indeterminate = sum(p[1] for p in parts)
    worst, idx = min((p[2], p[3]) for p in parts)
    return SweepReport(
        family=family,
        grid_spec=spec.describe(),
        total=int(a.size),
        violations=violations,
        indeterminate=indeterminate,
        worst_margin=worst,
        worst_witness=make_pair(a[idx], b[idx]),
        elapsed=time.perf_counter() - start,
    )


def sweep_rows(family: Family | str, n: int, params=None, *, scale: float = 1.0,
               kyfan_side: int = KYFAN_SIDE) -> list[BoundCheck]:
    """Per-point checks over the sweep grid (for export, not for 10^6 points)."""
    family = Family.parse(family) if isinstance(family, str) else family
    params = _params(family, params)
    a, b = grid_for(family, n, scale, kyfan_side).pairs()
    m, code = _classify(family, a, b, params)
    lo, mid, hi = bound_values(family, a, b, params)
    verdicts = (Verdict.PASS, Verdict.VIOLATION, Verdict.INDETERMINATE)
    return [
        BoundCheck(family, make_pair(a[i], b[i]), float(lo[i]), float(mid[i]),
                   None if math.isnan(hi[i]) else float(hi[i]), float(m[i]), verdicts[code[i]])
        for i in range(a.size)
    ]


# ---------------------------------------------------------------------------
# sharpness


def perturbed_params(theorem: Family, side: str, epsilon: float) -> tuple[tuple[float, float], int]:
    """Constants pushed by ``epsilon`` into the forbidden direction, and the
    endpoint (0 or 1) of x where the profile approaches that constant."""
    theorem = Family(theorem)
    if theorem not in (Family.THM11, Family.THM12):
        raise ValueError("sharpness probes exist for THM11 and THM12 only")
    if side not in ("lower", "upper"):
        raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    lo, hi = default_params(theorem)
    if side == "lower":
        lo += epsilon
    else:
        hi -= epsilon
    if not (0 < lo < 1 and 0 < hi < 1):
        raise ValueError(f"epsilon={epsilon} pushes the constant out of (0, 1)")
    # theta1 increases from its x -> 0 limit; theta2 decreases from its x -> 0 limit
    sharp_at_zero = (theorem is Family.THM11) == (side == "lower")
    return (lo, hi), 0 if sharp_at_zero else 1


def sharpness_probe(theorem: Family | str, side: str, epsilon: float, *,
                    start: float = PROBE_START, shrink: float = PROBE_SHRINK,
                    max_steps: int = PROBE_MAX_STEPS) -> PositivePair:
    """Find a pair violating the bound with one optimal constant perturbed.

    The search walks geometrically toward the endpoint where the exponent
    profile meets that constant: distance ``start * shrink**k`` from it.
    Powers of two keep the pairs (1 + x, 1 - x) and their x exact.
    """
    theorem = Family.parse(theorem) if isinstance(theorem, str) else theorem
    params, end = perturbed_params(theorem, side, epsilon)
    d = start
    for _ in range(max_steps):
        x = d if end == 0 else 1 - d
        if not (X_PAD < x < 1 - X_PAD):
            break
        pair = make_pair(1 + x, 1 - x)
        if check_family(theorem, pair, params).verdict is Verdict.VIOLATION:
            return pair
        d *= shrink
    raise NoWitnessFound(
        f"no violation of {theorem.value} with the {side} constant moved by {epsilon}"
    )
