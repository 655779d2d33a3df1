"""Generate tests/data/reference_values.json with mpmath at 60 digits.

Every value is computed from the defining formulas literally (no
normalisation, no series), so it is independent of the code paths in
nsmeans.  Rerun only when adding references; the JSON is committed.
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 60
OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "reference_values.json"


def M(a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    return (a - b) / (2 * mp.asinh((a - b) / (a + b)))


def L(a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    return (b - a) / (mp.log(b) - mp.log(a))


def P(a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    return (a - b) / (4 * mp.atan(mp.sqrt(a / b)) - mp.pi)


def T(a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    return (a - b) / (2 * mp.atan((a - b) / (a + b)))


def Lp(p, a, b):
    a, b, p = mp.mpf(a), mp.mpf(b), mp.mpf(p)
    if p == 0:
        return mp.exp(-1) * (b**b / a**a) ** (1 / (b - a))
    return ((b ** (p + 1) - a ** (p + 1)) / ((p + 1) * (b - a))) ** (1 / p)


def h1(t):
    t = mp.mpf(t)
    return (90 * t + 52 * t * mp.cosh(2 * t) - 66 * mp.sinh(2 * t)
            + 2 * t * mp.cosh(4 * t) - 3 * mp.sinh(4 * t))


def h2(t):
    t = mp.mpf(t)
    return 15 * t - 20 * t * mp.cosh(2 * t) + 5 * t * mp.cosh(4 * t)


def h(t):
    return h1(t) / h2(t)


def f(t):
    t = mp.mpf(t)
    return mp.log(mp.sinh(t) / t) / mp.log(mp.cosh(t))


def g(t):
    t = mp.mpf(t)
    lc = mp.log(mp.cosh(t)) / 3
    return (mp.log(mp.sinh(t) / t) - lc) / (mp.log(1 + mp.sinh(t) ** 2 / 6) - lc)


def theta1(x):
    x = mp.mpf(x)
    a, b = 1 + x, 1 - x
    A, C = (a + b) / 2, (a * a + b * b) / (a + b)
    return (mp.log(M(a, b)) - mp.log(A)) / (mp.log(C) - mp.log(A))


def theta2(x):
    x = mp.mpf(x)
    a, b = 1 + x, 1 - x
    A, C = (a + b) / 2, (a * a + b * b) / (a + b)
    base = mp.log(C) / 6 + 5 * mp.log(A) / 6
    return (mp.log(M(a, b)) - base) / (mp.log(C / 6 + 5 * A / 6) - base)


def main():
    tstar = mp.log(1 + mp.sqrt(2))
    # forward-difference free: derivative of h by mpmath's own differentiator
    refs = [
        ("mean", "neuman-sandor", [1, 2], M(1, 2)),
        ("mean", "neuman-sandor", [1, 1000], M(1, 1000)),
        ("mean", "neuman-sandor", [1, 1.0001], M(1, mp.mpf(1.0001))),
        ("mean", "seiffert-second", [1, 2], T(1, 2)),
        ("mean", "seiffert-second", [0.2, 0.9], T(mp.mpf(0.2), mp.mpf(0.9))),
        ("mean", "seiffert-first", [1, 2], P(1, 2)),
        ("mean", "seiffert-first", [3, 7], P(3, 7)),
        ("mean", "logarithmic", [1, 2], L(1, 2)),
        ("mean", "logarithmic", [1, 1.0004], L(1, mp.mpf(1.0004))),
        ("genlog", "0", [1, 2], Lp(0, 1, 2)),
        ("genlog", "0.5", [2, 5], Lp(mp.mpf(0.5), 2, 5)),
        ("genlog", "-2", [1, 3], Lp(-2, 1, 3)),
        ("kernel", "H", [0.5], h(0.5)),
        ("kernel", "H", [float(tstar)], h(mp.mpf(float(tstar)))),
        ("kernel", "F", [0.5], f(0.5)),
        ("kernel", "G", [0.5], g(0.5)),
        ("kernel", "G", [0.3], g(0.3)),
        ("kernel", "HPrime", [0.7], mp.diff(h, mp.mpf(0.7))),
        ("theta1", "", [0.5], theta1(0.5)),
        ("theta2", "", [0.5], theta2(0.5)),
    ]
    rows = [
        {"kind": k, "name": n, "args": [float(v) for v in args], "value": mp.nstr(val, 30)}
        for k, n, args, val in refs
    ]
    OUT.write_text(json.dumps(rows, indent=1) + "\n")
    print(f"wrote {len(rows)} references to {OUT}")

    # values also quoted in test docstrings
    print("h(t*) exact form", mp.nstr((280 * tstar - 168 * mp.sqrt(2)) / (40 * tstar), 20))
    print("h'(t*) closed form", mp.nstr((-102 * mp.sqrt(2) * tstar**2 + 93 * tstar + 21 * mp.sqrt(2)) / (5 * tstar**2), 20))
    print("h'(t*) numeric", mp.nstr(mp.diff(h, tstar), 20))
    print("f(t*)", mp.nstr(f(tstar), 20))
    a, b = mp.mpf(1), mp.mpf(2)
    A, C = mp.mpf(3) / 2, mp.mpf(5) / 3
    beta = -mp.log(mp.log(1 + mp.sqrt(2))) / mp.log(2)
    print("THM11(1,2)", mp.nstr(C ** (mp.mpf(1) / 6) * A ** (mp.mpf(5) / 6), 12), mp.nstr(M(a, b), 12),
          mp.nstr(C**beta * A ** (1 - beta), 12))
    print("p0", mp.nstr(mp.findroot(lambda p: (p + 1) ** (1 / p) - 2 * mp.log(1 + mp.sqrt(2)), 1.8), 20))
    print("theta1 0.4 0.5 0.6", [mp.nstr(theta1(v), 15) for v in (0.4, 0.5, 0.6)])
    print("theta2 0.4 0.5 0.6", [mp.nstr(theta2(v), 15) for v in (0.4, 0.5, 0.6)])


if __name__ == "__main__":
    main()
