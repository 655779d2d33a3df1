"""Print the Maclaurin coefficient tables embedded in nsmeans.

Run once with sympy installed; the output is pasted into the source as
exact fractions.  Kept in the repo so the tables can be regenerated.
"""

import sympy as sp

x, t = sp.symbols("x t")


def even_coeffs(expr, var, order):
    ser = sp.series(expr, var, 0, order + 1).removeO()
    return [sp.nsimplify(ser.coeff(var, k)) for k in range(0, order + 1, 2)]


def main():
    ratios = {
        "neuman_sandor x/asinh(x)": x / sp.asinh(x),
        "logarithmic x/atanh(x)": x / sp.atanh(x),
        "seiffert_first x/asin(x)": x / sp.asin(x),
        "seiffert_second x/atan(x)": x / sp.atan(x),
    }
    for name, expr in ratios.items():
        print(name, even_coeffs(expr, x, 6))

    f = sp.log(sp.sinh(t) / t) / sp.log(sp.cosh(t))
    g = (sp.log(sp.sinh(t) / t) - sp.log(sp.cosh(t)) / 3) / (
        sp.log(1 + sp.sinh(t) ** 2 / 6) - sp.log(sp.cosh(t)) / 3
    )
    print("f(t)", even_coeffs(f, t, 12))
    print("g(t)", even_coeffs(g, t, 12))


if __name__ == "__main__":
    main()
