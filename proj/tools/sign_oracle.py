#!/usr/bin/env python3
"""Independent sympy oracle for the sign conventions of the S1 and B2 tests.

Computes the SB-2 Hessian of phi on the normal forms and on sample ruled,
center and folded germs, then decides which sign of each closed-form quantity
goes with the "+" verdict. Writes docs/sign_report.json and
docs/sign_conventions.md.

Run from the repository root:  python3 tools/sign_oracle.py
"""

import argparse
import json
import math
import pathlib

import sympy as sp

u, v = sp.symbols("u v")
ZERO = sp.Integer(0)
ONE = sp.Integer(1)
DU = (ONE, ZERO)
DV = (ZERO, ONE)


def trunc(e, n):
    p = sp.Poly(sp.expand(e), u, v)
    return sum((c * u**i * v**j for (i, j), c in p.terms() if i + j <= n), ZERO)


def apply(z, F, n):
    a, b = z
    return [trunc(a * sp.diff(x, u) + b * sp.diff(x, v), n) for x in F]


def word(ws, F, n):
    for z in reversed(ws):
        F = apply(z, F, n)
    return F


def at0(F):
    return sp.Matrix([sp.expand(x).subs({u: 0, v: 0}) for x in F])


def det3(a, b, c):
    return sp.Matrix.hstack(at0(a), at0(b), at0(c)).det()


def solve2(t, w1, w2):
    x, y = sp.symbols("x y")
    s = sp.solve(list(at0(t) - x * at0(w1) - y * at0(w2)), [x, y], dict=True)
    if not s:
        raise ValueError("vector not in the span")
    return s[0][x], s[0][y]


def normalize(F, n):
    """Precompose with a linear map so that f_v(0) = 0."""
    fu, fv = at0(apply(DU, F, n)), at0(apply(DV, F, n))
    if fv == sp.zeros(3, 1):
        return F
    if fu == sp.zeros(3, 1):
        return [trunc(x.subs({u: v, v: u}, simultaneous=True), n) for x in F]
    k = next(i for i in range(3) if fu[i] != 0)
    lam = fv[k] / fu[k]
    return [trunc(x.subs({u: u - lam * v}, simultaneous=True), n) for x in F]


def sb2_pair(F, n):
    al, be = solve2(word([DU, DV], F, n), word([DU], F, n), word([DV, DV], F, n))
    return (1 - al * v, -be), (-al * u, ONE), al


def sb_verdict(F, n):
    """Verdict and invariants for an SB-type germ in normalized coordinates."""
    fu, fvv, fuv = word([DU], F, n), word([DV, DV], F, n), word([DU, DV], F, n)
    if at0(fu).cross(at0(fvv)) == sp.zeros(3, 1):
        raise ValueError("not SB-type")
    if det3(fu, fvv, fuv) != 0:
        return "WhitneyUmbrella", {}
    xi, eta, al = sb2_pair(F, n)
    M = sp.Matrix.hstack(sp.Matrix(word([xi], F, n)), sp.Matrix(word([eta], F, n)), sp.Matrix(word([eta, eta], F, n)))
    phi = trunc(M.det(), n)

    def ap(z, g):
        return trunc(z[0] * sp.diff(g, u) + z[1] * sp.diff(g, v), n)

    A = ap(xi, ap(xi, phi)).subs({u: 0, v: 0})
    C = ap(eta, ap(eta, phi)).subs({u: 0, v: 0})
    B = ap(xi, ap(eta, phi)).subs({u: 0, v: 0})
    inv = {"xi2phi": A, "eta2phi": C, "hess_det": A * C - B * B}
    if A != 0 and C != 0:
        return ("S1Plus" if A * C < 0 else "S1Minus"), inv
    if A != 0 and C == 0:
        a1, b1 = solve2(word([eta, eta, eta], F, n), word([xi], F, n), word([eta, eta], F, n))
        E = (-al * u - a1 * v**2 / 2, 1 - b1 * v / 3)
        X = xi
        xf, e2f = word([X], F, n), word([E, E], F, n)
        d1 = det3(xf, e2f, word([E, E, E, X], F, n))
        d2 = det3(xf, e2f, word([E, X, X], F, n))
        d3 = det3(xf, e2f, word([E] * 5, F, n))
        V = -5 * d1**2 + 3 * d2 * d3
        inv["b2_value"] = V
        return ("B2Plus" if V > 0 else "B2Minus" if V < 0 else "MoreDegenerate"), inv
    return "other", inv


def text(e):
    return str(sp.expand(e)).replace("**", "^")


# ---- ruled surfaces ----


def ruled_map(g1, g3, c3, n):
    m = n + 1
    cc = [sp.expand(c3).coeff(v, k) for k in range(m + 1)]
    A = [[sp.Matrix([1, 0, 0])], [sp.Matrix([0, 1, 0])], [sp.Matrix([0, 0, 1])]]
    for k in range(m):
        conv = lambda X: sum((cc[j] * X[k - j] for j in range(k + 1)), sp.zeros(3, 1))  # noqa: E731
        A[0].append(A[1][k] / (k + 1))
        A[1].append((-A[0][k] + conv(A[2])) / (k + 1))
        A[2].append(-conv(A[1]) / (k + 1))
    a1, _, a3 = [sum((A[i][k] * v**k for k in range(m + 1)), sp.zeros(3, 1)) for i in range(3)]
    gp = (g1 * a1 + g3 * a3).applyfunc(lambda e: trunc(e, m))
    gam = gp.applyfunc(lambda e: sp.integrate(e, v))
    f = gam + (u - sp.integrate(g1, v)) * a1
    return [trunc(x, n) for x in f]


def deriv0(p, k):
    return sp.diff(p, v, k).subs(v, 0)


RULED_SAMPLES = [
    ("1", "v^2", "0"),
    ("1", "v^2", "2"),
    ("2 + v", "-v^2 + v^3", "1/3"),
    ("-1 + 2*v", "3*v^2", "2"),
    ("1/2", "-2*v^2", "-3"),
    ("3", "1/2*v^2", "1/4"),
]


def ruled_section(order):
    rows = []
    for g1s, g3s, c3s in RULED_SAMPLES:
        g1, g3, c3 = (sp.sympify(s.replace("^", "**"), locals={"v": v}) for s in (g1s, g3s, c3s))
        q = deriv0(g3, 2) * (deriv0(g3, 2) - 2 * deriv0(c3, 0) * deriv0(g1, 0))
        F = normalize(ruled_map(g1, g3, c3, order), order)
        verdict, inv = sb_verdict(F, order)
        rows.append({"gamma1": g1s, "gamma3": g3s, "c3": c3s, "quantity": str(q), "verdict": verdict,
                     "hess_det": str(inv.get("hess_det"))})
    return rows


# ---- center maps ----


def center_map(a, order):
    n = order + 1
    A = sum(c * u**i * v**j / (math.factorial(i) * math.factorial(j)) for (i, j), c in a.items())
    k = -1 / a[(0, 2)]
    au, av = sp.diff(A, u), sp.diff(A, v)
    E = trunc(au**2 + av**2, n)
    s = trunc(sum(sp.binomial(sp.Rational(-1, 2), m) * E**m for m in range(n // 2 + 1)), n)
    nu = [trunc(-s * au, n), trunc(-s * av, n), s]
    f = [u, v, k + A]
    rho = trunc(sum(x * y for x, y in zip(f, nu)), n)
    c = [trunc(f[i] - rho * nu[i], order) for i in range(3)]
    return [x - x.subs({u: 0, v: 0}) for x in c]


CENTER_SAMPLES = [
    {"a02": 1, "a20": 2, "a03": 1, "a21": 1},
    {"a02": 1, "a20": 2, "a03": 1, "a21": -1},
    {"a02": 2, "a20": -1, "a03": -3, "a21": 1, "a12": 2},
    {"a02": -1, "a20": 3, "a03": 2, "a21": 1, "a12": -1, "a30": 1},
    {"a02": sp.Rational(1, 2), "a20": 1, "a03": 1, "a21": 2, "a12": 1},
]


def coeff_table(d):
    return {(int(k[1]), int(k[2])): sp.nsimplify(val) for k, val in d.items()}


def center_section(order):
    rows = []
    for sample in CENTER_SAMPLES:
        a = coeff_table(sample)
        g = lambda i, j: a.get((i, j), ZERO)  # noqa: E731
        q = -g(1, 2) ** 2 + g(0, 3) * g(2, 1)
        F = normalize(center_map(a, order), order)
        verdict, inv = sb_verdict(F, order)
        rows.append({"a": {k: str(val) for k, val in sample.items()}, "quantity": str(q), "verdict": verdict,
                     "hess_det": str(inv.get("hess_det"))})
    return rows


# ---- folded surfaces ----


def folded_map(a, c, s, order):
    A = sum(val * u**i * v**j / (math.factorial(i) * math.factorial(j)) for (i, j), val in a.items())
    x, y = u * c + v * s, v * c - u * s
    f3 = trunc(A.subs({u: x, v: y}, simultaneous=True), order)
    return [u, v**2, f3]


def h11_h22(a, c, s):
    g = lambda i, j: a.get((i, j), ZERO)  # noqa: E731
    h11 = (-g(2, 1) * c**3 + (2 * g(1, 2) - g(3, 0)) * c**2 * s - (g(0, 3) - 2 * g(2, 1)) * c * s**2
           - g(1, 2) * s**3)
    h22 = g(0, 3) * c**3 + 3 * g(1, 2) * c**2 * s + 3 * g(2, 1) * c * s**2 + g(3, 0) * s**3
    return h11, h22


FOLDED_S1_SAMPLES = [
    ({"a02": 1, "a20": 2, "a21": 1, "a03": 1}, ("1", "0")),
    ({"a02": 1, "a20": 2, "a21": -1, "a03": 1}, ("1", "0")),
    ({"a02": 1, "a20": 1, "a21": 1, "a03": 2, "a12": -1}, ("3/5", "4/5")),
    ({"a02": 1, "a20": 1, "a21": -2, "a03": 1, "a30": 1}, ("3/5", "4/5")),
]

FOLDED_B_SAMPLES = [
    {"a02": 1, "a20": 2, "a21": 1, "a05": 1},
    {"a02": 1, "a20": 2, "a21": 1, "a05": -1},
    {"a02": 1, "a20": 2, "a21": 2, "a13": 1, "a05": 3},
    {"a02": 1, "a20": 2, "a21": -1, "a13": 1, "a05": 2},
]


def folded_section(order):
    s1_rows = []
    for sample, (cs, ss) in FOLDED_S1_SAMPLES:
        a = coeff_table(sample)
        c, s = sp.Rational(cs), sp.Rational(ss)
        h11, h22 = h11_h22(a, c, s)
        verdict, inv = sb_verdict(normalize(folded_map(a, c, s, 4), 4), 4)
        s1_rows.append({"a": {k: str(val) for k, val in sample.items()}, "theta_cos": cs, "theta_sin": ss,
                        "quantity": str(h11 * h22), "verdict": verdict, "hess_det": str(inv.get("hess_det"))})
    b_rows = []
    for sample in FOLDED_B_SAMPLES:
        a = coeff_table(sample)
        g = lambda i, j: a.get((i, j), ZERO)  # noqa: E731
        r_b = 5 * g(1, 3) ** 2 - 3 * g(0, 5) * g(2, 1)  # r_b at theta = 0
        verdict, inv = sb_verdict(normalize(folded_map(a, ONE, ZERO, order), order), order)
        b_rows.append({"a": {k: str(val) for k, val in sample.items()}, "theta_cos": "1", "theta_sin": "0",
                       "quantity": str(r_b), "verdict": verdict, "b2_value": str(inv.get("b2_value"))})
    return s1_rows, b_rows


def resolve(rows, plus, minus):
    """Returns '>' or '<': the sign of the quantity that goes with the plus verdict."""
    ok_gt = all((sp.Rational(r["quantity"]) > 0) == (r["verdict"] == plus) for r in rows if r["verdict"] in (plus, minus))
    ok_lt = all((sp.Rational(r["quantity"]) < 0) == (r["verdict"] == plus) for r in rows if r["verdict"] in (plus, minus))
    if ok_gt == ok_lt:
        raise SystemExit("samples do not determine the sign direction")
    return ">" if ok_gt else "<"


def normal_forms(order):
    forms = [
        ("S1Plus", [u, v**2, u**2 * v + v**3]),
        ("S1Minus", [u, v**2, -(u**2) * v + v**3]),
        ("B2Plus", [u, v**2, u**2 * v + v**5]),
        ("B2Minus", [u, v**2, u**2 * v - v**5]),
    ]
    out = []
    for name, F in forms:
        verdict, inv = sb_verdict(F, order)
        if verdict != name:
            raise SystemExit(f"normal form {name} classified as {verdict}")
        out.append({"name": name, "germ": [text(x) for x in F], **{k: str(val) for k, val in inv.items()}})
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="docs", help="output directory")
    ap.add_argument("--order", type=int, default=6, help="jet order for the B tests")
    args = ap.parse_args()

    forms = normal_forms(args.order)
    ruled = ruled_section(4)
    center = center_section(4)
    fold_s1, fold_b = folded_section(args.order)
    by_name = {f["name"]: f for f in forms}

    report = {
        "generated_by": "tools/sign_oracle.py",
        "sympy_version": sp.__version__,
        "normal_forms": forms,
        "wiring": {
            "S1": {
                "rule": "S1Plus iff det hess phi(0) < 0",
                "hess_det_S1Plus": by_name["S1Plus"]["hess_det"],
                "hess_det_S1Minus": by_name["S1Minus"]["hess_det"],
                "note": "anchored to the normal forms; the reading 'det hess phi(0) < 0 gives S1-' contradicts them",
            },
            "B2": {
                "rule": "B2Plus iff -5 d1^2 + 3 d2 d3 > 0",
                "b2_value_B2Plus": by_name["B2Plus"]["b2_value"],
                "b2_value_B2Minus": by_name["B2Minus"]["b2_value"],
            },
        },
        "ruled": {
            "quantity": "gamma3''(0) (gamma3''(0) - 2 c3(0) gamma1(0))",
            "plus_when": resolve(ruled, "S1Plus", "S1Minus"),
            "samples": ruled,
        },
        "center": {
            "quantity": "-a12^2 + a03 a21",
            "plus_when": resolve(center, "S1Plus", "S1Minus"),
            "samples": center,
        },
        "folded_s1": {
            "quantity": "h11 h22",
            "plus_when": resolve(fold_s1, "S1Plus", "S1Minus"),
            "samples": fold_s1,
        },
        "folded_b2": {
            "quantity": "r_b",
            "plus_when": resolve(fold_b, "B2Plus", "B2Minus"),
            "samples": fold_b,
        },
    }

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "sign_report.json").write_text(json.dumps(report, indent=2) + "\n")

    def word_of(op):
        return "positive" if op == ">" else "negative"

    md = [
        "# Sign conventions",
        "",
        "Generated by `tools/sign_oracle.py` (sympy, independent of the C++ code).",
        "The acceptance binary re-checks every line below against the library.",
        "",
        "## Normal forms",
        "",
        "| form | xi^2 phi(0) | eta^2 phi(0) | det hess phi(0) |",
        "|---|---|---|---|",
    ]
    for f in forms[:2]:
        md.append(f"| {f['name']} `({', '.join(f['germ'])})` | {f['xi2phi']} | {f['eta2phi']} | {f['hess_det']} |")
    md += [
        "",
        f"Wiring: {report['wiring']['S1']['rule']}. "
        f"The B2 value is {by_name['B2Plus']['b2_value']} on B2+ and {by_name['B2Minus']['b2_value']} on B2-, "
        "so B2Plus iff -5 d1^2 + 3 d2 d3 > 0.",
        "",
        "## Closed-form directions",
        "",
        "| family | quantity | S1Plus / B2Plus when the quantity is |",
        "|---|---|---|",
        f"| ruled surface | {report['ruled']['quantity']} | {word_of(report['ruled']['plus_when'])} |",
        f"| center map | {report['center']['quantity']} | {word_of(report['center']['plus_when'])} |",
        f"| folded surface (S1) | {report['folded_s1']['quantity']} | {word_of(report['folded_s1']['plus_when'])} |",
        f"| folded surface (B2) | {report['folded_b2']['quantity']} | {word_of(report['folded_b2']['plus_when'])} |",
        "",
        "Sample germs and their sympy verdicts are listed in `sign_report.json`.",
        "",
    ]
    (out / "sign_conventions.md").write_text("\n".join(md))


if __name__ == "__main__":
    main()
