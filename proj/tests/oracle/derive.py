#!/usr/bin/env python3
"""Independent sympy oracle. Regenerate with: python3 tests/oracle/derive.py > tests/oracle/frozen.hpp"""
import sympy as sp

x, y, z, t = sp.symbols("x y z t")


def cstr(e):
    return str(e).replace("**", "^")


def vf_of_flow(u, v):
    # d/dz [φ(xz)/z] at z = 0, from the series of u(xz, yz)/z
    out = []
    for f in (u, v):
        g = sp.cancel(f.subs({x: x * z, y: y * z}, simultaneous=True) / z)
        out.append(sp.factor(sp.series(g, z, 0, 2).removeO().coeff(z, 1)))
    return out


def jets_of_flow(u, K):
    g = u.subs({x: x * z, y: y * z}, simultaneous=True) / z
    s = sp.series(g, z, 0, K).removeO()
    return [sp.factor(sp.simplify(s.coeff(z, i - 1))) for i in range(1, K + 1)]


def picard_diagonal(w, r, x0, y0, K):
    # Taylor coefficients of the solution of F' = vf(F), F(0) = (x0, y0): Picard iteration on polynomials in t
    U, V = sp.Integer(x0), sp.Integer(y0)
    for _ in range(K):
        dU = sp.expand(w.subs({x: U, y: V}, simultaneous=True))
        dV = sp.expand(r.subs({x: U, y: V}, simultaneous=True))
        U = sp.expand(x0 + sp.integrate(dU, (t, 0, t)))
        V = sp.expand(y0 + sp.integrate(dV, (t, 0, t)))
        U = sum(U.coeff(t, k) * t**k for k in range(K))
        V = sum(V.coeff(t, k) * t**k for k in range(K))
    return [U.coeff(t, k) for k in range(K)]


zoo = {
    "phi_pr": (x / (x + y + 1), y / (x + y + 1)),
    "phi_tor_1": (x / (x + 1), y / (y + 1)),
    "phi_sph_inf": ((x - y) ** 2 + x, (x - y) ** 2 + y),
    "phi0_2": (x * y / (x**2 + y), y**2 / (x**2 + y)),
    "phi2_1": ((y**2 + x) ** 3 / x**2, y * (y**2 + x) / x),
    "phi2_2": (x * (x + y + 1) / (x**2 + x * y + 2 * x + 1), y / ((x**2 + x * y + 2 * x + 1) * (x + y + 1))),
    "phi2_3": ((y**2 + x) ** 3 / (x + 2 * x * y + y**3) ** 2, y * (y**2 + x) / (x + 2 * x * y + y**3)),
    "phi1_1": ((x**2 + y**2 * x + y**3) ** 2 / ((y**2 + x) * x**2), y * (x**2 + y**2 * x + y**3) / (x * (y**2 + x))),
}

print("#pragma once")
print("// Generated by tests/oracle/derive.py (sympy); do not edit.")
print("#include <utility>")
print("#include <vector>")
print("namespace oracle {")
print("struct NamedVF { const char* name; const char* w; const char* r; };")
print("inline const std::vector<NamedVF> zoo_vf = {")
for name, (u, v) in zoo.items():
    w, r = vf_of_flow(u, v)
    print(f'    {{"{name}", "{cstr(w)}", "{cstr(r)}"}},')
print("};")

print(f'inline const char* gcd_1 = "{cstr(sp.gcd(x**2*y + x*y**2, x**2 - y**2))}";')
print(f'inline const char* gcd_2 = "{cstr(sp.gcd(x**2 + y**2, x + y))}";')
print(f'inline const char* cancel_1 = "{cstr(sp.cancel((x**3 + y**3) / (x + y)))}";')

# closed-form flows of the two proportional obstruction fields
tan_flow = (x + y * sp.tan(y)) / (1 - x * sp.tan(y) / y)
exp_flow = x * sp.exp(y)
for tag, u in (("exp", exp_flow), ("tan", tan_flow)):
    print(f"inline const std::vector<const char*> jets_{tag} = {{")
    for j in jets_of_flow(u, 8):
        print(f'    "{cstr(j)}",')
    print("};")

print("inline const std::vector<const char*> jets_phi_pr = {")
for j in jets_of_flow(zoo["phi_pr"][0], 3):
    print(f'    "{cstr(j)}",')
print("};")

w, r = x**2 - 2 * x * y, -2 * x * y + y**2
diag = picard_diagonal(w, r, 1, -1, 9)
print("inline const std::vector<std::pair<long, long>> genus_diagonal = {")
for c in diag:
    c = sp.Rational(c)
    print(f"    {{{c.p}, {c.q}}},")
print("};")

# level of (xy, -y^2): ratio of the two star-derivatives
w, r = x * y, -(y**2)
nx = sp.cancel(y * sp.diff(w, x) - x * sp.diff(r, x))
ny = sp.cancel(y * sp.diff(w, y) - x * sp.diff(r, y))
print(f'inline const char* level2_ratio = "{cstr(sp.cancel(ny / nx))}";')
print("} // namespace oracle")
