#pragma once

#include "algebra.hpp"
#include "errors.hpp"
#include "ratfn.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace flows {

struct Flow {
    RatFn u, v;

    static Flow identity() { return {Poly::x(), Poly::y()}; }
    friend bool operator==(const Flow&, const Flow&) = default;
    std::string to_string() const { return "u = " + u.to_string() + "; v = " + v.to_string(); }
};

// Pair of 2-homogenic rational functions (ϖ, ρ).
struct VectorField {
    RatFn w, r;

    friend bool operator==(const VectorField&, const VectorField&) = default;
    bool is_zero() const { return w.is_zero() && r.is_zero(); }
    std::string to_string() const { return "(" + w.to_string() + ", " + r.to_string() + ")"; }
};

// φ(a, b) for a pair of rational functions.
inline std::pair<RatFn, RatFn> apply(const Flow& f, const RatFn& a, const RatFn& b)
{
    return {substitute(f.u, a, b), substitute(f.v, a, b)};
}

inline Flow compose(const Flow& outer, const Flow& inner)
{
    auto [u, v] = apply(outer, inner.u, inner.v);
    return {u, v};
}

namespace detail {

// f(xz, yz)·(1 − z)/z with the powers of z cancelled.
inline Frac scaled_over_z(const Frac& f)
{
    if (f.num.is_zero())
        return {Poly(), Poly(1)};
    Poly n = f.num.scaled_by(Z), d = f.den.scaled_by(Z);
    int ln = f.num.low_degree(), ld = f.den.low_degree();
    n = n.div_mono(Poly::mono(0, 0, ln));
    d = d.div_mono(Poly::mono(0, 0, ld));
    n = n * (Poly(1) - Poly::z());
    int e = ln - ld - 1;
    if (e >= 0)
        n = n.mul_term(Poly::mono(0, 0, e), 1);
    else
        d = d.mul_term(Poly::mono(0, 0, -e), 1);
    return {n, d};
}

// Leading z-order coefficient of f(xz, yz)/z: exponent and coefficient.
inline std::pair<int, RatFn> boundary_leading(const RatFn& f)
{
    int ln = f.num().low_degree(), ld = f.den().low_degree();
    RatFn lead(f.num().homogeneous_part(ln), f.den().homogeneous_part(ld));
    return {ln - ld - 1, lead};
}

inline bool sample_translation(const Flow& f)
{
    static const std::array<std::array<int, 6>, 4> pts{{{2, 3, -5, 7, 1, 3},
                                                        {-3, 4, 5, 11, 2, 7},
                                                        {7, 5, 3, 13, -1, 4},
                                                        {1, 9, -2, 3, 3, 5}}};
    for (const auto& p : pts) {
        Scalar x(p[0], p[1]), y(p[2], p[3]), z(p[4], p[5]);
        x.canonicalize();
        y.canonicalize();
        z.canonicalize();
        auto u0 = f.u(x, y), v0 = f.v(x, y), u1 = f.u(x * z, y * z), v1 = f.v(x * z, y * z);
        if (!u0 || !v0 || !u1 || !v1)
            continue;
        Scalar s = (1 - z) / z;
        auto u2 = f.u(*u1 * s, *v1 * s), v2 = f.v(*u1 * s, *v1 * s);
        if (!u2 || !v2)
            continue;
        if (*u2 != (1 - z) * *u0 || *v2 != (1 - z) * *v0)
            return false;
    }
    return true;
}

} // namespace detail

inline bool check_boundary(const Flow& f)
{
    if (f.u.is_zero() || f.v.is_zero())
        return false;
    auto [eu, lu] = detail::boundary_leading(f.u);
    auto [ev, lv] = detail::boundary_leading(f.v);
    return eu == 0 && ev == 0 && lu == RatFn(Poly::x()) && lv == RatFn(Poly::y());
}

inline bool verify_translation(const Flow& f)
{
    if (!detail::sample_translation(f))
        return false;
    // integer coefficients keep the large products free of rational normalization
    Frac u = integral_frac(f.u), v = integral_frac(f.v);
    Frac U = detail::scaled_over_z(u), V = detail::scaled_over_z(v);
    Poly one_minus_z = Poly(1) - Poly::z();
    for (const Frac* c : {&u, &v}) {
        Frac s = substitute_raw(*c, U, V, false);
        if (s.num * c->den != one_minus_z * c->num * s.den)
            return false;
    }
    return true;
}

inline RatFn jacobian(const Flow& f)
{
    return f.u.derivative(X) * f.v.derivative(Y) - f.u.derivative(Y) * f.v.derivative(X);
}

namespace detail {

// Coefficient of z in f(xz, yz)/z when the leading coefficient is x or y (the boundary condition).
inline std::optional<RatFn> second_jet(const RatFn& f, const Poly& lead)
{
    if (f.is_zero())
        return std::nullopt;
    int ln = f.num().low_degree(), ld = f.den().low_degree();
    if (ln - ld != 1)
        return std::nullopt;
    Poly n0 = f.num().homogeneous_part(ln), d0 = f.den().homogeneous_part(ld);
    if (n0 != lead * d0)
        return std::nullopt;
    return RatFn(f.num().homogeneous_part(ln + 1) - lead * f.den().homogeneous_part(ld + 1), d0);
}

// Jacobian formula in cross-multiplied form: ϖ − x = Nw/Jn and ρ − y = Nr/Jn.
struct JacobianForm {
    Poly Jn, Nw, Nr;
};

inline JacobianForm jacobian_form(const Flow& f)
{
    Frac u = integral_frac(f.u), v = integral_frac(f.v);
    const Poly &a = u.num, &b = u.den, &c = v.num, &d = v.den;
    Poly Ux = a.derivative(X) * b - a * b.derivative(X), Uy = a.derivative(Y) * b - a * b.derivative(Y);
    Poly Vx = c.derivative(X) * d - c * d.derivative(X), Vy = c.derivative(Y) * d - c * d.derivative(Y);
    Poly ab = a * b, cd = c * d;
    return {Ux * Vy - Uy * Vx, cd * Uy - ab * Vy, ab * Vx - cd * Ux};
}

} // namespace detail

inline VectorField vector_field(const Flow& f)
{
    // The order-2 jet is cheap; when it satisfies the Jacobian formula exactly it is the answer.
    auto jw = detail::second_jet(f.u, Poly::x()), jr = detail::second_jet(f.v, Poly::y());
    if (jw && jr) {
        detail::JacobianForm jf = detail::jacobian_form(f);
        if (jf.Jn.is_zero())
            throw DegenerateJacobian();
        const Poly &pw = jw->num(), &qw = jw->den(), &pr = jr->num(), &qr = jr->den();
        if ((pw - Poly::x() * qw) * jf.Jn == jf.Nw * qw && (pr - Poly::y() * qr) * jf.Jn == jf.Nr * qr) {
            VectorField vf{*jw, *jr};
            for (const RatFn* c : {&vf.w, &vf.r})
                if (!c->is_zero() && c->homogeneity_degree() != 2)
                    throw FlowError("vector field is not 2-homogenic: " + c->to_string());
            return vf;
        }
    }
    RatFn J = jacobian(f);
    if (J.is_zero())
        throw DegenerateJacobian();
    RatFn ux = f.u.derivative(X), uy = f.u.derivative(Y), vx = f.v.derivative(X), vy = f.v.derivative(Y);
    VectorField vf{(f.v * uy - f.u * vy) / J + RatFn(Poly::x()), (f.u * vx - f.v * ux) / J + RatFn(Poly::y())};
    for (const RatFn* c : {&vf.w, &vf.r})
        if (!c->is_zero() && c->homogeneity_degree() != 2)
            throw FlowError("vector field is not 2-homogenic: " + c->to_string());
    return vf;
}

// Translation equation in its ODE form: with boundary condition, f is a flow iff
// x·∇u − u = ϖ(u, v) and x·∇v − v = ρ(u, v), where (ϖ, ρ) is the order-2 jet.
// Bivariate, so much cheaper than the trivariate identity on large inputs.
inline bool satisfies_flow_ode(const Flow& f)
{
    if (!check_boundary(f))
        return false;
    auto jw = detail::second_jet(f.u, Poly::x()), jr = detail::second_jet(f.v, Poly::y());
    if (!jw || !jr)
        return false;
    Frac u = integral_frac(f.u), v = integral_frac(f.v);
    for (const auto& [c, jet] : {std::pair{&u, &*jw}, std::pair{&v, &*jr}}) {
        const Poly &a = c->num, &b = c->den;
        Poly lhs = b * (Poly::x() * a.derivative(X) + Poly::y() * a.derivative(Y)) -
                   a * (Poly::x() * b.derivative(X) + Poly::y() * b.derivative(Y)) - a * b;
        if (jet->is_zero()) {
            if (!lhs.is_zero())
                return false;
            continue;
        }
        Frac s;
        try {
            s = substitute_raw(integral_frac(*jet), u, v);
        } catch (const IdenticallySingular&) {
            return false;
        }
        if (lhs * s.den != s.num * b * b)
            return false;
    }
    return true;
}

inline bool verify_pde(const Flow& f)
{
    const RatFn &u = f.u, &v = f.v;
    RatFn ux = u.derivative(X), uy = u.derivative(Y), vx = v.derivative(X), vy = v.derivative(Y);
    RatFn x(Poly::x()), y(Poly::y());
    RatFn A = v * uy - u * vy, B = u * vx - v * ux, J = ux * vy - uy * vx;
    for (const auto& [g, gx, gy] : {std::tuple{u, ux, uy}, std::tuple{v, vx, vy}}) {
        RatFn gxx = gx.derivative(X), gxy = gx.derivative(Y), gyy = gy.derivative(Y);
        RatFn lhs = (x * gxx + y * gxy) * A + (y * gyy + x * gxy) * B;
        RatFn rhs = RatFn(2) * (g - x * gx - y * gy) * J;
        if (lhs != rhs)
            return false;
    }
    return true;
}

struct LevelResult {
    enum Tag { IdentityFlow, Level, NonIntegerSquare, Indeterminate } tag = Indeterminate;
    int N = 0;
    Scalar value;           // the square for NonIntegerSquare
    bool star_only_one = false; // level 1 reached through only one of the two "star" variants
};

inline LevelResult level_of(const VectorField& vf)
{
    LevelResult res;
    if (vf.is_zero()) {
        res.tag = LevelResult::IdentityFlow;
        return res;
    }
    RatFn x(Poly::x()), y(Poly::y());
    if ((y * vf.w - x * vf.r).is_zero()) {
        res.tag = LevelResult::Level;
        res.N = 0;
        return res;
    }
    RatFn nx = y * vf.w.derivative(X) - x * vf.r.derivative(X);
    RatFn ny = y * vf.w.derivative(Y) - x * vf.r.derivative(Y);
    if (nx.is_zero() || ny.is_zero()) {
        res.tag = LevelResult::Level;
        res.N = 1;
        res.star_only_one = !(nx.is_zero() && ny.is_zero());
        return res;
    }
    RatFn q = ny / nx;
    Scalar a, b, c, d;
    if (q.is_constant()) {
        // ax + by = k(cx + dy); any representative with a ≠ d gives 1
        res.tag = LevelResult::Level;
        res.N = 1;
        return res;
    }
    const Poly &n = q.num(), &m = q.den();
    if (!(n.is_homogeneous() && m.is_homogeneous() && n.total_degree() == 1 && m.total_degree() == 1)) {
        res.tag = LevelResult::Indeterminate;
        return res;
    }
    a = n.coeff(1, 0);
    b = n.coeff(0, 1);
    c = m.coeff(1, 0);
    d = m.coeff(0, 1);
    if (a == d) {
        res.tag = LevelResult::Indeterminate;
        return res;
    }
    Scalar val = ((a + d) * (a + d) - 4 * b * c) / ((a - d) * (a - d));
    auto r = exact_sqrt(val);
    if (r && is_integer(*r)) {
        res.tag = LevelResult::Level;
        res.N = static_cast<int>(r->get_num().get_si());
        return res;
    }
    res.tag = LevelResult::NonIntegerSquare;
    res.value = val;
    return res;
}

// Numerators over the common denominator: vf = (a/m, c/m).
inline std::array<Poly, 3> common_form(const VectorField& vf)
{
    Poly g = gcd(vf.w.den(), vf.r.den());
    Poly bw = vf.w.den() / g, br = vf.r.den() / g;
    return {vf.w.num() * br, vf.r.num() * bw, bw * vf.r.den()};
}

struct ZerosPoles {
    int zeros = 0, poles = 0;
    friend bool operator==(const ZerosPoles&, const ZerosPoles&) = default;
};

inline ZerosPoles zeros_poles(const VectorField& vf)
{
    if (vf.is_zero())
        return {};
    auto [a, c, m] = common_form(vf);
    return {count_real_projective_roots(gcd(a, c)), count_real_projective_roots(m)};
}

inline bool is_i0_symmetric(const Flow& f) { return f.v == f.u.swap_xy(); }

// x/(1 − J) • y/(1 − J)
inline Flow level0_flow(const RatFn& J)
{
    RatFn s = (RatFn(1) - J).inverse();
    return {RatFn(Poly::x()) * s, RatFn(Poly::y()) * s};
}

inline RatFn level0_J(const Flow& f)
{
    if (f.u.is_zero() || f.v.is_zero())
        throw NotLevel0Form("zero coordinate");
    if (f.u * RatFn(Poly::y()) != f.v * RatFn(Poly::x()))
        throw NotLevel0Form("u/v is not x/y");
    RatFn J = RatFn(1) - RatFn(Poly::x()) / f.u;
    if (!J.is_zero() && J.homogeneity_degree() != 1)
        throw NotLevel0Form("J is not 1-homogenic: " + J.to_string());
    return J;
}

inline Flow compose_flows_level0(const Flow& f1, const Flow& f2) { return level0_flow(level0_J(f1) + level0_J(f2)); }

} // namespace flows
