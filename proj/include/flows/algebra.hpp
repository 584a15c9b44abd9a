#pragma once

#include "errors.hpp"
#include "poly.hpp"
#include "ratfn.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flows {

inline Poly poly_gcd(const Poly& p, const Poly& q) { return gcd(p, q); }

inline std::optional<int> homogeneity_degree(const RatFn& f) { return f.homogeneity_degree(); }

// A rational function known to be homogeneous of the stored degree.
struct HomRatFn {
    RatFn fn;
    int degree = 0;

    static HomRatFn make(const RatFn& f)
    {
        if (f.is_zero())
            return {f, 0};
        auto d = f.homogeneity_degree();
        if (!d)
            throw FlowError("not homogeneous: " + f.to_string());
        return {f, *d};
    }
};

// (x, y) -> (a x + b y, c x + d y)
struct LinearMap2 {
    Scalar a = 1, b = 0, c = 0, d = 1;

    static LinearMap2 identity() { return {}; }
    static LinearMap2 swap() { return {0, 1, 1, 0}; }
    static LinearMap2 scalar(const Scalar& s) { return {s, 0, 0, s}; }

    Scalar det() const { return a * d - b * c; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

    LinearMap2 inverse() const
    {
        Scalar D = det();
        if (sgn(D) == 0)
            throw FlowError("singular linear map");
        return {d / D, -b / D, -c / D, a / D};
    }
    // (this ∘ o)(x) = this(o(x))
    LinearMap2 operator*(const LinearMap2& o) const
    {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    LinearMap2 operator*(const Scalar& s) const { return {a * s, b * s, c * s, d * s}; }
    friend bool operator==(const LinearMap2&, const LinearMap2&) = default;

    Poly first() const { return Poly::term(a, 1, 0) + Poly::term(b, 0, 1); }
    Poly second() const { return Poly::term(c, 1, 0) + Poly::term(d, 0, 1); }

    // p ∘ L
    Poly apply(const Poly& p) const
    {
        if (is_identity())
            return p;
        Frac fx{first(), Poly(1)}, fy{second(), Poly(1)};
        return detail::homogenized_eval(p, fx.num, fy.num, Poly(1));
    }
    RatFn apply(const RatFn& f) const
    {
        if (is_identity())
            return f;
        return RatFn::coprime(apply(f.num()), apply(f.den()));
    }

    // If L² = λ·id, returns λ.
    std::optional<Scalar> square_scalar() const
    {
        LinearMap2 s = *this * *this;
        if (s.b == 0 && s.c == 0 && s.a == s.d)
            return s.a;
        return std::nullopt;
    }

    std::string to_string() const { return "(" + first().to_string() + ", " + second().to_string() + ")"; }
};

// Real projective root (x0 : y0) of a binary form, normalized with y0 ∈ {0, 1}.
struct ProjRoot {
    Scalar x0, y0;
    friend bool operator==(const ProjRoot&, const ProjRoot&) = default;
};

struct LinearFactor {
    Poly form;     // y0·x − x0·y, primitive, positive leading coefficient
    ProjRoot root; // where the form vanishes
    int multiplicity;
};

struct LinearFactorization {
    Scalar constant;
    std::vector<LinearFactor> factors;
    Poly rest; // monic, no rational projective root
};

// Canonical order: x, then y, then by increasing affine root.
inline LinearFactorization linear_factors_q(const Poly& p)
{
    if (p.is_zero() || !p.is_homogeneous())
        throw FlowError("linear_factors_q needs a nonzero binary form");
    LinearFactorization out;
    int d = p.total_degree();
    UPoly f = p.dehomogenize();
    int ymult = d - f.degree();
    std::vector<LinearFactor> xs, others;
    for (auto& [t, m] : rational_roots(f)) {
        Poly form = Poly::term(t.get_den(), 1, 0) - Poly::term(t.get_num(), 0, 1);
        LinearFactor lf{form, {t, 1}, m};
        if (sgn(t) == 0)
            xs.push_back(lf);
        else
            others.push_back(lf);
    }
    out.factors = xs;
    if (ymult > 0)
        out.factors.push_back({Poly::y(), {1, 0}, ymult});
    out.factors.insert(out.factors.end(), others.begin(), others.end());
    Poly rest = p;
    for (const auto& lf : out.factors)
        rest = rest / pow(lf.form, lf.multiplicity);
    out.constant = rest.lead_coeff();
    out.rest = rest.monic();
    return out;
}

inline int count_real_projective_roots(const Poly& p)
{
    if (p.is_zero() || !p.is_homogeneous())
        throw FlowError("count_real_projective_roots needs a nonzero binary form");
    UPoly f = p.dehomogenize();
    return (p.total_degree() - f.degree()) + count_real_roots(f);
}

// Dehomogenized univariate view of a homogeneous rational function: f(t) = h(t, 1).
struct URat {
    UPoly num, den;
};

inline URat dehomogenize(const RatFn& h) { return {h.num().dehomogenize(), h.den().dehomogenize()}; }

// Inverse of dehomogenize for a given homogeneity degree: y^deg · f(x/y).
inline RatFn homogenize(const UPoly& num, const UPoly& den, int deg)
{
    int dn = std::max(num.degree(), 0), dd = std::max(den.degree(), 0);
    Poly n = Poly::homogenize(num, dn), dpoly = Poly::homogenize(den, dd);
    int shift = deg - (dn - dd);
    if (shift >= 0)
        n = n.mul_term(Poly::mono(0, shift), 1);
    else
        dpoly = dpoly.mul_term(Poly::mono(0, -shift), 1);
    return RatFn(n, dpoly);
}

} // namespace flows
