#pragma once

#include "errors.hpp"
#include "poly.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flows {

// Reduced fraction num/den with monic den, so equality is structural.
class RatFn {
public:
    RatFn() : den_(1) {}
    RatFn(const Poly& p) : num_(p), den_(1) {}
    RatFn(const Scalar& c) : num_(c), den_(1) {}
    RatFn(int c) : num_(c), den_(1) {}
    RatFn(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d))
    {
        if (den_.is_zero())
            throw DivisionByZeroPoly();
        reduce();
    }

    // Caller guarantees gcd(n, d) = 1; only the scale is normalized.
    static RatFn coprime(Poly n, Poly d)
    {
        if (d.is_zero())
            throw DivisionByZeroPoly();
        RatFn r;
        Scalar s = Scalar(1) / d.lead_coeff();
        r.num_ = std::move(n) * s;
        r.den_ = std::move(d) * s;
        return r;
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Scalar constant_value() const { return num_.constant_term(); }

    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

    friend RatFn operator+(const RatFn& a, const RatFn& b)
    {
        if (a.den_ == b.den_)
            return RatFn(a.num_ + b.num_, a.den_);
        if (a.is_polynomial() && b.is_polynomial())
            return RatFn(a.num_ + b.num_);
        Poly g = gcd(a.den_, b.den_);
        Poly da = a.den_ / g, db = b.den_ / g;
        return RatFn(a.num_ * db + b.num_ * da, da * b.den_);
    }
    friend RatFn operator-(const RatFn& a) { return coprime(-a.num_, a.den_); }
    friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
    friend RatFn operator*(const RatFn& a, const RatFn& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        if (a.is_polynomial() && b.is_polynomial())
            return RatFn(a.num_ * b.num_ * (Scalar(1) / (a.den_.lead_coeff() * b.den_.lead_coeff())));
        // cross-cancel so the two small gcds replace one large one
        Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        return coprime((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b)
    {
        if (b.is_zero())
            throw DivisionByZeroPoly();
        return a * RatFn::coprime(b.den_, b.num_);
    }
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

    RatFn inverse() const
    {
        if (is_zero())
            throw DivisionByZeroPoly();
        return coprime(den_, num_);
    }

    RatFn derivative(Var v) const
    {
        if (is_polynomial())
            return RatFn(num_.derivative(v) * (Scalar(1) / den_.lead_coeff()));
        return RatFn(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
    }

    std::optional<Scalar> operator()(const Scalar& x, const Scalar& y, const Scalar& z = 0) const
    {
        Scalar d = den_(x, y, z);
        if (sgn(d) == 0)
            return std::nullopt;
        return num_(x, y, z) / d;
    }

    RatFn swap_xy() const { return coprime(num_.swap_xy(), den_.swap_xy()); }

    // Degree d with f(tx, ty) = t^d f(x, y), if num and den are homogeneous.
    std::optional<int> homogeneity_degree() const
    {
        if (is_zero() || !num_.is_homogeneous() || !den_.is_homogeneous())
            return std::nullopt;
        return num_.total_degree() - den_.total_degree();
    }

    std::string to_string() const
    {
        if (den_ == Poly(1))
            return num_.to_string();
        auto wrap = [](const Poly& p) {
            std::string s = p.to_string();
            return p.size() > 1 || (p.size() == 1 && p.lead_mono() != 0 && p.lead_coeff() != 1) ? "(" + s + ")" : s;
        };
        return wrap(num_) + "/" + wrap(den_);
    }

private:
    void reduce()
    {
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        if (!den_.is_constant()) {
            Poly g = gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        Scalar s = Scalar(1) / den_.lead_coeff();
        num_ = num_ * s;
        den_ = den_ * s;
    }

    Poly num_, den_;
};

inline RatFn pow(const RatFn& f, int e)
{
    if (e < 0)
        return pow(f.inverse(), -e);
    return RatFn::coprime(pow(f.num(), e), pow(f.den(), e));
}

// An unreduced fraction, used where gcds would dominate the cost.
struct Frac {
    Poly num, den;
};

// num/den rescaled by a common factor so that both have integer coefficients.
inline Frac integral_frac(const RatFn& f)
{
    Integer l = 1;
    for (const Poly* p : {&f.num(), &f.den()})
        for (const auto& tm : p->terms())
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), tm.c.get_den_mpz_t());
    return {f.num() * Scalar(l), f.den() * Scalar(l)};
}

namespace detail {

// Sum_k H_k(a, c) m^(D-k) where H_k are the homogeneous parts of p and D = deg p,
// so that p(a/m, c/m) = result / m^D.
inline Poly homogenized_eval(const Poly& p, const Poly& a, const Poly& c, const Poly& m)
{
    int dx = std::max(p.degree(X), 0), dy = std::max(p.degree(Y), 0);
    std::vector<Poly> pa{Poly(1)}, pc{Poly(1)};
    for (int i = 1; i <= dx; ++i)
        pa.push_back(pa.back() * a);
    for (int j = 1; j <= dy; ++j)
        pc.push_back(pc.back() * c);
    int D = p.total_degree();
    Poly acc;
    for (int k = 0; k <= D; ++k) {
        if (k != 0)
            acc = acc * m;
        Poly hk;
        for (const auto& tm : p.terms()) {
            if (static_cast<int>(Poly::total(tm.m)) != k)
                continue;
            unsigned i = Poly::exponent(tm.m, X), j = Poly::exponent(tm.m, Y), l = Poly::exponent(tm.m, Z);
            Poly t = pa[i] * pc[j] * tm.c;
            if (l)
                t = t.mul_term(Poly::mono(0, 0, l), 1);
            hk += t;
        }
        acc += hk;
    }
    return acc;
}

} // namespace detail

// Shared denominator m with sx = a/m, sy = c/m. With use_lcm false the plain
// product is taken, which avoids gcds on large trivariate inputs.
struct CommonDen {
    Poly a, c, m;
};

inline CommonDen common_den(const Frac& sx, const Frac& sy, bool use_lcm)
{
    if (sx.den == sy.den)
        return {sx.num, sy.num, sx.den};
    if (sx.den.size() == sy.den.size()) {
        Scalar k = sy.den.lead_coeff() / sx.den.lead_coeff();
        if (sx.den * k == sy.den)
            return {sx.num * k, sy.num, sy.den};
    }
    if (use_lcm) {
        Poly g = gcd(sx.den, sy.den);
        Poly bx = sx.den / g, by = sy.den / g;
        return {sx.num * by, sy.num * bx, bx * sy.den};
    }
    return {sx.num * sy.den, sy.num * sx.den, sx.den * sy.den};
}

// f(sx, sy) as an unreduced fraction; z in f (if any) is left in place.
inline Frac substitute_raw(const Frac& f, const Frac& sx, const Frac& sy, bool use_lcm = true)
{
    CommonDen cd = common_den(sx, sy, use_lcm);
    Poly n = detail::homogenized_eval(f.num, cd.a, cd.c, cd.m);
    Poly d = detail::homogenized_eval(f.den, cd.a, cd.c, cd.m);
    if (d.is_zero())
        throw IdenticallySingular("composite denominator vanishes: " + f.den.to_string());
    int dn = std::max(f.num.total_degree(), 0), dd = f.den.total_degree();
    if (dn >= dd)
        return {n, d * pow(cd.m, dn - dd)};
    return {n * pow(cd.m, dd - dn), d};
}

inline RatFn substitute(const RatFn& f, const RatFn& sx, const RatFn& sy)
{
    Frac r = substitute_raw(Frac{f.num(), f.den()}, Frac{sx.num(), sx.den()}, Frac{sy.num(), sy.den()});
    if (r.den.is_zero())
        throw IdenticallySingular("composite denominator vanishes identically");
    return RatFn(r.num, r.den);
}

inline std::string to_string(const RatFn& f) { return f.to_string(); }

} // namespace flows
