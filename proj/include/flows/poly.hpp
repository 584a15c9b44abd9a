#pragma once

#include "scalar.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace flows {

enum Var : int { X = 0, Y = 1, Z = 2 };

// Sparse polynomial over Q in x, y and an auxiliary z. The z slot only serves the
// trivariate identity checks; everything public works on bivariate data.
// Terms are kept sorted in decreasing graded-lex order (x > y > z).
class Poly {
public:
    using Mono = std::uint64_t;
    struct Term {
        Mono m;
        Scalar c;
    };

    static Mono mono(unsigned i, unsigned j, unsigned k = 0)
    {
        return (Mono(i + j + k) << 48) | (Mono(i) << 32) | (Mono(j) << 16) | Mono(k);
    }
    static unsigned exponent(Mono m, int v) { return static_cast<unsigned>((m >> (32 - 16 * v)) & 0xffff); }
    static unsigned total(Mono m) { return static_cast<unsigned>(m >> 48); }
    static bool divides(Mono a, Mono b)
    {
        for (int v = 0; v < 3; ++v)
            if (exponent(a, v) > exponent(b, v))
                return false;
        return true;
    }

    Poly() = default;
    Poly(const Scalar& c)
    {
        if (sgn(c) != 0)
            t_.push_back({0, c});
    }
    Poly(int c) : Poly(Scalar(c)) {}

    static Poly term(const Scalar& c, unsigned i, unsigned j, unsigned k = 0)
    {
        Poly p;
        if (sgn(c) != 0)
            p.t_.push_back({mono(i, j, k), c});
        return p;
    }
    static Poly var(Var v) { return term(1, v == X, v == Y, v == Z); }
    static Poly x() { return var(X); }
    static Poly y() { return var(Y); }
    static Poly z() { return var(Z); }

    // Terms must already be sorted and free of zeros.
    static Poly from_sorted(std::vector<Term> t)
    {
        Poly p;
        p.t_ = std::move(t);
        return p;
    }
    static Poly from_terms(std::vector<Term> t)
    {
        std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
        std::vector<Term> out;
        for (auto& tm : t) {
            if (!out.empty() && out.back().m == tm.m)
                out.back().c += tm.c;
            else
                out.push_back(std::move(tm));
        }
        std::erase_if(out, [](const Term& a) { return sgn(a.c) == 0; });
        return from_sorted(std::move(out));
    }

    const std::vector<Term>& terms() const { return t_; }
    size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_integral() const
    {
        for (const auto& tm : t_)
            if (tm.c.get_den() != 1)
                return false;
        return true;
    }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m == 0); }
    Scalar constant_term() const { return !t_.empty() && t_.back().m == 0 ? t_.back().c : Scalar(0); }
    Scalar lead_coeff() const { return t_.empty() ? Scalar(0) : t_.front().c; }
    Mono lead_mono() const { return t_.empty() ? 0 : t_.front().m; }

    int total_degree() const { return t_.empty() ? -1 : static_cast<int>(total(t_.front().m)); }
    int low_degree() const
    {
        if (t_.empty())
            return -1;
        return static_cast<int>(total(t_.back().m));
    }
    int degree(Var v) const
    {
        int d = t_.empty() ? -1 : 0;
        for (const auto& tm : t_)
            d = std::max(d, static_cast<int>(exponent(tm.m, v)));
        return d;
    }
    int min_degree(Var v) const
    {
        if (t_.empty())
            return -1;
        int d = 1 << 20;
        for (const auto& tm : t_)
            d = std::min(d, static_cast<int>(exponent(tm.m, v)));
        return d;
    }
    bool has_var(Var v) const { return degree(v) > 0; }

    bool is_homogeneous() const
    {
        for (const auto& tm : t_)
            if (total(tm.m) != total(t_.front().m))
                return false;
        return true;
    }
    Poly homogeneous_part(int k) const
    {
        Poly p;
        for (const auto& tm : t_)
            if (static_cast<int>(total(tm.m)) == k)
                p.t_.push_back(tm);
        return p;
    }

    Scalar coeff(unsigned i, unsigned j, unsigned k = 0) const
    {
        Mono m = mono(i, j, k);
        auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& a, Mono b) { return a.m > b; });
        return it != t_.end() && it->m == m ? it->c : Scalar(0);
    }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        if (a.t_.size() != b.t_.size())
            return false;
        for (size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c)
                return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    // Total order used for canonical sorting: by size of terms, then term-wise.
    friend bool operator<(const Poly& a, const Poly& b)
    {
        size_t n = std::min(a.t_.size(), b.t_.size());
        for (size_t i = 0; i < n; ++i) {
            if (a.t_[i].m != b.t_[i].m)
                return a.t_[i].m < b.t_[i].m;
            if (a.t_[i].c != b.t_[i].c)
                return a.t_[i].c < b.t_[i].c;
        }
        return a.t_.size() < b.t_.size();
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }
    friend Poly operator-(Poly a)
    {
        for (auto& tm : a.t_)
            tm.c = -tm.c;
        return a;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator*(Poly a, const Scalar& s)
    {
        if (sgn(s) == 0)
            return {};
        for (auto& tm : a.t_)
            tm.c *= s;
        return a;
    }
    friend Poly operator*(const Scalar& s, Poly a) { return std::move(a) * s; }
    friend Poly operator*(Poly a, int s) { return std::move(a) * Scalar(s); }
    friend Poly operator*(int s, Poly a) { return std::move(a) * Scalar(s); }

    Poly mul_term(Mono m, const Scalar& c) const
    {
        if (sgn(c) == 0)
            return {};
        Poly r = *this;
        for (auto& tm : r.t_) {
            tm.m += m;
            tm.c *= c;
        }
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        if (a.t_.size() == 1)
            return b.mul_term(a.t_[0].m, a.t_[0].c);
        if (b.t_.size() == 1)
            return a.mul_term(b.t_[0].m, b.t_[0].c);
        size_t na = a.t_.size(), nb = b.t_.size();
        std::vector<Term> out;
        mpq_class tmp;
        if (na * nb <= (size_t(1) << 18)) {
            struct Idx {
                Mono m;
                std::uint32_t i, j;
            };
            std::vector<Idx> ps;
            ps.reserve(na * nb);
            for (std::uint32_t i = 0; i < na; ++i)
                for (std::uint32_t j = 0; j < nb; ++j)
                    ps.push_back({a.t_[i].m + b.t_[j].m, i, j});
            std::sort(ps.begin(), ps.end(), [](const Idx& p, const Idx& q) { return p.m > q.m; });
            if (a.is_integral() && b.is_integral()) {
                // mpz accumulation skips the gcd normalization of every mpq operation
                mpz_class iacc;
                for (size_t k = 0; k < ps.size();) {
                    Mono m = ps[k].m;
                    mpz_mul(iacc.get_mpz_t(), a.t_[ps[k].i].c.get_num_mpz_t(), b.t_[ps[k].j].c.get_num_mpz_t());
                    size_t l = k + 1;
                    for (; l < ps.size() && ps[l].m == m; ++l)
                        mpz_addmul(iacc.get_mpz_t(), a.t_[ps[l].i].c.get_num_mpz_t(),
                                   b.t_[ps[l].j].c.get_num_mpz_t());
                    if (sgn(iacc) != 0)
                        out.push_back({m, Scalar(iacc)});
                    k = l;
                }
                return from_sorted(std::move(out));
            }
            for (size_t k = 0; k < ps.size();) {
                Mono m = ps[k].m;
                mpq_class acc;
                mpq_mul(acc.get_mpq_t(), a.t_[ps[k].i].c.get_mpq_t(), b.t_[ps[k].j].c.get_mpq_t());
                size_t l = k + 1;
                for (; l < ps.size() && ps[l].m == m; ++l) {
                    mpq_mul(tmp.get_mpq_t(), a.t_[ps[l].i].c.get_mpq_t(), b.t_[ps[l].j].c.get_mpq_t());
                    mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
                }
                if (sgn(acc) != 0)
                    out.push_back({m, std::move(acc)});
                k = l;
            }
            return from_sorted(std::move(out));
        }
        if (a.is_integral() && b.is_integral()) {
            std::unordered_map<Mono, mpz_class> iacc;
            iacc.reserve(na * 4 + nb * 4);
            for (size_t i = 0; i < na; ++i)
                for (size_t j = 0; j < nb; ++j)
                    mpz_addmul(iacc[a.t_[i].m + b.t_[j].m].get_mpz_t(), a.t_[i].c.get_num_mpz_t(),
                               b.t_[j].c.get_num_mpz_t());
            out.reserve(iacc.size());
            for (auto& [m, c] : iacc)
                if (sgn(c) != 0)
                    out.push_back({m, Scalar(c)});
            std::sort(out.begin(), out.end(), [](const Term& p, const Term& q) { return p.m > q.m; });
            return from_sorted(std::move(out));
        }
        std::unordered_map<Mono, mpq_class> acc;
        acc.reserve(na * 4 + nb * 4);
        for (size_t i = 0; i < na; ++i)
            for (size_t j = 0; j < nb; ++j) {
                mpq_mul(tmp.get_mpq_t(), a.t_[i].c.get_mpq_t(), b.t_[j].c.get_mpq_t());
                auto& slot = acc[a.t_[i].m + b.t_[j].m];
                mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), tmp.get_mpq_t());
            }
        out.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (sgn(c) != 0)
                out.push_back({m, std::move(c)});
        std::sort(out.begin(), out.end(), [](const Term& p, const Term& q) { return p.m > q.m; });
        return from_sorted(std::move(out));
    }

    Poly derivative(Var v) const
    {
        std::vector<Term> out;
        Mono unit = mono(v == X, v == Y, v == Z);
        for (const auto& tm : t_) {
            unsigned e = exponent(tm.m, v);
            if (e == 0)
                continue;
            out.push_back({tm.m - unit, tm.c * static_cast<long>(e)});
        }
        // lowering one exponent by one keeps the graded-lex order
        return from_sorted(std::move(out));
    }

    Scalar operator()(const Scalar& x, const Scalar& y, const Scalar& z = 0) const
    {
        Scalar acc = 0;
        for (const auto& tm : t_)
            acc += tm.c * pow(x, exponent(tm.m, X)) * pow(y, exponent(tm.m, Y)) * pow(z, exponent(tm.m, Z));
        return acc;
    }

    // Every term of total degree d picks up t^d, i.e. x -> x t, y -> y t, z -> z t.
    Poly scaled_by(Var t) const
    {
        std::vector<Term> out;
        Mono unit = mono(t == X, t == Y, t == Z);
        for (const auto& tm : t_)
            out.push_back({tm.m + unit * total(tm.m), tm.c});
        return from_terms(std::move(out));
    }

    Poly swap_xy() const
    {
        std::vector<Term> out;
        for (const auto& tm : t_)
            out.push_back({mono(exponent(tm.m, Y), exponent(tm.m, X), exponent(tm.m, Z)), tm.c});
        return from_terms(std::move(out));
    }

    // Coefficients with respect to v, indexed by the power of v.
    std::vector<Poly> coeffs_in(Var v) const
    {
        std::vector<std::vector<Term>> buckets(std::max(degree(v), 0) + 1);
        Mono unit = mono(v == X, v == Y, v == Z);
        for (const auto& tm : t_) {
            unsigned e = exponent(tm.m, v);
            buckets[e].push_back({tm.m - unit * e, tm.c});
        }
        std::vector<Poly> out;
        for (auto& b : buckets)
            out.push_back(from_terms(std::move(b)));
        if (t_.empty())
            out.clear();
        return out;
    }
    static Poly from_coeffs(Var v, const std::vector<Poly>& cs)
    {
        std::vector<Term> out;
        Mono unit = mono(v == X, v == Y, v == Z);
        for (size_t e = 0; e < cs.size(); ++e)
            for (const auto& tm : cs[e].t_)
                out.push_back({tm.m + unit * e, tm.c});
        return from_terms(std::move(out));
    }

    // Univariate view in v; other variables must be absent.
    UPoly to_upoly(Var v) const
    {
        std::vector<Scalar> c(std::max(degree(v), 0) + 1);
        for (const auto& tm : t_)
            c[exponent(tm.m, v)] += tm.c;
        return t_.empty() ? UPoly() : UPoly(std::move(c));
    }
    static Poly from_upoly(const UPoly& p, Var v)
    {
        std::vector<Term> out;
        for (int k = p.degree(); k >= 0; --k)
            if (sgn(p.coeff(k)) != 0)
                out.push_back({mono(v == X ? k : 0, v == Y ? k : 0, v == Z ? k : 0), p.coeff(k)});
        return from_sorted(std::move(out));
    }

    // Homogeneous bivariate p(x, y) -> p(t, 1) in the variable x.
    UPoly dehomogenize() const
    {
        std::vector<Scalar> c(std::max(degree(X), 0) + 1);
        for (const auto& tm : t_)
            c[exponent(tm.m, X)] += tm.c;
        return t_.empty() ? UPoly() : UPoly(std::move(c));
    }
    // Univariate f(t) -> y^d f(x/y).
    static Poly homogenize(const UPoly& f, int d)
    {
        std::vector<Term> out;
        for (int k = f.degree(); k >= 0; --k)
            if (sgn(f.coeff(k)) != 0)
                out.push_back({mono(k, d - k), f.coeff(k)});
        return from_terms(std::move(out));
    }

    Poly monic() const { return is_zero() ? *this : *this * (Scalar(1) / lead_coeff()); }

    // Rescaled to coprime integer coefficients with positive leading coefficient.
    Poly primitive() const
    {
        if (is_zero())
            return *this;
        Integer l = 1, g = 0;
        for (const auto& tm : t_)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), tm.c.get_den_mpz_t());
        for (const auto& tm : t_) {
            Scalar v = tm.c * l;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
        }
        Scalar s(l, g);
        if (sgn(lead_coeff()) < 0)
            s = -s;
        return *this * s;
    }

    // Monomial of the componentwise minimal exponents.
    Mono monomial_content() const
    {
        if (t_.empty())
            return 0;
        unsigned e[3] = {~0u, ~0u, ~0u};
        for (const auto& tm : t_)
            for (int v = 0; v < 3; ++v)
                e[v] = std::min(e[v], exponent(tm.m, v));
        return mono(e[0], e[1], e[2]);
    }
    Poly div_mono(Mono m) const
    {
        Poly r = *this;
        for (auto& tm : r.t_)
            tm.m -= m;
        return r;
    }

    std::string to_string() const;

private:
    static Poly merge(const Poly& a, const Poly& b, bool subtract)
    {
        std::vector<Term> out;
        out.reserve(a.t_.size() + b.t_.size());
        size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].m > b.t_[j].m)) {
                out.push_back(a.t_[i++]);
            } else if (i == a.t_.size() || b.t_[j].m > a.t_[i].m) {
                out.push_back({b.t_[j].m, subtract ? Scalar(-b.t_[j].c) : b.t_[j].c});
                ++j;
            } else {
                Scalar c = subtract ? Scalar(a.t_[i].c - b.t_[j].c) : Scalar(a.t_[i].c + b.t_[j].c);
                if (sgn(c) != 0)
                    out.push_back({a.t_[i].m, std::move(c)});
                ++i;
                ++j;
            }
        }
        return from_sorted(std::move(out));
    }

    std::vector<Term> t_;
};

inline Poly pow(const Poly& p, int e)
{
    Poly r(1), b = p;
    while (e > 0) {
        if (e & 1)
            r *= b;
        e >>= 1;
        if (e)
            b *= b;
    }
    return r;
}

// Exact division; nullopt when b does not divide a.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        return std::nullopt;
    if (a.is_zero())
        return Poly();
    if (b.size() == 1) {
        Poly::Mono m = b.lead_mono();
        for (const auto& tm : a.terms())
            if (!Poly::divides(m, tm.m))
                return std::nullopt;
        return a.div_mono(m) * (Scalar(1) / b.lead_coeff());
    }
    std::vector<Poly::Term> q;
    Poly r = a;
    Poly::Mono lb = b.lead_mono();
    Scalar inv = Scalar(1) / b.lead_coeff();
    while (!r.is_zero()) {
        Poly::Mono lr = r.lead_mono();
        if (!Poly::divides(lb, lr))
            return std::nullopt;
        Scalar c = r.lead_coeff() * inv;
        q.push_back({lr - lb, c});
        r = r - b.mul_term(lr - lb, c);
    }
    return Poly::from_sorted(std::move(q));
}

inline Poly operator/(const Poly& a, const Poly& b)
{
    auto q = divide_exact(a, b);
    if (!q)
        throw std::logic_error("inexact polynomial division");
    return *q;
}

namespace detail {

using Coeffs = std::vector<Poly>;

inline void trim(Coeffs& c)
{
    while (!c.empty() && c.back().is_zero())
        c.pop_back();
}

// Pseudo-remainder of a by b as polynomials in the main variable.
inline Coeffs prem(Coeffs a, const Coeffs& b)
{
    const Poly& lb = b.back();
    int db = static_cast<int>(b.size()) - 1;
    trim(a);
    while (static_cast<int>(a.size()) - 1 >= db) {
        int k = static_cast<int>(a.size()) - 1 - db;
        Poly la = a.back();
        for (auto& c : a)
            c = c * lb;
        for (int j = 0; j <= db; ++j)
            a[k + j] = a[k + j] - la * b[j];
        trim(a);
    }
    return a;
}

} // namespace detail

Poly gcd(const Poly& a, const Poly& b);

namespace detail {

inline Poly content(const Coeffs& cs)
{
    Poly g;
    for (const auto& c : cs) {
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero())
            return Poly(1);
    }
    return g;
}

inline Coeffs primitive_part(Coeffs cs)
{
    Poly g = content(cs);
    Integer l = 1, n = 0;
    for (auto& c : cs) {
        c = c / g;
        for (const auto& tm : c.terms())
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), tm.c.get_den_mpz_t());
    }
    for (const auto& c : cs)
        for (const auto& tm : c.terms()) {
            Scalar v = tm.c * l;
            mpz_gcd(n.get_mpz_t(), n.get_mpz_t(), v.get_num_mpz_t());
        }
    Scalar s(l, n);
    for (auto& c : cs)
        c = c * s;
    return cs;
}

inline Poly gcd_no_monomial(const Poly& a, const Poly& b)
{
    if (a.is_constant() || b.is_constant())
        return Poly(1);
    Var v = X;
    for (Var w : {Z, Y, X})
        if (a.has_var(w) || b.has_var(w)) {
            v = w;
            break;
        }
    if (!a.has_var(v))
        return gcd(a, content(b.coeffs_in(v)));
    if (!b.has_var(v))
        return gcd(b, content(a.coeffs_in(v)));
    Coeffs ca = a.coeffs_in(v), cb = b.coeffs_in(v);
    Poly c = gcd(content(ca), content(cb));
    Coeffs p = primitive_part(ca), q = primitive_part(cb);
    if (p.size() < q.size())
        std::swap(p, q);
    while (true) {
        Coeffs r = prem(p, q);
        if (r.empty())
            break;
        if (r.size() == 1) {
            q = {Poly(1)};
            break;
        }
        p = std::move(q);
        q = primitive_part(std::move(r));
    }
    return (Poly::from_coeffs(v, q) * c).monic();
}

} // namespace detail

// Monic greatest common divisor (positive, unit leading coefficient).
inline Poly gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.is_constant() || b.is_constant())
        return Poly(1);
    Poly::Mono ma = a.monomial_content(), mb = b.monomial_content();
    Poly::Mono m = Poly::mono(std::min(Poly::exponent(ma, X), Poly::exponent(mb, X)),
                              std::min(Poly::exponent(ma, Y), Poly::exponent(mb, Y)),
                              std::min(Poly::exponent(ma, Z), Poly::exponent(mb, Z)));
    Poly a1 = a.div_mono(ma), b1 = b.div_mono(mb);
    if (a1 == b1.monic() * a1.lead_coeff())
        return Poly::term(1, Poly::exponent(m, X), Poly::exponent(m, Y), Poly::exponent(m, Z)) * a1.monic();
    Poly g = detail::gcd_no_monomial(a1, b1);
    return g.mul_term(m, 1);
}

inline Poly lcm(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    return (a / gcd(a, b) * b).monic();
}

namespace detail {

inline std::string coeff_str(const Scalar& c) { return c.get_str(); }

inline std::string mono_str(Poly::Mono m)
{
    std::string s;
    const char* names = "xyz";
    for (int v = 0; v < 3; ++v) {
        unsigned e = Poly::exponent(m, v);
        if (e == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += names[v];
        if (e > 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

} // namespace detail

inline std::string Poly::to_string() const
{
    if (t_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& tm : t_) {
        Scalar c = tm.c;
        bool neg = sgn(c) < 0;
        if (neg)
            c = -c;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        std::string ms = detail::mono_str(tm.m);
        if (ms.empty())
            s += c.get_str();
        else if (c == 1)
            s += ms;
        else
            s += c.get_str() + "*" + ms;
    }
    return s;
}

} // namespace flows
