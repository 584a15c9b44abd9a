#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <cassert>
#include <utility>
#include <vector>

namespace flows {

// Dense univariate polynomial over Q, coefficients from low to high degree.
class UPoly {
public:
    UPoly() = default;
    UPoly(const Scalar& c) { if (sgn(c) != 0) c_.push_back(c); }
    UPoly(int c) : UPoly(Scalar(c)) {}
    explicit UPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly x() { return UPoly(std::vector<Scalar>{0, 1}); }
    static UPoly monomial(const Scalar& c, int k)
    {
        std::vector<Scalar> v(k + 1);
        v[k] = c;
        return UPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Scalar(0); }
    Scalar lead() const { return c_.empty() ? Scalar(0) : c_.back(); }

    Scalar operator()(const Scalar& t) const
    {
        Scalar acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * t + *it;
        return acc;
    }

    UPoly& operator+=(const UPoly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator-(UPoly a)
    {
        for (auto& c : a.c_)
            c = -c;
        return a;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0)
                continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    friend UPoly operator*(UPoly a, const Scalar& s)
    {
        if (sgn(s) == 0)
            return {};
        for (auto& c : a.c_)
            c *= s;
        return a;
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    UPoly derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<Scalar> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = c_[i] * static_cast<long>(i);
        return UPoly(std::move(r));
    }

    UPoly monic() const { return is_zero() ? *this : *this * (Scalar(1) / lead()); }

    // Multiplies by a rational so that coefficients are coprime integers with positive lead.
    UPoly primitive() const
    {
        if (is_zero())
            return *this;
        Integer l = 1, g = 0;
        for (const auto& c : c_)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        for (const auto& c : c_)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(c * l).get_mpz_t());
        Scalar s(l, g);
        if (sgn(lead()) < 0)
            s = -s;
        return *this * s;
    }

    // x -> x + s
    UPoly shift(const Scalar& s) const
    {
        UPoly r, xs = UPoly(std::vector<Scalar>{s, 1});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * xs + UPoly(*it);
        return r;
    }

    // p(x) -> x^deg p(1/x)
    UPoly reversed() const
    {
        std::vector<Scalar> r(c_.rbegin(), c_.rend());
        return UPoly(std::move(r));
    }

private:
    void trim()
    {
        while (!c_.empty() && sgn(c_.back()) == 0)
            c_.pop_back();
    }
    std::vector<Scalar> c_;
};

inline std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
{
    assert(!b.is_zero());
    std::vector<Scalar> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db)
        return {UPoly(), a};
    std::vector<Scalar> q(a.degree() - db + 1);
    Scalar inv = Scalar(1) / b.lead();
    for (int k = a.degree(); k >= db; --k) {
        Scalar c = r[k] * inv;
        q[k - db] = c;
        if (sgn(c) == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            r[k - db + j] -= c * b.coeff(j);
    }
    r.resize(db);
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

inline UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
inline UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

// Monic gcd; gcd(0,0) = 0.
inline UPoly gcd(UPoly a, UPoly b)
{
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = r.primitive();
    }
    return a.monic();
}

inline UPoly pow(const UPoly& p, int e)
{
    UPoly r(1), b = p;
    while (e > 0) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Yun's algorithm: p = c * prod f_i^i with f_i squarefree, pairwise coprime. Index 0 unused.
inline std::vector<UPoly> squarefree_decomposition(const UPoly& p)
{
    std::vector<UPoly> out{UPoly(1)};
    if (p.degree() < 1)
        return out;
    UPoly a = p.monic();
    UPoly b = a.derivative();
    UPoly c = gcd(a, b);
    UPoly w = a / c;
    UPoly y = b / c;
    UPoly z = y - w.derivative();
    while (w.degree() > 0) {
        UPoly g = gcd(w, z);
        out.push_back(g);
        w = w / g;
        y = z / g;
        z = y - w.derivative();
    }
    while (out.size() > 1 && out.back().degree() == 0)
        out.pop_back();
    return out;
}

inline UPoly squarefree_part(const UPoly& p)
{
    if (p.degree() < 1)
        return UPoly(1);
    return (p / gcd(p, p.derivative())).monic();
}

inline std::vector<UPoly> sturm_sequence(const UPoly& p)
{
    std::vector<UPoly> s{p, p.derivative()};
    while (!s.back().is_zero()) {
        UPoly r = s[s.size() - 2] % s.back();
        if (r.is_zero())
            break;
        // only the sign of the scale matters; primitive() has positive lead
        UPoly next = r.primitive();
        s.push_back(sgn(r.lead()) > 0 ? -next : next);
    }
    return s;
}

namespace detail {

inline int variations(const std::vector<int>& signs)
{
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++v;
        last = s;
    }
    return v;
}

inline int variations_at(const std::vector<UPoly>& seq, const Scalar& t)
{
    std::vector<int> s;
    for (const auto& p : seq)
        s.push_back(sgn(p(t)));
    return variations(s);
}

inline int variations_at_inf(const std::vector<UPoly>& seq, bool positive)
{
    std::vector<int> s;
    for (const auto& p : seq) {
        int sg = sgn(p.lead());
        if (!positive && (p.degree() % 2 == 1))
            sg = -sg;
        s.push_back(sg);
    }
    return variations(s);
}

// Cauchy bound on the absolute value of the roots.
inline Scalar root_bound(const UPoly& p)
{
    Scalar m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Scalar a = abs(p.coeff(i) / p.lead());
        if (a > m)
            m = a;
    }
    return m + 1;
}

} // namespace detail

// Number of distinct real roots.
inline int count_distinct_real_roots(const UPoly& p)
{
    if (p.degree() < 1)
        return 0;
    auto seq = sturm_sequence(squarefree_part(p));
    return detail::variations_at_inf(seq, false) - detail::variations_at_inf(seq, true);
}

// Real roots counted with multiplicity.
inline int count_real_roots(const UPoly& p)
{
    auto parts = squarefree_decomposition(p);
    int n = 0;
    for (size_t i = 1; i < parts.size(); ++i)
        n += static_cast<int>(i) * count_distinct_real_roots(parts[i]);
    return n;
}

// Isolating intervals (lo, hi] for the real roots of a squarefree polynomial, each of width < eps.
inline std::vector<std::pair<Scalar, Scalar>> isolate_real_roots(const UPoly& sqfree, const Scalar& eps)
{
    std::vector<std::pair<Scalar, Scalar>> out;
    if (sqfree.degree() < 1)
        return out;
    auto seq = sturm_sequence(sqfree);
    Scalar b = detail::root_bound(sqfree);
    std::vector<std::pair<Scalar, Scalar>> stack{{-b, b}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int n = detail::variations_at(seq, lo) - detail::variations_at(seq, hi);
        if (n == 0)
            continue;
        if (n == 1 && hi - lo < eps) {
            out.emplace_back(lo, hi);
            continue;
        }
        Scalar mid = (lo + hi) / 2;
        stack.emplace_back(mid, hi);
        stack.emplace_back(lo, mid);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// The rational with least denominator in the closed interval [lo, hi].
inline Scalar simplest_between(Scalar lo, Scalar hi)
{
    if (lo > hi)
        std::swap(lo, hi);
    if (sgn(lo) <= 0 && sgn(hi) >= 0)
        return 0;
    if (sgn(hi) < 0)
        return -simplest_between(-hi, -lo);
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Scalar(fl) == lo)
        return lo;
    if (Scalar(fl + 1) <= hi)
        return Scalar(fl + 1);
    Scalar f(fl);
    return f + Scalar(1) / simplest_between(Scalar(1) / (hi - f), Scalar(1) / (lo - f));
}

// Rational roots of p, each paired with its multiplicity, in increasing order.
inline std::vector<std::pair<Scalar, int>> rational_roots(const UPoly& p)
{
    std::vector<std::pair<Scalar, int>> out;
    auto parts = squarefree_decomposition(p);
    for (size_t m = 1; m < parts.size(); ++m) {
        UPoly f = parts[m].primitive();
        if (f.degree() < 1)
            continue;
        if (sgn(f.coeff(0)) == 0)
            out.emplace_back(Scalar(0), static_cast<int>(m));
        // a root a/b in lowest terms has b | lead(f); two such roots are > 1/lead^2 apart
        Scalar l = abs(f.lead());
        Scalar eps = Scalar(1) / (2 * l * l);
        for (auto& [lo, hi] : isolate_real_roots(f, eps)) {
            if (sgn(f(hi)) == 0) {
                if (sgn(hi) != 0)
                    out.emplace_back(hi, static_cast<int>(m));
                continue;
            }
            Scalar c = simplest_between(lo, hi);
            if (c > lo && sgn(f(c)) == 0 && sgn(c) != 0)
                out.emplace_back(c, static_cast<int>(m));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Integer> integer_roots(const UPoly& p)
{
    std::vector<Integer> out;
    for (auto& [r, m] : rational_roots(p))
        if (is_integer(r))
            out.push_back(r.get_num());
    return out;
}

inline Scalar resultant(UPoly a, UPoly b)
{
    if (a.is_zero() || b.is_zero())
        return 0;
    Scalar s = 1;
    while (true) {
        int da = a.degree(), db = b.degree();
        if (db == 0)
            return s * pow(b.lead(), da);
        if (da < db) {
            if ((da * db) % 2 == 1)
                s = -s;
            std::swap(a, b);
            continue;
        }
        UPoly r = a % b;
        if (r.is_zero())
            return 0;
        if ((da * db) % 2 == 1)
            s = -s;
        s *= pow(b.lead(), da - r.degree());
        a = std::move(b);
        b = std::move(r);
    }
}

// Newton interpolation through (xs[i], ys[i]).
inline UPoly interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys)
{
    size_t n = xs.size();
    std::vector<Scalar> dd = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j)
                break;
        }
    UPoly r, basis(1);
    for (size_t i = 0; i < n; ++i) {
        r += basis * dd[i];
        basis *= UPoly(std::vector<Scalar>{-xs[i], 1});
    }
    return r;
}

} // namespace flows
