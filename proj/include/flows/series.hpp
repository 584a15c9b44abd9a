#pragma once

#include "errors.hpp"
#include "flow.hpp"

#include <string>
#include <vector>

namespace flows {

// Homogeneous parts of u(xz, yz)/z and v(xz, yz)/z: u_parts[i] is ϖ⁽ⁱ⁾, i = 1..order.
// Slot 0 is unused so that indices match the exponent.
struct JetTable {
    int order = 0;
    std::vector<RatFn> u_parts, v_parts;
};

inline JetTable expand_from_vf(const VectorField& vf, int K)
{
    if (K < 1)
        throw FlowError("jet order must be positive");
    JetTable t;
    t.order = K;
    t.u_parts = {RatFn(), RatFn(Poly::x())};
    t.v_parts = {RatFn(), RatFn(Poly::y())};
    if (K >= 2) {
        t.u_parts.push_back(vf.w);
        t.v_parts.push_back(vf.r);
    }
    for (int i = 2; i < K; ++i) {
        RatFn inv(Scalar(1, i));
        const RatFn &a = t.u_parts[i], &b = t.v_parts[i];
        t.u_parts.push_back(inv * (a.derivative(X) * vf.w + a.derivative(Y) * vf.r));
        t.v_parts.push_back(inv * (b.derivative(X) * vf.w + b.derivative(Y) * vf.r));
    }
    return t;
}

namespace detail {

// Coefficients c_0..c_{K-1} of f(xz, yz)/z as a series in z; requires the boundary form.
inline std::vector<RatFn> series_over_z(const RatFn& f, int K)
{
    std::vector<RatFn> out;
    if (f.is_zero())
        throw FlowError("cannot expand a zero coordinate");
    int ln = f.num().low_degree(), ld = f.den().low_degree();
    if (ln - ld - 1 != 0)
        throw FlowError("boundary condition fails for " + f.to_string());
    Poly d0 = f.den().homogeneous_part(ld);
    // c_j = p_j / d0^(j+1)
    std::vector<Poly> p;
    std::vector<Poly> d0pow{Poly(1)};
    for (int j = 0; j < K; ++j) {
        Poly acc = f.num().homogeneous_part(ln + j) * d0pow[j];
        for (int k = 1; k <= j; ++k) {
            Poly dk = f.den().homogeneous_part(ld + k);
            if (!dk.is_zero())
                acc -= dk * p[j - k] * d0pow[k - 1];
        }
        p.push_back(acc);
        d0pow.push_back(d0pow.back() * d0);
        out.emplace_back(acc, d0pow[j + 1]);
    }
    return out;
}

} // namespace detail

inline JetTable expand_flow(const Flow& f, int K)
{
    if (!check_boundary(f))
        throw FlowError("boundary condition fails");
    JetTable t;
    t.order = K;
    auto cu = detail::series_over_z(f.u, K), cv = detail::series_over_z(f.v, K);
    t.u_parts = {RatFn()};
    t.v_parts = {RatFn()};
    t.u_parts.insert(t.u_parts.end(), cu.begin(), cu.end());
    t.v_parts.insert(t.v_parts.end(), cv.begin(), cv.end());
    return t;
}

inline bool operator==(const JetTable& a, const JetTable& b)
{
    return a.order == b.order && a.u_parts == b.u_parts && a.v_parts == b.v_parts;
}

// ϖ⁽ⁱ⁾(dir) for i = 1..order; the univariate series of u along the direction.
inline std::vector<Scalar> diagonal_series(const JetTable& jets, const Scalar& dx, const Scalar& dy)
{
    std::vector<Scalar> out;
    for (int i = 1; i <= jets.order; ++i) {
        auto v = jets.u_parts[i](dx, dy);
        if (!v)
            throw PoleAtDirection("part " + std::to_string(i) + " has a pole at (" + dx.get_str() + ", " +
                                  dy.get_str() + ")");
        out.push_back(*v);
    }
    return out;
}

struct PrimeReport {
    std::vector<Integer> largest_prime; // per coefficient; 1 when the denominator is 1
    bool growing = false;               // envelope of the second half exceeds the first half
    bool empty() const
    {
        for (const auto& p : largest_prime)
            if (p > 1)
                return false;
        return true;
    }
};

namespace detail {

// Largest prime factor; cofactors left after trial division are assumed prime.
inline Integer largest_prime_factor(Integer n)
{
    if (n < 0)
        n = -n;
    Integer best = 1;
    for (unsigned long p = 2; p <= 1000000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            best = p;
        }
    }
    if (n > 1)
        best = n;
    return best;
}

} // namespace detail

// Advisory only: tracks the largest prime in each denominator.
inline PrimeReport prime_growth_diagnostic(const std::vector<Scalar>& coeffs)
{
    PrimeReport r;
    for (const auto& c : coeffs)
        r.largest_prime.push_back(detail::largest_prime_factor(c.get_den()));
    size_t half = r.largest_prime.size() / 2;
    Integer m1 = 1, m2 = 1;
    for (size_t i = 0; i < r.largest_prime.size(); ++i)
        (i < half ? m1 : m2) = std::max(i < half ? m1 : m2, r.largest_prime[i]);
    r.growing = m2 > m1;
    return r;
}

} // namespace flows
