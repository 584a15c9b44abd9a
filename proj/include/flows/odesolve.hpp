#pragma once

#include "algebra.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "upoly.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flows {

// Reduced univariate rational function with monic denominator.
class URatFn {
public:
    URatFn() : den_(1) {}
    URatFn(const UPoly& p) : num_(p), den_(1) {}
    URatFn(const Scalar& c) : num_(c), den_(1) {}
    URatFn(int c) : num_(c), den_(1) {}
    URatFn(UPoly n, UPoly d) : num_(std::move(n)), den_(std::move(d))
    {
        if (den_.is_zero())
            throw DivisionByZeroPoly();
        if (num_.is_zero()) {
            den_ = UPoly(1);
            return;
        }
        UPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        Scalar s = Scalar(1) / den_.lead();
        num_ = num_ * s;
        den_ = den_ * s;
    }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend bool operator==(const URatFn& a, const URatFn& b)
    {
        return a.num_.coeffs() == b.num_.coeffs() && a.den_.coeffs() == b.den_.coeffs();
    }
    friend URatFn operator+(const URatFn& a, const URatFn& b)
    {
        return URatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend URatFn operator-(const URatFn& a, const URatFn& b)
    {
        return URatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend URatFn operator*(const URatFn& a, const URatFn& b) { return URatFn(a.num_ * b.num_, a.den_ * b.den_); }
    friend URatFn operator/(const URatFn& a, const URatFn& b) { return URatFn(a.num_ * b.den_, a.den_ * b.num_); }

    URatFn derivative() const
    {
        return URatFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }
    std::optional<Scalar> operator()(const Scalar& t) const
    {
        Scalar d = den_(t);
        if (sgn(d) == 0)
            return std::nullopt;
        return num_(t) / d;
    }
    std::string to_string() const
    {
        std::string n = Poly::from_upoly(num_, X).to_string();
        if (den_.degree() == 0)
            return n;
        return "(" + n + ")/(" + Poly::from_upoly(den_, X).to_string() + ")";
    }

private:
    UPoly num_, den_;
};

// p·f′ + q·f = r
struct LinODE {
    URatFn p, q, r;
};

struct ODESolution {
    enum Status { Ok, CapExceeded } status = Ok;
    std::optional<URatFn> particular;
    std::optional<URatFn> homogeneous_basis;
    std::string note; // why a component is missing, for diagnostics
};

namespace detail {

inline UPoly upoly_lcm(const UPoly& a, const UPoly& b) { return (a / gcd(a, b)) * b; }

// Solves M c = rhs over Q; returns a particular solution and a kernel basis.
inline std::pair<std::optional<std::vector<Scalar>>, std::vector<std::vector<Scalar>>>
solve_linear(std::vector<std::vector<Scalar>> M, std::vector<Scalar> rhs, size_t ncols)
{
    size_t rows = M.size();
    std::vector<int> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && sgn(M[piv][c]) == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(M[piv], M[r]);
        std::swap(rhs[piv], rhs[r]);
        Scalar inv = Scalar(1) / M[r][c];
        for (size_t j = c; j < ncols; ++j)
            M[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(M[i][c]) == 0)
                continue;
            Scalar f = M[i][c];
            for (size_t j = c; j < ncols; ++j)
                M[i][j] -= f * M[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (sgn(rhs[i]) != 0)
            return {std::nullopt, {}};
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col)
        is_pivot[c] = true;
    std::vector<Scalar> sol(ncols);
    for (size_t i = 0; i < pivot_col.size(); ++i)
        sol[pivot_col[i]] = rhs[i];
    std::vector<std::vector<Scalar>> kernel;
    for (size_t fcol = 0; fcol < ncols; ++fcol) {
        if (is_pivot[fcol])
            continue;
        std::vector<Scalar> k(ncols);
        k[fcol] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i)
            k[pivot_col[i]] = -M[i][fcol];
        kernel.push_back(std::move(k));
    }
    return {sol, kernel};
}

inline UPoly nth_derivative(UPoly p, int n)
{
    for (int i = 0; i < n; ++i)
        p = p.derivative();
    return p;
}

inline Scalar factorial(int n)
{
    Scalar f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

// A multiple of the denominator of every rational solution of P f′ + Q f = R (polynomials).
inline UPoly denominator_bound(const UPoly& P, const UPoly& Q)
{
    UPoly D(1);
    if (P.degree() < 1)
        return D;
    // pole order at most min(m − 1, v(Q)) without cancellation of leading terms
    D = gcd(P, P.derivative());
    if (!Q.is_zero())
        D = gcd(D, Q);
    // cancellation: k = m·Q^(m−1)(α) / P^(m)(α), a positive integer, where α has multiplicity m
    auto parts = squarefree_decomposition(P);
    for (size_t m = 1; m < parts.size(); ++m) {
        const UPoly& Pm = parts[m];
        if (Pm.degree() < 1)
            continue;
        int mi = static_cast<int>(m);
        UPoly a = nth_derivative(Q, mi - 1) * Scalar(mi);
        UPoly b = nth_derivative(P, mi);
        // res_t(Pm, a − k b) is a polynomial in k of degree ≤ deg Pm
        std::vector<Scalar> ks, vals;
        for (int k = 0; k <= Pm.degree(); ++k) {
            ks.push_back(k);
            vals.push_back(resultant(Pm, a - b * Scalar(k)));
        }
        UPoly R = interpolate(ks, vals);
        if (R.is_zero())
            continue; // cannot happen for squarefree Pm with b nonvanishing on its roots
        for (const auto& k : integer_roots(R)) {
            if (k < 1)
                continue;
            UPoly g = gcd(Pm, a - b * Scalar(k));
            if (g.degree() >= 1)
                D = D * pow(g, static_cast<int>(k.get_si()));
        }
    }
    return D;
}

} // namespace detail

constexpr int kOdeDegreeCap = 200;

inline ODESolution rational_solutions(const LinODE& ode)
{
    if (ode.p.is_zero())
        throw FlowError("leading coefficient of the ODE is zero");
    ODESolution out;
    // clear denominators
    UPoly L = detail::upoly_lcm(detail::upoly_lcm(ode.p.den(), ode.q.den()), ode.r.den());
    UPoly P = ode.p.num() * (L / ode.p.den());
    UPoly Q = ode.q.num() * (L / ode.q.den());
    UPoly R = ode.r.num() * (L / ode.r.den());

    UPoly D = detail::denominator_bound(P, Q);

    // bound on deg f = deg N − deg D from the behaviour at infinity
    int dp = P.degree(), dq = Q.is_zero() ? -1000000 : Q.degree(), dr = R.is_zero() ? -1000000 : R.degree();
    int nmax = -1000000;
    if (dq > dp - 1) {
        nmax = dr - dq;
    } else if (dq < dp - 1) {
        nmax = std::max(dr - dp + 1, 0);
    } else {
        nmax = dr - dq;
        Scalar s = -Q.lead() / P.lead();
        if (is_integer(s))
            nmax = std::max(nmax, static_cast<int>(s.get_num().get_si()));
    }
    if (dq <= dp - 1)
        nmax = std::max(nmax, 0); // constants are killed by f′ when Q = 0
    int B = nmax + D.degree();
    if (B > kOdeDegreeCap) {
        out.status = ODESolution::CapExceeded;
        out.note = "degree bound " + std::to_string(B) + " exceeds the cap";
        return out;
    }
    if (B < 0) {
        if (R.is_zero())
            out.particular = URatFn();
        else
            out.note = "no admissible degree at infinity";
        return out;
    }
    // columns: P (t^j)′ D − P t^j D′ + Q t^j D for j = 0..B
    UPoly Dp = D.derivative();
    std::vector<UPoly> cols;
    int rows = 0;
    for (int j = 0; j <= B; ++j) {
        UPoly tj = UPoly::monomial(1, j);
        UPoly c = P * (tj.derivative() * D - tj * Dp) + Q * tj * D;
        rows = std::max(rows, c.degree() + 1);
        cols.push_back(std::move(c));
    }
    UPoly rhs = R * D * D;
    rows = std::max(rows, rhs.degree() + 1);
    std::vector<std::vector<Scalar>> M(rows, std::vector<Scalar>(B + 1));
    std::vector<Scalar> b(rows);
    for (int j = 0; j <= B; ++j)
        for (int i = 0; i <= cols[j].degree(); ++i)
            M[i][j] = cols[j].coeff(i);
    for (int i = 0; i <= rhs.degree(); ++i)
        b[i] = rhs.coeff(i);
    auto [sol, kernel] = detail::solve_linear(M, b, B + 1);
    if (sol)
        out.particular = URatFn(UPoly(*sol), D);
    else
        out.note = "linear system for the numerator is inconsistent";
    if (kernel.size() > 1)
        throw FlowError("homogeneous solution space of dimension > 1");
    if (!kernel.empty())
        out.homogeneous_basis = URatFn(UPoly(kernel[0]), D);
    return out;
}

// Residual p f′ + q f − r.
inline URatFn ode_residual(const LinODE& ode, const URatFn& f) { return ode.p * f.derivative() + ode.q * f - ode.r; }

inline URatFn uratfn_of(const URat& h) { return URatFn(h.num, h.den); }

// f ρ + f′ (xρ − ϖ) = −1 after setting y = 1.
inline LinODE differ_ode(const VectorField& vf)
{
    URatFn w = uratfn_of(dehomogenize(vf.w)), r = uratfn_of(dehomogenize(vf.r));
    URatFn t(UPoly::x());
    return {t * r - w, r, URatFn(-1)};
}

struct DifferFamily {
    URatFn particular;
    std::optional<URatFn> homogeneous;
};

inline DifferFamily solve_differ(const VectorField& vf)
{
    LinODE ode = differ_ode(vf);
    ODESolution s = rational_solutions(ode);
    if (!s.particular)
        throw NoRationalSolution("the differ equation has no rational solution" +
                                 (s.note.empty() ? std::string() : ": " + s.note));
    return {*s.particular, s.homogeneous_basis};
}

// f(x/y) as a 0-homogenic function.
inline RatFn radial_factor(const URatFn& f) { return homogenize(f.num(), f.den(), 0); }

// 𝒲 = y^N w(x/y) turns N𝒲ρ + 𝒲_x(yϖ − xρ) = 0 into (ϖ − tρ) w′ + Nρ w = 0.
inline LinODE orbit_ode_reduce(const VectorField& vf, int N)
{
    URatFn w = uratfn_of(dehomogenize(vf.w)), r = uratfn_of(dehomogenize(vf.r));
    URatFn t(UPoly::x());
    return {w - t * r, URatFn(Scalar(N)) * r, URatFn()};
}

} // namespace flows
