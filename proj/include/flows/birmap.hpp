#pragma once

#include "algebra.hpp"
#include "flow.hpp"

#include <string>
#include <utility>

namespace flows {

// ℓ_{P,Q} ∘ L, where ℓ_{P,Q}(x, y) = (xP/Q, yP/Q) and L acts first.
// Normalized: gcd(P, Q) = 1 and both P and Q have unit leading coefficient.
// The scale of P is pushed into L, since (μP, Q; L/μ) is the same map.
class HomBir {
public:
    HomBir() : P_(1), Q_(1) {}

    static HomBir make(const Poly& P, const Poly& Q, const LinearMap2& L = {})
    {
        if (P.is_zero() || Q.is_zero())
            throw FlowError("HomBir needs nonzero P and Q");
        if (sgn(L.det()) == 0)
            throw FlowError("HomBir needs an invertible linear part");
        return radial(RatFn(P, Q), L);
    }

    // x A • y A after L, for 0-homogenic A.
    static HomBir radial(const RatFn& A, const LinearMap2& L = {})
    {
        if (A.is_zero())
            throw FlowError("radial factor is zero");
        auto d = A.homogeneity_degree();
        if (!d || *d != 0)
            throw FlowError("radial factor is not 0-homogenic: " + A.to_string());
        HomBir h;
        Scalar p = A.num().lead_coeff();
        h.P_ = A.num() * (Scalar(1) / p);
        h.Q_ = A.den();
        h.L_ = L * p;
        return h;
    }
    static HomBir linear(const LinearMap2& L) { return make(Poly(1), Poly(1), L); }
    static HomBir identity() { return {}; }

    const Poly& P() const { return P_; }
    const Poly& Q() const { return Q_; }
    const LinearMap2& L() const { return L_; }
    RatFn A() const { return RatFn::coprime(P_, Q_); }
    int degree() const { return P_.total_degree(); }
    bool is_identity() const { return P_ == Poly(1) && Q_ == Poly(1) && L_.is_identity(); }

    friend bool operator==(const HomBir& a, const HomBir& b) { return a.P_ == b.P_ && a.Q_ == b.Q_ && a.L_ == b.L_; }

    std::string to_string() const
    {
        return "(" + P_.to_string() + ", " + Q_.to_string() + "; " + L_.to_string() + ")";
    }

private:
    Poly P_, Q_;
    LinearMap2 L_;
};

inline HomBir hb_compose(const HomBir& a, const HomBir& b)
{
    LinearMap2 li = a.L().inverse();
    return HomBir::make(a.P() * li.apply(b.P()), a.Q() * li.apply(b.Q()), a.L() * b.L());
}

inline HomBir hb_inverse(const HomBir& a)
{
    return HomBir::make(a.L().apply(a.Q()), a.L().apply(a.P()), a.L().inverse());
}

// a(p, q): L first, then the radial factor.
inline std::pair<RatFn, RatFn> hb_apply(const HomBir& a, const RatFn& p, const RatFn& q)
{
    const LinearMap2& L = a.L();
    RatFn w1 = RatFn(L.a) * p + RatFn(L.b) * q;
    RatFn w2 = RatFn(L.c) * p + RatFn(L.d) * q;
    if (a.degree() == 0)
        return {w1, w2};
    RatFn s = substitute(a.A(), w1, w2);
    return {w1 * s, w2 * s};
}

// The coordinates of the map itself.
inline std::pair<RatFn, RatFn> hb_map(const HomBir& a) { return hb_apply(a, Poly::x(), Poly::y()); }

// Recovers (P, Q; L) from a 1-homogenic birational map p • q.
inline HomBir hb_from_map(const RatFn& p, const RatFn& q)
{
    RatFn ratio = p / q;
    const Poly &n = ratio.num(), &d = ratio.den();
    if (!(n.is_homogeneous() && d.is_homogeneous() && n.total_degree() == 1 && d.total_degree() == 1))
        throw FlowError("not a 1-homogenic birational map: " + p.to_string() + " • " + q.to_string());
    LinearMap2 L{n.coeff(1, 0), n.coeff(0, 1), d.coeff(1, 0), d.coeff(0, 1)};
    if (sgn(L.det()) == 0)
        throw FlowError("degenerate map: " + p.to_string() + " • " + q.to_string());
    RatFn A = L.inverse().apply(p / RatFn(L.first()));
    return HomBir::radial(A, L);
}

// a⁻¹ ∘ f ∘ a
inline Flow conjugate_flow(const Flow& f, const HomBir& a)
{
    auto [p, q] = hb_map(a);
    auto [fp, fq] = apply(f, p, q);
    auto [u, v] = hb_apply(hb_inverse(a), fp, fq);
    return {u, v};
}

// L⁻¹ ∘ vf ∘ L
inline VectorField conjugate_vf_linear(const VectorField& vf, const LinearMap2& L)
{
    if (L.is_identity())
        return vf;
    RatFn w = L.apply(vf.w), r = L.apply(vf.r);
    LinearMap2 li = L.inverse();
    return {RatFn(li.a) * w + RatFn(li.b) * r, RatFn(li.c) * w + RatFn(li.d) * r};
}

// Vector field of ℓ⁻¹ ∘ φ ∘ ℓ for ℓ = x A • y A.
inline VectorField conjugate_vf_radial(const VectorField& vf, const RatFn& A)
{
    RatFn x(Poly::x()), y(Poly::y());
    RatFn s = x * vf.r - y * vf.w;
    return {A * vf.w - A.derivative(Y) * s, A * vf.r + A.derivative(X) * s};
}

// Vector field of a⁻¹ ∘ φ ∘ a.
inline VectorField conjugate_vf(const VectorField& vf, const HomBir& a)
{
    return conjugate_vf_linear(conjugate_vf_radial(vf, a.A()), a.L());
}

// y²/x • y, i.e. (x, y; swap).
inline HomBir involution_i() { return HomBir::make(Poly::x(), Poly::y(), LinearMap2::swap()); }
inline HomBir involution_i0() { return HomBir::linear(LinearMap2::swap()); }

enum class InvolutionClass { IPlusPlus, IPlusMinus, IMinusPlus, IMinusMinus, NotInvolution };

inline std::string to_string(InvolutionClass c)
{
    switch (c) {
    case InvolutionClass::IPlusPlus: return "i++";
    case InvolutionClass::IPlusMinus: return "i+-";
    case InvolutionClass::IMinusPlus: return "i-+";
    case InvolutionClass::IMinusMinus: return "i--";
    default: return "not an involution";
    }
}

// Upper sign from L² = λ·id, lower sign from Q = k·(P∘L). With even degree
// the lower sign depends on the representative; the normalized one is used.
inline InvolutionClass classify_involution(const HomBir& a)
{
    if (a.is_identity() || !hb_compose(a, a).is_identity())
        return InvolutionClass::NotInvolution;
    auto lam = a.L().square_scalar();
    if (!lam)
        return InvolutionClass::NotInvolution;
    Poly pl = a.L().apply(a.P());
    Scalar k = a.Q().lead_coeff() / pl.lead_coeff();
    if (a.Q() != pl * k)
        return InvolutionClass::NotInvolution;
    bool upper = sgn(*lam) > 0, lower = sgn(k) > 0;
    if (upper)
        return lower ? InvolutionClass::IPlusPlus : InvolutionClass::IPlusMinus;
    return lower ? InvolutionClass::IMinusPlus : InvolutionClass::IMinusMinus;
}

} // namespace flows
