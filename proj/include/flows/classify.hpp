#pragma once

#include "algebra.hpp"
#include "birmap.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "odesolve.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flows {

// ϖ = Ux² + Vxy + Wy², ρ = −y².
struct QuadVF {
    Scalar U, V, W;

    VectorField vf() const
    {
        return {RatFn(Poly::term(U, 2, 0) + Poly::term(V, 1, 1) + Poly::term(W, 0, 2)), RatFn(Poly::term(-1, 0, 2))};
    }
    // ϖ + xy; conjugation by the maps of univariate_conjugator acts on it as F ↦ F∘L
    Poly F() const { return Poly::term(U, 2, 0) + Poly::term(V + 1, 1, 1) + Poly::term(W, 0, 2); }
    Scalar delta_squared() const { return (V + 1) * (V + 1) - 4 * U * W; }
    QuadVF reflected() const { return {-U, -V - 2, -W}; }
    friend bool operator==(const QuadVF&, const QuadVF&) = default;
};

inline std::optional<QuadVF> as_univariate(const VectorField& vf)
{
    if (vf.r != RatFn(Poly::term(-1, 0, 2)) || !vf.w.is_polynomial())
        return std::nullopt;
    const Poly& p = vf.w.num();
    if (!p.is_zero() && !(p.is_homogeneous() && p.total_degree() == 2))
        return std::nullopt;
    return QuadVF{p.coeff(2, 0), p.coeff(1, 1), p.coeff(0, 2)};
}

struct HyperboloidPoint {
    Scalar X, Y, Z;
    friend bool operator==(const HyperboloidPoint&, const HyperboloidPoint&) = default;
};

struct PHatValue {
    std::optional<Scalar> tau; // empty means ∞
    bool is_infinite() const { return !tau.has_value(); }
    std::string to_string() const { return tau ? tau->get_str() : "inf"; }
    friend bool operator==(const PHatValue&, const PHatValue&) = default;
};

// x(y+1)^(N−1) • y/(y+1); negative N gives i∘φ_|N|∘i.
inline Flow canonical_flow(int N)
{
    RatFn y(Poly::y()), s = RatFn(Poly::y() + Poly(1));
    return {RatFn(Poly::x()) * pow(s, N - 1), y / s};
}

inline VectorField canonical_vf(int N) { return QuadVF{0, N - 1, 0}.vf(); }

inline PHatValue phat_of(const QuadVF& q)
{
    if (sgn(q.U) != 0) {
        if (q.V == -2)
            return {};
        return {-2 * q.U / (q.V + 2)};
    }
    if (sgn(q.V) == 0)
        return {Scalar(0)};
    if (q.V == -2) {
        if (sgn(q.W) == 0)
            return {};
        return {1 / q.W};
    }
    throw FlowError("coefficients are not on the level 1 hyperboloid");
}

// h with conjugate_vf(vf(φ_N), h) = q.vf(); h = (ay − cx, y; L) where N·(L first)·(L second) = F.
inline HomBir univariate_conjugator(const QuadVF& q, int N)
{
    if (N < 1 || q.delta_squared() != Scalar(N) * N)
        throw FlowError("univariate field is not of level " + std::to_string(N));
    Scalar a, b, c, d;
    Scalar Vp = q.V + 1;
    if (sgn(q.U) != 0) {
        a = 1;
        c = q.U / N;
        d = (Vp + N) / (2 * N);
        b = (Vp - N) / (2 * q.U);
    } else if (Vp == N) {
        a = 1, b = q.W / N, c = 0, d = 1;
    } else {
        a = 0, b = 1, c = -1, d = q.W / N;
    }
    LinearMap2 L{a, b, c, d};
    return HomBir::make(Poly::term(a, 0, 1) - Poly::term(c, 1, 0), Poly::y(), L);
}

// g with conjugate_vf(q.vf(), g) = (−x² − xy, −y²) when Δ² = 0.
inline HomBir pseudolog_conjugator(const QuadVF& q)
{
    if (sgn(q.delta_squared()) != 0)
        throw FlowError("not a pseudo-log field");
    LinearMap2 L;
    Scalar k;
    if (sgn(q.U) != 0) {
        Scalar beta = (q.V + 1) / (2 * q.U);
        L = {1, -beta, 0, 1};
        k = q.U;
    } else {
        if (sgn(q.W) == 0)
            throw FlowError("level 0 field has no pseudo-log normal form");
        L = {0, -1, 1, 0};
        k = q.W;
    }
    HomBir h = HomBir::make(Poly::term(L.a, 0, 1) - Poly::term(L.c, 1, 0), Poly::y(), L);
    return hb_compose(h, HomBir::linear({-1 / k, 0, 0, 1}));
}

// The univariate flow with the given vector field, for integer Δ ≥ 1.
inline Flow univariate_flow(const QuadVF& q)
{
    auto r = exact_sqrt(q.delta_squared());
    if (!r || !is_integer(*r) || sgn(*r) == 0)
        throw FlowError("Δ² is not the square of a nonzero integer");
    int N = static_cast<int>(r->get_num().get_si());
    return conjugate_flow(canonical_flow(N), univariate_conjugator(q, N));
}

// Two-parameter univariate family of level N.
inline Flow univariate_sigma_tau(int N, const Scalar& sigma, const Scalar& tau)
{
    RatFn x(Poly::x()), y(Poly::y()), s(Poly::y() + Poly(1));
    RatFn sn = pow(s, N);
    RatFn lin = RatFn(N - sigma * tau) * x + RatFn(sigma) * y;
    RatFn tx = RatFn(tau) * x - y;
    RatFn num = sn * lin + RatFn(sigma) * tx;
    RatFn den = RatFn(tau) * sn * lin - RatFn(N - sigma * tau) * tx;
    return {num / den * (y / s), y / s};
}

// The limit family xy/((y+1)[(y+1)^N (y − κx) + κx]).
inline Flow univariate_kappa(int N, const Scalar& kappa)
{
    RatFn x(Poly::x()), y(Poly::y()), s(Poly::y() + Poly(1));
    RatFn den = s * (pow(s, N) * (y - RatFn(kappa) * x) + RatFn(kappa) * x);
    return {x * y / den, y / s};
}

struct UnivariateFamily {
    enum Kind { SigmaTau, Kappa } kind = SigmaTau;
    int N = 0;
    Scalar sigma, tau, tau_alt, kappa; // tau_alt = τ − N/σ, the second root, when σ ≠ 0
};

struct UnivariateVerdict {
    enum Kind { Rational, PseudoLog, NonIntegerLevel } kind = Rational;
    int N = 0;
    Scalar delta_squared;
    std::optional<UnivariateFamily> family;
};

inline UnivariateVerdict univariate_classify(const QuadVF& q)
{
    UnivariateVerdict v;
    v.delta_squared = q.delta_squared();
    if (sgn(v.delta_squared) == 0) {
        v.kind = UnivariateVerdict::PseudoLog;
        return v;
    }
    auto r = exact_sqrt(v.delta_squared);
    if (!r || !is_integer(*r)) {
        v.kind = UnivariateVerdict::NonIntegerLevel;
        return v;
    }
    int N = static_cast<int>(std::abs(r->get_num().get_si()));
    v.N = N;
    UnivariateFamily fam;
    fam.N = N;
    if (sgn(q.W) != 0) {
        fam.sigma = q.W;
        fam.tau = (Scalar(N - 1) - q.V) / (2 * q.W);
        fam.tau_alt = fam.tau - Scalar(N) / q.W;
    } else if (q.V + 1 == N) {
        fam.sigma = 0;
        fam.tau = -q.U / N;
    } else {
        fam.kind = UnivariateFamily::Kappa;
        fam.kappa = q.U / N;
    }
    v.family = fam;
    return v;
}

// ---------------------------------------------------------------- degenerate flows

struct DegenerateForm {
    bool zero_flow = false;
    RatFn R;
    Scalar c, A, B;
};

// A·R/(cR+1) • B·R/(cR+1) with R(A, B) = 1.
inline DegenerateForm degenerate_form(const Flow& f)
{
    if (check_boundary(f))
        throw NotDegenerate();
    if (!verify_translation(f))
        throw NotAFlow("input does not satisfy the translation equation");
    DegenerateForm d;
    if (f.u.is_zero() && f.v.is_zero()) {
        d.zero_flow = true;
        return d;
    }
    RatFn s;
    if (f.u.is_zero()) {
        d.A = 0, d.B = 1, s = f.v;
    } else if (f.v.is_zero()) {
        d.A = 1, d.B = 0, s = f.u;
    } else {
        RatFn k = f.u / f.v;
        if (!k.is_constant())
            throw NotAFlow("degenerate solution with non-proportional coordinates");
        d.A = k.constant_value(), d.B = 1, s = f.v;
    }
    RatFn t = s.inverse();
    const Poly &n = t.num(), &m = t.den();
    if (!m.is_homogeneous())
        throw NotAFlow("degenerate solution of unexpected shape");
    int e = m.total_degree();
    Poly top = n.homogeneous_part(e);
    auto c = divide_exact(top, m);
    if (!c || !c->is_constant())
        throw NotAFlow("degenerate solution of unexpected shape");
    d.c = c->constant_term();
    RatFn H = t - RatFn(d.c);
    if (H.is_zero() || H.homogeneity_degree() != -1)
        throw NotAFlow("degenerate solution of unexpected shape");
    d.R = H.inverse();
    auto val = d.R(d.A, d.B);
    if (!val || *val != 1)
        throw NotAFlow("degenerate solution with R(A, B) != 1");
    return d;
}

// ---------------------------------------------------------------- reduction steps

struct ReductionStep {
    enum Kind { Reduced, AlreadyQuadratic, Obstruction, NeedsRationalRoot, Stuck } kind = Stuck;
    VectorField vf;
    LinearMap2 L; // always the identity: the search runs over radial factors only
    RatFn A;
    Poly blocking;
};

inline int denominator_degree(const VectorField& vf) { return common_form(vf)[2].total_degree(); }

inline bool numerators_proportional(const VectorField& vf)
{
    if (vf.w.is_zero() || vf.r.is_zero())
        return true;
    return (vf.w / vf.r).is_constant();
}

inline ReductionStep reduce_denominator_step(const VectorField& vf)
{
    ReductionStep out;
    out.vf = vf;
    if (vf.is_zero() || numerators_proportional(vf)) {
        out.kind = ReductionStep::Obstruction;
        return out;
    }
    auto [a, c, m] = common_form(vf);
    int deg = m.total_degree();
    if (deg == 0) {
        out.kind = ReductionStep::AlreadyQuadratic;
        return out;
    }
    LinearFactorization fm = linear_factors_q(m);
    Poly K = Poly::y() * a - Poly::x() * c;
    std::vector<ProjRoot> dens;
    auto add = [&](const ProjRoot& r) {
        if (std::find(dens.begin(), dens.end(), r) == dens.end())
            dens.push_back(r);
    };
    if (!K.is_zero())
        for (const auto& lf : linear_factors_q(K).factors)
            add(lf.root);
    for (const auto& lf : fm.factors)
        add(lf.root);
    add({1, 0});
    add({0, 1});
    for (const auto& top : fm.factors) {
        Poly num = top.form;
        for (const auto& r : dens) {
            Poly den = Poly::term(r.y0, 1, 0) - Poly::term(r.x0, 0, 1);
            RatFn A(num, den);
            if (A.is_constant())
                continue;
            VectorField next = conjugate_vf_radial(vf, A);
            if (next.is_zero())
                continue;
            if (denominator_degree(next) < deg) {
                out.kind = ReductionStep::Reduced;
                out.vf = next;
                out.A = A;
                return out;
            }
        }
    }
    if (fm.rest.total_degree() > 0) {
        out.kind = ReductionStep::NeedsRationalRoot;
        out.blocking = fm.rest;
    } else {
        out.kind = ReductionStep::Stuck;
    }
    return out;
}

struct ObstructionVerdict {
    bool rational = false;
    std::string tag; // u1, u2, phi_e, phi_t, phi_e', non-quadratic
    LinearMap2 L;    // linear change bringing the field to (ϖ, 0) in normal position
    Scalar z;
    std::optional<Flow> flow; // closed form of the normalized flow when rational
};

// Fields with proportional coordinates; only ϖ = z x² and ϖ = z y² come from rational flows.
inline ObstructionVerdict step2_obstruction(const VectorField& vf)
{
    ObstructionVerdict out;
    if (vf.is_zero() || !numerators_proportional(vf))
        throw FlowError("step2_obstruction needs proportional coordinates");
    LinearMap2 L;
    if (vf.r.is_zero()) {
        L = {};
    } else if (vf.w.is_zero()) {
        L = LinearMap2::swap();
    } else {
        Scalar k = (vf.w / vf.r).constant_value();
        L = {k, 0, 1, 1};
    }
    VectorField v1 = conjugate_vf_linear(vf, L);
    if (!v1.r.is_zero())
        throw FlowError("internal: linear change did not clear ρ");
    const RatFn& w = v1.w;
    if (!w.is_polynomial() || !w.num().is_homogeneous() || w.num().total_degree() != 2) {
        out.tag = "non-quadratic";
        out.L = L;
        return out;
    }
    Poly p = w.num() * (Scalar(1) / w.den().lead_coeff());
    Scalar U = p.coeff(2, 0), V = p.coeff(1, 1), W = p.coeff(0, 2);
    RatFn x(Poly::x()), y(Poly::y());
    if (sgn(U) != 0) {
        Scalar t = V / (2 * U);
        out.L = L * LinearMap2{1, -t, 0, 1};
        Scalar rest = W - V * V / (4 * U);
        if (sgn(rest) == 0) {
            out.rational = true;
            out.tag = "u1";
            out.z = U;
            out.flow = Flow{x / (RatFn(1) - RatFn(U) * x), y};
        } else {
            out.tag = sgn(U) * sgn(rest) < 0 ? "phi_e'" : "phi_t";
        }
        return out;
    }
    out.L = L;
    if (sgn(V) != 0) {
        out.tag = "phi_e";
        return out;
    }
    out.rational = true;
    out.tag = "u2";
    out.z = W;
    out.flow = Flow{x + RatFn(W) * y * y, y};
    return out;
}

// Step III exceptional pairs: full closure, swaps are matched separately.
inline const std::vector<std::pair<int, int>>& exceptional_pairs()
{
    static const std::vector<std::pair<int, int>> p{{-2, -1}, {-5, -1}, {-3, -1}, {-1, -2}, {-5, -2},
                                                    {-2, -2}, {-1, -3}, {-3, -3}, {-2, -5}, {-1, -5}};
    return p;
}

inline bool is_exceptional_pair(int B, int C)
{
    for (const auto& [b, c] : exceptional_pairs())
        if ((b == B && c == C) || (b == C && c == B))
            return true;
    return false;
}

inline RatFn normalize_orbit_W(const RatFn& w)
{
    return RatFn(w.num().primitive(), w.den().primitive());
}

// 𝒲 of degree N with N𝒲ρ + 𝒲_x(yϖ − xρ) = 0; x/y for level 0.
inline RatFn orbit_invariant(const VectorField& vf, int N)
{
    if (N == 0)
        return RatFn(Poly::x(), Poly::y());
    if (N < 0)
        throw FlowError("orbit_invariant needs a nonnegative level");
    ODESolution s = rational_solutions(orbit_ode_reduce(vf, N));
    std::optional<URatFn> w = s.homogeneous_basis;
    if (!w && s.particular && !s.particular->is_zero())
        w = s.particular;
    if (!w)
        throw NoRationalSolution("no rational orbit invariant of degree " + std::to_string(N));
    return normalize_orbit_W(homogenize(w->num(), w->den(), N));
}

// Smallest N ≤ max_level with a rational orbit invariant of degree N.
inline std::optional<std::pair<int, RatFn>> find_orbit_invariant(const VectorField& vf, int max_level = 24)
{
    for (int N = 1; N <= max_level; ++N) {
        try {
            return std::pair{N, orbit_invariant(vf, N)};
        } catch (const NoRationalSolution&) {
        }
    }
    return std::nullopt;
}

// The projective curve 𝒲(X, Y) = Z^N is non-singular iff 𝒲 has no repeated linear factor.
inline bool orbit_curve_nonsingular(const Poly& W)
{
    return gcd(W.derivative(X), W.derivative(Y)).is_constant();
}

struct QuadraticVerdict {
    enum Kind { Genus1, ToUnivariate, Continue, NonRational, NeedsRationalRoot } kind = Continue;
    int B = 0, C = 0;
    Poly orbit_W;
    int level = 0;
    LinearMap2 L;             // linear change to the normal position
    VectorField normalized;   // (ax² + bxy, cxy + dy²), or the cube shape
    std::optional<QuadVF> univariate;
    Poly blocking;
    std::string reason;
};

inline QuadraticVerdict quadratic_classify(const Poly& P, const Poly& Q)
{
    QuadraticVerdict out;
    for (const Poly* p : {&P, &Q})
        if (!p->is_zero() && !(p->is_homogeneous() && p->total_degree() == 2))
            throw FlowError("quadratic_classify needs quadratic forms");
    VectorField vf{RatFn(P), RatFn(Q)};
    Poly K = Poly::y() * P - Poly::x() * Q;
    if (K.is_zero()) {
        out.reason = "level 0 field";
        return out;
    }
    LinearFactorization fk = linear_factors_q(K);
    if (fk.factors.size() == 1 && fk.factors[0].multiplicity == 3) {
        const ProjRoot& r = fk.factors[0].root;
        out.L = sgn(r.y0) != 0 ? LinearMap2{1, r.x0, 0, r.y0} : LinearMap2::swap();
        out.normalized = conjugate_vf_linear(vf, out.L);
        Scalar b = out.normalized.w.num().coeff(1, 1);
        if (sgn(b) == 0) {
            out.kind = QuadraticVerdict::Continue;
            out.reason = "cube case with b = 0 continues in the univariate step";
        } else {
            out.kind = QuadraticVerdict::NonRational;
            out.reason = "cube case with b != 0: a logarithm appears in the x^3 coefficient";
        }
        return out;
    }
    if (fk.factors.size() < 2) {
        out.kind = QuadraticVerdict::NeedsRationalRoot;
        out.blocking = fk.rest;
        return out;
    }
    // (a:c) from the second root and (b:d) from the first, so x·y keeps L = id
    const ProjRoot &r1 = fk.factors[1].root, &r2 = fk.factors[0].root;
    out.L = {r1.x0, r2.x0, r1.y0, r2.y0};
    VectorField n = conjugate_vf_linear(vf, out.L);
    Poly pw = n.w.num() * (Scalar(1) / n.w.den().lead_coeff());
    Poly pr = n.r.num() * (Scalar(1) / n.r.den().lead_coeff());
    Scalar a = pw.coeff(2, 0), b = pw.coeff(1, 1), c = pr.coeff(1, 1), d = pr.coeff(0, 2);
    if (sgn(b) == 0 || sgn(c) == 0 || sgn(a) == 0 || sgn(d) == 0) {
        out.normalized = n;
        out.reason = "a vanishing coefficient routes to the univariate step";
        return out;
    }
    // scale to a = d = 1
    LinearMap2 S{1 / a, 0, 0, 1 / d};
    out.L = out.L * S;
    out.normalized = conjugate_vf_linear(n, S);
    Scalar Bq = b / d, Cq = c / a;
    if (!is_integer(Bq) || !is_integer(Cq)) {
        out.kind = QuadraticVerdict::NonRational;
        out.reason = "B = " + Bq.get_str() + ", C = " + Cq.get_str() + " are not both integers";
        return out;
    }
    int B = static_cast<int>(Bq.get_num().get_si()), C = static_cast<int>(Cq.get_num().get_si());
    out.B = B;
    out.C = C;
    if (is_exceptional_pair(B, C)) {
        out.kind = QuadraticVerdict::Genus1;
        if (auto w = find_orbit_invariant(out.normalized)) {
            out.level = w->first;
            out.orbit_W = w->second.num();
        }
        return out;
    }
    if (B + C == 2) {
        out.kind = QuadraticVerdict::ToUnivariate;
        out.univariate = QuadVF{0, Scalar(C - 2), 0};
        return out;
    }
    if (B * C != 1 && (B + C - 2) % (B * C - 1) != 0) {
        out.kind = QuadraticVerdict::NonRational;
        out.reason = "(B+C-2)/(BC-1) is not an integer";
        return out;
    }
    out.reason = "arithmetic condition holds";
    return out;
}

// ---------------------------------------------------------------- the pipeline

enum class Verdict {
    Identity,
    Degenerate,
    RationalFlow,
    NonRationalGenus1,
    PseudoLog,
    NonIntegerLevel,
    NeedsRationalRoot,
    NonRational
};

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Identity: return "Identity";
    case Verdict::Degenerate: return "Degenerate";
    case Verdict::RationalFlow: return "RationalFlow";
    case Verdict::NonRationalGenus1: return "NonRationalGenus1";
    case Verdict::PseudoLog: return "PseudoLog";
    case Verdict::NonIntegerLevel: return "NonIntegerLevel";
    case Verdict::NeedsRationalRoot: return "NeedsRationalRoot";
    default: return "NonRational";
    }
}

struct CanonicalizationResult {
    Verdict verdict = Verdict::NonRational;
    std::optional<VectorField> vf;

    std::optional<DegenerateForm> degenerate;

    int level = 0;
    HomBir ell; // RationalFlow: to φ_level; PseudoLog: to the normal form
    std::optional<RatFn> orbit_W;
    std::optional<HyperboloidPoint> pN;
    std::optional<PHatValue> phat;
    std::optional<QuadVF> univariate; // univariate form reached through the differ equation
    RatFn univariate_A;               // its radial factor

    std::pair<int, int> pair{0, 0};
    Scalar delta_squared;
    Poly blocking_poly;
    std::string reason;
};

namespace detail {

inline void finish_univariate(CanonicalizationResult& res, const VectorField& vf, const RatFn& A, const QuadVF& q)
{
    res.univariate = q;
    res.univariate_A = A;
    UnivariateVerdict uv = univariate_classify(q);
    HomBir ell_A = HomBir::radial(A);
    if (uv.kind == UnivariateVerdict::NonIntegerLevel) {
        res.verdict = Verdict::NonIntegerLevel;
        res.delta_squared = uv.delta_squared;
        return;
    }
    if (uv.kind == UnivariateVerdict::PseudoLog) {
        res.verdict = Verdict::PseudoLog;
        res.ell = hb_compose(ell_A, pseudolog_conjugator(q));
        if (conjugate_vf(vf, res.ell) != QuadVF{-1, -1, 0}.vf())
            throw VerificationFailed("pseudo-log conjugator check failed");
        return;
    }
    int N = uv.N;
    res.verdict = Verdict::RationalFlow;
    res.level = N;
    res.ell = hb_compose(ell_A, hb_inverse(univariate_conjugator(q, N)));
    if (conjugate_vf(vf, res.ell) != canonical_vf(N))
        throw VerificationFailed("vector field conjugator check failed for " + vf.to_string());
    res.orbit_W = orbit_invariant(vf, N);
    if (N >= 2)
        res.pN = HyperboloidPoint{q.U, q.V, q.W};
    else
        res.phat = phat_of(q);
}

inline void diagnose(CanonicalizationResult& res, VectorField vf)
{
    const VectorField original = vf;
    for (int step = 0; step < 64; ++step) {
        ReductionStep r = reduce_denominator_step(vf);
        switch (r.kind) {
        case ReductionStep::Reduced:
            vf = r.vf;
            continue;
        case ReductionStep::NeedsRationalRoot:
            res.verdict = Verdict::NeedsRationalRoot;
            res.blocking_poly = r.blocking;
            res.reason = "denominator has no rational linear factor to remove";
            return;
        case ReductionStep::Stuck:
            res.verdict = Verdict::NonRational;
            res.reason = "no radial factor lowers the denominator";
            return;
        case ReductionStep::Obstruction: {
            ObstructionVerdict ov = step2_obstruction(vf);
            res.verdict = Verdict::NonRational;
            res.reason = "proportional field, tag " + ov.tag;
            if (ov.rational)
                res.reason += " (rational closed form but the differ equation failed)";
            return;
        }
        case ReductionStep::AlreadyQuadratic: {
            auto [a, c, m] = common_form(vf);
            Scalar inv = Scalar(1) / m.lead_coeff();
            QuadraticVerdict qv = quadratic_classify(a * inv, c * inv);
            if (qv.kind == QuadraticVerdict::Genus1) {
                res.verdict = Verdict::NonRationalGenus1;
                res.pair = {qv.B, qv.C};
                if (auto w = find_orbit_invariant(original)) {
                    res.level = w->first;
                    res.orbit_W = w->second;
                }
                return;
            }
            if (qv.kind == QuadraticVerdict::NeedsRationalRoot) {
                res.verdict = Verdict::NeedsRationalRoot;
                res.blocking_poly = qv.blocking;
                res.reason = "yP - xQ has no two rational roots";
                return;
            }
            LevelResult lv = level_of(original);
            if (lv.tag == LevelResult::NonIntegerSquare) {
                res.verdict = Verdict::NonIntegerLevel;
                res.delta_squared = lv.value;
                return;
            }
            res.verdict = Verdict::NonRational;
            res.reason = qv.reason.empty() ? "the differ equation has no rational solution" : qv.reason;
            return;
        }
        }
    }
    res.verdict = Verdict::NonRational;
    res.reason = "reduction did not terminate";
}

} // namespace detail

inline CanonicalizationResult canonicalize_vf(const VectorField& vf)
{
    CanonicalizationResult res;
    res.vf = vf;
    if (vf.is_zero()) {
        res.verdict = Verdict::Identity;
        return res;
    }
    for (const RatFn* c : {&vf.w, &vf.r})
        if (!c->is_zero() && c->homogeneity_degree() != 2)
            throw FlowError("vector field is not 2-homogenic");
    RatFn x(Poly::x()), y(Poly::y());
    if ((y * vf.w - x * vf.r).is_zero()) {
        // level 0: ϖ = xJ, ρ = yJ and the radial factor −y/J gives J = −y
        RatFn J = vf.w / x;
        RatFn A = -y / J;
        res.verdict = Verdict::RationalFlow;
        res.level = 0;
        res.ell = HomBir::radial(A);
        if (conjugate_vf(vf, res.ell) != canonical_vf(0))
            throw VerificationFailed("level 0 conjugator check failed");
        res.orbit_W = orbit_invariant(vf, 0);
        return res;
    }
    std::optional<DifferFamily> fam;
    try {
        fam = solve_differ(vf);
    } catch (const NoRationalSolution&) {
    }
    if (fam) {
        std::vector<URatFn> cands{fam->particular};
        if (fam->homogeneous) {
            cands.push_back(fam->particular + *fam->homogeneous);
            cands.push_back(fam->particular - *fam->homogeneous);
        }
        for (const auto& f : cands) {
            if (f.is_zero())
                continue;
            RatFn A = radial_factor(f);
            if (auto q = as_univariate(conjugate_vf_radial(vf, A))) {
                detail::finish_univariate(res, vf, A, *q);
                return res;
            }
        }
    }
    detail::diagnose(res, vf);
    return res;
}

inline CanonicalizationResult classify_degenerate(const Flow& f)
{
    CanonicalizationResult res;
    res.verdict = Verdict::Degenerate;
    res.degenerate = degenerate_form(f);
    return res;
}

inline CanonicalizationResult canonicalize(const Flow& f)
{
    if (f == Flow::identity()) {
        CanonicalizationResult res;
        res.verdict = Verdict::Identity;
        res.vf = VectorField{};
        return res;
    }
    if (!check_boundary(f))
        return classify_degenerate(f);
    if (!satisfies_flow_ode(f))
        throw NotAFlow("input does not satisfy the translation equation");
    CanonicalizationResult res = canonicalize_vf(vector_field(f));
    if (res.verdict == Verdict::RationalFlow && conjugate_flow(f, res.ell) != canonical_flow(res.level))
        throw VerificationFailed("conjugated flow differs from the canonical flow");
    return res;
}

inline HyperboloidPoint pN_map(const Flow& f)
{
    CanonicalizationResult r = canonicalize(f);
    if (r.verdict != Verdict::RationalFlow || r.level < 2 || !r.pN)
        throw FlowError("pN_map needs a rational flow of level >= 2");
    return *r.pN;
}

inline PHatValue phat_map(const Flow& f)
{
    CanonicalizationResult r = canonicalize(f);
    if (r.verdict != Verdict::RationalFlow || r.level != 1 || !r.phat)
        throw FlowError("phat_map needs a rational flow of level 1");
    return *r.phat;
}

// i₀∘ℓ∘𝒰*∘ℓ⁻¹∘i₀, where ℓ⁻¹∘φ∘ℓ = 𝒰 is the univariate form.
inline Flow dual(const Flow& f)
{
    CanonicalizationResult r = canonicalize(f);
    if (r.verdict != Verdict::RationalFlow || r.level < 2)
        throw FlowError("dual needs a rational flow of level >= 2");
    Flow ustar = univariate_flow(r.univariate->reflected());
    HomBir ell = HomBir::radial(r.univariate_A);
    return conjugate_flow(ustar, hb_compose(hb_inverse(ell), involution_i0()));
}

// ---------------------------------------------------------------- symmetric flows

enum class SymmetricKind { Phi, PhiPrime, Tor1, Psi };

inline Flow symmetric_family(int N, SymmetricKind which)
{
    RatFn x(Poly::x()), y(Poly::y());
    switch (which) {
    case SymmetricKind::Tor1:
        return {x / (x + RatFn(1)), y / (y + RatFn(1))};
    case SymmetricKind::Psi: {
        RatFn d = x - y;
        RatFn u = (RatFn(2) * x * x * y * (x + y) + d * d * x) / ((y - x) * (x * x + x * y - x + y));
        return {u, u.swap_xy()};
    }
    case SymmetricKind::PhiPrime:
        return symmetric_family(-N, SymmetricKind::Phi);
    case SymmetricKind::Phi:
    default: {
        if (N == 0)
            throw FlowError("symmetric family needs N != 0");
        RatFn s = x + y + RatFn(1);
        RatFn sn = pow(s, N), den = RatFn(2) * pow(s, N + 1);
        return {(sn * (x + y) + x - y) / den, (sn * (x + y) + y - x) / den};
    }
    }
}

} // namespace flows
