// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "common.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace flows;
using namespace testutil;

namespace {

constexpr double kNumericTol = 1e-12;
constexpr double kTableBudgetSec = 10.0;
constexpr double kCanonBudgetSec = 30.0;
constexpr int kJetOrder = 8;

struct Check {
    bool ok = true;
    std::ostringstream notes;
    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            if (ok)
                notes << what;
            else
                notes << "; " << what;
            ok = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LinearMap2 random_linear(RandQ& rq)
{
    for (;;) {
        LinearMap2 L{rq(), rq(), rq(), rq()};
        if (sgn(L.det()) != 0)
            return L;
    }
}

HomBir random_hombir(RandQ& rq, int deg)
{
    for (;;) {
        Poly P = random_form(rq, deg), Q = random_form(rq, deg);
        if (gcd(P, Q).total_degree() == 0)
            return HomBir::make(P, Q, random_linear(rq));
    }
}

Flow as_map(const HomBir& h)
{
    auto [p, q] = hb_map(h);
    return {p, q};
}

Flow ell(const Poly& P, const Poly& Q)
{
    RatFn A(P, Q);
    return {RatFn(Poly::x()) * A, RatFn(Poly::y()) * A};
}

bool proportional(const RatFn& a, const RatFn& b) { return !a.is_zero() && !b.is_zero() && (a / b).is_constant(); }

// ---------------------------------------------------------------- 1

void table(Check& c)
{
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& e : zoo()) {
        VectorField vf = vector_field(e.flow);
        c.expect(vf == e.vf, e.name + " vector field " + vf.to_string());
        LevelResult lv = level_of(vf);
        c.expect(lv.tag == LevelResult::Level && lv.N == e.level, e.name + " level");
        c.expect(orbit_invariant(vf, e.level) == e.orbit_W, e.name + " orbit invariant");
        c.expect(zeros_poles(vf) == e.zeros_poles, e.name + " zeros-poles");
        if (e.phat)
            c.expect(phat_map(e.flow) == *e.phat, e.name + " p-hat");
        if (e.p2)
            c.expect(pN_map(e.flow) == *e.p2, e.name + " p_2");
    }
    double t = seconds_since(t0);
    c.expect(t < kTableBudgetSec, "took " + std::to_string(t) + " s");
    c.notes << (c.ok ? "" : "; ") << zoo().size() << " rows";
}

// ---------------------------------------------------------------- 2

void translation(Check& c)
{
    for (const auto& e : zoo())
        c.expect(verify_translation(e.flow), e.name);
    RandQ rq(2);
    int n = 0;
    for (int N : {1, 2, 3, 5}) {
        for (int k = 0; k < 10; ++k) {
            Scalar s = rq(), t = rq(), kap = rq();
            c.expect(verify_translation(univariate_sigma_tau(N, s, t)),
                     "sigma-tau N=" + std::to_string(N) + " " + s.get_str() + "," + t.get_str());
            c.expect(verify_translation(univariate_kappa(N, kap)), "kappa N=" + std::to_string(N) + " " + kap.get_str());
            n += 2;
        }
    }
    c.expect(!verify_translation(F("u = x/(x+1)^2; v = y/(y+1)")), "counterexample accepted");
    c.notes << (c.ok ? "" : "; ") << zoo().size() + n << " flows, 1 counterexample";
}

// ---------------------------------------------------------------- 3

void canonicalization(Check& c)
{
    auto t0 = std::chrono::steady_clock::now();
    for (const char* name : {"phi0_1", "phi0_2", "phi0_3", "phi1_1", "phi2_1", "phi2_2", "phi2_3", "Phi_2", "Psi"}) {
        auto e = zoo_lookup(name);
        CanonicalizationResult r = canonicalize(e->flow);
        c.expect(r.verdict == Verdict::RationalFlow, std::string(name) + " verdict " + to_string(r.verdict));
        if (r.verdict != Verdict::RationalFlow)
            continue;
        c.expect(r.level == e->level, std::string(name) + " level");
        c.expect(conjugate_flow(e->flow, r.ell) == canonical_flow(r.level), std::string(name) + " conjugate");
    }
    double t = seconds_since(t0);
    c.expect(t < kCanonBudgetSec, "took " + std::to_string(t) + " s");
}

// ---------------------------------------------------------------- 4

void pde(Check& c)
{
    std::vector<Flow> flows;
    for (const auto& e : zoo())
        flows.push_back(e.flow);
    const std::vector<Flow> mutated = {
        F("u = x/(x+1)^2; v = y/(y+1)"),
        F("u = x/(x+2*y+1); v = y/(x+y+1)"),
        F("u = x*(y+1) + x^2; v = y/(y+1)"),
        F("u = (x-y)^2 + x; v = (x-y)^2 + y + x*y"),
        F("u = x/(x+1); v = y/(y+1)^2"),
    };
    int nonflows = 0;
    for (const auto& f : mutated) {
        bool t = verify_translation(f);
        nonflows += !t;
        c.expect(!t, "mutation is a flow: " + f.to_string());
        flows.push_back(f);
    }
    for (const auto& f : flows)
        c.expect(verify_pde(f) == verify_translation(f), "disagree on " + f.to_string());
    c.notes << (c.ok ? "" : "; ") << flows.size() - mutated.size() << " flows, " << nonflows << " non-flows";
}

// ---------------------------------------------------------------- 5

// Power series helpers on double coefficients, truncated at K terms.
using Series = std::vector<double>;

Series series_div(const Series& a, const Series& b)
{
    Series q(a.size(), 0.0);
    for (size_t n = 0; n < a.size(); ++n) {
        double s = a[n];
        for (size_t k = 1; k <= n; ++k)
            s -= b[k] * q[n - k];
        q[n] = s / b[0];
    }
    return q;
}

// tan s from tan′ = 1 + tan², as coefficients of s^k
Series tan_series(size_t K)
{
    Series t(K, 0.0);
    for (size_t n = 1; n < K; ++n) {
        // (n)·t_n = [n−1 coefficient of 1 + t²]
        double s = n == 1 ? 1.0 : 0.0;
        for (size_t i = 0; i <= n - 1; ++i)
            s += t[i] * t[n - 1 - i];
        t[n] = s / static_cast<double>(n);
    }
    return t;
}

// Coefficients of z^(i−1) in u(xz, yz)/z for the closed-form flows of (xy, 0) and (x² + y², 0).
Series exp_coeffs(double x, double y, size_t K)
{
    Series c(K);
    double term = x;
    for (size_t i = 0; i < K; ++i) {
        c[i] = term;
        term *= y / static_cast<double>(i + 1);
    }
    return c;
}

Series tan_coeffs(double x, double y, size_t K)
{
    // (x + y tan(yz)) / (1 − (x/y) tan(yz))
    Series ts = tan_series(K), tz(K);
    for (size_t k = 0; k < K; ++k)
        tz[k] = ts[k] * std::pow(y, static_cast<double>(k));
    Series num(K), den(K);
    for (size_t k = 0; k < K; ++k) {
        num[k] = y * tz[k];
        den[k] = -(x / y) * tz[k];
    }
    num[0] += x;
    den[0] += 1;
    return series_div(num, den);
}

void series(Check& c)
{
    for (const auto& e : zoo())
        c.expect(expand_flow(e.flow, kJetOrder) == expand_from_vf(vector_field(e.flow), kJetOrder), e.name);
    struct Case {
        const char* field;
        Series (*numeric)(double, double, size_t);
    };
    const std::vector<std::pair<Scalar, Scalar>> pts = {
        {Scalar(1, 2), Scalar(1, 3)}, {Scalar(-2, 5), Scalar(3, 7)}, {Scalar(1), Scalar(-1, 2)},
        {Scalar(3, 4), Scalar(2, 9)}, {Scalar(-1, 3), Scalar(-1, 4)}};
    const double z = 0.1;
    double worst = 0;
    for (const Case& k : {Case{"(x*y, 0)", exp_coeffs}, Case{"(x^2 + y^2, 0)", tan_coeffs}}) {
        JetTable jets = expand_from_vf(V(k.field), kJetOrder);
        for (const auto& [px, py] : pts) {
            Series num = k.numeric(px.get_d(), py.get_d(), kJetOrder);
            double exact_sum = 0, num_sum = 0;
            for (int i = 1; i <= kJetOrder; ++i) {
                double ji = jets.u_parts[i](px, py)->get_d();
                double zi = std::pow(z, i - 1);
                worst = std::max(worst, std::abs(ji - num[i - 1]));
                exact_sum += ji * zi;
                num_sum += num[i - 1] * zi;
            }
            worst = std::max(worst, std::abs(exact_sum - num_sum));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.2e", worst);
    c.expect(worst < kNumericTol, buf);
    c.notes << (c.ok ? std::string(buf) : "");
}

// ---------------------------------------------------------------- 6

void nonrational(Check& c)
{
    VectorField g = V("(x^2 - 2*x*y, -2*x*y + y^2)");
    CanonicalizationResult r = canonicalize_vf(g);
    c.expect(r.verdict == Verdict::NonRationalGenus1, "genus verdict " + to_string(r.verdict));
    c.expect(r.orbit_W && proportional(*r.orbit_W, R("x*y*(x-y)")), "genus orbit invariant");
    std::vector<Scalar> d = diagonal_series(expand_from_vf(g, 9), 1, -1);
    const std::vector<Scalar> expect = {1, 3, 3, 3, 6, 9, 12, Scalar(117, 7), Scalar(171, 7)};
    c.expect(d == expect, "diagonal coefficients");
    auto pair_field = [](int B, int C) {
        return VectorField{RatFn(Poly::term(1, 2, 0) + Poly::term(B, 1, 1)), RatFn(Poly::term(C, 1, 1) + Poly::term(1, 0, 2))};
    };
    CanonicalizationResult a = canonicalize_vf(pair_field(-3, -3));
    c.expect(a.verdict == Verdict::NonRationalGenus1 && a.orbit_W && proportional(*a.orbit_W, R("x*y*(x-y)^2")),
             "(-3,-3) orbit invariant");
    CanonicalizationResult b = canonicalize_vf(pair_field(-1, -2));
    c.expect(b.verdict == Verdict::NonRationalGenus1 && b.orbit_W && proportional(*b.orbit_W, R("(3*x-2*y)*x^3*y^2")),
             "(-1,-2) orbit invariant");
    c.expect(canonicalize_vf(V("(-x^2 - x*y, -y^2)")).verdict == Verdict::PseudoLog, "pseudo-log verdict");
}

// ---------------------------------------------------------------- 7

void group(Check& c)
{
    RandQ rq(7);
    for (int k = 0; k < 5; ++k) {
        Poly P = random_form(rq, 2), Q = random_form(rq, 2), P2 = random_form(rq, 1), Q2 = random_form(rq, 1);
        LinearMap2 L = random_linear(rq);
        Flow lin{RatFn(L.first()), RatFn(L.second())};
        c.expect(ell(P, P) == Flow::identity(), "l_{P,P} = id");
        c.expect(compose(lin, ell(P, Q)) == compose(ell(L.inverse().apply(P), L.inverse().apply(Q)), lin),
                 "L after l_{P,Q}");
        c.expect(compose(ell(P, Q), ell(P2, Q2)) == ell(P * P2, Q * Q2), "l_{P,Q} after l_{P',Q'}");
        c.expect(compose(ell(P, Q), ell(Q, P)) == Flow::identity(), "l_{P,Q} after l_{Q,P}");
    }
    for (int k = 0; k < 10; ++k) {
        HomBir a = random_hombir(rq, rq.integer(0, 2)), b = random_hombir(rq, rq.integer(0, 2));
        c.expect(as_map(hb_compose(a, b)) == compose(as_map(a), as_map(b)), "composition law");
        c.expect(hb_compose(a, hb_inverse(a)).is_identity() && hb_compose(hb_inverse(a), a).is_identity(), "inverse law");
    }
    c.expect(classify_involution(hb_from_map(R("y^2/x"), R("y"))) == InvolutionClass::IPlusPlus, "example i+");
    c.expect(classify_involution(hb_from_map(R("-(x-y)^2/x"), R("(x-y)*(y-2*x)/x"))) == InvolutionClass::IMinusPlus,
             "example i-");
    int generated = 0;
    for (int cls = 0; cls < 4; ++cls) {
        bool upper = cls < 2, lower = cls % 2 == 0;
        InvolutionClass want[] = {InvolutionClass::IPlusPlus, InvolutionClass::IPlusMinus, InvolutionClass::IMinusPlus,
                                  InvolutionClass::IMinusMinus};
        int made = 0;
        while (made < 20) {
            Scalar a = rq(), b = rq();
            LinearMap2 L{a, b, ((upper ? 1 : -1) - a * a) / b, -a};
            int deg = 2 * rq.integer(0, 1) + 1; // odd degree keeps the lower sign intrinsic
            Poly P = random_form(rq, deg);
            Poly Q = L.apply(P) * Scalar(lower ? 1 : -1);
            if (gcd(P, Q).total_degree() > 0)
                continue;
            HomBir h = HomBir::make(P, Q, L);
            c.expect(hb_compose(h, h).is_identity(), "not an involution " + h.to_string());
            c.expect(classify_involution(h) == want[cls], "class of " + h.to_string());
            ++made;
        }
        generated += made;
    }
    for (int N = 0; N <= 5; ++N)
        c.expect(conjugate_flow(canonical_flow(N), involution_i()) == canonical_flow(-N), "i phi_N i, N=" + std::to_string(N));
    c.notes << (c.ok ? "" : "; ") << generated << " generated involutions";
}

// ---------------------------------------------------------------- 8

void level_one(Check& c)
{
    Flow sph = zoo_lookup("phi_sph_inf")->flow;
    DifferFamily fam = solve_differ(vector_field(sph));
    URatFn t(UPoly::x()), one(1);
    URatFn base = one / ((t - one) * (t - one)), lin = one / (t - one);
    c.expect(fam.homogeneous.has_value(), "no one-parameter family");
    if (fam.homogeneous) {
        // homogeneous part ∝ 1/(t−1), particular = 1/(t−1)² + k/(t−1)
        URatFn h = *fam.homogeneous;
        Scalar hc = h.num().lead();
        c.expect(h == URatFn(hc) * lin, "homogeneous solution " + h.to_string());
        URatFn rest = fam.particular - base;
        Scalar k = rest.is_zero() ? Scalar(0) : rest.num().lead();
        c.expect(rest == URatFn(k) * lin, "particular solution " + fam.particular.to_string());
        for (Scalar sigma : {Scalar(0), Scalar(1, 2), Scalar(-3)}) {
            URatFn f = fam.particular + URatFn((sigma - k) / hc) * h;
            RatFn A = radial_factor(f);
            RatFn As = R("y^2/(x-y)^2") + RatFn(sigma) * R("y/(x-y)");
            c.expect(A == As, "A_sigma at " + sigma.get_str());
            RatFn x(Poly::x()), y(Poly::y()), one_r(1), s(sigma);
            RatFn Us = (y * y * (one_r - s) + s * x * y + x) / ((y + one_r) * (y * (one_r - s) + s * x + one_r));
            Flow got = conjugate_flow(sph, HomBir::radial(As));
            c.expect(got == Flow{Us, y / (y + one_r)}, "U_sigma at " + sigma.get_str());
        }
    }
    for (const auto& e : zoo())
        if (e.phat)
            c.expect(phat_map(e.flow) == *e.phat, e.name + " p-hat");
}

// ---------------------------------------------------------------- 9

void duality(Check& c)
{
    RatFn x(Poly::x()), y(Poly::y()), s(Poly::x() + Poly(1));
    for (int N : {2, 3, 4})
        c.expect(dual(canonical_flow(N)) == Flow{x / s, y / pow(s, N + 1)}, "dual phi_" + std::to_string(N));
    int n = 0;
    for (const auto& e : zoo()) {
        if (e.level != 2)
            continue;
        c.expect(dual(dual(e.flow)) == e.flow, "dual twice " + e.name);
        ++n;
    }
    c.notes << (c.ok ? "" : "; ") << n << " level-2 flows";
}

// ---------------------------------------------------------------- 10

void symmetric(Check& c)
{
    for (SymmetricKind k : {SymmetricKind::Phi, SymmetricKind::PhiPrime, SymmetricKind::Tor1, SymmetricKind::Psi}) {
        Flow f = symmetric_family(1, k);
        c.expect(is_i0_symmetric(f) && verify_translation(f), "basic symmetric flow " + f.to_string());
    }
    for (int N = 1; N <= 4; ++N)
        for (int sgn_ : {1, -1}) {
            Flow f = symmetric_family(sgn_ * N, SymmetricKind::Phi);
            c.expect(is_i0_symmetric(f) && verify_translation(f), "Phi_" + std::to_string(sgn_ * N));
        }
    RandQ rq(10);
    Flow phi2 = symmetric_family(2, SymmetricKind::Phi);
    int done = 0;
    while (done < 5) {
        Scalar a = rq(), b = rq(), d = rq();
        // A = S/T with S, T symmetric quadratic forms
        Poly S = Poly::term(1, 2, 0) + Poly::term(d, 1, 1) + Poly::term(1, 0, 2);
        Poly T = Poly::term(a, 2, 0) + Poly::term(b, 1, 1) + Poly::term(a, 0, 2);
        if (gcd(S, T).total_degree() > 0 || (RatFn(S, T)).is_constant())
            continue;
        Flow g = conjugate_flow(phi2, HomBir::make(S, T));
        c.expect(is_i0_symmetric(g), "conjugate lost symmetry");
        c.expect(satisfies_flow_ode(g), "conjugate is not a flow");
        ++done;
    }
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> all = {
        {1, "table reproduction", table},
        {2, "translation equation", translation},
        {3, "canonicalization", canonicalization},
        {4, "PDE equivalence", pde},
        {5, "series consistency", series},
        {6, "non-rationality detection", nonrational},
        {7, "group theory", group},
        {8, "level-1 structure", level_one},
        {9, "duality", duality},
        {10, "symmetric flows", symmetric},
    };
    int failed = 0;
    for (const auto& cr : all) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        double t = seconds_since(t0);
        char tm[32];
        std::snprintf(tm, sizeof tm, "%.2fs", t);
        std::string notes = c.notes.str();
        std::cout << "criterion " << cr.id << ": " << (c.ok ? "PASS" : "FAIL") << "  " << cr.title << " [" << tm << "]"
                  << (notes.empty() ? "" : "  (" + notes + ")") << std::endl;
        failed += !c.ok;
    }
    return failed ? 1 : 0;
}
