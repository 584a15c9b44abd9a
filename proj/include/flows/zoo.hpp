#pragma once

#include "classify.hpp"
#include "parser.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flows {

struct ZooEntry {
    std::string name;
    Flow flow;
    int level = 0;
    RatFn orbit_W;          // expected 𝒲 in the x = u, y = v convention
    VectorField vf;         // expected vector field
    std::optional<PHatValue> phat;      // level 1
    std::optional<HyperboloidPoint> p2; // level 2
    ZerosPoles zeros_poles;
    std::string note;
};

namespace detail {

inline ZooEntry zoo_row(const char* name, const char* flow, int level, const char* W, const char* vf, int z, int p)
{
    ZooEntry e;
    e.name = name;
    e.flow = parse_flow(flow);
    e.level = level;
    e.orbit_W = normalize_orbit_W(parse_expr(W));
    e.vf = parse_field(vf);
    e.zeros_poles = {z, p};
    return e;
}

} // namespace detail

// The selected flows of the table of examples, in table order.
inline const std::vector<ZooEntry>& zoo()
{
    static const std::vector<ZooEntry> entries = [] {
        using detail::zoo_row;
        std::vector<ZooEntry> z;
        // level 0
        z.push_back(zoo_row("phi_pr", "u = x/(x+y+1); v = y/(x+y+1)", 0, "x/y", "(-x*(x+y), -y*(x+y))", 1, 0));
        z.push_back(zoo_row("phi0_1",
                            "u = x*(x^2+y^2)/(x^2*y+x*y^2+x^2+y^2); v = y*(x^2+y^2)/(x^2*y+x*y^2+x^2+y^2)", 0,
                            "x/y", "(-x^2*y*(x+y)/(x^2+y^2), -x*y^2*(x+y)/(x^2+y^2))", 3, 0));
        z.push_back(zoo_row("phi0_2", "u = x*y/(x^2+y); v = y^2/(x^2+y)", 0, "x/y", "(-x^3/y, -x^2)", 2, 1));
        z.push_back(zoo_row("phi0_3", "u = x*(x+y)/(x*y+x+y); v = y*(x+y)/(x*y+x+y)", 0, "x/y",
                            "(-x^2*y/(x+y), -y^2*x/(x+y))", 2, 1));
        // level 1
        z.push_back(zoo_row("phi_sph_inf", "u = (x-y)^2+x; v = (x-y)^2+y", 1, "x-y", "((x-y)^2, (x-y)^2)", 2, 0));
        z.push_back(zoo_row("phi_sph_1",
                            "u = (x^2+y^2+2*x)/((x+1)^2+(y+1)^2); v = (x^2+y^2+2*y)/((x+1)^2+(y+1)^2)", 1,
                            "(x^2+y^2)/(x-y)", "(-1/2*x^2+1/2*y^2-x*y, 1/2*x^2-1/2*y^2-x*y)", 0, 0));
        z.push_back(zoo_row("phi_tor_inf", "u = x; v = y/(y+1)", 1, "x", "(0, -y^2)", 2, 0));
        z.back().note = "the table lists v for the orbit invariant; x is constant along the orbits";
        z.push_back(zoo_row("phi_tor_1", "u = x/(x+1); v = y/(y+1)", 1, "x*y/(x-y)", "(-x^2, -y^2)", 0, 0));
        z.push_back(zoo_row("phi1_1", "u = (x^2+y^2*x+y^3)^2/((y^2+x)*x^2); v = y*(x^2+y^2*x+y^3)/(x*(y^2+x))", 1,
                            "(x+y)*y/x", "(y^2*(x+2*y)/x, y^4/x^2)", 2, 2));
        z.push_back(zoo_row("Psi",
                            "u = (2*x^2*y*(x+y)+(x-y)^2*x)/((y-x)*(x^2+x*y-x+y));"
                            " v = (2*x*y^2*(x+y)+(x-y)^2*y)/((x-y)*(y^2+x*y-y+x))",
                            1, "x*y/(x-y)", "(x^2*(x+y)^2/(x-y)^2, y^2*(x+y)^2/(x-y)^2)", 2, 2));
        z.push_back(zoo_row("Phi_1", "u = ((x+y)^2+2*x)/(2*(x+y+1)^2); v = ((x+y)^2+2*y)/(2*(x+y+1)^2)", 1,
                            "(x+y)^2/(x-y)", "(-3/2*x^2-x*y+1/2*y^2, 1/2*x^2-x*y-3/2*y^2)", 1, 0));
        z.push_back(zoo_row("Phi_prime_1", "u = (x^2-y^2+2*x)/(2*(x+y+1)); v = (y^2-x^2+2*y)/(2*(x+y+1))", 1,
                            "x-y", "(-1/2*(x+y)^2, -1/2*(x+y)^2)", 2, 0));
        z.push_back(zoo_row("phi_minus_1", "u = x/(y+1)^2; v = y/(y+1)", 1, "y^2/x", "(-2*x*y, -y^2)", 1, 0));
        // level 2
        z.push_back(zoo_row("phi_2", "u = x*(y+1); v = y/(y+1)", 2, "x*y", "(x*y, -y^2)", 1, 0));
        z.push_back(zoo_row("phi2_1", "u = (y^2+x)^3/x^2; v = y*(y^2+x)/x", 2, "y^3/x", "(3*y^2, y^3/x)", 2, 1));
        z.push_back(zoo_row("phi2_2", "u = x*(x+y+1)/(x^2+x*y+2*x+1); v = y/((x^2+x*y+2*x+1)*(x+y+1))", 2,
                            "(x+y)^2*x/y", "(-x^2+x*y, -3*x*y-y^2)", 0, 0));
        z.push_back(zoo_row("phi2_3", "u = (y^2+x)^3/(x+2*x*y+y^3)^2; v = y*(y^2+x)/(x+2*x*y+y^3)", 2,
                            "y^4/(x*(x-y))", "(-4*x*y+3*y^2, (y^3-2*x*y^2)/x)", 1, 1));
        z.push_back(zoo_row("Phi_2",
                            "u = ((x+y+1)^2*(x+y)+x-y)/(2*(x+y+1)^3); v = ((x+y+1)^2*(x+y)+y-x)/(2*(x+y+1)^3)", 2,
                            "(x+y)^3/(x-y)", "(-2*x^2-x*y+y^2, x^2-x*y-2*y^2)", 1, 0));

        auto set_phat = [&](const char* n, std::optional<Scalar> t) {
            for (auto& e : z)
                if (e.name == n)
                    e.phat = PHatValue{t};
        };
        set_phat("phi_sph_inf", Scalar(1));
        set_phat("phi_sph_1", Scalar(1));
        set_phat("phi_tor_inf", Scalar(0));
        set_phat("phi_tor_1", Scalar(1));
        set_phat("phi1_1", Scalar(0));
        set_phat("Psi", Scalar(-1));
        set_phat("Phi_1", Scalar(1));
        set_phat("Phi_prime_1", Scalar(-1));
        set_phat("phi_minus_1", std::nullopt);
        auto set_p2 = [&](const char* n, HyperboloidPoint p) {
            for (auto& e : z)
                if (e.name == n)
                    e.p2 = p;
        };
        set_p2("phi_2", {0, 1, 0});
        set_p2("phi2_1", {0, 1, 0});
        set_p2("phi2_2", {0, 1, 0});
        set_p2("phi2_3", {-2, 1, 0});
        set_p2("Phi_2", {-1, -1, 1});
        return z;
    }();
    return entries;
}

// Named lookup; "phi_N" takes the level from N and accepts negative values.
inline std::optional<ZooEntry> zoo_lookup(const std::string& name, int N = 0)
{
    if (name == "phi_N") {
        ZooEntry e;
        e.name = "phi_" + std::to_string(N);
        e.flow = canonical_flow(N);
        e.level = N < 0 ? -N : N;
        e.vf = canonical_vf(N);
        e.orbit_W = orbit_invariant(e.vf, e.level);
        return e;
    }
    for (const auto& e : zoo())
        if (e.name == name)
            return e;
    return std::nullopt;
}

} // namespace flows
