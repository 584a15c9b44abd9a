#include "common.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace flows;
using namespace testutil;

TEST(Parser, RoundTripZoo)
{
    for (const auto& e : zoo()) {
        EXPECT_EQ(parse_flow(print_flow(e.flow)), e.flow) << e.name;
        EXPECT_EQ(parse_field(print_field(e.vf)), e.vf) << e.name;
    }
}

TEST(Parser, Precedence)
{
    EXPECT_EQ(R("-x^2"), -R("x*x"));
    EXPECT_EQ(R("x/2/2"), R("x/4"));
    EXPECT_EQ(R("2*x + 3*y*x"), R("x*(2 + 3*y)"));
    EXPECT_EQ(R("(x+1)^0"), RatFn(1));
    EXPECT_EQ(R("x^-1"), R("1/x"));
    EXPECT_EQ(R("3/6"), RatFn(Scalar(1, 2)));
    EXPECT_EQ(R(" x *  y "), R("x*y"));
}

TEST(Parser, FlowAndFieldForms)
{
    EXPECT_EQ(F("u = x; v = y"), Flow::identity());
    EXPECT_EQ(F("u=x/(x+1);v=y/(y+1)"), F("u = x/(x+1); v = y/(y+1)"));
    EXPECT_EQ(V("(x*y, -y^2)"), canonical_vf(2));
}

TEST(Parser, Errors)
{
    EXPECT_THROW(R("0.5*x"), ParseError);
    EXPECT_THROW(R("z^2"), ParseError);
    EXPECT_THROW(R("x +"), ParseError);
    EXPECT_THROW(R("(x"), ParseError);
    EXPECT_THROW(R("x)"), ParseError);
    EXPECT_THROW(R("x/(y-y)"), FlowError);
    EXPECT_THROW(F("u = x"), ParseError);
    EXPECT_THROW(V("(x, y, x)"), ParseError);
    try {
        R("x + $");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find('$'), std::string::npos);
    }
}

TEST(Plot, DecimalFormatting)
{
    EXPECT_EQ(fmt_decimal(-0.0), "0.000000");
    EXPECT_EQ(fmt_decimal(-1e-9), "0.000000");
    EXPECT_EQ(fmt_decimal(1.5, 2), "1.50");
    EXPECT_EQ(fmt_decimal(NAN), "nan");
}

TEST(Plot, LinearLevelSetIsExact)
{
    // den(𝒲) = x − y is linear, so interpolation puts every point on the line
    OrbitPlot p = sample_orbit(R("x*y/(x-y)"), std::nullopt, -2, 2, 17);
    ASSERT_FALSE(p.points.empty());
    for (const auto& q : p.points)
        EXPECT_EQ(q.x, q.y);
}

TEST(Plot, TorusOrbitNearCurve)
{
    OrbitPlot p = sample_orbit(R("x*y/(x-y)"), Scalar(1, 4), -2, 2, 80);
    ASSERT_GT(p.points.size(), 20u);
    std::set<std::pair<Scalar, Scalar>> seen;
    for (const auto& q : p.points) {
        double x = q.x.get_d(), y = q.y.get_d();
        EXPECT_LT(std::abs(4 * x * y - (x - y)), 0.02);
        EXPECT_TRUE(seen.insert({q.x, q.y}).second);
    }
    EXPECT_THROW(sample_orbit(R("x"), Scalar(0), -1, 1, 0), FlowError);
}

TEST(Plot, FieldDirections)
{
    VectorField vf = V("(-x^2, -y^2)");
    auto [a, b] = normalized_vf(vf, 1, 0);
    EXPECT_DOUBLE_EQ(a, -1);
    EXPECT_DOUBLE_EQ(b, 0);
    auto z = normalized_vf(vf, 0, 0);
    EXPECT_EQ(z, std::make_pair(0.0, 0.0));
    auto pole = normalized_vf(V("(x^3/y, x^2)"), 1, 0);
    EXPECT_TRUE(std::isnan(pole.first));
}

TEST(Plot, OutputsAreDeterministic)
{
    Flow f = F("u = x/(x+1); v = y/(y+1)");
    VectorField vf = vector_field(f);
    OrbitPlot p = sample_orbit(R("x*y/(x-y)"), Scalar(1, 2), -2, 2, 30);
    std::string a = orbit_csv(p, vf), b = orbit_csv(sample_orbit(R("x*y/(x-y)"), Scalar(1, 2), -2, 2, 30), vf);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.substr(0, 8), "x,y,w,r\n");
    std::string s = orbit_svg(p, vf, "torus");
    EXPECT_EQ(s, orbit_svg(p, vf, "torus"));
    EXPECT_NE(s.find("<svg"), std::string::npos);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
}

TEST(Report, RequiredFields)
{
    for (const char* name : {"phi_tor_1", "phi2_2", "phi_pr"}) {
        json j = to_json(canonicalize(zoo_lookup(name)->flow));
        for (const char* k : {"verdict", "level", "ell", "orbit_W", "coords", "zeros_poles", "vector_field"})
            EXPECT_TRUE(j.contains(k)) << name << " " << k;
        EXPECT_EQ(j["verdict"], "RationalFlow");
    }
    json g = to_json(canonicalize_vf(V("(x^2-2*x*y, -2*x*y+y^2)")));
    EXPECT_EQ(g["pair"], json::array({-2, -2}));
    EXPECT_TRUE(g["ell"].is_null());
    json d = to_json(canonicalize(F("u = 0; v = y/(y+1)")));
    EXPECT_EQ(d["verdict"], "Degenerate");
    EXPECT_EQ(d["degenerate"]["R"], "y");
    EXPECT_TRUE(d["level"].is_null());
    json n = to_json(canonicalize_vf(V("(x^2+1/2*x*y, -y^2)")));
    EXPECT_EQ(n["delta_squared"], "9/4");
}

TEST(Report, StableSerialization)
{
    std::string a = to_json(canonicalize(zoo_lookup("phi2_3")->flow)).dump(2);
    std::string b = to_json(canonicalize(zoo_lookup("phi2_3")->flow)).dump(2);
    EXPECT_EQ(a, b);
    json j = json::parse(a);
    EXPECT_EQ(j["coords"]["value"], json::array({"-2", "1", "0"}));
    EXPECT_EQ(j["level"], 2);
}

TEST(Report, LevelAndJets)
{
    EXPECT_EQ(level_json(level_of(V("(x*y, -y^2)")))["N"], 2);
    EXPECT_EQ(level_json(level_of(VectorField{}))["tag"], "Identity");
    json jets = jets_json(expand_from_vf(V("(x*y, 0)"), 3));
    ASSERT_EQ(jets.size(), 3u);
    EXPECT_EQ(jets[2]["u"], "1/2*x*y^2");
}
