#include "common.hpp"
#include "oracle/frozen.hpp"

#include <gtest/gtest.h>

using namespace flows;
using namespace testutil;

TEST(Gcd, WithZeroIsNormalized)
{
    Poly p = P("-2*x^2*y + 4*y^3");
    Poly g = poly_gcd(p, Poly());
    EXPECT_GT(g.lead_coeff(), 0);
    EXPECT_TRUE(divide_exact(p, g).has_value());
    EXPECT_TRUE(divide_exact(g, p).has_value());
}

TEST(Gcd, Examples)
{
    EXPECT_EQ(poly_gcd(P("x^2*y + x*y^2"), P("x^2 - y^2")), P(oracle::gcd_1));
    EXPECT_EQ(poly_gcd(P("x^2 + y^2"), P("x + y")), P(oracle::gcd_2));
}

TEST(Gcd, DividesBoth)
{
    RandQ rq(7);
    for (int k = 0; k < 20; ++k) {
        Poly c = random_form(rq, rq.integer(1, 3)) + Poly::term(rq(), 0, 0);
        Poly a = c * random_form(rq, 2), b = c * (random_form(rq, 1) + Poly::term(rq(), 0, 1));
        Poly g = poly_gcd(a, b);
        EXPECT_GT(g.lead_coeff(), 0);
        ASSERT_TRUE(divide_exact(a, g));
        ASSERT_TRUE(divide_exact(b, g));
        EXPECT_TRUE(divide_exact(g, c).has_value());
    }
}

TEST(RatFn, ReducedAndSigned)
{
    RatFn f = R("(x^3 + y^3)/(x + y)");
    EXPECT_EQ(f, RatFn(P(oracle::cancel_1)));
    RatFn g = R("x/(-y)");
    EXPECT_GT(g.den().lead_coeff(), 0);
    EXPECT_EQ(g, R("-x/y"));
}

TEST(Substitute, Examples)
{
    EXPECT_EQ(substitute(R("x/y"), R("y"), R("x")), R("y/x"));
    EXPECT_EQ(substitute(R("x*y"), R("x/(x+1)"), R("y/(y+1)")), R("x*y/((x+1)*(y+1))"));
    EXPECT_THROW(substitute(R("1/(x-y)"), R("x"), R("x")), IdenticallySingular);
}

TEST(Substitute, RespectsComposition)
{
    RatFn f = R("x*(y+1)"), a = R("x/(y+1)"), b = R("y/(y+1)"), c = R("x + y^2"), d = R("y/(1 - x)");
    RatFn chained = substitute(substitute(f, a, b), c, d);
    RatFn direct = substitute(f, substitute(a, c, d), substitute(b, c, d));
    EXPECT_EQ(chained, direct);
    RandQ rq(3);
    int checked = 0;
    for (int k = 0; k < 50; ++k) {
        Scalar px = rq(), py = rq();
        auto cx = c(px, py), dy = d(px, py);
        if (!cx || !dy)
            continue;
        auto lhs = chained(px, py);
        auto ax = a(*cx, *dy), bx = b(*cx, *dy);
        if (!lhs || !ax || !bx)
            continue;
        auto rhs = f(*ax, *bx);
        if (!rhs)
            continue;
        EXPECT_EQ(*lhs, *rhs);
        ++checked;
    }
    EXPECT_GT(checked, 20);
}

TEST(Homogeneity, Examples)
{
    EXPECT_EQ(homogeneity_degree(R("x^2 + x*y")), 2);
    EXPECT_EQ(homogeneity_degree(R("(x^3 + y^3)/(x + y)")), 2);
    EXPECT_FALSE(homogeneity_degree(R("x + 1")).has_value());
    EXPECT_EQ(homogeneity_degree(R("x/y^3")), -2);
    // cross-check by evaluation at scaled points
    RatFn f = R("(x^3 + y^3)/(x + y)");
    for (int t : {2, 3, 5})
        EXPECT_EQ(*f(t, 2 * t), *f(1, 2) * t * t);
}

TEST(Homogeneity, Additive)
{
    RandQ rq(11);
    for (int k = 0; k < 10; ++k) {
        RatFn f(random_form(rq, 3), random_form(rq, 1)), g(random_form(rq, 1), random_form(rq, 4));
        EXPECT_EQ(*homogeneity_degree(f * g), *homogeneity_degree(f) + *homogeneity_degree(g));
    }
}

TEST(LinearFactors, Examples)
{
    auto a = linear_factors_q(P("x^2*y + x*y^2"));
    ASSERT_EQ(a.factors.size(), 3u);
    EXPECT_EQ(a.factors[0].form, P("x"));
    EXPECT_EQ(a.factors[1].form, P("y"));
    EXPECT_EQ(a.factors[2].form, P("x + y"));
    EXPECT_EQ(a.rest, Poly(1));

    auto b = linear_factors_q(P("x^2 + y^2"));
    EXPECT_TRUE(b.factors.empty());
    EXPECT_EQ(b.rest, P("x^2 + y^2"));

    auto c = linear_factors_q(P("x*y*(x-y)^2"));
    ASSERT_EQ(c.factors.size(), 3u);
    EXPECT_EQ(c.factors[2].form, P("x - y"));
    EXPECT_EQ(c.factors[2].multiplicity, 2);
}

TEST(LinearFactors, Reassembles)
{
    RandQ rq(5);
    for (int k = 0; k < 20; ++k) {
        Poly p = random_form(rq, 1) * random_form(rq, 2) * (Poly::term(rq(), 1, 0) + Poly::term(rq(), 0, 1));
        auto lf = linear_factors_q(p);
        Poly back = lf.rest * Poly(lf.constant);
        for (const auto& f : lf.factors)
            back = back * pow(f.form, f.multiplicity);
        EXPECT_EQ(back, p);
    }
}

TEST(RealRoots, Examples)
{
    EXPECT_EQ(count_real_projective_roots(P("x^2 + y^2")), 0);
    EXPECT_EQ(count_real_projective_roots(P("x*y*(x+y)")), 3);
    EXPECT_EQ(count_real_projective_roots(P("x^2")), 2);
    EXPECT_EQ(count_real_projective_roots(P("x^2 - 2*y^2")), 2);
}

TEST(RealRoots, MultiplicativeCount)
{
    RandQ rq(9);
    for (int k = 0; k < 20; ++k) {
        Poly p = random_form(rq, rq.integer(1, 4)), q = random_form(rq, rq.integer(1, 3));
        EXPECT_EQ(count_real_projective_roots(p * q), count_real_projective_roots(p) + count_real_projective_roots(q));
    }
}

TEST(UPoly, RationalRootsAndIsolation)
{
    UPoly p = P("(2*x - 3)^2*(x + 5)*(x^2 - 2)").to_upoly(X);
    auto rr = rational_roots(p);
    ASSERT_EQ(rr.size(), 2u);
    EXPECT_EQ(rr[0].first, Scalar(-5));
    EXPECT_EQ(rr[1].first, Scalar(3, 2));
    EXPECT_EQ(rr[1].second, 2);
    EXPECT_EQ(count_distinct_real_roots(p), 4);
    EXPECT_EQ(count_real_roots(p), 5);
    auto iv = isolate_real_roots(squarefree_part(p), Scalar(1, 1000));
    EXPECT_EQ(iv.size(), 4u);
}

TEST(UPoly, Resultant)
{
    UPoly a = P("x^2 - 1").to_upoly(X), b = P("x - 1").to_upoly(X), c = P("x - 2").to_upoly(X);
    EXPECT_EQ(resultant(a, b), Scalar(0));
    EXPECT_NE(resultant(a, c), Scalar(0));
}
