#pragma once

#include <flows/flows.hpp>

#include <random>

namespace testutil {

using namespace flows;

inline RatFn R(const char* s) { return parse_expr(s); }
inline Poly P(const char* s)
{
    RatFn f = parse_expr(s);
    return f.num() * (Scalar(1) / f.den().constant_term());
}
inline Flow F(const char* s) { return parse_flow(s); }
inline VectorField V(const char* s) { return parse_field(s); }

// Small nonzero rationals from a fixed seed.
class RandQ {
public:
    explicit RandQ(unsigned seed = 12345) : gen_(seed) {}
    Scalar operator()(int range = 9, int den = 5)
    {
        std::uniform_int_distribution<int> n(-range, range), d(1, den);
        Scalar q;
        do
            q = Scalar(n(gen_), d(gen_));
        while (sgn(q) == 0);
        q.canonicalize();
        return q;
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

private:
    std::mt19937 gen_;
};

inline Poly random_form(RandQ& rq, int d)
{
    Poly p;
    for (int i = 0; i <= d; ++i)
        if (rq.integer(0, 2) > 0)
            p = p + Poly::term(rq(), i, d - i);
    if (p.is_zero() || p.total_degree() != d)
        p = p + Poly::term(1, d, 0);
    return p;
}

} // namespace testutil
