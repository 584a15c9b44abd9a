#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace flows {

using Scalar = mpq_class;
using Integer = mpz_class;

inline Scalar make_scalar(long num, long den = 1)
{
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Scalar& q) { return q.get_den() == 1; }

inline int sign(const Scalar& q) { return sgn(q); }

inline std::string to_string(const Scalar& q) { return q.get_str(); }

// Exact square root in Q, if there is one.
inline std::optional<Scalar> exact_sqrt(const Scalar& q)
{
    if (sgn(q) < 0)
        return std::nullopt;
    Integer n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Scalar(rn, rd);
}

inline Scalar pow(const Scalar& q, int e)
{
    if (e < 0) {
        if (sgn(q) == 0)
            throw std::domain_error("zero to a negative power");
        return pow(Scalar(1) / q, -e);
    }
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Scalar(n, d);
}

// Parses "a" or "a/b" with integer a, b.
inline Scalar parse_scalar(const std::string& s)
{
    Scalar q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational literal: " + s);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

} // namespace flows
