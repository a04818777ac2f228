#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

#include "error.hpp"

namespace ecount {

using BigInt = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const BigInt& num, const BigInt& den)
{
    require_domain(den != 0, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline std::size_t bit_length(const BigInt& v)
{
    return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

/// Upper bound on log2 |q| rounded up, clamped at 0 (so |q| < 2^magnitude_bits(q)).
inline long magnitude_bits(const Rat& q)
{
    if (q == 0)
        return 0;
    BigInt num = abs(q.get_num());
    long bits = static_cast<long>(bit_length(num)) - static_cast<long>(bit_length(q.get_den())) + 1;
    return bits < 0 ? 0 : bits;
}

inline BigInt floor_rat(const Rat& q)
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline BigInt ceil_rat(const Rat& q)
{
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Rat pow_rat(const Rat& base, unsigned long exponent)
{
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    return Rat(num, den); // already canonical: gcd(num^k, den^k) = 1
}

// Decimal-string codecs. BigInt is "[-]digits"; Rat is "p/q", or "p" when q = 1.

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline std::string to_string(const Rat& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str(10);
    return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

namespace detail {

inline bool is_integer_literal(std::string_view s, bool allow_sign)
{
    if (s.empty())
        return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+'))
        i = 1;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    return true;
}

} // namespace detail

inline BigInt parse_bigint(std::string_view s)
{
    require_domain(detail::is_integer_literal(s, true), "not an integer literal: '" + std::string(s) + "'");
    std::string digits(s.front() == '+' ? s.substr(1) : s);
    return BigInt(digits, 10);
}

/// Accepts "p/q" or an integer. Decimal fractions ("0.5") are rejected so that
/// every input stays exact.
inline Rat parse_rat(std::string_view s)
{
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rat(parse_bigint(s));
    auto num_part = s.substr(0, slash);
    auto den_part = s.substr(slash + 1);
    require_domain(detail::is_integer_literal(num_part, true) && detail::is_integer_literal(den_part, false),
                   "not a rational literal (expected p/q): '" + std::string(s) + "'");
    return make_rat(parse_bigint(num_part), parse_bigint(den_part));
}

} // namespace ecount
