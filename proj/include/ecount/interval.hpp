#pragma once

// Outward-rounded interval arithmetic over dyadic endpoints.
//
// Every endpoint is mant * 2^exp with an arbitrary-precision mantissa. An
// operation first forms the exact rational result from the input endpoints
// and then rounds the lower endpoint down and the upper endpoint up to a
// caller-supplied number of significant bits. Nothing is ever rounded to
// nearest.

#include <algorithm>
#include <cstdlib>
#include <string>

#include "bigint.hpp"

namespace ecount {

class Dyadic {
public:
    Dyadic() = default;
    explicit Dyadic(BigInt mant, long exp = 0) : mant_(std::move(mant)), exp_(exp) { normalize(); }

    const BigInt& mantissa() const { return mant_; }
    long exponent() const { return exp_; }

    Rat to_rat() const
    {
        if (exp_ >= 0) {
            BigInt v;
            mpz_mul_2exp(v.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
            return Rat(v);
        }
        BigInt den;
        mpz_setbit(den.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
        return make_rat(mant_, den);
    }

    /// Largest dyadic with at most `bits` significant bits that is <= q.
    static Dyadic round_down(const Rat& q, long bits) { return round(q, bits, false); }
    /// Smallest dyadic with at most `bits` significant bits that is >= q.
    static Dyadic round_up(const Rat& q, long bits) { return round(q, bits, true); }

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.mant_ == b.mant_ && a.exp_ == b.exp_; }

private:
    static Dyadic round(const Rat& q, long bits, bool up)
    {
        if (q == 0)
            return Dyadic();
        if (bits < 2)
            bits = 2;
        const BigInt& num = q.get_num();
        const BigInt& den = q.get_den();
        // Pick a shift so that |num * 2^shift / den| has about `bits` bits.
        long shift = bits - (static_cast<long>(bit_length(abs(num))) - static_cast<long>(bit_length(den)));
        BigInt scaled = num;
        BigInt scaled_den = den;
        if (shift >= 0)
            mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        else
            mpz_mul_2exp(scaled_den.get_mpz_t(), scaled_den.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
        BigInt m;
        if (up)
            mpz_cdiv_q(m.get_mpz_t(), scaled.get_mpz_t(), scaled_den.get_mpz_t());
        else
            mpz_fdiv_q(m.get_mpz_t(), scaled.get_mpz_t(), scaled_den.get_mpz_t());
        // The quotient can carry one or two bits more than requested; trim with
        // the same rounding direction.
        long excess = static_cast<long>(bit_length(abs(m))) - bits;
        long exp = -shift;
        if (excess > 0) {
            if (up)
                mpz_cdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(excess));
            else
                mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(excess));
            exp += excess;
        }
        return Dyadic(std::move(m), exp);
    }

    void normalize()
    {
        if (mant_ == 0) {
            exp_ = 0;
            return;
        }
        auto tz = mpz_scan1(mant_.get_mpz_t(), 0);
        if (tz > 0) {
            mpz_fdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
            exp_ += static_cast<long>(tz);
        }
    }

    BigInt mant_ = 0;
    long exp_ = 0;
};

/// Decimal rendering of a dyadic with `digits` places after the point,
/// rounded down (`up == false`) or up. Exact when digits >= -exponent.
inline std::string to_decimal(const Dyadic& d, long digits, bool up)
{
    Rat v = d.to_rat();
    if (d.exponent() < 0)
        digits = std::min(digits, -d.exponent());
    else
        digits = 0;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rat scaled = v * Rat(scale);
    BigInt m = up ? ceil_rat(scaled) : floor_rat(scaled);
    bool negative = m < 0;
    std::string s = BigInt(abs(m)).get_str(10);
    if (digits > 0) {
        if (static_cast<long>(s.size()) <= digits)
            s.insert(0, static_cast<std::size_t>(digits - static_cast<long>(s.size()) + 1), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative ? "-" + s : s;
}

/// Closed interval [lo, hi] that provably contains the quantity it stands for.
/// `precision_bits` records the significant-bit budget the endpoints were
/// rounded to.
class IntervalReal {
public:
    IntervalReal() = default;

    /// Encloses [lo, hi] (exact rationals) after outward rounding.
    static IntervalReal from_bounds(const Rat& lo, const Rat& hi, long bits)
    {
        IntervalReal r;
        r.lo_ = Dyadic::round_down(lo <= hi ? lo : hi, bits);
        r.hi_ = Dyadic::round_up(lo <= hi ? hi : lo, bits);
        r.bits_ = bits;
        return r;
    }

    static IntervalReal point(const Rat& v, long bits) { return from_bounds(v, v, bits); }

    const Dyadic& lo() const { return lo_; }
    const Dyadic& hi() const { return hi_; }
    Rat lower() const { return lo_.to_rat(); }
    Rat upper() const { return hi_.to_rat(); }
    long precision_bits() const { return bits_; }

    Rat width() const { return upper() - lower(); }
    Rat midpoint() const { return (lower() + upper()) / 2; }

    bool contains(const Rat& v) const { return lower() <= v && v <= upper(); }
    bool contains(const IntervalReal& o) const { return lower() <= o.lower() && o.upper() <= upper(); }
    bool overlaps(const IntervalReal& o) const { return lower() <= o.upper() && o.lower() <= upper(); }

    /// -1 if entirely < 0, +1 if entirely > 0, 0 if it contains zero.
    int sign() const
    {
        if (hi_.mantissa() < 0)
            return -1;
        if (lo_.mantissa() > 0)
            return 1;
        return 0;
    }

    std::string lo_decimal() const { return to_decimal(lo_, decimal_digits(), false); }
    std::string hi_decimal() const { return to_decimal(hi_, decimal_digits(), true); }

private:
    long decimal_digits() const { return bits_ * 30103L / 100000L + 2; }

    Dyadic lo_;
    Dyadic hi_;
    long bits_ = 0;
};

// Interval operations; `bits` is the significant-bit budget of the result.

inline IntervalReal add(const IntervalReal& a, const IntervalReal& b, long bits)
{
    return IntervalReal::from_bounds(a.lower() + b.lower(), a.upper() + b.upper(), bits);
}

inline IntervalReal sub(const IntervalReal& a, const IntervalReal& b, long bits)
{
    return IntervalReal::from_bounds(a.lower() - b.upper(), a.upper() - b.lower(), bits);
}

inline IntervalReal mul(const IntervalReal& a, const IntervalReal& b, long bits)
{
    Rat al = a.lower(), ah = a.upper(), bl = b.lower(), bh = b.upper();
    Rat p[4] = {al * bl, al * bh, ah * bl, ah * bh};
    Rat lo = *std::min_element(std::begin(p), std::end(p));
    Rat hi = *std::max_element(std::begin(p), std::end(p));
    return IntervalReal::from_bounds(lo, hi, bits);
}

inline IntervalReal scale(const IntervalReal& a, const Rat& k, long bits)
{
    Rat x = a.lower() * k, y = a.upper() * k;
    return IntervalReal::from_bounds(x, y, bits);
}

inline IntervalReal add_rat(const IntervalReal& a, const Rat& k, long bits)
{
    return IntervalReal::from_bounds(a.lower() + k, a.upper() + k, bits);
}

/// Square of a non-negative interval.
inline IntervalReal square_nonneg(const IntervalReal& a, long bits)
{
    Rat l = a.lower(), h = a.upper();
    require_domain(l >= 0, "square_nonneg: interval must be non-negative");
    return IntervalReal::from_bounds(l * l, h * h, bits);
}

/// Interval hull.
inline IntervalReal hull(const IntervalReal& a, const IntervalReal& b, long bits)
{
    return IntervalReal::from_bounds(std::min(a.lower(), b.lower()), std::max(a.upper(), b.upper()), bits);
}

} // namespace ecount
