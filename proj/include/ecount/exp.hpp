#pragma once

#include <string>

#include "interval.hpp"

namespace ecount {

/// Rigorous enclosure of exp(x) for rational x, relative width <= 2^-precision_bits.
///
/// Range reduction by halving: y = x / 2^s with |y| <= 1/2, a Taylor partial
/// sum of exp(y) with the remainder bound
///   |R_K| <= |y|^{K+1} / ((K+1)! (1 - |y|/(K+2))),
/// then s outward-rounded squarings. Independent of the e / 1/e series brackets.
inline IntervalReal exp_enclosure(const Rat& x, long precision_bits)
{
    require_domain(precision_bits >= 1, "exp_enclosure: precision_bits must be >= 1");
    if (x == 0)
        return IntervalReal::point(1, precision_bits);

    long s = 0;
    Rat y = x;
    const Rat half(1, 2);
    while (abs(y) > half) {
        y /= 2;
        ++s;
    }
    const long work = precision_bits + s + 8;
    Rat ay = abs(y);

    // Remainder target 2^-(work+2); exp(y) >= exp(-1/2) > 1/2 keeps this relative.
    Rat target;
    {
        BigInt d;
        mpz_setbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(work + 2));
        target = make_rat(1, d);
    }
    Rat sum = 1;
    Rat term = 1; // y^k / k!
    Rat remainder;
    for (long k = 1;; ++k) {
        term *= y;
        term /= k;
        sum += term;
        // Remainder after the degree-k partial sum.
        Rat next_abs = abs(term) * ay / (k + 1);
        remainder = next_abs / (1 - ay / (k + 2));
        if (remainder <= target)
            break;
    }
    IntervalReal r = IntervalReal::from_bounds(sum - remainder, sum + remainder, work);
    for (long i = 0; i < s; ++i)
        r = square_nonneg(r, work);
    return IntervalReal::from_bounds(r.lower(), r.upper(), precision_bits + 4);
}

} // namespace ecount
