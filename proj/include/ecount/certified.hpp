#pragma once

// Certified evaluation of e-linear expressions a + b e + c/e.
//
// e and 1/e are enclosed by exact rational brackets derived from their own
// series (no division, no floating point):
//
//   e   in [T_k/k!, T_k/k! + 1/(k! k)],          T_k = sum_{i<=k} k!/i!
//   1/e in [D_{2k-1}/(2k-1)!, D_{2k}/(2k)!],      D_j = derangement numbers
//
// certified_floor refines until both endpoints share a floor. For b = c = 0 the
// value is rational and the floor is exact. Otherwise termination relies on the
// linear independence of {1, e, 1/e} over Q (a consequence of the transcendence
// of e): the value is never an integer, so some precision always decides it.

#include <optional>
#include <string>
#include <utility>

#include "exact.hpp"
#include "interval.hpp"

namespace ecount {

/// The real number a + b*e + c/e with exact rational coefficients.
struct EForm {
    Rat a = 0;
    Rat b = 0;
    Rat c = 0;

    EForm() = default;
    EForm(Rat a_, Rat b_, Rat c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}

    bool is_rational() const { return b == 0 && c == 0; }

    friend EForm operator+(const EForm& x, const EForm& y) { return {x.a + y.a, x.b + y.b, x.c + y.c}; }
    friend EForm operator-(const EForm& x, const EForm& y) { return {x.a - y.a, x.b - y.b, x.c - y.c}; }
    friend EForm operator-(const EForm& x) { return {-x.a, -x.b, -x.c}; }
    friend EForm operator*(const Rat& k, const EForm& x) { return {k * x.a, k * x.b, k * x.c}; }
    friend bool operator==(const EForm& x, const EForm& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }

    static EForm rational(Rat v) { return {std::move(v), 0, 0}; }
};

/// e * f, defined when f has no e term (uses e * 1/e = 1).
inline EForm times_e(const EForm& f)
{
    require_domain(f.b == 0, "times_e: form has an e term; e^2 is not representable");
    return {f.c, f.a, 0};
}

/// f / e, defined when f has no 1/e term.
inline EForm times_e_inv(const EForm& f)
{
    require_domain(f.c == 0, "times_e_inv: form has a 1/e term; e^-2 is not representable");
    return {f.b, 0, f.a};
}

/// Exact bracket [lo, hi] around e from the first k+1 series terms.
inline std::pair<Rat, Rat> e_bracket(long k)
{
    require_domain(k >= 1, "e_bracket: k must be >= 1");
    BigInt t = detail::scaled_exp_partial_sum(k);
    BigInt kf = factorial(k);
    Rat lo = make_rat(t, kf);
    Rat hi = make_rat(t * k + 1, kf * k);
    return {lo, hi};
}

/// Exact alternating-series bracket around 1/e: partial sums to 2k-1 and 2k.
inline std::pair<Rat, Rat> e_inv_bracket(long k)
{
    require_domain(k >= 1, "e_inv_bracket: k must be >= 1");
    long j = 2 * k;
    BigInt d_odd = detail::derangement_recurrence(j - 1);
    BigInt f_odd = factorial(j - 1);
    BigInt d_even = d_odd * j + 1;
    BigInt f_even = f_odd * j;
    return {make_rat(d_odd, f_odd), make_rat(d_even, f_even)};
}

namespace detail {

// Smallest k >= 1 with k! * k >= 2^target_bits.
inline long e_terms_for(long target_bits)
{
    BigInt f = 1;
    for (long k = 1;; ++k) {
        f *= k;
        if (bit_length(f * k) > static_cast<std::size_t>(target_bits))
            return k;
    }
}

// Smallest k >= 1 with (2k)! >= 2^target_bits.
inline long e_inv_terms_for(long target_bits)
{
    BigInt f = 1;
    for (long k = 1;; ++k) {
        f *= (2 * k - 1);
        f *= (2 * k);
        if (bit_length(f) > static_cast<std::size_t>(target_bits))
            return k;
    }
}

} // namespace detail

/// Interval around e of width <= 2^-precision_bits.
inline IntervalReal enclose_e(long precision_bits)
{
    require_domain(precision_bits >= 1, "enclose_e: precision_bits must be >= 1");
    auto [lo, hi] = e_bracket(detail::e_terms_for(precision_bits + 2));
    // |e| < 4, so rounding at p+6 significant bits moves each end by < 2^-(p+2).
    return IntervalReal::from_bounds(lo, hi, precision_bits + 6);
}

/// Interval around 1/e of width <= 2^-precision_bits.
inline IntervalReal enclose_e_inv(long precision_bits)
{
    require_domain(precision_bits >= 1, "enclose_e_inv: precision_bits must be >= 1");
    auto [lo, hi] = e_inv_bracket(detail::e_inv_terms_for(precision_bits + 2));
    return IntervalReal::from_bounds(lo, hi, precision_bits + 6);
}

/// Interval around a + b e + c/e of width <= 2^-precision_bits.
inline IntervalReal eform_eval(const EForm& f, long precision_bits)
{
    require_domain(precision_bits >= 1, "eform_eval: precision_bits must be >= 1");
    Rat lo = f.a, hi = f.a;
    if (f.b != 0) {
        IntervalReal e = enclose_e(precision_bits + magnitude_bits(f.b) + 3);
        Rat x = f.b * e.lower(), y = f.b * e.upper();
        lo += std::min(x, y);
        hi += std::max(x, y);
    }
    if (f.c != 0) {
        IntervalReal ei = enclose_e_inv(precision_bits + magnitude_bits(f.c) + 3);
        Rat x = f.c * ei.lower(), y = f.c * ei.upper();
        lo += std::min(x, y);
        hi += std::max(x, y);
    }
    // Up to 2^-(p+2) lost in each of the two series brackets and each of the
    // two final roundings.
    long mag = std::max(magnitude_bits(abs(lo)), magnitude_bits(abs(hi)));
    return IntervalReal::from_bounds(lo, hi, precision_bits + mag + 3);
}

struct FloorOptions {
    long start_bits = 0;         ///< 0 selects 64 + bits of the integer-part estimate
    long cap_bits = 1L << 20;    ///< refinement never goes beyond this
};

struct FloorResult {
    BigInt value;
    long precision_bits = 0; ///< precision that decided the floor; 0 on the rational path
    int refinements = 0;
};

/// Floor of f at a single precision, or nullopt when the interval straddles an integer.
inline std::optional<BigInt> floor_at_precision(const EForm& f, long precision_bits)
{
    if (f.is_rational())
        return floor_rat(f.a);
    IntervalReal iv = eform_eval(f, precision_bits);
    BigInt lo = floor_rat(iv.lower());
    BigInt hi = floor_rat(iv.upper());
    if (lo == hi)
        return lo;
    return std::nullopt;
}

inline long integer_part_bits(const EForm& f)
{
    return std::max({magnitude_bits(f.a), magnitude_bits(f.b) + 2, magnitude_bits(f.c)}) + 1;
}

inline FloorResult certified_floor_detailed(const EForm& f, const FloorOptions& opts = {})
{
    FloorResult r;
    if (f.is_rational()) {
        r.value = floor_rat(f.a);
        return r;
    }
    long bits = opts.start_bits > 0 ? opts.start_bits : 64 + integer_part_bits(f);
    for (;;) {
        ++r.refinements;
        if (auto v = floor_at_precision(f, bits)) {
            r.value = std::move(*v);
            r.precision_bits = bits;
            return r;
        }
        if (bits >= opts.cap_bits)
            break;
        bits = std::min(bits * 2, opts.cap_bits);
    }
    throw UndecidableError("certified_floor: undecidable at cap of " + std::to_string(opts.cap_bits) +
                           " bits for " + to_string(f.a) + " + (" + to_string(f.b) + ")e + (" +
                           to_string(f.c) + ")/e");
}

inline BigInt certified_floor(const EForm& f, const FloorOptions& opts = {})
{
    return certified_floor_detailed(f, opts).value;
}

/// Sign of the real number f: -1, 0 (only when f is rational zero) or +1.
inline int certified_sign(const EForm& f, const FloorOptions& opts = {})
{
    if (f.is_rational())
        return sgn(f.a);
    long bits = opts.start_bits > 0 ? opts.start_bits : 64;
    for (;;) {
        int s = eform_eval(f, bits).sign();
        if (s != 0)
            return s;
        if (bits >= opts.cap_bits)
            break;
        bits = std::min(bits * 2, opts.cap_bits);
    }
    throw UndecidableError("certified_sign: undecidable at cap of " + std::to_string(opts.cap_bits) + " bits");
}

inline bool certified_less(const EForm& x, const EForm& y, const FloorOptions& opts = {})
{
    return certified_sign(y - x, opts) > 0;
}

/// {e n!} = e n! - floor(e n!) as an exact form; lies in (1/(n+1), 1/n].
inline EForm frac_e_nfact(long n)
{
    require_domain(n >= 1, "frac_e_nfact: n must be >= 1, got " + std::to_string(n));
    return {Rat(-partial_sum_pos(n)), Rat(factorial(n)), 0};
}

inline std::string describe(const EForm& f)
{
    return "(" + to_string(f.a) + ") + (" + to_string(f.b) + ")e + (" + to_string(f.c) + ")/e";
}

} // namespace ecount
