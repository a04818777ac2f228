#pragma once

// The derangement polynomial's analytic side: the terminating 2F0[1, -n; ; x],
// the convergent 1F1[n+1; n+2; -x], the incomplete gamma function at integer
// first argument, and six definite integrals of e^{-t} t^n with exact
// e-linear values.

#include <string>
#include <vector>

#include "certified.hpp"
#include "counts.hpp"
#include "exact.hpp"
#include "exp.hpp"
#include "oracles.hpp"

namespace ecount {

/// 2F0[1, -n; ; x] from the term ratio t_{k+1}/t_k = (k+1)(k-n) x/(k+1) = (k-n) x.
/// Exactly n+1 terms; (-n)_k vanishes for k > n.
inline Rat hyp2f0(long n, const Rat& x)
{
    require_domain(n >= 0, "hyp2f0: n must be >= 0, got " + std::to_string(n));
    Rat term = 1;
    Rat sum = 1;
    for (long k = 0; k < n; ++k) {
        term *= Rat(k - n) * x;
        sum += term;
    }
    return sum;
}

/// x^n 2F0[1, -n; ; -1/x]; throws InvariantViolation unless it equals D_n(x).
inline Rat hyp2f0_identity_check(long n, const Rat& x)
{
    require_domain(x != 0, "hyp2f0_identity_check: x must be nonzero");
    require_domain(n >= 0, "hyp2f0_identity_check: n must be >= 0, got " + std::to_string(n));
    Rat lhs = pow_rat(x, static_cast<unsigned long>(n)) * hyp2f0(n, -1 / x);
    Rat rhs = dpoly_eval(n, x);
    if (lhs != rhs)
        throw InvariantViolation("x^n 2F0(1,-n;;-1/x) = " + to_string(lhs) + " but D_n(x) = " + to_string(rhs) +
                                 " at n=" + std::to_string(n) + ", x=" + to_string(x));
    return lhs;
}

/// 2F0[1, -n; ; -1] = floor(e n!) and 2F0[1, -n; ; 1] = (-1)^n floor((n!+1)/e).
inline BigInt hyp2f0_special(long n, int sign, const FloorOptions& opts = {})
{
    require_domain(n >= 1, "hyp2f0_special: n must be >= 1, got " + std::to_string(n));
    require_domain(sign == 1 || sign == -1, "hyp2f0_special: sign must be +1 or -1");
    BigInt closed;
    if (sign < 0)
        closed = partial_sum_pos(n);
    else
        closed = (n % 2 == 0 ? 1 : -1) * derangement_eq2(n, opts);
    Rat series = hyp2f0(n, Rat(sign));
    if (series != Rat(closed))
        throw InvariantViolation("2F0 special value mismatch at n=" + std::to_string(n) + ": series " +
                                 to_string(series) + ", closed form " + to_string(closed));
    return closed;
}

/// Gamma(n+1, z) enclosed as e^{-z} D_n(z).
inline IntervalReal inc_gamma_int(long n, const Rat& z, long precision_bits)
{
    require_domain(n >= 0, "inc_gamma_int: n must be >= 0, got " + std::to_string(n));
    Rat d = dpoly_eval(n, z);
    if (d == 0)
        return IntervalReal::point(0, precision_bits);
    return scale(exp_enclosure(-z, precision_bits + 4), d, precision_bits + 4);
}

/// 1F1[n+1; n+2; -x] by its power series, absolute width <= 2^-precision_bits.
///
/// t_0 = 1, t_{k+1}/t_k = (k+n+1)/((k+n+2)(k+1)) (-x), so every later ratio is
/// at most |x|/(K+2) in size; once that is <= 1/2 the tail is <= 2 |t_{K+1}|.
inline IntervalReal hyp1f1_series(long n, const Rat& x, long precision_bits, long max_terms = 1'000'000)
{
    require_domain(n >= 0, "hyp1f1: n must be >= 0, got " + std::to_string(n));
    require_domain(precision_bits >= 1, "hyp1f1: precision_bits must be >= 1");
    Rat target;
    {
        BigInt d;
        mpz_setbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(precision_bits + 2));
        target = make_rat(1, d);
    }
    const Rat ax = abs(x);
    Rat sum = 1;
    Rat term = 1;
    Rat tail = 0;
    for (long k = 0;; ++k) {
        Rat next = term * Rat(k + n + 1) / (Rat(k + n + 2) * Rat(k + 1)) * (-x);
        Rat ratio_bound = ax / (k + 2);
        if (ratio_bound <= Rat(1, 2)) {
            tail = 2 * abs(next);
            if (tail <= target)
                break;
        }
        if (k + 1 >= max_terms)
            throw UndecidableError("hyp1f1: tail bound not reached within " + std::to_string(max_terms) + " terms");
        sum += next;
        term = std::move(next);
    }
    long mag = magnitude_bits(abs(sum) + tail);
    return IntervalReal::from_bounds(sum - tail, sum + tail, precision_bits + mag + 3);
}

/// (n+1)(n! - e^{-x} D_n(x)) / x^{n+1}, x != 0, absolute width <= 2^-precision_bits.
inline IntervalReal hyp1f1_closed_form(long n, const Rat& x, long precision_bits)
{
    require_domain(n >= 0, "hyp1f1_closed_form: n must be >= 0, got " + std::to_string(n));
    require_domain(x != 0, "hyp1f1_closed_form: x must be nonzero");
    Rat d = dpoly_eval(n, x);
    Rat outer = Rat(n + 1) / pow_rat(x, static_cast<unsigned long>(n + 1));
    // Cancellation in n! - e^{-x} D_n(x) is undone by the division; the working
    // precision covers |outer D_n(x)| e^{|x|}.
    long amplification = magnitude_bits(abs(outer * d)) + 2 * (ceil_rat(abs(x)).get_si() + 1);
    long work = precision_bits + amplification + 8;
    IntervalReal ex = exp_enclosure(-x, work);
    IntervalReal inner = scale(ex, -d, work + 8);
    inner = add_rat(inner, Rat(factorial(n)), work + 8);
    IntervalReal r = scale(inner, outer, work + 8);
    long mag = std::max(magnitude_bits(abs(r.lower())), magnitude_bits(abs(r.upper())));
    return IntervalReal::from_bounds(r.lower(), r.upper(), precision_bits + mag + 3);
}

/// Series enclosure of 1F1[n+1; n+2; -x]; for x != 0 it must overlap the closed form.
inline IntervalReal hyp1f1(long n, const Rat& x, long precision_bits)
{
    IntervalReal series = hyp1f1_series(n, x, precision_bits);
    if (x != 0) {
        IntervalReal closed = hyp1f1_closed_form(n, x, precision_bits);
        if (!series.overlaps(closed))
            throw InvariantViolation("1F1 series and closed form disagree at n=" + std::to_string(n) +
                                     ", x=" + to_string(x));
    }
    return series;
}

// ---------------------------------------------------------------- integrals

/// {n!/e} = n!/e - D_n, plus 1 when n is even (then D_n > n!/e).
inline EForm frac_nfact_over_e(long n)
{
    require_domain(n >= 1, "frac_nfact_over_e: n must be >= 1");
    Rat shift = n % 2 == 0 ? Rat(1) : Rat(0);
    return {Rat(-derangements(n)) + shift, 0, Rat(factorial(n))};
}

struct IntegralIdentity {
    std::string label;
    Rat lower_limit;
    bool to_infinity = false;
    Rat upper_limit; ///< unused when to_infinity
    EForm closed_form;
    IntervalReal closed_interval;
    QuadratureResult oracle;
    bool overlap = false;
};

struct IntegralOptions {
    Rat tol{1, 1'000'000'000};
    FloorOptions floor;
};

/// The six integrals of e^{-t} t^n over [-1,inf), [0,inf), [1,inf), [0,1], [-1,0], [-1,1],
/// each as an exact EForm paired with a quadrature enclosure.
inline std::vector<IntegralIdentity> integral_identities(long n, const IntegralOptions& opts = {})
{
    require_domain(n >= 1, "integral_identities: n must be >= 1, got " + std::to_string(n));
    const Rat nf(factorial(n));
    const Rat floor_e_nf(certified_floor(EForm(0, nf, 0), opts.floor));             // floor(e n!)
    const Rat floor_eq2(derangement_eq2(n, opts.floor));                               // floor((n!+1)/e)
    const Rat floor_e6(certified_floor(EForm(0, nf, nf), opts.floor));                 // floor((e+1/e) n!)
    const EForm frac_e = EForm(-floor_e_nf, nf, 0);                                    // {e n!}
    const EForm frac_over_e = frac_nfact_over_e(n);                                    // {n!/e}
    const EForm minus_one_to_zero = n % 2 == 1 ? -times_e(frac_over_e)
                                               : EForm(0, 1, 0) - times_e(frac_over_e);

    std::vector<IntegralIdentity> out;
    auto add = [&](std::string label, Rat lo, bool inf, Rat hi, EForm form) {
        IntegralIdentity id;
        id.label = std::move(label);
        id.lower_limit = lo;
        id.to_infinity = inf;
        id.upper_limit = hi;
        id.closed_form = std::move(form);
        out.push_back(std::move(id));
    };
    add("int_{-1}^{inf}", -1, true, 0, EForm(0, floor_eq2, 0));
    add("int_0^{inf}", 0, true, 0, EForm::rational(nf));
    add("int_1^{inf}", 1, true, 0, EForm(0, 0, floor_e_nf));
    add("int_0^1", 0, false, 1, times_e_inv(frac_e));
    add("int_{-1}^0", -1, false, 0, minus_one_to_zero);
    add("int_{-1}^1", -1, false, 1, EForm(0, floor_e6, 0) - Rat(floor_e_nf) * EForm(0, 1, 1));

    long bits = magnitude_bits(1 / opts.tol) + 8;
    for (auto& id : out) {
        id.closed_interval = eform_eval(id.closed_form, bits);
        id.oracle = id.to_infinity ? quad_gamma(n, id.lower_limit, opts.tol)
                                   : quad_integral(n, id.lower_limit, id.upper_limit, opts.tol);
        id.overlap = id.closed_interval.overlaps(id.oracle.value);
    }
    return out;
}

} // namespace ecount
