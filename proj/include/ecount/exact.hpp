#pragma once

// Exact combinatorial quantities: factorials, the partial sums of the
// exponential series scaled by n!, derangement numbers and the derangement
// polynomial D_n(x) = sum_{i=0}^{n} (n!/i!) x^i.

#include <string>
#include <vector>

#include "bigint.hpp"

namespace ecount {

inline BigInt factorial(long n)
{
    require_domain(n >= 0, "factorial: n must be >= 0, got " + std::to_string(n));
    BigInt r = 1;
    for (long k = 2; k <= n; ++k)
        r *= k;
    return r;
}

namespace detail {

// S_0 = 1, S_k = k S_{k-1} + 1, i.e. S_k = sum_{i=0}^{k} k!/i!.
inline BigInt scaled_exp_partial_sum(long n)
{
    BigInt s = 1;
    for (long k = 1; k <= n; ++k) {
        s *= k;
        s += 1;
    }
    return s;
}

// D_0 = 1, D_k = k D_{k-1} + (-1)^k.
inline BigInt derangement_recurrence(long n)
{
    BigInt d = 1;
    for (long k = 1; k <= n; ++k) {
        d *= k;
        if (k % 2 == 0)
            d += 1;
        else
            d -= 1;
    }
    return d;
}

} // namespace detail

/// Exact sum_{i=0}^{n} n!/i!, which equals floor(e n!) for n >= 1.
inline BigInt partial_sum_pos(long n)
{
    require_domain(n >= 1, "partial_sum_pos: n must be >= 1, got " + std::to_string(n));
    return detail::scaled_exp_partial_sum(n);
}

/// Number of permutations of n objects without a fixed point.
inline BigInt derangements(long n)
{
    require_domain(n >= 0, "derangements: n must be >= 0, got " + std::to_string(n));
    return detail::derangement_recurrence(n);
}

/// Coefficient list of D_n(x); coeffs[i] = n!/i!.
struct DerangementPoly {
    long n = 0;
    std::vector<BigInt> coeffs;

    /// Horner evaluation at an exact rational point.
    Rat operator()(const Rat& x) const
    {
        Rat acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = acc * x + Rat(*it);
        return acc;
    }
};

inline DerangementPoly dpoly(long n)
{
    require_domain(n >= 0, "dpoly: n must be >= 0, got " + std::to_string(n));
    DerangementPoly p;
    p.n = n;
    p.coeffs.resize(static_cast<std::size_t>(n) + 1);
    p.coeffs[static_cast<std::size_t>(n)] = 1;
    for (long i = n - 1; i >= 0; --i)
        p.coeffs[static_cast<std::size_t>(i)] = (i + 1) * p.coeffs[static_cast<std::size_t>(i) + 1];
    return p;
}

/// Formal derivative of a dense coefficient list (lowest degree first).
inline std::vector<BigInt> formal_derivative(const std::vector<BigInt>& coeffs)
{
    std::vector<BigInt> d;
    if (coeffs.size() <= 1)
        return d;
    d.reserve(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        d.push_back(static_cast<unsigned long>(i) * coeffs[i]);
    return d;
}

/// D_n(x) by the two-term recurrence D_k(x) = x^k + k D_{k-1}(x), D_0(x) = 1.
inline Rat dpoly_eval(long n, const Rat& x)
{
    require_domain(n >= 0, "dpoly_eval: n must be >= 0, got " + std::to_string(n));
    Rat d = 1;
    Rat xk = 1;
    for (long k = 1; k <= n; ++k) {
        xk *= x;
        d = xk + Rat(k) * d;
    }
    return d;
}

/// D_n(x) by the three-term recurrence
/// D_k(x) = (x + k) D_{k-1}(x) - x (k-1) D_{k-2}(x), D_0 = 1, D_1 = x + 1.
inline Rat dpoly_eval_three_term(long n, const Rat& x)
{
    require_domain(n >= 0, "dpoly_eval_three_term: n must be >= 0, got " + std::to_string(n));
    if (n == 0)
        return 1;
    Rat prev = 1;
    Rat cur = x + 1;
    for (long k = 2; k <= n; ++k) {
        Rat next = (x + k) * cur - x * Rat(k - 1) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

} // namespace ecount
