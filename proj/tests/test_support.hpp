#pragma once

// Test-only reference computations. Deliberately naive and independent of the
// library's recurrences.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <ecount/bigint.hpp>

namespace ecount::oracle {

inline std::uint64_t count_derangements_by_permutation(int n)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t c = 0;
    do {
        bool ok = true;
        for (int i = 0; i < n; ++i)
            ok = ok && p[static_cast<std::size_t>(i)] != i;
        c += ok ? 1 : 0;
    } while (std::next_permutation(p.begin(), p.end()));
    return c;
}

/// n! sum_{i=0}^{n} x^i / i! summed term by term in exact rationals.
inline Rat scaled_exp_sum(long n, const Rat& x)
{
    BigInt nf = 1;
    for (long k = 2; k <= n; ++k)
        nf *= k;
    Rat sum = 0;
    BigInt ifact = 1;
    Rat xpow = 1;
    for (long i = 0; i <= n; ++i) {
        if (i > 0) {
            ifact *= i;
            xpow *= x;
        }
        sum += Rat(nf) * xpow / Rat(ifact);
    }
    return sum;
}

inline BigInt product_factorial(long n)
{
    BigInt r = 1;
    for (long k = n; k >= 2; --k)
        r *= k;
    return r;
}

/// Deterministic generator of small rationals p/q, q in 1..max_den.
struct RatGen {
    std::mt19937_64 rng;
    long max_num;
    long max_den;

    explicit RatGen(std::uint64_t seed, long max_num_ = 20, long max_den_ = 9)
        : rng(seed), max_num(max_num_), max_den(max_den_) {}

    Rat operator()()
    {
        std::uniform_int_distribution<long> num(-max_num, max_num);
        std::uniform_int_distribution<long> den(1, max_den);
        return make_rat(num(rng), den(rng));
    }
};

} // namespace ecount::oracle
