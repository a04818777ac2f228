#pragma once

// Brute-force and numerical oracles. These never use the closed forms they
// are meant to check: permutations and graph walks are enumerated directly,
// and the incomplete gamma integrals are integrated panel by panel.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "exp.hpp"
#include "interval.hpp"

namespace ecount {

inline constexpr int kMaxPermutationN = 10;
inline constexpr int kMaxPathN = 10;
inline constexpr int kMaxCycleN = 8;

struct EnumerationResult {
    BigInt count = 0;
    BigInt total_length = 0;
    friend bool operator==(const EnumerationResult&, const EnumerationResult&) = default;
};

inline BigInt brute_derangements(int n)
{
    if (n < 0 || n > kMaxPermutationN)
        throw OracleRefused("brute_derangements: n must be in 0.." + std::to_string(kMaxPermutationN) +
                            ", got " + std::to_string(n));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t count = 0;
    do {
        bool fixed = false;
        for (int i = 0; i < n && !fixed; ++i)
            fixed = perm[static_cast<std::size_t>(i)] == i;
        if (!fixed)
            ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return BigInt(static_cast<unsigned long>(count));
}

namespace detail {

// Depth-first walk in K_n from `at` over unvisited vertices. Each time the
// walk can step to `target` it records a path (or cycle) of depth+1 edges.
struct CompleteGraphWalk {
    int n;
    int target;
    int min_edges;
    std::vector<bool> visited;
    std::uint64_t count = 0;
    std::uint64_t total = 0;

    void run(int at, int depth)
    {
        for (int v = 0; v < n; ++v) {
            if (v == at)
                continue;
            if (v == target) {
                if (depth + 1 >= min_edges) {
                    ++count;
                    total += static_cast<std::uint64_t>(depth + 1);
                }
                continue;
            }
            if (visited[static_cast<std::size_t>(v)])
                continue;
            visited[static_cast<std::size_t>(v)] = true;
            run(v, depth + 1);
            visited[static_cast<std::size_t>(v)] = false;
        }
    }
};

} // namespace detail

/// Simple paths between vertices u and v of K_n, with total edge count.
inline EnumerationResult brute_paths_between(int n, int u, int v)
{
    if (n < 3 || n > kMaxPathN)
        throw OracleRefused("brute_paths: n must be in 3.." + std::to_string(kMaxPathN) + ", got " +
                            std::to_string(n));
    require_domain(u >= 0 && u < n && v >= 0 && v < n && u != v, "brute_paths: need distinct vertices in 0..n-1");
    detail::CompleteGraphWalk walk{n, v, 1, std::vector<bool>(static_cast<std::size_t>(n), false)};
    walk.visited[static_cast<std::size_t>(u)] = true;
    walk.run(u, 0);
    return {BigInt(static_cast<unsigned long>(walk.count)), BigInt(static_cast<unsigned long>(walk.total))};
}

inline EnumerationResult brute_paths(int n) { return brute_paths_between(n, 0, 1); }

/// Oriented cycles u, v_1, ..., v_{i-1}, u through vertex 0 of K_n with i >= 3.
inline EnumerationResult brute_cycles(int n)
{
    if (n < 3 || n > kMaxCycleN)
        throw OracleRefused("brute_cycles: n must be in 3.." + std::to_string(kMaxCycleN) + ", got " +
                            std::to_string(n));
    detail::CompleteGraphWalk walk{n, 0, 3, std::vector<bool>(static_cast<std::size_t>(n), false)};
    walk.visited[0] = true;
    // The first step leaves vertex 0; stepping straight back is excluded by min_edges.
    for (int v = 1; v < n; ++v) {
        walk.visited[static_cast<std::size_t>(v)] = true;
        walk.run(v, 1);
        walk.visited[static_cast<std::size_t>(v)] = false;
    }
    return {BigInt(static_cast<unsigned long>(walk.count)), BigInt(static_cast<unsigned long>(walk.total))};
}

// ---------------------------------------------------------------- quadrature

struct QuadratureResult {
    IntervalReal value;
    long evaluations = 0; ///< Taylor terms summed over all panels
    Rat tail_bound = 0;   ///< bound on the integral beyond the truncation point (0 if finite)
};

struct QuadratureBudget {
    long max_evaluations = 2'000'000;
    int max_attempts = 6;
};

namespace detail {

inline long ceil_log2(const Rat& q) { return magnitude_bits(q); }

// Integral over [c-r, c+r] of e^{-t} t^n, written as e^{-c} times
// the integral over [-r, r] of e^{-s} (c+s)^n ds. e^{-s} is replaced by its
// degree-K Taylor polynomial; (c+s)^n is kept exact. For r <= 1/4,
// |e^{-s} - P_K(s)| <= r^{K+1}/(K+1)! e^{r} <= 2 r^{K+1}/(K+1)!.
struct Panel {
    Rat inner;     // integral of P_K(s)(c+s)^n over [-r, r]
    Rat remainder; // bound on the neglected part of that integral
    long terms;
};

inline Panel integrate_panel(long n, const Rat& c, const Rat& r, const Rat& max_remainder, long max_terms)
{
    // Binomial coefficients of (c+s)^n in s.
    std::vector<Rat> cpow(static_cast<std::size_t>(n) + 1);
    cpow[0] = 1;
    for (long j = 1; j <= n; ++j)
        cpow[static_cast<std::size_t>(j)] = cpow[static_cast<std::size_t>(j) - 1] * c;
    std::vector<Rat> poly(static_cast<std::size_t>(n) + 1);
    BigInt binom = 1;
    for (long j = 0; j <= n; ++j) {
        if (j > 0)
            binom = binom * (n - j + 1) / j;
        poly[static_cast<std::size_t>(j)] = Rat(binom) * cpow[static_cast<std::size_t>(n - j)];
    }
    // moment(d) = integral of s^d over [-r, r].
    std::vector<Rat> moments;
    auto moment = [&](long d) -> const Rat& {
        while (static_cast<long>(moments.size()) <= d) {
            long k = static_cast<long>(moments.size());
            if (k % 2 == 1)
                moments.emplace_back(0);
            else
                moments.push_back(2 * pow_rat(r, static_cast<unsigned long>(k + 1)) / (k + 1));
        }
        return moments[static_cast<std::size_t>(d)];
    };
    Rat poly_bound = pow_rat(abs(c) + r, static_cast<unsigned long>(n)); // max |c+s|^n on the panel
    Panel p{0, 0, 0};
    Rat coeff = 1; // (-1)^k / k!
    Rat rpow = r;  // r^{k+1}
    for (long k = 0;; ++k) {
        if (k > 0) {
            coeff /= -k;
            rpow *= r;
        }
        Rat contribution = 0;
        for (long j = 0; j <= n; ++j)
            if ((j + k) % 2 == 0)
                contribution += poly[static_cast<std::size_t>(j)] * moment(j + k);
        p.inner += coeff * contribution;
        p.terms = k + 1;
        // Lagrange remainder of the degree-k expansion, integrated over a panel of width 2r.
        Rat fact = abs(coeff) / (k + 1); // 1/(k+1)!
        p.remainder = 2 * r * 2 * rpow * fact * poly_bound;
        if (p.remainder <= max_remainder)
            return p;
        if (k + 1 >= max_terms)
            throw UndecidableError("quadrature: panel did not converge within the evaluation budget");
    }
}

} // namespace detail

/// Rigorous enclosure of the integral of e^{-t} t^n over the finite interval [a, b].
inline QuadratureResult quad_integral(long n, const Rat& a, const Rat& b, const Rat& tol,
                                      const QuadratureBudget& budget = {})
{
    require_domain(n >= 0, "quad_integral: n must be >= 0");
    require_domain(tol > 0, "quad_integral: tol must be > 0");
    require_domain(a <= b, "quad_integral: need a <= b");
    QuadratureResult res;
    if (a == b) {
        res.value = IntervalReal::point(0, 64);
        return res;
    }
    const Rat width_step(1, 2);
    BigInt panels_big = ceil_rat((b - a) / width_step);
    long panels = panels_big.get_si();

    // Rough magnitude of the result, for the working precision.
    long mag = magnitude_bits(pow_rat(std::max(Rat(abs(a)), Rat(abs(b))) + 1, static_cast<unsigned long>(n)) * (b - a + 1)) +
               2 * static_cast<long>(ceil_rat(std::max(Rat(0), Rat(-a))).get_si()) + 4;
    long bits = mag + detail::ceil_log2(1 / tol) + detail::ceil_log2(Rat(panels)) + 16;
    Rat panel_err = tol / (4 * panels);

    for (int attempt = 0; attempt < budget.max_attempts; ++attempt) {
        res.evaluations = 0;
        Rat lo = 0, hi = 0;
        const Rat r(1, 4);
        IntervalReal step = exp_enclosure(-width_step, bits + 8);
        IntervalReal weight = exp_enclosure(-(a + r), bits + 8);
        for (long j = 0; j < panels; ++j) {
            Rat left = a + width_step * j;
            Rat right = std::min(b, Rat(left + width_step));
            Rat c, pr;
            IntervalReal w;
            if (right - left == width_step) {
                c = left + r;
                pr = r;
                w = weight;
            } else {
                c = (left + right) / 2;
                pr = (right - left) / 2;
                w = exp_enclosure(-c, bits + 8);
            }
            Rat allowed = panel_err / w.upper();
            auto panel = detail::integrate_panel(n, c, pr, allowed, budget.max_evaluations);
            res.evaluations += panel.terms;
            if (res.evaluations > budget.max_evaluations)
                throw UndecidableError("quad_integral: evaluation budget exhausted");
            IntervalReal local = mul(w,
                                     IntervalReal::from_bounds(panel.inner - panel.remainder,
                                                               panel.inner + panel.remainder, bits + 8),
                                     bits + 8);
            lo += local.lower();
            hi += local.upper();
            weight = mul(weight, step, bits + 8);
        }
        res.value = IntervalReal::from_bounds(lo, hi, bits + 8);
        if (res.value.width() <= tol)
            return res;
        bits += 32;
        panel_err /= 16;
    }
    throw UndecidableError("quad_integral: tolerance unreachable under the evaluation budget");
}

/// Rigorous enclosure of Gamma(n+1, z) = integral of e^{-t} t^n over [z, inf), width <= tol.
///
/// Truncated at an integer U > 2n with the tail bound
///   integral over [U, inf) <= U^n e^{-U} / (1 - n/U),   e^{-U} < (1000/2718)^U.
inline QuadratureResult quad_gamma(long n, const Rat& z, const Rat& tol, const QuadratureBudget& budget = {})
{
    require_domain(n >= 0, "quad_gamma: n must be >= 0");
    require_domain(tol > 0, "quad_gamma: tol must be > 0");
    Rat half_tol = tol / 2;
    long upper = std::max(2 * n + 1, ceil_rat(z).get_si() + 1);
    const Rat e_inv_bound(1000, 2718);
    Rat tail;
    for (;; ++upper) {
        Rat u(upper);
        tail = pow_rat(u, static_cast<unsigned long>(n)) * pow_rat(e_inv_bound, static_cast<unsigned long>(upper)) /
               (1 - Rat(n) / u);
        if (tail <= half_tol)
            break;
    }
    QuadratureResult body = quad_integral(n, z, Rat(upper), half_tol, budget);
    body.value = IntervalReal::from_bounds(body.value.lower(), body.value.upper() + tail, body.value.precision_bits());
    body.tail_bound = tail;
    return body;
}

} // namespace ecount
