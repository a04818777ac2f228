#pragma once

// Counting identities driven by e: simple paths and oriented cycles in the
// complete graph K_n, the family of floor formulas for derangement numbers,
// and the two chains of upper bounds M_m(n) (rational) and N_m(n) (e-linear)
// on |n!/e - D_n|.

#include <string>
#include <vector>

#include "certified.hpp"
#include "exact.hpp"

namespace ecount {

/// Two independently computed values of the same integer.
struct DualRoute {
    BigInt exact_sum;   ///< direct exact summation
    BigInt floor_route; ///< certified floor of an e-expression
    bool agree() const { return exact_sum == floor_route; }
};

namespace detail {

inline const BigInt& checked(const DualRoute& r, const std::string& what)
{
    if (!r.agree())
        throw InvariantViolation(what + ": exact sum " + to_string(r.exact_sum) + " != floor route " +
                                 to_string(r.floor_route));
    return r.exact_sum;
}

inline void require_graph_size(long n, const char* op)
{
    require_domain(n > 2, std::string(op) + ": n must be > 2, got " + std::to_string(n));
}

inline BigInt floor_e_times(const BigInt& k, const FloorOptions& opts)
{
    return certified_floor(EForm(0, Rat(k), 0), opts);
}

} // namespace detail

// ---------------------------------------------------------------- paths

/// Number of simple u-v paths with exactly i edges in K_n: (n-2)!/(n-1-i)!.
inline BigInt path_count_by_length(long n, long i)
{
    detail::require_graph_size(n, "path_count_by_length");
    require_domain(i >= 1 && i <= n - 1,
                   "path_count_by_length: i must be in 1..n-1, got i=" + std::to_string(i));
    BigInt r = 1;
    for (long k = n - i; k <= n - 2; ++k)
        r *= k;
    return r;
}

inline DualRoute path_count_routes(long n, const FloorOptions& opts = {})
{
    detail::require_graph_size(n, "path_count");
    BigInt sum = 0;
    for (long i = 1; i <= n - 1; ++i)
        sum += path_count_by_length(n, i);
    return {sum, detail::floor_e_times(factorial(n - 2), opts)};
}

/// w_n: simple paths between a fixed pair of vertices of K_n.
inline BigInt path_count(long n, const FloorOptions& opts = {})
{
    return detail::checked(path_count_routes(n, opts), "path_count(" + std::to_string(n) + ")");
}

/// L_w(n) = 1 + (n-2) w_n, the total edge count over all u-v paths.
inline BigInt path_length_sum(long n, const FloorOptions& opts = {})
{
    detail::require_graph_size(n, "path_length_sum");
    return 1 + BigInt(n - 2) * path_count(n, opts);
}

inline DualRoute path_length_sum_routes(long n, const FloorOptions& opts = {})
{
    detail::require_graph_size(n, "path_length_sum");
    BigInt sum = 0;
    for (long i = 1; i <= n - 1; ++i)
        sum += i * path_count_by_length(n, i);
    return {sum, 1 + BigInt(n - 2) * detail::floor_e_times(factorial(n - 2), opts)};
}

inline Rat average_path_length(long n, const FloorOptions& opts = {})
{
    detail::require_graph_size(n, "average_path_length");
    BigInt w = path_count(n, opts);
    return make_rat(1 + BigInt(n - 2) * w, w);
}

/// Every path length i in 1..n-1 at which w(i) is maximal, ascending.
inline std::vector<long> path_argmax_lengths(long n)
{
    detail::require_graph_size(n, "path_argmax_lengths");
    std::vector<long> best;
    BigInt best_count = 0;
    for (long i = 1; i <= n - 1; ++i) {
        BigInt w = path_count_by_length(n, i);
        if (w > best_count) {
            best_count = w;
            best.clear();
        }
        if (w == best_count)
            best.push_back(i);
    }
    return best;
}

// ---------------------------------------------------------------- cycles
//
// A cycle through u is an ordered sequence u, v_1, ..., v_{i-1}, u of length
// i >= 3 with distinct v_j, so both orientations are counted.

inline DualRoute cycle_count_routes(long n, const FloorOptions& opts = {})
{
    detail::require_graph_size(n, "cycle_count");
    BigInt sum = 0;
    BigInt term = 1; // (n-1)!/(n-i)! built up from i = 1
    for (long i = 2; i <= n; ++i) {
        term *= (n - i + 1);
        if (i >= 3)
            sum += term;
    }
    return {sum, detail::floor_e_times(factorial(n - 1), opts) - n};
}

/// c_n: oriented cycles through a fixed vertex of K_n.
inline BigInt cycle_count(long n, const FloorOptions& opts = {})
{
    return detail::checked(cycle_count_routes(n, opts), "cycle_count(" + std::to_string(n) + ")");
}

inline DualRoute cycle_length_sum_routes(long n, const FloorOptions& opts = {})
{
    detail::require_graph_size(n, "cycle_length_sum");
    BigInt sum = 0;
    BigInt term = 1;
    for (long i = 2; i <= n; ++i) {
        term *= (n - i + 1);
        if (i >= 3)
            sum += i * term;
    }
    BigInt fl_n = detail::floor_e_times(factorial(n), opts);
    BigInt fl_n1 = detail::floor_e_times(factorial(n - 1), opts);
    return {sum, fl_n - fl_n1 - 2 * n + 1};
}

/// L_c(n): total length of all oriented cycles through a fixed vertex.
inline BigInt cycle_length_sum(long n, const FloorOptions& opts = {})
{
    return detail::checked(cycle_length_sum_routes(n, opts), "cycle_length_sum(" + std::to_string(n) + ")");
}

struct PathCycleCounts {
    long n = 0;
    BigInt w_n, L_w, c_n, L_c;
};

inline PathCycleCounts path_cycle_counts(long n, const FloorOptions& opts = {})
{
    return {n, path_count(n, opts), path_length_sum(n, opts), cycle_count(n, opts), cycle_length_sum(n, opts)};
}

// ---------------------------------------------------------------- derangement floor formulas

/// floor(n!/e + lambda). No restriction on lambda; it equals D_n for 1/3 <= lambda <= 1/2.
inline BigInt derangement_lambda(long n, const Rat& lambda, const FloorOptions& opts = {})
{
    require_domain(n >= 1, "derangement_lambda: n must be >= 1, got " + std::to_string(n));
    return certified_floor(EForm(lambda, 0, Rat(factorial(n))), opts);
}

/// floor((n! + 1)/e).
inline BigInt derangement_eq2(long n, const FloorOptions& opts = {})
{
    require_domain(n >= 1, "eq2: n must be >= 1, got " + std::to_string(n));
    return certified_floor(EForm(0, 0, Rat(factorial(n) + 1)), opts);
}

/// floor(n!/e + 1/n), n >= 2.
inline BigInt derangement_eq3(long n, const FloorOptions& opts = {})
{
    require_domain(n >= 2, "eq3: n must be >= 2, got " + std::to_string(n));
    return certified_floor(EForm(make_rat(1, n), 0, Rat(factorial(n))), opts);
}

/// floor(n!/e + (n+2)/(n+1)^2), n >= 2.
inline BigInt derangement_eq4(long n, const FloorOptions& opts = {})
{
    require_domain(n >= 2, "eq4: n must be >= 2, got " + std::to_string(n));
    return certified_floor(EForm(make_rat(n + 2, BigInt(n + 1) * (n + 1)), 0, Rat(factorial(n))), opts);
}

/// Argument of the first floor in derangement_eq5:
/// n! (floor(e (n+m-2)!)/(n+m-2)! + (n+m)/((n+m-1)(n+m-1)!)) + n!/e.
inline EForm eq5_argument(long n, long m)
{
    require_domain(n >= 2, "eq5: n must be >= 2, got " + std::to_string(n));
    require_domain(m >= 3, "eq5: m must be >= 3, got " + std::to_string(m));
    BigInt nf = factorial(n);
    long j = n + m - 2;
    BigInt jf = factorial(j);
    Rat a = make_rat(partial_sum_pos(j), jf) + make_rat(n + m, BigInt(n + m - 1) * jf * (n + m - 1));
    return {Rat(nf) * a, 0, Rat(nf)};
}

inline BigInt derangement_eq5(long n, long m, const FloorOptions& opts = {})
{
    EForm arg = eq5_argument(n, m);
    return certified_floor(arg, opts) - detail::floor_e_times(factorial(n), opts);
}

/// floor((e + 1/e) n!) - floor(e n!), n >= 2.
inline BigInt derangement_eq6(long n, const FloorOptions& opts = {})
{
    require_domain(n >= 2, "eq6: n must be >= 2, got " + std::to_string(n));
    Rat nf(factorial(n));
    return certified_floor(EForm(0, nf, nf), opts) - certified_floor(EForm(0, nf, 0), opts);
}

// ---------------------------------------------------------------- bounds

/// M_m(n): M_1 = 1/n, M_2 = (n+2)/(n+1)^2, and for m >= 3
/// n! ((n+m)/((n+m-1)(n+m-1)!) + sum_{i=n+1}^{n+m-2} 1/i!).
inline Rat bound_M(long n, long m)
{
    require_domain(n >= 1, "bound_M: n must be >= 1, got " + std::to_string(n));
    require_domain(m >= 1, "bound_M: m must be >= 1, got " + std::to_string(m));
    if (m == 1)
        return make_rat(1, n);
    if (m == 2)
        return make_rat(n + 2, BigInt(n + 1) * (n + 1));
    // n!/i! for i > n is 1/((n+1)...(i)).
    Rat sum = 0;
    BigInt falling = 1;
    for (long i = n + 1; i <= n + m - 2; ++i) {
        falling *= i;
        sum += make_rat(1, falling);
    }
    BigInt last = falling * (n + m - 1); // (n+m-1)!/n!
    sum += make_rat(n + m, last * (n + m - 1));
    return sum;
}

/// n! * {e (n+2m)!}/(n+2m)!: the tail term of N_m(n).
inline EForm bound_N_tail(long n, long m)
{
    long j = n + 2 * m;
    Rat scale = make_rat(factorial(n), factorial(j));
    return scale * frac_e_nfact(j);
}

/// n! sum_{i=1}^{m} (n+2i-1)/(n+2i)!.
inline Rat bound_N_head(long n, long m)
{
    Rat s = 0;
    BigInt nf = factorial(n);
    BigInt f = nf; // running (n+2i)!
    long k = n;
    for (long i = 1; i <= m; ++i) {
        f *= ++k;
        f *= ++k;
        s += make_rat(BigInt(n + 2 * i - 1) * nf, f);
    }
    return s;
}

/// N_m(n) with the tail term added once (the reading consistent with its derivation).
inline EForm bound_N(long n, long m)
{
    require_domain(n >= 1, "bound_N: n must be >= 1, got " + std::to_string(n));
    require_domain(m >= 1, "bound_N: m must be >= 1, got " + std::to_string(m));
    return EForm::rational(bound_N_head(n, m)) + bound_N_tail(n, m);
}

/// N_m(n) read literally from the displayed formula, tail term inside the sum (added m times).
inline EForm bound_N_tail_in_sum(long n, long m)
{
    require_domain(n >= 1, "bound_N_tail_in_sum: n must be >= 1, got " + std::to_string(n));
    require_domain(m >= 1, "bound_N_tail_in_sum: m must be >= 1, got " + std::to_string(m));
    return EForm::rational(bound_N_head(n, m)) + Rat(m) * bound_N_tail(n, m);
}

/// floor(n!/e + N_m(n)), n >= 2, m >= 1.
inline BigInt derangement_thm7(long n, long m, const FloorOptions& opts = {})
{
    require_domain(n >= 2, "thm7: n must be >= 2, got " + std::to_string(n));
    require_domain(m >= 1, "thm7: m must be >= 1, got " + std::to_string(m));
    return certified_floor(EForm(0, 0, Rat(factorial(n))) + bound_N(n, m), opts);
}

/// |n!/e - D_n| as an exact form; n!/e exceeds D_n exactly when n is odd.
inline EForm derangement_deviation(long n)
{
    require_domain(n >= 0, "derangement_deviation: n must be >= 0");
    EForm signed_dev(Rat(-derangements(n)), 0, Rat(factorial(n)));
    return n % 2 == 1 ? signed_dev : -signed_dev;
}

struct BoundsChain {
    long n = 0;
    long m_max = 0;
    EForm deviation;                 ///< |n!/e - D_n|
    EForm frac;                      ///< {e n!}
    std::vector<EForm> lower_bounds; ///< N_1 .. N_{m_max}
    std::vector<Rat> upper_bounds;   ///< M_1 .. M_{m_max+2}
};

/// Verifies |n!/e - D_n| < N_{m_max} < ... < N_1 < {e n!} < M_{m_max+2} < ... < M_1 < 1
/// by certified comparisons; throws InvariantViolation naming the first failing pair.
inline BoundsChain chain_check(long n, long m_max, const FloorOptions& opts = {})
{
    require_domain(n >= 2, "chain_check: n must be >= 2, got " + std::to_string(n));
    require_domain(m_max >= 1, "chain_check: m_max must be >= 1, got " + std::to_string(m_max));
    BoundsChain ch;
    ch.n = n;
    ch.m_max = m_max;
    ch.deviation = derangement_deviation(n);
    ch.frac = frac_e_nfact(n);
    for (long m = 1; m <= m_max; ++m)
        ch.lower_bounds.push_back(bound_N(n, m));
    for (long m = 1; m <= m_max + 2; ++m)
        ch.upper_bounds.push_back(bound_M(n, m));

    const std::string at = "(" + std::to_string(n) + ")";
    auto need = [&](const EForm& small, const EForm& large, const std::string& what) {
        if (!certified_less(small, large, opts))
            throw InvariantViolation("bound chain violated at n=" + std::to_string(n) + ": " + what);
    };

    need(EForm::rational(0), ch.deviation, "0 < |n!/e - D_n|");
    need(ch.deviation, ch.lower_bounds.back(), "|n!/e - D_n| < N_" + std::to_string(m_max) + at);
    for (long m = m_max; m >= 2; --m)
        need(ch.lower_bounds[m - 1], ch.lower_bounds[m - 2],
             "N_" + std::to_string(m) + at + " < N_" + std::to_string(m - 1) + at);
    need(ch.lower_bounds.front(), ch.frac, "N_1" + at + " < {e n!}");
    need(ch.frac, EForm::rational(ch.upper_bounds.back()), "{e n!} < M_" + std::to_string(m_max + 2) + at);
    for (long m = m_max + 2; m >= 2; --m)
        need(EForm::rational(ch.upper_bounds[m - 1]), EForm::rational(ch.upper_bounds[m - 2]),
             "M_" + std::to_string(m) + at + " < M_" + std::to_string(m - 1) + at);
    need(EForm::rational(ch.upper_bounds.front()), EForm::rational(1), "M_1" + at + " < 1");
    return ch;
}

} // namespace ecount
