#pragma once

// Verification suites: every identity checked two independent ways over a
// range of n, one CountReport per check. Work is partitioned by n across a
// small thread pool; results are always returned in n order.

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "counts.hpp"
#include "exact.hpp"
#include "oracles.hpp"
#include "report.hpp"
#include "special.hpp"

namespace ecount {

struct Range {
    long lo = 0;
    long hi = 0;
    friend bool operator==(const Range&, const Range&) = default;
};

/// Parses "a..b" (or a single integer "a"); nullopt when malformed.
inline std::optional<Range> parse_range(std::string_view s)
{
    auto to_long = [](std::string_view t) -> std::optional<long> {
        if (!detail::is_integer_literal(t, true) || t.size() > 18)
            return std::nullopt;
        return std::stol(std::string(t));
    };
    auto dots = s.find("..");
    if (dots == std::string_view::npos) {
        auto v = to_long(s);
        if (!v)
            return std::nullopt;
        return Range{*v, *v};
    }
    auto a = to_long(s.substr(0, dots));
    auto b = to_long(s.substr(dots + 2));
    if (!a || !b)
        return std::nullopt;
    return Range{*a, *b};
}

struct VerifyOptions {
    std::optional<Range> n_range;
    std::optional<Range> m_range;
    long precision_bits = 64;
    Rat tol{1, 1'000'000'000};
    std::optional<Rat> lambda; ///< replaces the default lambda set when present
    unsigned jobs = 1;
    FloorOptions floor;
};

struct SuiteResult {
    std::string suite;
    std::vector<CountReport> checks;

    long failures() const
    {
        return static_cast<long>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.verified; }));
    }
    const CountReport* first_failure() const
    {
        for (const auto& c : checks)
            if (!c.verified)
                return &c;
        return nullptr;
    }
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"eq1",          "derangement-family", "paths-cycles",
                                                   "bounds-chain", "special-fn",         "oracle-equivalence"};
    return names;
}

namespace detail {

// Runs fn(n) for n in [lo, hi] on `jobs` threads and concatenates in n order.
inline std::vector<CountReport> over_n(long lo, long hi, unsigned jobs,
                                       const std::function<std::vector<CountReport>(long)>& fn)
{
    if (hi < lo)
        return {};
    std::size_t count = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::vector<CountReport>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                slots[i] = fn(lo + static_cast<long>(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    std::vector<CountReport> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        for (auto& r : slots[i])
            out.push_back(std::move(r));
    }
    return out;
}

inline Range pick(const std::optional<Range>& given, Range fallback, long min_n, long max_n = 1L << 40)
{
    Range r = given.value_or(fallback);
    require_domain(r.lo <= r.hi, "range must satisfy lo <= hi, got " + std::to_string(r.lo) + ".." +
                                     std::to_string(r.hi));
    return {std::max(r.lo, min_n), std::min(r.hi, max_n)};
}

inline CountReport check(std::string op, long n)
{
    CountReport r;
    r.op = std::move(op);
    r.param("n", std::to_string(n));
    return r;
}

// Runs body(report); an InvariantViolation marks the check failed with its message.
template <class F>
CountReport guarded(CountReport r, F&& body)
{
    try {
        body(r);
    } catch (const InvariantViolation& e) {
        r.verified = false;
        r.detail = e.what();
    }
    return r;
}

inline std::vector<CountReport> append(std::vector<CountReport> a, std::vector<CountReport> b)
{
    for (auto& r : b)
        a.push_back(std::move(r));
    return a;
}

} // namespace detail

inline SuiteResult suite_eq1(const VerifyOptions& o)
{
    auto r = detail::pick(o.n_range, {1, 500}, 1);
    return {"eq1", detail::over_n(r.lo, r.hi, o.jobs, [&](long n) {
                CountReport c = detail::check("eq1", n);
                c.routes(to_string(partial_sum_pos(n)), to_string(certified_floor(EForm(0, Rat(factorial(n)), 0), o.floor)));
                c.value = *c.route_a;
                return std::vector<CountReport>{c};
            })};
}

inline SuiteResult suite_derangement_family(const VerifyOptions& o)
{
    auto r = detail::pick(o.n_range, {1, 200}, 1);
    std::vector<long> eq5_ms, thm7_ms;
    if (o.m_range) {
        auto m = detail::pick(o.m_range, {1, 1}, 1);
        for (long k = m.lo; k <= m.hi; ++k) {
            if (k >= 3)
                eq5_ms.push_back(k);
            thm7_ms.push_back(k);
        }
    } else {
        eq5_ms = {3, 4, 5, 6};
        thm7_ms = {1, 2, 3};
    }
    std::vector<Rat> lambdas = o.lambda ? std::vector<Rat>{*o.lambda} : std::vector<Rat>{Rat(1, 3), Rat(5, 12), Rat(1, 2)};

    return {"derangement-family", detail::over_n(r.lo, r.hi, o.jobs, [&](long n) {
                std::vector<CountReport> out;
                const std::string d = to_string(derangements(n));
                auto add = [&](std::string op, BigInt v, std::optional<std::pair<std::string, std::string>> extra = {}) {
                    CountReport c = detail::check(std::move(op), n);
                    if (extra)
                        c.param(extra->first, extra->second);
                    c.routes(d, to_string(v));
                    c.value = *c.route_b;
                    out.push_back(std::move(c));
                };
                add("eq2", derangement_eq2(n, o.floor));
                for (const Rat& l : lambdas)
                    add("lambda", derangement_lambda(n, l, o.floor), std::pair{std::string("lambda"), to_string(l)});
                if (n >= 2) {
                    add("eq3", derangement_eq3(n, o.floor));
                    add("eq4", derangement_eq4(n, o.floor));
                    for (long m : eq5_ms)
                        add("eq5", derangement_eq5(n, m, o.floor), std::pair{std::string("m"), std::to_string(m)});
                    add("eq6", derangement_eq6(n, o.floor));
                    for (long m : thm7_ms)
                        add("thm7", derangement_thm7(n, m, o.floor), std::pair{std::string("m"), std::to_string(m)});
                }
                return out;
            })};
}

inline SuiteResult suite_paths_cycles(const VerifyOptions& o)
{
    auto r = detail::pick(o.n_range, {3, 60}, 3);
    return {"paths-cycles", detail::over_n(r.lo, r.hi, o.jobs, [&](long n) {
                std::vector<CountReport> out;
                auto dual = [&](std::string op, const DualRoute& d) {
                    CountReport c = detail::check(std::move(op), n);
                    c.routes(to_string(d.exact_sum), to_string(d.floor_route));
                    c.value = *c.route_a;
                    out.push_back(std::move(c));
                };
                auto w = path_count_routes(n, o.floor);
                auto lw = path_length_sum_routes(n, o.floor);
                dual("paths", w);
                dual("path-length-sum", lw);
                dual("cycles", cycle_count_routes(n, o.floor));
                dual("cycle-length-sum", cycle_length_sum_routes(n, o.floor));

                // Average path length exceeds n-2 by exactly 1/w_n.
                CountReport avg = detail::check("avg-path-excess", n);
                Rat excess = make_rat(lw.exact_sum, w.exact_sum) - (n - 2);
                avg.routes(to_string(excess), to_string(make_rat(1, w.exact_sum)));
                avg.value = *avg.route_a;
                out.push_back(std::move(avg));

                CountReport arg = detail::check("path-argmax", n);
                auto best = path_argmax_lengths(n);
                std::string got;
                for (long i : best)
                    got += (got.empty() ? "" : ",") + std::to_string(i);
                arg.routes(std::to_string(n - 2) + "," + std::to_string(n - 1), got);
                arg.value = got;
                out.push_back(std::move(arg));
                return out;
            })};
}

inline SuiteResult suite_bounds_chain(const VerifyOptions& o)
{
    auto chain_r = detail::pick(o.n_range, {2, 50}, 2);
    auto bracket_r = detail::pick(o.n_range, {1, 200}, 1);
    long m_max = o.m_range ? detail::pick(o.m_range, {1, 1}, 1).hi : 8;

    auto chains = detail::over_n(chain_r.lo, chain_r.hi, o.jobs, [&](long n) {
        CountReport c = detail::check("bounds-chain", n);
        c.param("m_max", std::to_string(m_max));
        return std::vector<CountReport>{detail::guarded(c, [&](CountReport& rep) {
            auto ch = chain_check(n, m_max, o.floor);
            rep.verified = true;
            rep.form = ch.frac;
            rep.interval = eform_eval(ch.frac, o.precision_bits);
            rep.value = rep.interval->lo_decimal();
            rep.detail = "|n!/e - D_n| < N_" + std::to_string(m_max) + " < ... < N_1 < {e n!} < M_" +
                         std::to_string(m_max + 2) + " < ... < M_1 < 1";
        })};
    });
    auto brackets = detail::over_n(bracket_r.lo, bracket_r.hi, o.jobs, [&](long n) {
        CountReport c = detail::check("frac-bracket", n);
        EForm frac = frac_e_nfact(n);
        c.form = frac;
        c.interval = eform_eval(frac, o.precision_bits);
        c.value = c.interval->lo_decimal();
        // {e n!} is irrational, so strict comparison on both sides is the whole claim.
        c.verified = certified_less(EForm::rational(make_rat(1, n + 1)), frac, o.floor) &&
                     certified_less(frac, EForm::rational(make_rat(1, n)), o.floor);
        c.detail = "1/" + std::to_string(n + 1) + " < {e n!} <= 1/" + std::to_string(n);
        return std::vector<CountReport>{c};
    });
    return {"bounds-chain", detail::append(std::move(chains), std::move(brackets))};
}

inline SuiteResult suite_special_fn(const VerifyOptions& o)
{
    const std::vector<Rat> grid = {Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2), Rat(2), Rat(-2), Rat(3, 7)};
    auto eq7 = detail::over_n(detail::pick(o.n_range, {0, 30}, 0).lo, detail::pick(o.n_range, {0, 30}, 0).hi, o.jobs,
                              [&](long n) {
                                  std::vector<CountReport> out;
                                  for (const Rat& x : grid) {
                                      CountReport c = detail::check("eq7", n);
                                      c.param("x", to_string(x));
                                      Rat lhs = pow_rat(x, static_cast<unsigned long>(n)) * hyp2f0(n, -1 / x);
                                      c.routes(to_string(lhs), to_string(dpoly_eval(n, x)));
                                      c.value = *c.route_a;
                                      out.push_back(std::move(c));
                                  }
                                  return out;
                              });

    auto sr = detail::pick(o.n_range, {1, 100}, 1);
    auto special = detail::over_n(sr.lo, sr.hi, o.jobs, [&](long n) {
        std::vector<CountReport> out;
        Rat nf(factorial(n));
        CountReport minus = detail::check("hyp2f0-special", n);
        minus.param("x", "-1");
        minus.routes(to_string(hyp2f0(n, -1)), to_string(certified_floor(EForm(0, nf, 0), o.floor)));
        minus.value = *minus.route_a;
        out.push_back(std::move(minus));
        CountReport plus = detail::check("hyp2f0-special", n);
        plus.param("x", "1");
        BigInt signed_eq2 = (n % 2 == 0 ? 1 : -1) * derangement_eq2(n, o.floor);
        plus.routes(to_string(hyp2f0(n, 1)), to_string(signed_eq2));
        plus.value = *plus.route_a;
        out.push_back(std::move(plus));
        return out;
    });

    auto hr = detail::pick(o.n_range, {0, 10}, 0);
    const long hyp_bits = std::max(o.precision_bits, 48L);
    const Rat width_cap(1, 1'000'000'000'000);
    auto hyp = detail::over_n(hr.lo, hr.hi, o.jobs, [&](long n) {
        std::vector<CountReport> out;
        for (const Rat& x : {Rat(1, 2), Rat(1), Rat(2)}) {
            CountReport c = detail::check("hyp1f1", n);
            c.param("x", to_string(x));
            auto s = hyp1f1_series(n, x, hyp_bits);
            auto cf = hyp1f1_closed_form(n, x, hyp_bits);
            c.interval = s;
            c.value = s.lo_decimal();
            c.route_a = s.lo_decimal() + ".." + s.hi_decimal();
            c.route_b = cf.lo_decimal() + ".." + cf.hi_decimal();
            c.verified = s.overlaps(cf) && s.width() <= width_cap && cf.width() <= width_cap;
            out.push_back(std::move(c));
        }
        return out;
    });

    auto odr = detail::pick(o.n_range, {0, 50}, 0);
    auto ode = detail::over_n(odr.lo, odr.hi, o.jobs, [&](long n) {
        CountReport c = detail::check("ode", n);
        auto p = dpoly(n);
        auto dp = formal_derivative(p.coeffs);
        std::vector<BigInt> diff = p.coeffs;
        for (std::size_t i = 0; i < dp.size(); ++i)
            diff[i] -= dp[i];
        std::vector<BigInt> monomial(static_cast<std::size_t>(n) + 1, BigInt(0));
        monomial.back() = 1;
        c.verified = diff == monomial;
        c.value = c.verified ? "x^" + std::to_string(n) : "mismatch";
        c.detail = "D_n(x) - D_n'(x) = x^n";
        return std::vector<CountReport>{c};
    });

    auto ir = detail::pick(o.n_range, {1, 15}, 1);
    IntegralOptions iopts;
    iopts.tol = o.tol;
    iopts.floor = o.floor;
    auto integrals = detail::over_n(ir.lo, ir.hi, o.jobs, [&](long n) {
        std::vector<CountReport> out;
        for (auto& id : integral_identities(n, iopts)) {
            CountReport c = detail::check("integral", n);
            c.param("range", id.label);
            c.form = id.closed_form;
            c.interval = id.closed_interval;
            c.value = id.closed_interval.lo_decimal();
            c.route_a = id.closed_interval.lo_decimal() + ".." + id.closed_interval.hi_decimal();
            c.route_b = id.oracle.value.lo_decimal() + ".." + id.oracle.value.hi_decimal();
            c.verified = id.overlap;
            out.push_back(std::move(c));
        }
        return out;
    });

    std::vector<CountReport> all = std::move(eq7);
    for (auto* part : {&special, &hyp, &ode, &integrals})
        all = detail::append(std::move(all), std::move(*part));
    return {"special-fn", std::move(all)};
}

inline SuiteResult suite_oracle_equivalence(const VerifyOptions& o)
{
    auto dr = detail::pick(o.n_range, {0, 9}, 0, kMaxPermutationN);
    auto pr = detail::pick(o.n_range, {3, 9}, 3, kMaxPathN);
    auto cr = detail::pick(o.n_range, {3, 8}, 3, kMaxCycleN);
    auto der = detail::over_n(dr.lo, dr.hi, o.jobs, [&](long n) {
        CountReport c = detail::check("brute-derangements", n);
        c.routes(to_string(brute_derangements(static_cast<int>(n))), to_string(derangements(n)));
        c.value = *c.route_a;
        return std::vector<CountReport>{c};
    });
    auto pairs = [&](std::string op, Range r, auto brute, auto count, auto length) {
        return detail::over_n(r.lo, r.hi, o.jobs, [&, op](long n) {
            CountReport c = detail::check(op, n);
            EnumerationResult b = brute(static_cast<int>(n));
            c.routes(to_string(b.count) + "," + to_string(b.total_length),
                     to_string(count(n)) + "," + to_string(length(n)));
            c.value = *c.route_a;
            return std::vector<CountReport>{c};
        });
    };
    auto paths = pairs("brute-paths", pr, brute_paths, [&](long n) { return path_count(n, o.floor); },
                       [&](long n) { return path_length_sum(n, o.floor); });
    auto cycles = pairs("brute-cycles", cr, brute_cycles, [&](long n) { return cycle_count(n, o.floor); },
                        [&](long n) { return cycle_length_sum(n, o.floor); });
    return {"oracle-equivalence", detail::append(detail::append(std::move(der), std::move(paths)), std::move(cycles))};
}

/// Runs one named suite, or every suite for "all". Unknown names throw DomainError.
inline std::vector<SuiteResult> run_suite(const std::string& name, const VerifyOptions& o)
{
    using Fn = SuiteResult (*)(const VerifyOptions&);
    const std::vector<std::pair<std::string, Fn>> table = {
        {"eq1", suite_eq1},
        {"derangement-family", suite_derangement_family},
        {"paths-cycles", suite_paths_cycles},
        {"bounds-chain", suite_bounds_chain},
        {"special-fn", suite_special_fn},
        {"oracle-equivalence", suite_oracle_equivalence},
    };
    std::vector<SuiteResult> out;
    for (const auto& [label, fn] : table)
        if (name == "all" || name == label)
            out.push_back(fn(o));
    if (out.empty())
        throw DomainError("unknown suite: " + name);
    return out;
}

} // namespace ecount
