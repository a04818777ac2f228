// ecount: exact counts, derangement floor formulas and certified floors of
// a + b e + c/e from the command line.
//
// Exit codes: 0 all good, 1 identity violated (or floor undecidable under the
// precision cap), 2 usage error, 3 domain error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <ecount/ecount.hpp>
#include <ecount/report.hpp>
#include <ecount/verify.hpp>

using namespace ecount;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point t0)
{
    return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count());
}

FloorOptions floor_options_from_env()
{
    FloorOptions f;
    if (const char* cap = std::getenv("ECOUNT_PRECISION_CAP")) {
        char* end = nullptr;
        long v = std::strtol(cap, &end, 10);
        if (end == cap || *end != '\0' || v < 64)
            throw UsageError("ECOUNT_PRECISION_CAP must be an integer >= 64, got '" + std::string(cap) + "'");
        f.cap_bits = v;
    }
    return f;
}

Rat parse_rat_arg(const std::string& s, const std::string& flag)
{
    try {
        return parse_rat(s);
    } catch (const DomainError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

// Tolerances may also be written 1e-K.
Rat parse_tol(const std::string& s)
{
    if (s.rfind("1e-", 0) == 0 && detail::is_integer_literal(std::string_view(s).substr(3), false)) {
        BigInt d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, std::stoul(s.substr(3)));
        return make_rat(1, d);
    }
    return parse_rat_arg(s, "--tol");
}

Range parse_range_arg(const std::string& s, const std::string& flag)
{
    auto r = parse_range(s);
    if (!r)
        throw UsageError(flag + ": expected a..b, got '" + s + "'");
    return *r;
}

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string out;
    for (const auto& s : v)
        out += (out.empty() ? "" : sep) + s;
    return out;
}

// ---------------------------------------------------------------- compute

struct ComputeArgs {
    std::string op;
    std::optional<long> n, m;
    std::optional<std::string> x, z, lambda;
    std::optional<int> sign;
    long precision_bits = 64;
    std::string tol = "1/1000000000";
    long m_max = 8;
    std::string format = "text";
    bool timing = false;
};

const std::vector<std::string> kComputeOps = {
    "derangements", "dpoly-eval", "paths", "path-length-sum", "cycles", "cycle-length-sum", "avg-path-length",
    "floor-e-nfact", "frac-e-nfact", "eq2",  "eq3", "eq4", "eq5", "eq6", "thm7", "lambda", "hyp2f0", "hyp1f1",
    "inc-gamma", "integrals", "bounds"};

long need(const std::optional<long>& v, const char* flag, const std::string& op)
{
    if (!v)
        throw UsageError(op + " requires " + flag);
    return *v;
}

Rat need_rat(const std::optional<std::string>& v, const char* flag, const std::string& op)
{
    if (!v)
        throw UsageError(op + " requires " + flag);
    return parse_rat_arg(*v, flag);
}

CountReport base(const std::string& op, long n)
{
    CountReport r;
    r.op = op;
    r.param("n", std::to_string(n));
    return r;
}

CountReport derangement_report(const std::string& op, long n, const BigInt& v)
{
    CountReport r = base(op, n);
    r.routes(to_string(v), to_string(derangements(n)));
    r.value = *r.route_a;
    return r;
}

std::vector<CountReport> run_compute(const ComputeArgs& a, const FloorOptions& fl)
{
    const std::string& op = a.op;
    const long bits = a.precision_bits;
    require_domain(bits >= 8, "--precision-bits must be >= 8");
    auto dual = [&](long n, const DualRoute& d) {
        CountReport r = base(op, n);
        r.routes(to_string(d.exact_sum), to_string(d.floor_route));
        r.value = *r.route_a;
        return std::vector<CountReport>{r};
    };

    if (op == "derangements") {
        long n = need(a.n, "--n", op);
        require_domain(n >= 0, "derangements: n must be >= 0, got " + std::to_string(n));
        CountReport r = base(op, n);
        if (n >= 1) {
            r.routes(to_string(derangements(n)), to_string(derangement_eq2(n, fl)));
            r.detail = "recurrence vs floor((n!+1)/e)";
        } else {
            r.routes(to_string(derangements(n)), to_string(dpoly_eval(n, -1)));
            r.detail = "recurrence vs D_n(-1)";
        }
        r.value = *r.route_a;
        return {r};
    }
    if (op == "dpoly-eval") {
        long n = need(a.n, "--n", op);
        Rat x = need_rat(a.x, "--x", op);
        CountReport r = base(op, n);
        r.param("x", to_string(x));
        r.routes(to_string(dpoly_eval(n, x)), to_string(dpoly_eval_three_term(n, x)));
        r.value = *r.route_a;
        return {r};
    }
    if (op == "paths")
        return dual(need(a.n, "--n", op), path_count_routes(need(a.n, "--n", op), fl));
    if (op == "path-length-sum")
        return dual(need(a.n, "--n", op), path_length_sum_routes(need(a.n, "--n", op), fl));
    if (op == "cycles")
        return dual(need(a.n, "--n", op), cycle_count_routes(need(a.n, "--n", op), fl));
    if (op == "cycle-length-sum")
        return dual(need(a.n, "--n", op), cycle_length_sum_routes(need(a.n, "--n", op), fl));
    if (op == "avg-path-length") {
        long n = need(a.n, "--n", op);
        CountReport r = base(op, n);
        Rat avg = average_path_length(n, fl);
        r.routes(to_string(avg), to_string(Rat(n - 2) + make_rat(1, path_count(n, fl))));
        r.value = *r.route_a;
        r.detail = "L_w / w_n vs (n-2) + 1/w_n";
        return {r};
    }
    if (op == "floor-e-nfact") {
        long n = need(a.n, "--n", op);
        require_domain(n >= 1, "floor-e-nfact: n must be >= 1, got " + std::to_string(n));
        CountReport r = base(op, n);
        auto fr = certified_floor_detailed(EForm(0, Rat(factorial(n)), 0), fl);
        r.routes(to_string(partial_sum_pos(n)), to_string(fr.value));
        r.value = *r.route_a;
        r.detail = "decided at " + std::to_string(fr.precision_bits) + " bits";
        return {r};
    }
    if (op == "frac-e-nfact") {
        long n = need(a.n, "--n", op);
        EForm f = frac_e_nfact(n);
        CountReport r = base(op, n);
        r.form = f;
        r.interval = eform_eval(f, bits);
        r.value = r.interval->lo_decimal();
        r.verified = certified_less(EForm::rational(make_rat(1, n + 1)), f, fl) &&
                     certified_less(f, EForm::rational(make_rat(1, n)), fl);
        r.detail = "1/" + std::to_string(n + 1) + " < {e n!} <= 1/" + std::to_string(n);
        return {r};
    }
    if (op == "eq2")
        return {derangement_report(op, need(a.n, "--n", op), derangement_eq2(need(a.n, "--n", op), fl))};
    if (op == "eq3")
        return {derangement_report(op, need(a.n, "--n", op), derangement_eq3(need(a.n, "--n", op), fl))};
    if (op == "eq4")
        return {derangement_report(op, need(a.n, "--n", op), derangement_eq4(need(a.n, "--n", op), fl))};
    if (op == "eq5") {
        long n = need(a.n, "--n", op), m = need(a.m, "--m", op);
        CountReport r = derangement_report(op, n, derangement_eq5(n, m, fl));
        r.params.insert(r.params.begin() + 1, {"m", std::to_string(m)});
        return {r};
    }
    if (op == "eq6") {
        long n = need(a.n, "--n", op);
        CountReport r = derangement_report(op, n, derangement_eq6(n, fl));
        Rat nf(factorial(n));
        r.detail = "floor((e+1/e)*" + to_string(nf) + ") - floor(e*" + to_string(nf) +
                   ") = " + to_string(certified_floor(EForm(0, nf, nf), fl)) + " - " +
                   to_string(certified_floor(EForm(0, nf, 0), fl));
        return {r};
    }
    if (op == "thm7") {
        long n = need(a.n, "--n", op), m = need(a.m, "--m", op);
        CountReport r = derangement_report(op, n, derangement_thm7(n, m, fl));
        r.params.insert(r.params.begin() + 1, {"m", std::to_string(m)});
        return {r};
    }
    if (op == "lambda") {
        long n = need(a.n, "--n", op);
        Rat l = need_rat(a.lambda, "--lambda", op);
        CountReport r = derangement_report(op, n, derangement_lambda(n, l, fl));
        r.param("lambda", to_string(l));
        return {r};
    }
    if (op == "hyp2f0" && a.sign && !a.x) {
        long n = need(a.n, "--n", op);
        CountReport r = base(op, n);
        r.param("x", std::to_string(*a.sign));
        BigInt closed = hyp2f0_special(n, *a.sign, fl);
        r.routes(to_string(hyp2f0(n, Rat(*a.sign))), to_string(closed));
        r.value = *r.route_a;
        r.detail = *a.sign < 0 ? "floor(e n!)" : "(-1)^n floor((n!+1)/e)";
        return {r};
    }
    if (op == "hyp2f0") {
        long n = need(a.n, "--n", op);
        Rat x = need_rat(a.x, "--x", op);
        CountReport r = base(op, n);
        r.param("x", to_string(x));
        // 2F0[1,-n;;y] = (-y)^n D_n(-1/y) for y != 0.
        Rat other = x == 0 ? Rat(1) : pow_rat(-x, static_cast<unsigned long>(n)) * dpoly_eval(n, -1 / x);
        r.routes(to_string(hyp2f0(n, x)), to_string(other));
        r.value = *r.route_a;
        return {r};
    }
    if (op == "hyp1f1") {
        long n = need(a.n, "--n", op);
        Rat x = need_rat(a.x, "--x", op);
        CountReport r = base(op, n);
        r.param("x", to_string(x));
        auto s = hyp1f1_series(n, x, bits);
        r.interval = s;
        r.value = s.lo_decimal();
        r.route_a = s.lo_decimal() + ".." + s.hi_decimal();
        if (x != 0) {
            auto c = hyp1f1_closed_form(n, x, bits);
            r.route_b = c.lo_decimal() + ".." + c.hi_decimal();
            r.verified = s.overlaps(c);
        } else {
            r.verified = s.contains(Rat(1));
        }
        return {r};
    }
    if (op == "inc-gamma") {
        long n = need(a.n, "--n", op);
        Rat z = need_rat(a.z, "--z", op);
        Rat tol = parse_tol(a.tol);
        CountReport r = base(op, n);
        r.param("z", to_string(z));
        auto g = inc_gamma_int(n, z, bits);
        auto q = quad_gamma(n, z, tol);
        r.interval = g;
        r.value = g.lo_decimal();
        r.route_a = g.lo_decimal() + ".." + g.hi_decimal();
        r.route_b = q.value.lo_decimal() + ".." + q.value.hi_decimal();
        r.verified = g.overlaps(q.value);
        r.detail = "e^{-z} D_n(z) vs quadrature";
        return {r};
    }
    if (op == "integrals") {
        long n = need(a.n, "--n", op);
        IntegralOptions io;
        io.tol = parse_tol(a.tol);
        io.floor = fl;
        std::vector<CountReport> out;
        for (auto& id : integral_identities(n, io)) {
            CountReport r = base(op, n);
            r.param("range", id.label);
            r.form = id.closed_form;
            r.interval = id.closed_interval;
            r.value = id.closed_interval.lo_decimal();
            r.route_a = id.closed_interval.lo_decimal() + ".." + id.closed_interval.hi_decimal();
            r.route_b = id.oracle.value.lo_decimal() + ".." + id.oracle.value.hi_decimal();
            r.verified = id.overlap;
            out.push_back(std::move(r));
        }
        return out;
    }
    if (op == "bounds") {
        long n = need(a.n, "--n", op);
        std::vector<CountReport> out;
        CountReport head = base(op, n);
        head.param("m_max", std::to_string(a.m_max));
        BoundsChain ch;
        try {
            ch = chain_check(n, a.m_max, fl);
            head.verified = true;
            head.value = "chain holds";
        } catch (const InvariantViolation& e) {
            head.value = "chain violated";
            head.detail = e.what();
            return {head};
        }
        head.form = ch.frac;
        head.interval = eform_eval(ch.frac, bits);
        head.detail = "{e n!}";
        out.push_back(head);
        for (long m = 1; m <= a.m_max + 2; ++m) {
            CountReport r = base("M", n);
            r.param("m", std::to_string(m));
            r.value = to_string(ch.upper_bounds[static_cast<std::size_t>(m - 1)]);
            r.verified = true;
            out.push_back(std::move(r));
        }
        for (long m = 1; m <= a.m_max; ++m) {
            CountReport r = base("N", n);
            r.param("m", std::to_string(m));
            r.form = ch.lower_bounds[static_cast<std::size_t>(m - 1)];
            r.interval = eform_eval(*r.form, bits);
            r.value = r.interval->lo_decimal();
            r.verified = true;
            out.push_back(std::move(r));
        }
        CountReport dev = base("deviation", n);
        dev.form = ch.deviation;
        dev.interval = eform_eval(ch.deviation, bits);
        dev.value = dev.interval->lo_decimal();
        dev.verified = true;
        dev.detail = "|n!/e - D_n|";
        out.push_back(std::move(dev));
        return out;
    }
    throw UsageError("unknown op: " + op);
}

void emit(std::ostream& os, const std::vector<CountReport>& reports, const std::string& format)
{
    if (format == "json") {
        if (reports.size() == 1) {
            os << to_json(reports.front()).dump(2) << "\n";
        } else {
            Json arr = Json::array();
            for (const auto& r : reports)
                arr.push_back(to_json(r));
            os << arr.dump(2) << "\n";
        }
        return;
    }
    for (std::size_t i = 0; i < reports.size(); ++i)
        os << (i ? "\n" : "") << to_text(reports[i]);
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite;
    std::string n_range, m_range;
    long precision_bits = 64;
    std::string tol = "1/1000000000";
    std::optional<std::string> lambda;
    std::string format = "text";
    std::string out;
    unsigned jobs = 0;
    bool verbose = false;
    bool timing = false;
};

std::string describe_check(const CountReport& c)
{
    std::string s = c.op;
    for (const auto& [k, v] : c.params)
        s += " " + k + "=" + v;
    if (c.route_a)
        s += " route_a=" + *c.route_a;
    if (c.route_b)
        s += " route_b=" + *c.route_b;
    if (!c.detail.empty())
        s += " (" + c.detail + ")";
    return s;
}

int run_verify(const VerifyArgs& a, const FloorOptions& fl)
{
    VerifyOptions o;
    if (!a.n_range.empty())
        o.n_range = parse_range_arg(a.n_range, "--n-range");
    if (!a.m_range.empty())
        o.m_range = parse_range_arg(a.m_range, "--m-range");
    o.precision_bits = a.precision_bits;
    o.tol = parse_tol(a.tol);
    require_domain(o.tol > 0, "--tol must be > 0");
    if (a.lambda)
        o.lambda = parse_rat_arg(*a.lambda, "--lambda");
    o.jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
    o.floor = fl;

    auto t0 = Clock::now();
    auto results = run_suite(a.suite, o);
    long elapsed = ms_since(t0);

    long total = 0, failed = 0;
    Json suites = Json::array();
    for (const auto& s : results) {
        total += static_cast<long>(s.checks.size());
        failed += s.failures();
        Json checks = Json::array();
        for (const auto& c : s.checks)
            checks.push_back(to_json(c));
        Json js;
        js["suite"] = s.suite;
        js["checks"] = std::move(checks);
        js["summary"] = {{"checks", s.checks.size()},
                         {"passed", static_cast<long>(s.checks.size()) - s.failures()},
                         {"failed", s.failures()}};
        suites.push_back(std::move(js));
    }
    Json report;
    report["suites"] = std::move(suites);
    report["summary"] = {{"checks", total}, {"passed", total - failed}, {"failed", failed}};
    if (a.timing)
        report["summary"]["elapsed_ms"] = elapsed;

    if (!a.out.empty()) {
        std::ofstream f(a.out);
        if (!f)
            throw UsageError("--out: cannot open " + a.out);
        f << report.dump(2) << "\n";
    }

    if (a.format == "json") {
        std::cout << report.dump(2) << "\n";
    } else {
        for (const auto& s : results) {
            if (a.verbose)
                for (const auto& c : s.checks)
                    std::cout << (c.verified ? "pass " : "FAIL ") << describe_check(c) << "\n";
            long f = s.failures();
            std::cout << s.suite << ": " << s.checks.size() << " checks, " << s.checks.size() - static_cast<std::size_t>(f)
                      << " passed, " << f << " failed\n";
            if (const CountReport* first = s.first_failure())
                std::cout << "  first counterexample: " << describe_check(*first) << "\n";
        }
        std::cout << "total: " << total << " checks, " << total - failed << " passed, " << failed << " failed";
        if (a.timing)
            std::cout << " in " << elapsed << " ms";
        std::cout << "\n";
    }
    if (failed > 0) {
        for (const auto& s : results)
            if (const CountReport* first = s.first_failure()) {
                std::cerr << "identity violated: " << s.suite << ": " << describe_check(*first) << "\n";
                break;
            }
        return kExitViolation;
    }
    return kExitOk;
}

// ---------------------------------------------------------------- table

struct TableArgs {
    std::string quantity;
    std::string n_range;
    std::optional<long> n;
    std::string m_range = "1..8";
    long precision_bits = 64;
    std::string format = "csv";
};

const std::vector<std::string> kTableQuantities = {
    "derangements", "paths", "path-length-sum", "cycles", "cycle-length-sum", "avg-path-length",
    "floor-e-nfact", "frac-e-nfact", "bounds"};

using Row = std::vector<std::string>;

void print_table(std::ostream& os, const Row& header, const std::vector<Row>& rows, const std::string& format)
{
    if (format == "csv") {
        os << join(header, ",") << "\n";
        for (const auto& r : rows)
            os << join(r, ",") << "\n";
    } else if (format == "md") {
        os << "| " << join(header, " | ") << " |\n|";
        for (std::size_t i = 0; i < header.size(); ++i)
            os << " --- |";
        os << "\n";
        for (const auto& r : rows)
            os << "| " << join(r, " | ") << " |\n";
    } else {
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json obj;
            for (std::size_t i = 0; i < header.size(); ++i) {
                // Row indices stay numbers; everything else is a string.
                if (i == 0)
                    obj[header[i]] = std::stol(r[i]);
                else
                    obj[header[i]] = r[i];
            }
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << "\n";
    }
}

int run_table(const TableArgs& a, const FloorOptions& fl)
{
    Row header;
    std::vector<Row> rows;
    if (a.quantity == "bounds") {
        if (!a.n)
            throw UsageError("table bounds requires --n");
        Range mr = parse_range_arg(a.m_range, "--m-range");
        require_domain(mr.lo >= 1 && mr.lo <= mr.hi, "--m-range must satisfy 1 <= lo <= hi");
        long n = *a.n;
        require_domain(n >= 1, "bounds: n must be >= 1, got " + std::to_string(n));
        header = {"m", "M", "M_lo", "N_lo", "N_hi"};
        for (long m = mr.lo; m <= mr.hi; ++m) {
            Rat M = bound_M(n, m);
            auto Miv = IntervalReal::point(M, a.precision_bits);
            auto Niv = eform_eval(bound_N(n, m), a.precision_bits);
            rows.push_back({std::to_string(m), to_string(M), Miv.lo_decimal(), Niv.lo_decimal(), Niv.hi_decimal()});
        }
        print_table(std::cout, header, rows, a.format);
        return kExitOk;
    }
    if (a.n_range.empty())
        throw UsageError("table " + a.quantity + " requires --n-range");
    Range r = parse_range_arg(a.n_range, "--n-range");
    require_domain(r.lo <= r.hi, "--n-range must satisfy lo <= hi");
    const std::string& q = a.quantity;
    if (q == "frac-e-nfact")
        header = {"n", "lo", "hi", "bracket_lo", "bracket_hi"};
    else
        header = {"n", "value"};
    for (long n = r.lo; n <= r.hi; ++n) {
        if (q == "derangements") {
            require_domain(n >= 0, "derangements: n must be >= 0, got " + std::to_string(n));
            rows.push_back({std::to_string(n), to_string(derangements(n))});
        } else if (q == "paths") {
            rows.push_back({std::to_string(n), to_string(path_count(n, fl))});
        } else if (q == "path-length-sum") {
            rows.push_back({std::to_string(n), to_string(path_length_sum(n, fl))});
        } else if (q == "cycles") {
            rows.push_back({std::to_string(n), to_string(cycle_count(n, fl))});
        } else if (q == "cycle-length-sum") {
            rows.push_back({std::to_string(n), to_string(cycle_length_sum(n, fl))});
        } else if (q == "avg-path-length") {
            rows.push_back({std::to_string(n), to_string(average_path_length(n, fl))});
        } else if (q == "floor-e-nfact") {
            require_domain(n >= 1, "floor-e-nfact: n must be >= 1, got " + std::to_string(n));
            rows.push_back({std::to_string(n), to_string(certified_floor(EForm(0, Rat(factorial(n)), 0), fl))});
        } else if (q == "frac-e-nfact") {
            auto iv = eform_eval(frac_e_nfact(n), a.precision_bits);
            rows.push_back({std::to_string(n), iv.lo_decimal(), iv.hi_decimal(), to_string(make_rat(1, n + 1)),
                            to_string(make_rat(1, n))});
        } else {
            throw UsageError("unknown quantity: " + q);
        }
    }
    print_table(std::cout, header, rows, a.format);
    return kExitOk;
}

// ---------------------------------------------------------------- bench

int run_bench(long n_max, int repeat, const std::string& format, const FloorOptions& fl)
{
    require_domain(n_max >= 1, "--n-max must be >= 1");
    require_domain(repeat >= 1, "--repeat must be >= 1");
    using us = std::chrono::microseconds;
    Json rows = Json::array();
    long exact_total = 0, cert_total = 0;
    if (format == "text")
        std::cout << "n,log2_nfact,bits,exact_us,certified_us\n";
    for (long n = 1; n <= n_max; ++n) {
        BigInt exact, cert;
        FloorResult fr;
        auto t0 = Clock::now();
        for (int i = 0; i < repeat; ++i)
            exact = partial_sum_pos(n);
        long te = static_cast<long>(std::chrono::duration_cast<us>(Clock::now() - t0).count());
        t0 = Clock::now();
        for (int i = 0; i < repeat; ++i)
            fr = certified_floor_detailed(EForm(0, Rat(factorial(n)), 0), fl);
        long tc = static_cast<long>(std::chrono::duration_cast<us>(Clock::now() - t0).count());
        if (fr.value != exact)
            throw InvariantViolation("bench: certified floor differs from exact sum at n=" + std::to_string(n));
        exact_total += te;
        cert_total += tc;
        long log2f = static_cast<long>(bit_length(factorial(n))) - 1;
        if (format == "text")
            std::cout << n << "," << log2f << "," << fr.precision_bits << "," << te << "," << tc << "\n";
        else
            rows.push_back({{"n", n}, {"log2_nfact", log2f}, {"bits", fr.precision_bits}, {"exact_us", te},
                            {"certified_us", tc}});
    }
    double ratio = exact_total > 0 ? static_cast<double>(cert_total) / static_cast<double>(exact_total) : 0.0;
    if (format == "text") {
        std::cout << "total exact_us=" << exact_total << " certified_us=" << cert_total << " ratio=" << ratio << "\n";
    } else {
        Json j;
        j["rows"] = std::move(rows);
        j["summary"] = {{"exact_us", exact_total}, {"certified_us", cert_total}, {"ratio", ratio}};
        std::cout << j.dump(2) << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact counts and certified floors of a + b e + c/e"};
    app.require_subcommand(1);

    ComputeArgs ca;
    auto* compute = app.add_subcommand("compute", "Compute one quantity");
    compute->add_option("op", ca.op, "Quantity: " + join(kComputeOps, ", "))->required();
    compute->add_option("--n", ca.n, "n");
    compute->add_option("--m", ca.m, "m (eq5, thm7)");
    compute->add_option("--x", ca.x, "Rational argument p/q or integer");
    compute->add_option("--z", ca.z, "Lower limit for inc-gamma");
    compute->add_option("--lambda", ca.lambda, "Shift for the lambda formula");
    compute->add_option("--sign", ca.sign, "hyp2f0 special value at x = sign (+1 or -1)");
    compute->add_option("--precision-bits", ca.precision_bits, "Bits for displayed intervals")->capture_default_str();
    compute->add_option("--tol", ca.tol, "Quadrature tolerance (p/q or 1e-K)")->capture_default_str();
    compute->add_option("--m-max", ca.m_max, "Largest m for bounds")->capture_default_str();
    compute->add_option("--format", ca.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    compute->add_flag("--timing", ca.timing, "Attach elapsed_ms to each report");

    VerifyArgs va;
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", va.suite, "Suite: " + join(suites, ", "))->required()->check(CLI::IsMember(suites));
    verify->add_option("--n-range", va.n_range, "a..b");
    verify->add_option("--m-range", va.m_range, "a..b");
    verify->add_option("--precision-bits", va.precision_bits)->capture_default_str();
    verify->add_option("--tol", va.tol)->capture_default_str();
    verify->add_option("--lambda", va.lambda, "Use only this lambda in the lambda formula");
    verify->add_option("--format", va.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    verify->add_option("--out", va.out, "Also write the JSON report here");
    verify->add_option("--jobs", va.jobs, "Worker threads (0 = hardware)")->capture_default_str();
    verify->add_flag("--verbose", va.verbose, "Print every check");
    verify->add_flag("--timing", va.timing, "Report elapsed time in the summary");

    TableArgs ta;
    auto* table = app.add_subcommand("table", "Emit a table of values");
    table->add_option("quantity", ta.quantity, "Quantity: " + join(kTableQuantities, ", "))->required();
    table->add_option("--n-range", ta.n_range, "a..b");
    table->add_option("--n", ta.n, "n (bounds)");
    table->add_option("--m-range", ta.m_range, "a..b (bounds)")->capture_default_str();
    table->add_option("--precision-bits", ta.precision_bits)->capture_default_str();
    table->add_option("--format", ta.format)->check(CLI::IsMember({"csv", "json", "md"}))->capture_default_str();

    long n_max = 200;
    int repeat = 3;
    std::string bench_format = "text";
    auto* bench = app.add_subcommand("bench", "Time exact sums against certified floors");
    bench->add_option("--n-max", n_max)->capture_default_str();
    bench->add_option("--repeat", repeat)->capture_default_str();
    bench->add_option("--format", bench_format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        FloorOptions fl = floor_options_from_env();
        if (*compute) {
            if (std::find(kComputeOps.begin(), kComputeOps.end(), ca.op) == kComputeOps.end())
                throw UsageError("unknown op: " + ca.op + " (expected one of " + join(kComputeOps, ", ") + ")");
            auto t0 = Clock::now();
            auto reports = run_compute(ca, fl);
            if (ca.timing) {
                long ms = ms_since(t0);
                for (auto& r : reports)
                    r.elapsed_ms = ms;
            }
            emit(std::cout, reports, ca.format);
            return kExitOk;
        }
        if (*verify)
            return run_verify(va, fl);
        if (*table) {
            if (std::find(kTableQuantities.begin(), kTableQuantities.end(), ta.quantity) == kTableQuantities.end())
                throw UsageError("unknown quantity: " + ta.quantity + " (expected one of " +
                                 join(kTableQuantities, ", ") + ")");
            return run_table(ta, fl);
        }
        if (*bench)
            return run_bench(n_max, repeat, bench_format, fl);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const InvariantViolation& e) {
        std::cerr << "identity violated: " << e.what() << "\n";
        return kExitViolation;
    } catch (const UndecidableError& e) {
        std::cerr << "undecidable: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
