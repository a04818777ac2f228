#pragma once

// JSON shapes for results. BigInts are decimal strings, rationals "p/q",
// EForms [a, b, c] triples and intervals {"interval": [lo, hi], "precision_bits": p}.
// ordered_json keeps key order stable so output is byte-identical across runs.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "certified.hpp"
#include "counts.hpp"
#include "interval.hpp"

namespace ecount {

using Json = nlohmann::ordered_json;

inline Json to_json(const BigInt& v) { return to_string(v); }
inline Json to_json(const Rat& q) { return to_string(q); }
inline Json to_json(const EForm& f) { return Json::array({to_string(f.a), to_string(f.b), to_string(f.c)}); }

inline Json to_json(const IntervalReal& iv)
{
    Json j;
    j["interval"] = Json::array({iv.lo_decimal(), iv.hi_decimal()});
    j["precision_bits"] = iv.precision_bits();
    return j;
}

struct CountReport {
    std::string op;
    std::vector<std::pair<std::string, std::string>> params;
    std::string value;
    std::optional<EForm> form;
    std::optional<IntervalReal> interval;
    bool verified = false;
    std::optional<std::string> route_a;
    std::optional<std::string> route_b;
    std::string detail;
    std::optional<long> elapsed_ms;

    CountReport& param(std::string key, std::string v)
    {
        params.emplace_back(std::move(key), std::move(v));
        return *this;
    }

    /// Exact dual route: verified iff both strings agree.
    CountReport& routes(const std::string& a, const std::string& b)
    {
        route_a = a;
        route_b = b;
        verified = a == b;
        return *this;
    }
};

inline Json to_json(const CountReport& r)
{
    Json j;
    j["op"] = r.op;
    Json p = Json::object();
    for (const auto& [k, v] : r.params)
        p[k] = v;
    j["params"] = std::move(p);
    j["value"] = r.value;
    if (r.form)
        j["eform"] = to_json(*r.form);
    if (r.interval) {
        Json iv = to_json(*r.interval);
        j["interval"] = iv["interval"];
        j["precision_bits"] = iv["precision_bits"];
    }
    j["verified"] = r.verified;
    if (r.route_a)
        j["route_a"] = *r.route_a;
    if (r.route_b)
        j["route_b"] = *r.route_b;
    if (!r.detail.empty())
        j["detail"] = r.detail;
    if (r.elapsed_ms)
        j["elapsed_ms"] = *r.elapsed_ms;
    return j;
}

inline Json to_json(const BoundsChain& ch)
{
    Json j;
    j["n"] = ch.n;
    j["m_max"] = ch.m_max;
    j["deviation"] = to_json(ch.deviation);
    j["frac"] = to_json(ch.frac);
    Json lower = Json::array();
    for (const auto& f : ch.lower_bounds)
        lower.push_back(to_json(f));
    Json upper = Json::array();
    for (const auto& q : ch.upper_bounds)
        upper.push_back(to_json(q));
    j["N"] = std::move(lower);
    j["M"] = std::move(upper);
    return j;
}

/// Plain "key: value" rendering, one field per line.
inline std::string to_text(const CountReport& r)
{
    std::string out = "op: " + r.op + "\n";
    for (const auto& [k, v] : r.params)
        out += "  " + k + " = " + v + "\n";
    out += "value: " + r.value + "\n";
    if (r.form)
        out += "eform: " + describe(*r.form) + "\n";
    if (r.interval)
        out += "interval: [" + r.interval->lo_decimal() + ", " + r.interval->hi_decimal() + "] (" +
               std::to_string(r.interval->precision_bits()) + " bits)\n";
    out += std::string("verified: ") + (r.verified ? "true" : "false") + "\n";
    if (r.route_a)
        out += "route_a: " + *r.route_a + "\n";
    if (r.route_b)
        out += "route_b: " + *r.route_b + "\n";
    if (!r.detail.empty())
        out += "detail: " + r.detail + "\n";
    if (r.elapsed_ms)
        out += "elapsed_ms: " + std::to_string(*r.elapsed_ms) + "\n";
    return out;
}

} // namespace ecount
