#include "pmod/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pmod/errors.hpp"
#include "scenario_impl.hpp"

namespace pmod::scenario {

const char* to_string(Level l) {
    switch (l) {
        case Level::closed_form: return "closed_form";
        case Level::quadrature: return "quadrature";
        case Level::oracle: return "oracle";
        case Level::all: return "all";
    }
    return "?";
}

const char* to_string(Relation r) {
    switch (r) {
        case Relation::equal: return "eq";
        case Relation::le: return "le";
        case Relation::ge: return "ge";
    }
    return "?";
}

const char* to_string(Source s) {
    switch (s) {
        case Source::published: return "published";
        case Source::derived: return "derived";
        case Source::trivial: return "trivial";
    }
    return "?";
}

Level parse_level(const std::string& s) {
    if (s == "closed_form" || s == "closed-form") return Level::closed_form;
    if (s == "quadrature") return Level::quadrature;
    if (s == "oracle") return Level::oracle;
    if (s == "all") return Level::all;
    throw InvalidParameter("unknown verification level: " + s);
}

double Check::deviation() const {
    const double scale = relative ? std::max(std::abs(expected), 1e-300) : 1.0;
    const double d = (computed - expected) / scale;
    switch (relation) {
        case Relation::equal: return std::abs(d);
        case Relation::le: return d;
        case Relation::ge: return -d;
    }
    return d;
}

void evaluate(Check& c) {
    const double d = c.deviation();
    c.pass = std::isfinite(c.computed) && std::isfinite(d) && d <= c.tolerance;
}

bool RunReport::passed() const { return failures() == 0; }

std::size_t RunReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

void RunReport::append(const RunReport& other) {
    for (Check c : other.checks) {
        c.name = other.scenario + ": " + c.name;
        checks.push_back(std::move(c));
    }
    for (const auto& [k, v] : other.metrics) metrics.emplace_back(other.scenario + ": " + k, v);
    elapsed_ms += other.elapsed_ms;
}

namespace detail {

double Ctx::param(const std::string& key) const {
    auto it = report.params.find(key);
    if (it == report.params.end()) throw InvalidParameter("missing parameter: " + key);
    return it->second;
}

int Ctx::iparam(const std::string& key) const {
    const double v = param(key);
    if (v != std::round(v)) throw InvalidParameter("parameter " + key + " must be an integer");
    return static_cast<int>(v);
}

void Ctx::add(Check c) {
    if (settings_.tolerance) c.tolerance = *settings_.tolerance;
    evaluate(c);
    report.checks.push_back(std::move(c));
}

void Ctx::equal(const std::string& name, double expected, double computed, double tol, Level lvl,
                Source src, const std::string& ref, bool relative) {
    add(Check{name, expected, computed, tol, relative, Relation::equal, false, src, ref, lvl});
}

void Ctx::at_most(const std::string& name, double computed, double bound, double tol, Level lvl,
                  Source src, const std::string& ref, bool relative) {
    add(Check{name, bound, computed, tol, relative, Relation::le, false, src, ref, lvl});
}

void Ctx::at_least(const std::string& name, double computed, double bound, double tol, Level lvl,
                   Source src, const std::string& ref, bool relative) {
    add(Check{name, bound, computed, tol, relative, Relation::ge, false, src, ref, lvl});
}

}  // namespace detail

namespace {

const std::vector<detail::Entry>& registry() {
    static const std::vector<detail::Entry> r = [] {
        std::vector<detail::Entry> v;
        detail::register_planar(v);
        detail::register_space(v);
        detail::register_properties(v);
        return v;
    }();
    return r;
}

const detail::Entry& find(const std::string& name) {
    for (const auto& e : registry())
        if (e.name == name) return e;
    throw UnknownScenario("unknown scenario: " + name);
}

}  // namespace

std::vector<std::string> scenario_names() {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
}

Params default_params(const std::string& name) { return find(name).defaults; }

RunReport run_scenario(const std::string& name, const Params& overrides, const Settings& s) {
    const auto& e = find(name);
    RunReport r;
    r.scenario = name;
    r.params = e.defaults;
    for (const auto& [k, v] : overrides) {
        if (!r.params.count(k)) throw InvalidParameter("scenario " + name + " has no parameter " + k);
        r.params[k] = v;
    }
    const auto t0 = std::chrono::steady_clock::now();
    detail::Ctx ctx(r, s);
    e.body(ctx);
    r.elapsed_ms = 1e3 * detail::seconds_since(t0);
    return r;
}

}  // namespace pmod::scenario
