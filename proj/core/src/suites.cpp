#include <cmath>
#include <numbers>
#include <sstream>

#include "pmod/errors.hpp"
#include "pmod/scenario.hpp"

namespace pmod::scenario {

namespace {

struct Run {
    std::string scenario;
    Params overrides;
};

std::vector<Run> suite_runs(const std::string& name) {
    const double e = std::exp(1.0);
    const double pi = std::numbers::pi;
    if (name == "duality")
        return {{"annulus", {}},
                {"parallelogram", {}},
                {"cylinder", {}},
                {"scaled-cylinder", {}},
                {"shear-cylinder", {}},
                {"shear-cylinder", {{"p", 3}, {"beta", 0.5}}},
                {"spherical-ring", {}},
                {"spherical-ring", {{"p", 3}}},
                {"heisenberg-ring", {{"p", 2}, {"b", 2.0}}},
                {"heisenberg-ring", {}},
                {"euclidean-ring", {}},
                {"oracle-refinement", {}}};
    if (name == "monotonicity") {
        std::vector<Run> r = {{"oracle-monotonicity", {}},
                              {"parallelogram-rate", {}},
                              {"conical-cylinder", {}},
                              {"heisenberg-twist", {{"p", 2}}},
                              {"heisenberg-twist", {{"p", 4}}}};
        for (double p : {2.0, 3.0})
            for (double n : {2.0, 3.0})
                for (double rr : {2.0, e, 3.0}) r.push_back({"twist-inequality", {{"p", p}, {"n", n}, {"r", rr}}});
        return r;
    }
    if (name == "extremality")
        return {{"extremality-catalog", {}},
                {"shear-cylinder", {}},
                {"spherical-ring", {{"n", 2}}},
                {"conical-cylinder", {}}};
    if (name == "carnot")
        return {{"carnot-constants", {}},
                {"heisenberg-ring", {{"p", 2}, {"b", 2.0}}},
                {"heisenberg-ring", {{"p", 4}, {"b", e}}},
                {"euclidean-ring", {{"p", 2}}},
                {"euclidean-ring", {{"p", 3}}},
                {"heisenberg-flow", {}},
                {"heisenberg-flow", {{"theta", 1.0}, {"alpha", -pi / 3}, {"s1", 0.5}}},
                {"heisenberg-twist", {{"p", 2}}},
                {"heisenberg-twist", {{"p", 4}}}};
    if (name == "core") return {{"core-invariants", {}}, {"oracle-refinement", {}}};
    if (name == "all") {
        std::vector<Run> r;
        for (const auto& s : scenario_names()) r.push_back({s, {}});
        for (double beta : {0.0, 0.5, 2.0}) r.push_back({"log-spiral", {{"beta", beta}}});
        for (const char* s : {"duality", "monotonicity", "extremality", "carnot"})
            for (auto& x : suite_runs(s))
                if (!x.overrides.empty()) r.push_back(x);
        return r;
    }
    throw UnknownScenario("unknown suite: " + name);
}

std::string label(const Run& r) {
    if (r.overrides.empty()) return r.scenario;
    std::ostringstream os;
    os << r.scenario << '[';
    bool first = true;
    for (const auto& [k, v] : r.overrides) {
        os << (first ? "" : ",") << k << '=' << v;
        first = false;
    }
    os << ']';
    return os.str();
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"duality", "monotonicity", "extremality", "carnot", "core", "all"};
}

RunReport run_suite(const std::string& name, const Settings& s) {
    const auto runs = suite_runs(name);
    RunReport out;
    out.scenario = name;
    for (const auto& r : runs) {
        RunReport one;
        try {
            one = run_scenario(r.scenario, r.overrides, s);
        } catch (const Error& e) {
            one.scenario = r.scenario;
            Check c;
            c.name = std::string("error: ") + e.what();
            c.computed = std::nan("");
            c.pass = false;
            one.checks.push_back(c);
        }
        one.scenario = label(r);
        out.append(one);
    }
    return out;
}

}  // namespace pmod::scenario
