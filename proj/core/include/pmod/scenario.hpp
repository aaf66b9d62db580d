#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pmod::scenario {

enum class Level { closed_form, quadrature, oracle, all };
enum class Relation { equal, le, ge };
/// Where an expected value comes from: a printed formula, an independent
/// computation, or an identity that holds by construction.
enum class Source { published, derived, trivial };

const char* to_string(Level l);
const char* to_string(Relation r);
const char* to_string(Source s);
Level parse_level(const std::string& s);

struct Check {
    std::string name;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool relative = true;
    Relation relation = Relation::equal;
    bool pass = false;
    Source source = Source::derived;
    std::string reference;
    Level level = Level::quadrature;

    /// Signed distance used for the verdict, in units of the tolerance scale.
    double deviation() const;
};

using Params = std::map<std::string, double>;

struct RunReport {
    std::string scenario;
    Params params;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> metrics;  ///< informational values
    double elapsed_ms = 0.0;

    bool passed() const;
    std::size_t failures() const;
    void append(const RunReport& other);
};

struct Settings {
    /// When set, replaces the tolerance of every check.
    std::optional<double> tolerance;
    Level level = Level::all;
};

/// Re-evaluates `pass` from expected, computed, tolerance and relation.
void evaluate(Check& c);

std::vector<std::string> scenario_names();
/// Default parameter table of a scenario.
Params default_params(const std::string& name);
RunReport run_scenario(const std::string& name, const Params& overrides, const Settings& s = {});

std::vector<std::string> suite_names();
RunReport run_suite(const std::string& name, const Settings& s = {});

}  // namespace pmod::scenario
