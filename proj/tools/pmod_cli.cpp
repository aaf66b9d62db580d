// Command line front end: named scenarios, invariant suites and the planar oracle.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmod/errors.hpp"
#include "pmod/oracle.hpp"
#include "pmod/scenario.hpp"

namespace {

using json = nlohmann::json;
namespace sc = pmod::scenario;

json to_json(const sc::RunReport& r) {
    json j;
    j["scenario"] = r.scenario;
    j["params"] = r.params;
    j["elapsed_ms"] = r.elapsed_ms;
    j["passed"] = r.passed();
    j["failures"] = r.failures();
    j["checks"] = json::array();
    for (const auto& c : r.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"expected", c.expected},
                               {"computed", c.computed},
                               {"tolerance", c.tolerance},
                               {"relative", c.relative},
                               {"relation", sc::to_string(c.relation)},
                               {"pass", c.pass},
                               {"source", sc::to_string(c.source)},
                               {"reference", c.reference},
                               {"level", sc::to_string(c.level)}});
    }
    json m = json::array();
    for (const auto& [k, v] : r.metrics) m.push_back({{"name", k}, {"value", v}});
    j["metrics"] = m;
    return j;
}

std::string num(double v) {
    if (!std::isfinite(v)) return "";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void write_csv(std::ostream& os, const sc::RunReport& r) {
    os << "parameter,value,lower_bound,upper_bound\n";
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& c : r.checks) {
        const double scale = c.relative ? std::max(std::abs(c.expected), 1e-300) : 1.0;
        const double w = c.tolerance * scale;
        double lo = c.expected - w, hi = c.expected + w;
        if (c.relation == sc::Relation::le) lo = -inf;
        if (c.relation == sc::Relation::ge) hi = inf;
        os << quote(c.name) << ',' << num(c.computed) << ',' << num(lo) << ',' << num(hi) << '\n';
    }
    for (const auto& [k, v] : r.metrics) os << quote(k) << ',' << num(v) << ",,\n";
}

void emit(const sc::RunReport& r, const std::string& format, const std::string& path) {
    std::ofstream file;
    if (!path.empty()) {
        file.open(path);
        if (!file) throw pmod::Error("cannot open output file " + path);
    }
    std::ostream& os = path.empty() ? std::cout : file;
    if (format == "csv")
        write_csv(os, r);
    else
        os << to_json(r).dump(2) << '\n';
}

/// "--key value" pairs left over after CLI11 parsing.
sc::Params parse_pairs(const std::vector<std::string>& extras) {
    sc::Params p;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        std::string key = extras[i];
        if (key.rfind("--", 0) != 0) throw pmod::InvalidParameter("unexpected argument " + key);
        key = key.substr(2);
        std::string value;
        if (auto eq = key.find('='); eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else {
            if (i + 1 >= extras.size()) throw pmod::InvalidParameter("missing value for --" + key);
            value = extras[++i];
        }
        try {
            std::size_t used = 0;
            p[key] = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw pmod::InvalidParameter("parameter " + key + " needs a number, got " + value);
        }
    }
    return p;
}

sc::Params read_config(const std::string& path, std::string& scenario) {
    std::ifstream in(path);
    if (!in) throw pmod::Error("cannot read config " + path);
    const json j = json::parse(in);
    sc::Params p;
    if (j.contains("scenario") && scenario.empty()) scenario = j["scenario"].get<std::string>();
    const json& params = j.contains("params") ? j["params"] : j;
    for (const auto& [k, v] : params.items())
        if (v.is_number()) p[k] = v.get<double>();
    return p;
}

pmod::oracle::Region region_from(const std::string& kind, const sc::Params& P) {
    auto get = [&](const char* k, double d) {
        auto it = P.find(k);
        return it == P.end() ? d : it->second;
    };
    if (kind == "rectangle") return pmod::oracle::rectangle(get("a", 1.0), get("b", 1.0));
    if (kind == "annulus") return pmod::oracle::annulus(get("a", 1.0), get("b", 2.0));
    if (kind == "parallelogram") {
        if (P.count("theta")) return pmod::oracle::parallelogram_theta(get("theta", 1.0), get("h", 1.0));
        return pmod::oracle::parallelogram(get("eps", 0.0), get("b", 1.0));
    }
    throw pmod::UnknownScenario("unknown region " + kind);
}

int oracle_solve(const std::string& region_spec, const std::string& family, const std::string& format,
                 const std::string& path) {
    const auto colon = region_spec.find(':');
    const std::string kind = region_spec.substr(0, colon);
    sc::Params P;
    if (colon != std::string::npos) {
        std::vector<std::string> pairs;
        std::stringstream ss(region_spec.substr(colon + 1));
        for (std::string item; std::getline(ss, item, ',');) {
            if (item.empty()) continue;
            pairs.push_back("--" + item);
        }
        P = parse_pairs(pairs);
    }
    const auto R = region_from(kind, P);
    const int nx = static_cast<int>(P.count("nx") ? P.at("nx") : 100);
    const double p = P.count("p") ? P.at("p") : 2.0;
    pmod::oracle::OracleOptions opt;
    if (P.count("tol")) opt.tol = P.at("tol");
    if (P.count("stencil")) opt.stencil = static_cast<int>(P.at("stencil"));
    if (P.count("max_outer")) opt.max_outer = static_cast<int>(P.at("max_outer"));
    const auto grid = pmod::oracle::make_grid(R, nx);
    pmod::oracle::OracleResult res;
    if (family == "separating")
        res = pmod::oracle::separating_module_2d(grid, R, p, opt);
    else if (family == "connecting")
        res = pmod::oracle::solve_modulus(grid, pmod::oracle::DiscreteFamily::connecting(R), p, opt);
    else
        throw pmod::InvalidParameter("family must be connecting or separating");

    sc::RunReport r;
    r.scenario = "oracle:" + region_spec;
    r.params = P;
    r.metrics = {{"value", res.value},       {"lower", res.lower},
                 {"upper", res.upper},       {"gap", res.gap},
                 {"min_length", res.min_length},
                 {"iterations", static_cast<double>(res.iterations)},
                 {"constraints", static_cast<double>(res.constraints)},
                 {"converged", res.converged ? 1.0 : 0.0},
                 {"cells", static_cast<double>(grid.active_cells())}};
    emit(r, format, path);
    return res.converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-module toolbox"};
    app.require_subcommand(1);

    std::string format = "json", output, level = "all", config;
    std::optional<double> tolerance;
    if (const char* env = std::getenv("PMOD_TOLERANCE")) tolerance = std::stod(env);

    auto* scen = app.add_subcommand("scenario", "named scenarios");
    scen->require_subcommand(1);
    scen->add_subcommand("list", "print registered scenarios and their parameters");
    auto* run = scen->add_subcommand("run", "run one scenario");
    std::string name;
    run->add_option("name", name, "scenario name");
    run->add_option("--level", level, "closed_form, quadrature, oracle or all");
    run->add_option("--format", format, "json or csv");
    run->add_option("--output", output, "write the report here instead of stdout");
    run->add_option("--config", config, "JSON file with a params table");
    run->add_option("--tolerance", tolerance, "override every check tolerance");
    run->allow_extras();

    auto* suite = app.add_subcommand("suite", "run an invariant suite");
    std::string suite_name;
    suite->add_option("name", suite_name, "duality, monotonicity, extremality, carnot, core or all")
        ->required();
    suite->add_option("--level", level);
    suite->add_option("--format", format);
    suite->add_option("--output", output);
    suite->add_option("--tolerance", tolerance);

    auto* orc = app.add_subcommand("oracle", "discrete modulus solver");
    auto* solve = orc->add_subcommand("solve", "solve on a grid, e.g. rectangle:a=1,b=2,nx=200,p=2");
    orc->require_subcommand(1);
    std::string region_spec, family = "connecting";
    solve->add_option("region", region_spec)->required();
    solve->add_option("--family", family, "connecting or separating");
    solve->add_option("--format", format);
    solve->add_option("--output", output);

    CLI11_PARSE(app, argc, argv);

    try {
        if (format != "json" && format != "csv") throw pmod::InvalidParameter("format must be json or csv");
        sc::Settings settings;
        settings.tolerance = tolerance;
        settings.level = sc::parse_level(level);

        if (scen->got_subcommand("list")) {
            json j = json::object();
            for (const auto& s : sc::scenario_names()) j[s] = sc::default_params(s);
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        if (*run) {
            sc::Params overrides;
            if (!config.empty()) overrides = read_config(config, name);
            for (const auto& [k, v] : parse_pairs(run->remaining())) overrides[k] = v;
            if (name.empty()) throw pmod::InvalidParameter("no scenario name given");
            const auto report = sc::run_scenario(name, overrides, settings);
            emit(report, format, output);
            return report.passed() ? 0 : 1;
        }
        if (*suite) {
            const auto report = sc::run_suite(suite_name, settings);
            emit(report, format, output);
            return report.passed() ? 0 : 1;
        }
        if (*solve) return oracle_solve(region_spec, family, format, output);
    } catch (const std::exception& e) {
        std::cerr << "pmod: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
