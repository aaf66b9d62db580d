#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "pmod/scenario.hpp"

namespace pmod::scenario::detail {

class Ctx {
public:
    Ctx(RunReport& r, const Settings& s) : report(r), settings_(s) {}

    bool want(Level l) const { return settings_.level == Level::all || settings_.level == l; }
    double param(const std::string& key) const;
    int iparam(const std::string& key) const;

    void equal(const std::string& name, double expected, double computed, double tol, Level lvl,
               Source src, const std::string& ref, bool relative = true);
    /// computed <= bound
    void at_most(const std::string& name, double computed, double bound, double tol, Level lvl,
                 Source src, const std::string& ref, bool relative = true);
    /// computed >= bound
    void at_least(const std::string& name, double computed, double bound, double tol, Level lvl,
                  Source src, const std::string& ref, bool relative = true);
    void metric(const std::string& name, double v) { report.metrics.emplace_back(name, v); }

    RunReport& report;

private:
    void add(Check c);
    const Settings& settings_;
};

using Body = std::function<void(Ctx&)>;

struct Entry {
    std::string name;
    Params defaults;
    Body body;
};

void register_planar(std::vector<Entry>& out);
void register_space(std::vector<Entry>& out);
void register_properties(std::vector<Entry>& out);

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace pmod::scenario::detail
