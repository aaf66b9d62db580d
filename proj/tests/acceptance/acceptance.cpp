// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "pmod/errors.hpp"
#include "pmod/scenario.hpp"

namespace sc = pmod::scenario;

namespace {

struct Outcome {
    bool pass = true;
    std::size_t checks = 0;
    std::vector<std::string> notes;

    void take(const sc::RunReport& r) {
        checks += r.checks.size();
        for (const auto& c : r.checks) {
            if (c.pass) continue;
            pass = false;
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s: %s expected %.12g computed %.12g tol %.3g",
                          r.scenario.c_str(), c.name.c_str(), c.expected, c.computed, c.tolerance);
            notes.emplace_back(buf);
        }
    }
    void run(const std::string& name, const sc::Params& p = {}) {
        try {
            take(sc::run_scenario(name, p));
        } catch (const std::exception& e) {
            pass = false;
            notes.push_back(name + ": " + e.what());
        }
    }
    void require(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

using Criterion = std::pair<std::string, std::function<void(Outcome&)>>;

}  // namespace

int main() {
    const double pi = std::numbers::pi;
    const double e = std::exp(1.0);
    const std::vector<Criterion> criteria = {
        {"rectangle module a/b: quadrature 1e-10, 200x400 oracle within 2% in under 30 s",
         [](Outcome& o) { o.run("rectangle", {{"a", 1}, {"b", 2}, {"p", 2}, {"nx", 200}}); }},
        {"parallelogram: slant module, separating bracket, eps-rate for P(0.2)",
         [pi](Outcome& o) {
             o.run("parallelogram", {{"theta", pi / 3}, {"h", 1}});
             o.run("parallelogram-rate", {{"eps", 0.2}, {"b", 1}});
         }},
        {"annulus and log-spirals: 2 pi/log b, log b/(2 pi), product 1, spiral formula",
         [](Outcome& o) {
             o.run("annulus", {{"b", 2}});
             for (double beta : {0.0, 0.5, 1.0, 2.0}) o.run("log-spiral", {{"beta", beta}});
         }},
        {"ring bounds: lower <= oracle <= upper for non-conformal maps",
         [](Outcome& o) {
             for (const char* s : {"ring-bounds-affine", "ring-bounds-radial-perturbation",
                                   "ring-bounds-angular-shear", "ring-bounds-log-spiral"})
                 o.run(s);
         }},
        {"Euclidean condensers: closed forms 1e-8, shear duality product, twist inequalities",
         [e](Outcome& o) {
             o.run("cylinder");
             o.run("shear-cylinder");
             o.run("shear-cylinder", {{"p", 3}, {"n", 3}, {"beta", 0.5}});
             o.run("scaled-cylinder");
             o.run("spherical-ring", {{"n", 3}, {"p", 2}});
             o.run("spherical-ring", {{"n", 3}, {"p", 3}});
             o.run("spherical-ring", {{"n", 2}, {"p", 2}});
             o.run("sphere-log-twist", {{"n", 3}, {"p", 2}});
             o.run("sphere-log-twist", {{"n", 2}, {"p", 3}});
             o.run("sphere-twist", {{"n", 2}, {"p", 2}});
             for (double p : {2.0, 3.0})
                 for (double n : {2.0, 3.0})
                     for (double r : {2.0, e, 3.0}) o.run("twist-inequality", {{"p", p}, {"n", n}, {"r", r}});
         }},
        {"Carnot rings: M_4 = pi^2/(log b)^3, C_S1, sphere area, duality items, capacity",
         [e](Outcome& o) {
             o.run("heisenberg-ring", {{"p", 4}, {"b", e}});
             o.run("heisenberg-ring", {{"p", 2}, {"b", 2}});
             o.run("euclidean-ring", {{"n", 3}, {"p", 2}});
             o.run("euclidean-ring", {{"n", 3}, {"p", 3}});
             o.run("carnot-constants");
         }},
        {"Heisenberg flow and twist: ODE vs closed form, N = s, speed, horizontality, rho0, M_p bound",
         [pi](Outcome& o) {
             o.run("heisenberg-flow");
             o.run("heisenberg-flow", {{"theta", 2.0}, {"alpha", -1.0}, {"s1", 0.3}});
             o.run("heisenberg-twist", {{"p", 2}, {"b", 1 + pi / 4}});
             o.run("heisenberg-twist", {{"p", 4}, {"b", 1 + pi / 4}});
         }},
        {"property suites: invariants, monotonicity, extremality; full suite within 10 min",
         [](Outcome& o) {
             const auto t0 = std::chrono::steady_clock::now();
             for (const char* s : {"core", "monotonicity", "extremality", "duality", "carnot", "all"}) {
                 try {
                     o.take(sc::run_suite(s));
                 } catch (const std::exception& ex) {
                     o.require(false, std::string(s) + ": " + ex.what());
                 }
             }
             const double sec =
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
             o.require(sec <= 600.0, "suites took " + std::to_string(sec) + " s");
         }},
    };

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        criteria[i].second(o);
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %zu: %s [%zu checks, %.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), o.checks, sec);
        for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
