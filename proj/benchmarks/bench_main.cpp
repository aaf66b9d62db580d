#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "pmod/carnot.hpp"
#include "pmod/numerics.hpp"
#include "pmod/oracle.hpp"
#include "pmod/planar.hpp"
#include "pmod/rodin.hpp"

using std::numbers::pi;

static void BM_Integrate1d(benchmark::State& state) {
    for (auto _ : state) {
        auto r = pmod::numerics::integrate_1d([](double a) { return std::sqrt(std::cos(a)); },
                                              -pi / 2, pi / 2, 1e-12);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_Integrate1d);

static void BM_SphericalRingModule(benchmark::State& state) {
    const auto s = pmod::rodin::make_scenario("spherical_ring", {{"n", 3}, {"p", 3}, {"b", 2.0}});
    for (auto _ : state) benchmark::DoNotOptimize(pmod::rodin::module_connecting(s.condenser, s.map, 3.0).value);
}
BENCHMARK(BM_SphericalRingModule)->Unit(benchmark::kMillisecond);

static void BM_RingBounds(benchmark::State& state) {
    const auto f = pmod::planar::make_map("radial-perturbation", {{"eps", 0.3}});
    for (auto _ : state) benchmark::DoNotOptimize(pmod::planar::ring_module_bounds(f, 2.0).upper);
}
BENCHMARK(BM_RingBounds)->Unit(benchmark::kMillisecond);

static void BM_HeisenbergCS1(benchmark::State& state) {
    const auto H = pmod::carnot::GroupSpec::heisenberg();
    for (auto _ : state) benchmark::DoNotOptimize(pmod::carnot::c_s1_quadrature(H, 3.0));
}
BENCHMARK(BM_HeisenbergCS1)->Unit(benchmark::kMillisecond);

static void BM_TwistModule(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pmod::carnot::twist::module(2.0, 1 + pi / 4).value);
}
BENCHMARK(BM_TwistModule)->Unit(benchmark::kMillisecond);

static void BM_RadialFlow(benchmark::State& state) {
    const auto H = pmod::carnot::GroupSpec::heisenberg();
    const pmod::carnot::SpherePoint xi{{0.3, 0.7}};
    for (auto _ : state) benchmark::DoNotOptimize(pmod::carnot::radial_flow(H, xi, 2.0).end);
}
BENCHMARK(BM_RadialFlow);

static void BM_OracleRectangle(benchmark::State& state) {
    const auto R = pmod::oracle::rectangle(1.0, 2.0);
    const auto g = pmod::oracle::make_grid(R, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            pmod::oracle::solve_modulus(g, pmod::oracle::DiscreteFamily::connecting(R), 2.0).value);
}
BENCHMARK(BM_OracleRectangle)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_OracleAnnulus(benchmark::State& state) {
    const auto R = pmod::oracle::annulus(1.0, 2.0);
    const auto g = pmod::oracle::make_grid(R, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            pmod::oracle::solve_modulus(g, pmod::oracle::DiscreteFamily::connecting(R), 2.0).value);
}
BENCHMARK(BM_OracleAnnulus)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
