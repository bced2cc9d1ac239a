#include <benchmark/benchmark.h>

#include "hfinsler/curvature.hpp"
#include "hfinsler/rigidity.hpp"
#include "hfinsler/space_file.hpp"

using namespace hfinsler;

namespace {

Space gallery(const char* name) { return load_space(std::string(HFINSLER_GALLERY_DIR) + "/" + name + ".json"); }

Execution exec_of(const benchmark::State& state) {
    return state.range(1) ? Execution::parallel : Execution::serial;
}

void BM_GeodesicOrbit(benchmark::State& state) {
    const Space s = gallery("hyperbolic3-randers");
    const SampleOptions opt{static_cast<std::size_t>(state.range(0)), 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_geodesic_orbit(*s.decomposition, *s.norm, opt, 1e-8, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PositivityScan(benchmark::State& state) {
    const Space s = gallery("hyperbolic3-randers");
    const SampleOptions opt{static_cast<std::size_t>(state.range(0)), 1};
    Eigen::VectorXd u = Eigen::VectorXd::Unit(3, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bracket_positivity_scan(*s.decomposition, *s.norm, u, opt, 1e-8, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_IdealFlagScan(benchmark::State& state) {
    const Space s = gallery("heisenberg-quartic");
    const Subspace ideal = *find_abelian_ideal(*s.algebra);
    const SampleOptions opt{static_cast<std::size_t>(state.range(0)), 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(abelian_ideal_flag_scan(*s.decomposition, *s.norm, ideal, opt, 1e-8, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_QuarticAdmissibility(benchmark::State& state) {
    const Space s = gallery("heisenberg-quartic");
    const SampleOptions opt{static_cast<std::size_t>(state.range(0)), 1};
    for (auto _ : state) benchmark::DoNotOptimize(check_admissible(*s.norm, opt, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

// second argument: 0 = serial reference, 1 = OpenMP
BENCHMARK(BM_GeodesicOrbit)->ArgsProduct({{1000, 10000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PositivityScan)->ArgsProduct({{1000, 10000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdealFlagScan)->ArgsProduct({{1000, 10000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuarticAdmissibility)->ArgsProduct({{1000, 10000}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
