#include "support.hpp"

#include "flatdyn/foliation.hpp"
#include "flatdyn/kummer.hpp"
#include "flatdyn/parser.hpp"
#include "flatdyn/simulate.hpp"

#include <benchmark/benchmark.h>

using namespace flatdyn;

namespace {

void BM_SystoleRational(benchmark::State& state) {
    fixtures::Rng rng(1);
    std::vector<lattice::TorusLattice> sample;
    for (int i = 0; i < 16; ++i)
        sample.push_back(fixtures::random_lattice(rng));
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(lattice::systole(sample[i++ % sample.size()]));
}
BENCHMARK(BM_SystoleRational);

// Systole along the flow for an irrational lattice; larger s means a more
// skewed basis.
void BM_SystoleFlowed(benchmark::State& state) {
    auto moved = lattice::apply_geodesic(fixtures::pair_g(), lattice::FlowTime(AlgNum(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(lattice::systole(moved));
}
BENCHMARK(BM_SystoleFlowed)->RangeMultiplier(4)->Range(1, 256);

void BM_UniqueErgodicity(benchmark::State& state) {
    auto l = fixtures::divergent_ue();
    auto h = foliation::horizontal_plane(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(foliation::unique_ergodicity(l, h));
}
BENCHMARK(BM_UniqueErgodicity);

void BM_IntegerCovectorKernel(benchmark::State& state) {
    auto c = foliation::plane_in_lattice_coords(fixtures::pair_g(), foliation::horizontal_plane(2));
    for (auto _ : state)
        benchmark::DoNotOptimize(foliation::integer_covector_kernel(c));
}
BENCHMARK(BM_IntegerCovectorKernel);

void BM_Eta2Rank(benchmark::State& state) {
    auto l = fixtures::pair_h();
    for (auto _ : state)
        benchmark::DoNotOptimize(kummer::eta2_rank(l));
}
BENCHMARK(BM_Eta2Rank);

void BM_AlgNumInverse(benchmark::State& state) {
    AlgNum a = parse_algnum("1 + sqrt(2) - 2*sqrt(3) + sqrt(5) + 3/7*sqrt(30)");
    for (auto _ : state)
        benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_AlgNumInverse);

void BM_OrbitDiscrepancy(benchmark::State& state) {
    simulate::OrbitSpec spec;
    spec.direction = simulate::lattice_direction(fixtures::divergent_ue(), {0L, 0L, 1L, 0L});
    spec.start = {0.1, 0.2, 0.3, 0.4};
    spec.steps = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate::orbit_discrepancy(spec, 8));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OrbitDiscrepancy)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
