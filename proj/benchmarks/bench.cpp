#include <benchmark/benchmark.h>

#include <vector>

#include "steinpp/bounds.hpp"
#include "steinpp/count_dist.hpp"
#include "steinpp/matching.hpp"
#include "steinpp/renewal.hpp"

using namespace steinpp;

namespace {

Configuration uniform_cloud(RandomStream& rng, int n) {
    std::vector<Atom> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back({rng.uniform(), 1});
    return Configuration(std::move(atoms));
}

void BM_d1_prime(benchmark::State& state) {
    RandomStream rng(SeededStream{1, 0});
    const int n = static_cast<int>(state.range(0));
    Configuration a = uniform_cloud(rng, n), b = uniform_cloud(rng, n + n / 4);
    for (auto _ : state) benchmark::DoNotOptimize(d1_prime(a, b));
}
BENCHMARK(BM_d1_prime)->Arg(16)->Arg(64)->Arg(256);

void BM_solve_renewal(benchmark::State& state) {
    RenewalSpec spec{TimeDistribution::exponential(1.0), TimeDistribution::exponential(1.0),
                     1.0};
    const double h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_renewal(spec, h).V.back());
}
BENCHMARK(BM_solve_renewal)->Arg(250)->Arg(1000)->Arg(4000);

void BM_sample_renewal(benchmark::State& state) {
    RenewalSpec spec = RenewalSpec::iid_stationary_exponential(2.0, 1.0);
    RandomStream rng(SeededStream{2, 0});
    for (auto _ : state) benchmark::DoNotOptimize(sample_renewal(spec, rng).total_mass());
}
BENCHMARK(BM_sample_renewal);

void BM_poisson_binomial(benchmark::State& state) {
    std::vector<double> p(static_cast<std::size_t>(state.range(0)), 0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(CountDistribution::poisson_binomial(p).mean());
}
BENCHMARK(BM_poisson_binomial)->Arg(50)->Arg(500);

void BM_mc_bound_dtv(benchmark::State& state) {
    auto pc = make_indicator_palm(
        IndicatorModel::independent_bernoulli(std::vector<double>(10, 0.1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            mc_bound_theorem21(*pc, Metric::dtv, state.range(0), SeededStream{3, 0}).value);
}
BENCHMARK(BM_mc_bound_dtv)->Arg(1000)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
