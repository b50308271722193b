#include <benchmark/benchmark.h>

#include "clustercloak/engine.hpp"
#include "clustercloak/workload.hpp"

using namespace clustercloak;

namespace {

std::vector<UserProfile> population(int n) {
    WorkloadSpec spec;
    spec.user_count = n;
    spec.k_mode = {true, 0};
    spec.seed = 42;
    spec.poi_count = 0;
    return generate_map(spec).users;
}

void BM_BuildClusters(benchmark::State& state) {
    const auto users = population(static_cast<int>(state.range(0)));
    EngineConfig cfg;
    cfg.seeding = static_cast<SeedingMethod>(state.range(1));
    cfg.rng_seed = 42;
    for (auto _ : state) {
        ClusterSet set = build_clusters(users, cfg);
        benchmark::DoNotOptimize(set.cluster_count());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Bisect(benchmark::State& state) {
    const auto users = population(static_cast<int>(state.range(0)));
    EngineConfig cfg;
    const std::pair<Point, Point> seeds{users.front().position,
                                        users.back().position};
    for (auto _ : state) {
        benchmark::DoNotOptimize(bisect_members(users, seeds, cfg));
    }
}

}  // namespace

BENCHMARK(BM_BuildClusters)
    ->ArgsProduct({{100, 400, 1000, 4000},
                   {static_cast<int>(SeedingMethod::MN),
                    static_cast<int>(SeedingMethod::RS)}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK(BM_Bisect)->Arg(64)->Arg(512);

BENCHMARK_MAIN();
