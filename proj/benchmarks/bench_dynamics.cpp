#include <benchmark/benchmark.h>

#include "clustercloak/dynamics.hpp"
#include "clustercloak/workload.hpp"

using namespace clustercloak;

namespace {

// One mixed churn trace replayed per iteration; per-event cost is the
// interesting number, so items = events.
void BM_ReplayMixedTrace(benchmark::State& state) {
    WorkloadSpec spec;
    spec.user_count = static_cast<int>(state.range(0));
    spec.k_mode = {true, 0};
    spec.seed = 7;
    spec.poi_count = 0;
    spec.churn = {10.0, 10.0, 10.0, 0.25};
    const auto map = generate_map(spec);
    const auto trace = generate_churn_trace(map.users, spec);

    EngineConfig cfg;
    cfg.seeding = SeedingMethod::MN;
    cfg.rng_seed = 7;
    Rng build_rng(cfg.rng_seed);
    const ClusterSet built = build_clusters(map.users, cfg, build_rng);

    for (auto _ : state) {
        ClusterSet set = built;
        Rng rng(11);
        benchmark::DoNotOptimize(replay_trace(set, trace, cfg, rng));
    }
    state.SetItemsProcessed(state.iterations() * trace.size());
}

void BM_LeaveHeavyTrace(benchmark::State& state) {
    WorkloadSpec spec;
    spec.user_count = static_cast<int>(state.range(0));
    spec.k_mode = {false, 2};  // pair-heavy clustering, merge-heavy churn
    spec.seed = 13;
    spec.poi_count = 0;
    spec.churn = {0.0, 20.0, 0.0, 0.25};
    const auto map = generate_map(spec);
    const auto trace = generate_churn_trace(map.users, spec);

    EngineConfig cfg;
    cfg.seeding = SeedingMethod::RS;
    cfg.rng_seed = 13;
    Rng build_rng(cfg.rng_seed);
    const ClusterSet built = build_clusters(map.users, cfg, build_rng);

    for (auto _ : state) {
        ClusterSet set = built;
        Rng rng(17);
        benchmark::DoNotOptimize(replay_trace(set, trace, cfg, rng));
    }
    state.SetItemsProcessed(state.iterations() * trace.size());
}

}  // namespace

BENCHMARK(BM_ReplayMixedTrace)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LeaveHeavyTrace)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);
