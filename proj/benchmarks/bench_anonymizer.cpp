#include <benchmark/benchmark.h>

#include "clustercloak/anonymizer.hpp"
#include "clustercloak/engine.hpp"
#include "clustercloak/metrics.hpp"
#include "clustercloak/workload.hpp"

using namespace clustercloak;

namespace {

void BM_AnswerQuery(benchmark::State& state) {
    WorkloadSpec spec;
    spec.user_count = 1000;
    spec.k_mode = {true, 0};
    spec.seed = 3;
    spec.poi_count = static_cast<int>(state.range(0));
    const auto map = generate_map(spec);

    EngineConfig cfg;
    cfg.seeding = SeedingMethod::MN;
    const ClusterSet set = build_clusters(map.users, cfg);
    const UserProfile& u = map.users.front();
    const SourceMessage msg{u.id, 1, u.position, u.k, "cafe"};

    for (auto _ : state) {
        benchmark::DoNotOptimize(answer_query(set, map.pois, msg, "cafe"));
    }
}

void BM_Snapshot(benchmark::State& state) {
    WorkloadSpec spec;
    spec.user_count = static_cast<int>(state.range(0));
    spec.k_mode = {true, 0};
    spec.seed = 3;
    spec.poi_count = 0;
    const auto map = generate_map(spec);
    EngineConfig cfg;
    const ClusterSet set = build_clusters(map.users, cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(snapshot(set));
    }
}

}  // namespace

BENCHMARK(BM_AnswerQuery)->Arg(100)->Arg(10000);
BENCHMARK(BM_Snapshot)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);
