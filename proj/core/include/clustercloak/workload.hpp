#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "clustercloak/anonymizer.hpp"
#include "clustercloak/dynamics.hpp"
#include "clustercloak/engine.hpp"
#include "clustercloak/rng.hpp"
#include "clustercloak/types.hpp"

namespace clustercloak {

/// Generates the experiment inputs (maps, populations, churn traces) and
/// replays them against the engine while collecting metrics and timings.

/// Anonymity-level assignment: one fixed k, or uniform in [2, 5].
struct KMode {
    bool random = false;
    int k = 2;

    std::string label() const { return random ? "random" : std::to_string(k); }

    friend bool operator==(const KMode&, const KMode&) = default;
};

/// Churn volumes as percentages of the initial population.
struct ChurnSpec {
    double join_pct = 0.0;
    double leave_pct = 0.0;
    double move_pct = 0.0;
    double move_step_fraction = 0.25;  // movement toward the waypoint per event
};

/// One experiment cell: a population plus the churn applied to it.
struct WorkloadSpec {
    int user_count = 100;
    KMode k_mode;
    MBR world{0.0, 10000.0, 0.0, 10000.0};
    std::uint64_t seed = 0;
    int poi_count = 100;
    ChurnSpec churn;
};

struct Event {
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Join;
    UserId user_id = 0;
    std::optional<Point> position;  // join, move
    std::optional<int> k;           // join
    std::string category;           // query

    friend bool operator==(const Event&, const Event&) = default;
};

using EventTrace = std::vector<Event>;

struct GeneratedMap {
    std::vector<UserProfile> users;
    PoiStore pois;
};

/// Uniform user positions and points of interest inside the world bounds,
/// anonymity levels per the k mode. Fully determined by spec.seed.
GeneratedMap generate_map(const WorkloadSpec& spec);

/// Join/leave/move events per the churn percentages (each count is
/// ceil(pct/100 * |users|)), interleaved in shuffled order. Leaves and
/// moves reference users alive at that point; joins use fresh ids.
/// Deterministic under spec.seed.
EventTrace generate_churn_trace(const std::vector<UserProfile>& users,
                                const WorkloadSpec& spec);

// events CSV: header "seq,kind,user_id,x,y,k,category", blank fields
// where a kind has no use for them
EventTrace load_events_csv(const std::filesystem::path& path);
void write_events_csv(const std::filesystem::path& path, const EventTrace& trace);

struct EventOutcome {
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Join;
    UserId user_id = 0;
    AdjustmentReport report;
    std::size_t cluster_count_after = 0;
};

struct ReplayOptions {
    bool verify = false;  // run the safety scan after every event
};

/// Applies a trace in order. Trace inconsistencies (duplicate joins,
/// unknown users) surface as TraceError with the sequence number; query
/// events exercise the cloaking path only. With verify set, a failed
/// safety scan raises SafetyViolationError.
std::vector<EventOutcome> replay_trace(ClusterSet& set, const EventTrace& trace,
                                       const EngineConfig& config, Rng& rng,
                                       const ReplayOptions& options = {});

/// The benchmark grid: every (population size, k mode, replication) cell
/// is one generated dataset, evaluated under each seeding method.
struct ExperimentGrid {
    std::vector<int> user_counts{100, 200, 400, 600, 800, 1000};
    std::vector<KMode> k_modes;  // default set by full()/quick()
    int replications = 10;
    MBR world{0.0, 10000.0, 0.0, 10000.0};
    std::uint64_t seed = 0;
    std::vector<double> churn_levels{5.0, 10.0, 15.0, 20.0};
    int poi_count = 100;
    std::vector<SeedingMethod> seedings{SeedingMethod::MN, SeedingMethod::NR,
                                        SeedingMethod::RP, SeedingMethod::RS};

    /// Four fixed k levels plus the random mode, ten replications.
    static ExperimentGrid full(std::uint64_t seed);
    /// Small populations and two replications; same mode coverage.
    static ExperimentGrid quick(std::uint64_t seed);
};

struct DatasetRow {
    int user_count = 0;
    std::string k_mode;
    int replication = 0;
    std::uint64_t seed = 0;
};

struct MetricRow {
    std::string seeding;
    int user_count = 0;
    std::string k_mode;
    int replication = 0;
    std::string metric;
    double value = 0.0;
};

struct ExperimentResult {
    std::vector<DatasetRow> datasets;
    std::vector<MetricRow> results;  // deterministic values
    std::vector<MetricRow> timings;  // wall-clock values, microseconds
};

/// Runs the whole grid: builds each dataset under each seeding method,
/// replays join-only and leave-only traces at every churn level, checks
/// the safety scan after every event, and collects metric rows. When
/// out_dir is non-empty, writes datasets.csv, results.csv, timings.csv,
/// summary.csv and summary_timing.csv there (timing values never appear
/// outside the two timing files). A safety violation dumps a repro bundle
/// (users, events, cell info) under out_dir before throwing.
ExperimentResult run_experiment(const ExperimentGrid& grid, const EngineConfig& base,
                                const std::filesystem::path& out_dir);

}  // namespace clustercloak
