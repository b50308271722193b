#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clustercloak/report.hpp"
#include "clustercloak/rng.hpp"
#include "clustercloak/types.hpp"

namespace clustercloak {

/// Initial-center selection strategies for a bisection pass.
enum class SeedingMethod : std::uint8_t {
    MN,  // closest adjacent pair along either sort axis
    NR,  // random point plus its nearest neighbor
    RP,  // two distinct random points
    RS,  // one random point from each half of the x-sorted set
};

std::string to_string(SeedingMethod m);
std::optional<SeedingMethod> parse_seeding(const std::string& token);

struct EngineConfig {
    SeedingMethod seeding = SeedingMethod::MN;
    double center_tolerance = 1e-9;       // map units of center movement
    int max_bisection_iterations = 100;
    std::uint64_t rng_seed = 0;
};

/// Derives the departure robustness of a cluster from its size and the
/// ascending member anonymity levels:
///   m > k_m                    -> rebuild_probability 0, slack m - k_m
///   m = k_m, unique maximum    -> rebuild_probability (m-1)/m, no slack
///   m = k_m, repeated maximum  -> rebuild_probability 1, no slack
///   m < k_m                    -> infeasible
RobustnessState compute_robustness(const std::vector<int>& sorted_ks);

/// A cluster is offered to the divider only while it has more than one
/// spare member, no rebuild risk, and no failed division on record.
bool is_division_candidate(const Cluster& c);

/// Result of one bisection attempt over a member list.
struct Bisection {
    bool divided = false;
    std::vector<UserId> half_a;
    std::vector<UserId> half_b;
    Point center_a;
    Point center_b;
};

/// Alternating assignment/recenter passes from the two seed centers until
/// both centers move less than the tolerance or the iteration cap hits.
/// Equidistant members go to the first center. Division fails when a half
/// ends up empty or cannot cover its own members' anonymity levels; the
/// caller then marks the parent Terminal.
Bisection bisect_members(std::span<const UserProfile> members,
                         std::pair<Point, Point> seeds,
                         const EngineConfig& config);

/// Seeds, bisects and applies one division attempt to a live cluster.
/// Returns the ids of the two halves, or nullopt when the division failed
/// and the cluster was marked Terminal. `report` may be null.
std::optional<std::pair<ClusterId, ClusterId>> divide_cluster(
    ClusterSet& set, ClusterId id, const EngineConfig& config, Rng& rng,
    ReportBuilder* report = nullptr);

/// Runs the division loop (lowest candidate id first) until no cluster is
/// a division candidate. `ids` restricts the loop to the given clusters
/// and their descendants.
void divide_to_fixpoint(ClusterSet& set, std::vector<ClusterId> ids,
                        const EngineConfig& config, Rng& rng,
                        ReportBuilder* report = nullptr);

/// Builds the initial clustering: one cluster over everyone, then
/// recursive bisection to the fix point. Throws AnonymityUnsatisfiableError
/// when the population is smaller than its own largest k.
ClusterSet build_clusters(const std::vector<UserProfile>& users,
                          const EngineConfig& config, Rng& rng);

/// Convenience overload: seeds a generator from config.rng_seed.
ClusterSet build_clusters(const std::vector<UserProfile>& users,
                          const EngineConfig& config);

}  // namespace clustercloak
