#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "clustercloak/geometry.hpp"

namespace clustercloak {

using UserId = std::uint64_t;
using ClusterId = std::uint64_t;
using MessageId = std::uint64_t;
using PoiId = std::uint64_t;

/// A registered mobile user: exact position plus the anonymity level k
/// the user demands (every released region must cover >= k users).
struct UserProfile {
    UserId id = 0;
    Point position;
    int k = 2;

    friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

/// Throws ContractViolation unless coordinates are finite and k >= 2.
void validate_profile(const UserProfile& p);

/// Query as the user sends it: exact position included.
struct SourceMessage {
    UserId user_id = 0;
    MessageId message_id = 0;
    Point position;
    int k = 2;
    std::string content;
};

/// Query as it leaves the anonymizer: the exact position is replaced by
/// the coordinate ranges of the user's cluster rectangle. Deliberately
/// has no Point member.
struct CloakedMessage {
    UserId user_id = 0;
    MessageId message_id = 0;
    Interval x_range;
    Interval y_range;
    std::string content;
};

enum class SplitState : std::uint8_t {
    Pending,   // may still be offered to the divider
    Terminal,  // a division attempt failed; left whole until membership changes
};

/// Outcome of the departure analysis for a cluster of size m with sorted
/// member anonymity levels k_1 <= ... <= k_m:
///   rebuild_probability — chance that one member leaving forces a rebuild
///   extra_members       — members beyond the strictest level (slack)
///   feasible            — m >= k_m
struct RobustnessState {
    double rebuild_probability = 1.0;
    int extra_members = 0;
    bool feasible = false;

    friend bool operator==(const RobustnessState&, const RobustnessState&) = default;
};

struct Cluster {
    ClusterId id = 0;
    std::vector<UserId> members;  // sorted by user id
    Point center;                 // centroid of member positions
    double distance_sum = 0.0;    // sum of member distances to center
    MBR mbr;
    double rebuild_probability = 1.0;
    int extra_members = 0;
    bool feasible = false;
    SplitState split_state = SplitState::Pending;

    std::size_t size() const { return members.size(); }

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Kinds of trace events and adjustment reports.
enum class EventKind : std::uint8_t { Join, Leave, Move, Query, Adjust, Merge };

std::string to_string(EventKind kind);

/// The live clustering: clusters keyed by id, the user -> cluster index,
/// and the user profiles. All mutators keep the index bidirectionally
/// consistent and recompute the derived state (center, distance sum,
/// rectangle, robustness) of every cluster they touch.
///
/// Ordering note: members are kept sorted by user id and clusters are
/// iterated in id order, so every floating-point reduction happens in a
/// fixed order and rebuilds are bit-reproducible.
class ClusterSet {
public:
    const std::map<ClusterId, Cluster>& clusters() const { return clusters_; }
    const std::map<UserId, UserProfile>& profiles() const { return profiles_; }

    std::size_t cluster_count() const { return clusters_.size(); }
    std::size_t user_count() const { return profiles_.size(); }

    bool has_cluster(ClusterId id) const { return clusters_.count(id) != 0; }
    bool has_user(UserId id) const { return user_index_.count(id) != 0; }

    /// Throws ContractViolation for unknown ids.
    const Cluster& cluster(ClusterId id) const;
    /// Throws UnknownUserError.
    ClusterId cluster_of(UserId id) const;
    const UserProfile& profile(UserId id) const;

    /// Member positions / anonymity levels in user-id order.
    std::vector<Point> member_positions(ClusterId id) const;
    std::vector<int> member_ks(ClusterId id) const;

    /// Distance from the cluster center to its remotest member.
    double radius(ClusterId id) const;

    /// Cluster whose center is nearest to `p` (ties: lowest id).
    /// Throws ContractViolation when the set is empty.
    ClusterId nearest_cluster(const Point& p) const;

    // -- mutators ----------------------------------------------------------

    /// Registers fresh users and wraps them in a new cluster.
    /// Throws DuplicateUserError if any id is taken.
    ClusterId create_cluster(const std::vector<UserProfile>& members);

    /// Adds one fresh user to an existing cluster.
    void add_member(ClusterId id, const UserProfile& user);

    /// Removes a user entirely (profile included). Deletes the cluster if
    /// it becomes empty. Returns the former home cluster id and whether it
    /// was deleted.
    struct RemovalResult {
        ClusterId home = 0;
        bool cluster_deleted = false;
    };
    RemovalResult remove_member(UserId id);

    /// Replaces a cluster by two clusters over the given member split.
    /// The two vectors must partition the parent's members. New ids are
    /// allocated in order (first half, then second).
    std::pair<ClusterId, ClusterId> split_cluster(ClusterId parent,
                                                  const std::vector<UserId>& half_a,
                                                  const std::vector<UserId>& half_b);

    /// Moves every member of `from` into `to` and deletes `from`.
    void absorb_cluster(ClusterId from, ClusterId to);

    /// Updates a user's position and refreshes the home cluster state.
    void set_position(UserId id, const Point& p);

    void set_split_state(ClusterId id, SplitState s);

    /// Recomputes all derived state of one cluster from raw profiles.
    void recompute(ClusterId id);

private:
    Cluster& cluster_mut(ClusterId id);
    void recompute_state(Cluster& c) const;

    std::map<ClusterId, Cluster> clusters_;
    std::unordered_map<UserId, ClusterId> user_index_;
    std::map<UserId, UserProfile> profiles_;
    ClusterId next_cluster_id_ = 0;
};

}  // namespace clustercloak
