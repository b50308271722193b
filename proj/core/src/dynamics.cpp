#include "clustercloak/dynamics.hpp"

#include <algorithm>
#include <limits>

#include "clustercloak/errors.hpp"

namespace clustercloak {

namespace {

void adjust_cluster_impl(ClusterSet& set, ClusterId id, const EngineConfig& config,
                         Rng& rng, ReportBuilder& report) {
    set.set_split_state(id, SplitState::Pending);
    set.recompute(id);
    divide_to_fixpoint(set, {id}, config, rng, &report);
}

// Radius bounds from the cached rectangle: some member sits on each side
// of the tight box, and nobody is farther than the farthest corner. They
// decide the touching test without walking the membership in most cases.
double radius_lower_bound(const Cluster& c) {
    return std::max(std::max(c.center.x - c.mbr.x_min, c.mbr.x_max - c.center.x),
                    std::max(c.center.y - c.mbr.y_min, c.mbr.y_max - c.center.y));
}

double radius_upper_bound(const Cluster& c) {
    const double dx = std::max(c.center.x - c.mbr.x_min, c.mbr.x_max - c.center.x);
    const double dy = std::max(c.center.y - c.mbr.y_min, c.mbr.y_max - c.center.y);
    return std::hypot(dx, dy);
}

/// Merge partner: touching neighbors with the most spare members, smallest
/// rectangle area among those, lowest id last. Falls back to the nearest
/// center when no circle touches.
ClusterId pick_merge_partner(const ClusterSet& set, ClusterId id) {
    const Cluster& c = set.cluster(id);
    const double own_radius = set.radius(id);

    ClusterId best = 0;
    bool found = false;
    int best_extra = -1;
    double best_area = std::numeric_limits<double>::infinity();

    ClusterId nearest = 0;
    bool any_other = false;
    double nearest_d = std::numeric_limits<double>::infinity();

    for (const auto& [other_id, other] : set.clusters()) {
        if (other_id == id) continue;
        const double d = distance(c.center, other.center);
        if (!any_other || d < nearest_d) {
            any_other = true;
            nearest_d = d;
            nearest = other_id;
        }
        bool touching;
        if (d <= own_radius + radius_lower_bound(other))
            touching = true;
        else if (d > own_radius + radius_upper_bound(other))
            touching = false;
        else
            touching = d <= own_radius + set.radius(other_id);
        if (!touching) continue;
        const double area = other.mbr.area();
        if (!found || other.extra_members > best_extra ||
            (other.extra_members == best_extra && area < best_area)) {
            found = true;
            best = other_id;
            best_extra = other.extra_members;
            best_area = area;
        }
    }
    if (found) return best;
    if (any_other) return nearest;
    throw AnonymityUnsatisfiableError(
        "cluster " + std::to_string(id) +
        " cannot satisfy its anonymity levels and no merge partner exists");
}

void merge_cluster_impl(ClusterSet& set, ClusterId id, const EngineConfig& config,
                        Rng& rng, ReportBuilder& report) {
    ClusterId current = id;
    for (;;) {
        const ClusterId target = pick_merge_partner(set, current);
        set.absorb_cluster(current, target);
        report.on_deleted(current);
        report.on_rebuilt(target);
        current = target;
        if (set.cluster(current).feasible) break;
    }
    adjust_cluster_impl(set, current, config, rng, report);
}

void remove_user_impl(ClusterSet& set, UserId id, const EngineConfig& config,
                      Rng& rng, ReportBuilder& report) {
    const auto removal = set.remove_member(id);
    if (removal.cluster_deleted) {
        report.on_deleted(removal.home);
        return;
    }
    report.on_touched(removal.home);
    if (set.cluster(removal.home).feasible)
        adjust_cluster_impl(set, removal.home, config, rng, report);
    else
        merge_cluster_impl(set, removal.home, config, rng, report);
}

void insert_user_impl(ClusterSet& set, const UserProfile& user,
                      const EngineConfig& config, Rng& rng, ReportBuilder& report) {
    validate_profile(user);
    if (set.has_user(user.id))
        throw DuplicateUserError("user " + std::to_string(user.id) +
                                 " is already registered");
    const ClusterId home = set.nearest_cluster(user.position);
    set.add_member(home, user);
    report.on_touched(home);
    // A newcomer demanding more anonymity than the grown cluster offers
    // pushes it below its own level; grow by merging, as on departures.
    if (!set.cluster(home).feasible)
        merge_cluster_impl(set, home, config, rng, report);
    else
        adjust_cluster_impl(set, home, config, rng, report);
}

}  // namespace

AdjustmentReport insert_user(ClusterSet& set, const UserProfile& user,
                             const EngineConfig& config, Rng& rng) {
    ReportBuilder report(EventKind::Join);
    insert_user_impl(set, user, config, rng, report);
    return report.finish();
}

AdjustmentReport adjust_cluster(ClusterSet& set, ClusterId id,
                                const EngineConfig& config, Rng& rng) {
    ReportBuilder report(EventKind::Adjust);
    (void)set.cluster(id);  // contract check
    report.on_touched(id);
    adjust_cluster_impl(set, id, config, rng, report);
    return report.finish();
}

AdjustmentReport remove_user(ClusterSet& set, UserId id, const EngineConfig& config,
                             Rng& rng) {
    ReportBuilder report(EventKind::Leave);
    (void)set.cluster_of(id);  // throws UnknownUserError first
    remove_user_impl(set, id, config, rng, report);
    return report.finish();
}

AdjustmentReport merge_cluster(ClusterSet& set, ClusterId id,
                               const EngineConfig& config, Rng& rng) {
    ReportBuilder report(EventKind::Merge);
    (void)set.cluster(id);
    merge_cluster_impl(set, id, config, rng, report);
    return report.finish();
}

AdjustmentReport move_user(ClusterSet& set, UserId id, const Point& new_position,
                           const EngineConfig& config, Rng& rng) {
    ReportBuilder report(EventKind::Move);
    if (!is_finite(new_position))
        throw ContractViolation("move target must be finite");
    const ClusterId home = set.cluster_of(id);

    // Stay home while no other center is strictly nearer to the new spot.
    const double home_d =
        squared_distance(new_position, set.cluster(home).center);
    bool stays = true;
    for (const auto& [cid, c] : set.clusters()) {
        if (cid == home) continue;
        if (squared_distance(new_position, c.center) < home_d) {
            stays = false;
            break;
        }
    }

    if (stays) {
        set.set_position(id, new_position);
        report.on_touched(home);
        return report.finish();
    }

    UserProfile profile = set.profile(id);
    profile.position = new_position;
    remove_user_impl(set, id, config, rng, report);
    insert_user_impl(set, profile, config, rng, report);
    return report.finish();
}

}  // namespace clustercloak
