#include "clustercloak/types.hpp"

#include <algorithm>
#include <limits>

#include "clustercloak/engine.hpp"
#include "clustercloak/errors.hpp"

namespace clustercloak {

void validate_profile(const UserProfile& p) {
    if (!is_finite(p.position))
        throw ContractViolation("user " + std::to_string(p.id) +
                                ": coordinates must be finite");
    if (p.k < 2)
        throw ContractViolation("user " + std::to_string(p.id) +
                                ": anonymity level must be >= 2");
}

std::string to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Join: return "join";
        case EventKind::Leave: return "leave";
        case EventKind::Move: return "move";
        case EventKind::Query: return "query";
        case EventKind::Adjust: return "adjust";
        case EventKind::Merge: return "merge";
    }
    return "unknown";
}

const Cluster& ClusterSet::cluster(ClusterId id) const {
    auto it = clusters_.find(id);
    if (it == clusters_.end())
        throw ContractViolation("unknown cluster id " + std::to_string(id));
    return it->second;
}

Cluster& ClusterSet::cluster_mut(ClusterId id) {
    auto it = clusters_.find(id);
    if (it == clusters_.end())
        throw ContractViolation("unknown cluster id " + std::to_string(id));
    return it->second;
}

ClusterId ClusterSet::cluster_of(UserId id) const {
    auto it = user_index_.find(id);
    if (it == user_index_.end())
        throw UnknownUserError("user " + std::to_string(id) + " is not registered");
    return it->second;
}

const UserProfile& ClusterSet::profile(UserId id) const {
    auto it = profiles_.find(id);
    if (it == profiles_.end())
        throw UnknownUserError("user " + std::to_string(id) + " is not registered");
    return it->second;
}

std::vector<Point> ClusterSet::member_positions(ClusterId id) const {
    const Cluster& c = cluster(id);
    std::vector<Point> out;
    out.reserve(c.members.size());
    for (UserId uid : c.members) out.push_back(profiles_.at(uid).position);
    return out;
}

std::vector<int> ClusterSet::member_ks(ClusterId id) const {
    const Cluster& c = cluster(id);
    std::vector<int> out;
    out.reserve(c.members.size());
    for (UserId uid : c.members) out.push_back(profiles_.at(uid).k);
    return out;
}

double ClusterSet::radius(ClusterId id) const {
    const Cluster& c = cluster(id);
    double r = 0.0;
    for (UserId uid : c.members)
        r = std::max(r, distance(c.center, profiles_.at(uid).position));
    return r;
}

ClusterId ClusterSet::nearest_cluster(const Point& p) const {
    if (clusters_.empty())
        throw ContractViolation("nearest_cluster on an empty cluster set");
    ClusterId best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& [id, c] : clusters_) {
        const double d = squared_distance(p, c.center);
        if (d < best_d) {  // map order makes ties pick the lowest id
            best_d = d;
            best = id;
        }
    }
    return best;
}

ClusterId ClusterSet::create_cluster(const std::vector<UserProfile>& members) {
    if (members.empty()) throw ContractViolation("create_cluster with no members");
    std::vector<UserId> ids;
    ids.reserve(members.size());
    for (const UserProfile& u : members) {
        validate_profile(u);
        if (user_index_.count(u.id))
            throw DuplicateUserError("user " + std::to_string(u.id) +
                                     " is already registered");
        ids.push_back(u.id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw DuplicateUserError("duplicate user ids in new cluster");

    const ClusterId id = next_cluster_id_++;
    Cluster c;
    c.id = id;
    c.members = std::move(ids);
    for (const UserProfile& u : members) {
        profiles_.emplace(u.id, u);
        user_index_.emplace(u.id, id);
    }
    recompute_state(c);
    clusters_.emplace(id, std::move(c));
    return id;
}

void ClusterSet::add_member(ClusterId id, const UserProfile& user) {
    validate_profile(user);
    if (user_index_.count(user.id))
        throw DuplicateUserError("user " + std::to_string(user.id) +
                                 " is already registered");
    Cluster& c = cluster_mut(id);
    profiles_.emplace(user.id, user);
    user_index_.emplace(user.id, id);
    c.members.insert(std::lower_bound(c.members.begin(), c.members.end(), user.id),
                     user.id);
    recompute_state(c);
}

ClusterSet::RemovalResult ClusterSet::remove_member(UserId id) {
    const ClusterId home = cluster_of(id);
    Cluster& c = cluster_mut(home);
    c.members.erase(std::find(c.members.begin(), c.members.end(), id));
    user_index_.erase(id);
    profiles_.erase(id);
    if (c.members.empty()) {
        clusters_.erase(home);
        return {home, true};
    }
    recompute_state(c);
    return {home, false};
}

std::pair<ClusterId, ClusterId> ClusterSet::split_cluster(
    ClusterId parent, const std::vector<UserId>& half_a,
    const std::vector<UserId>& half_b) {
    const Cluster& p = cluster(parent);
    if (half_a.empty() || half_b.empty())
        throw ContractViolation("split halves must be non-empty");
    if (half_a.size() + half_b.size() != p.members.size())
        throw ContractViolation("split halves must partition the parent");

    auto make_child = [this](const std::vector<UserId>& ids) {
        const ClusterId cid = next_cluster_id_++;
        Cluster c;
        c.id = cid;
        c.members = ids;
        std::sort(c.members.begin(), c.members.end());
        for (UserId uid : c.members) user_index_[uid] = cid;
        recompute_state(c);
        clusters_.emplace(cid, std::move(c));
        return cid;
    };
    const ClusterId a = make_child(half_a);
    const ClusterId b = make_child(half_b);
    clusters_.erase(parent);
    return {a, b};
}

void ClusterSet::absorb_cluster(ClusterId from, ClusterId to) {
    if (from == to) throw ContractViolation("cannot absorb a cluster into itself");
    Cluster& src = cluster_mut(from);
    Cluster& dst = cluster_mut(to);
    for (UserId uid : src.members) user_index_[uid] = to;
    std::vector<UserId> merged;
    merged.reserve(src.members.size() + dst.members.size());
    std::merge(dst.members.begin(), dst.members.end(), src.members.begin(),
               src.members.end(), std::back_inserter(merged));
    dst.members = std::move(merged);
    clusters_.erase(from);
    recompute_state(cluster_mut(to));
}

void ClusterSet::set_position(UserId id, const Point& p) {
    if (!is_finite(p)) throw ContractViolation("position must be finite");
    const ClusterId home = cluster_of(id);
    profiles_.at(id).position = p;
    recompute_state(cluster_mut(home));
}

void ClusterSet::set_split_state(ClusterId id, SplitState s) {
    cluster_mut(id).split_state = s;
}

void ClusterSet::recompute(ClusterId id) { recompute_state(cluster_mut(id)); }

void ClusterSet::recompute_state(Cluster& c) const {
    std::vector<Point> pts;
    pts.reserve(c.members.size());
    std::vector<int> ks;
    ks.reserve(c.members.size());
    for (UserId uid : c.members) {
        const UserProfile& u = profiles_.at(uid);
        pts.push_back(u.position);
        ks.push_back(u.k);
    }
    c.center = centroid(pts);
    c.distance_sum = distance_sum(pts, c.center);
    c.mbr = mbr_of(pts);
    std::sort(ks.begin(), ks.end());
    const RobustnessState r = compute_robustness(ks);
    c.rebuild_probability = r.rebuild_probability;
    c.extra_members = r.extra_members;
    c.feasible = r.feasible;
}

}  // namespace clustercloak
