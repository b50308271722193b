#include "clustercloak/verify.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "clustercloak/engine.hpp"
#include "clustercloak/errors.hpp"

namespace clustercloak {

std::vector<std::string> safety_violations(const ClusterSet& set) {
    std::vector<std::string> out;
    std::unordered_set<UserId> seen;

    for (const auto& [cid, c] : set.clusters()) {
        if (c.members.empty()) {
            out.push_back("cluster " + std::to_string(cid) + " is empty");
            continue;
        }
        int k_max = 0;
        for (UserId uid : c.members) {
            if (!seen.insert(uid).second)
                out.push_back("user " + std::to_string(uid) +
                              " appears in more than one cluster");
            if (!set.profiles().count(uid)) {
                out.push_back("cluster " + std::to_string(cid) + " member " +
                              std::to_string(uid) + " has no profile");
                continue;
            }
            k_max = std::max(k_max, set.profiles().at(uid).k);
            if (!set.has_user(uid) || set.cluster_of(uid) != cid)
                out.push_back("user index disagrees with membership for user " +
                              std::to_string(uid));
        }
        if (static_cast<int>(c.members.size()) < k_max)
            out.push_back("cluster " + std::to_string(cid) + " has " +
                          std::to_string(c.members.size()) +
                          " members but requires " + std::to_string(k_max));
    }

    for (const auto& [uid, profile] : set.profiles()) {
        (void)profile;
        if (!seen.count(uid))
            out.push_back("user " + std::to_string(uid) +
                          " is registered but belongs to no cluster");
    }
    return out;
}

std::vector<std::string> state_violations(const ClusterSet& set) {
    constexpr double kTol = 1e-9;
    std::vector<std::string> out;

    for (const auto& [cid, c] : set.clusters()) {
        if (c.members.empty()) continue;
        const auto pts = set.member_positions(cid);
        const Point want_center = centroid(pts);
        const double want_sum = distance_sum(pts, want_center);
        const MBR want_mbr = mbr_of(pts);
        auto ks = set.member_ks(cid);
        std::sort(ks.begin(), ks.end());
        const RobustnessState want_rob = compute_robustness(ks);

        const std::string tag = "cluster " + std::to_string(cid) + ": stale ";
        if (distance(c.center, want_center) > kTol) out.push_back(tag + "center");
        if (std::abs(c.distance_sum - want_sum) > kTol)
            out.push_back(tag + "distance sum");
        if (std::abs(c.mbr.x_min - want_mbr.x_min) > kTol ||
            std::abs(c.mbr.x_max - want_mbr.x_max) > kTol ||
            std::abs(c.mbr.y_min - want_mbr.y_min) > kTol ||
            std::abs(c.mbr.y_max - want_mbr.y_max) > kTol)
            out.push_back(tag + "rectangle");
        if (std::abs(c.rebuild_probability - want_rob.rebuild_probability) > kTol ||
            c.extra_members != want_rob.extra_members ||
            c.feasible != want_rob.feasible)
            out.push_back(tag + "robustness");
    }
    return out;
}

void require_safe(const ClusterSet& set) {
    auto all = safety_violations(set);
    const auto state = state_violations(set);
    all.insert(all.end(), state.begin(), state.end());
    if (all.empty()) return;
    std::string msg = "cluster set failed the safety scan:";
    for (const auto& v : all) msg += "\n  - " + v;
    throw SafetyViolationError(msg);
}

}  // namespace clustercloak
