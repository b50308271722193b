#include "clustercloak/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clustercloak/errors.hpp"

namespace clustercloak {

std::vector<UserAnonymity> relative_anonymity(const ClusterSet& set) {
    std::vector<UserAnonymity> out;
    out.reserve(set.user_count());
    for (const auto& [uid, profile] : set.profiles()) {
        const ClusterId cid = set.cluster_of(uid);
        const double size = static_cast<double>(set.cluster(cid).size());
        out.push_back({uid, cid, profile.k, size / profile.k});
    }
    return out;
}

std::vector<ClusterEntropy> entropy(const ClusterSet& set) {
    std::vector<ClusterEntropy> out;
    out.reserve(set.cluster_count());
    for (const auto& [cid, c] : set.clusters())
        out.push_back({cid, c.size(), std::log2(static_cast<double>(c.size()))});
    return out;
}

std::vector<ClusterAreaRatio> area_ratio(const ClusterSet& set) {
    if (set.cluster_count() == 0)
        throw ContractViolation("area_ratio needs at least one cluster");

    std::vector<Point> everyone;
    everyone.reserve(set.user_count());
    for (const auto& [uid, profile] : set.profiles()) {
        (void)uid;
        everyone.push_back(profile.position);
    }
    const double world = mbr_of(everyone).area();

    double total_cluster_area = 0.0;
    for (const auto& [cid, c] : set.clusters()) {
        (void)cid;
        total_cluster_area += c.mbr.area();
    }

    std::vector<ClusterAreaRatio> out;
    out.reserve(set.cluster_count());
    for (const auto& [cid, c] : set.clusters()) {
        const double area = c.mbr.area();
        out.push_back({cid, area, world > 0.0 ? area / world : 0.0,
                       total_cluster_area > 0.0 ? area / total_cluster_area : 0.0});
    }
    return out;
}

SnapshotMetrics snapshot(const ClusterSet& set) {
    SnapshotMetrics m;
    m.users = relative_anonymity(set);
    m.clusters = entropy(set);
    m.areas = area_ratio(set);
    m.cluster_count = set.cluster_count();
    m.total_users = set.user_count();

    double rk_sum = 0.0;
    double rk_min = std::numeric_limits<double>::infinity();
    std::size_t strict = 0;
    for (const auto& row : m.users) {
        rk_sum += row.rk;
        rk_min = std::min(rk_min, row.rk);
        if (row.rk > 1.0) ++strict;
    }
    m.mean_rk = m.users.empty() ? 0.0 : rk_sum / static_cast<double>(m.users.size());
    m.min_rk = m.users.empty() ? 0.0 : rk_min;
    m.strict_rk_fraction =
        m.users.empty() ? 0.0 : static_cast<double>(strict) / m.users.size();

    double bits_sum = 0.0;
    double size_sum = 0.0;
    double size_max = 0.0;
    for (const auto& row : m.clusters) {
        bits_sum += row.bits;
        size_sum += static_cast<double>(row.size);
        size_max = std::max(size_max, static_cast<double>(row.size));
        m.cluster_sizes.push_back(row.size);
    }
    const double nc = static_cast<double>(m.cluster_count);
    m.mean_entropy = nc > 0 ? bits_sum / nc : 0.0;
    m.mean_cluster_size = nc > 0 ? size_sum / nc : 0.0;
    m.max_cluster_size = size_max;

    double rs_sum = 0.0;
    double rs_lit_sum = 0.0;
    for (const auto& row : m.areas) {
        rs_sum += row.rs;
        rs_lit_sum += row.rs_literal;
    }
    m.mean_rs = nc > 0 ? rs_sum / nc : 0.0;
    m.mean_rs_literal = nc > 0 ? rs_lit_sum / nc : 0.0;

    std::vector<Point> everyone;
    everyone.reserve(set.user_count());
    for (const auto& [uid, profile] : set.profiles()) {
        (void)uid;
        everyone.push_back(profile.position);
    }
    m.world_area = everyone.empty() ? 0.0 : mbr_of(everyone).area();
    return m;
}

}  // namespace clustercloak
