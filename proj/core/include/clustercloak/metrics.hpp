#pragma once

#include <cstddef>
#include <vector>

#include "clustercloak/types.hpp"

namespace clustercloak {

/// Privacy and quality-of-service measurements over one snapshot of the
/// clustering. All functions are pure reads.

struct UserAnonymity {
    UserId user_id = 0;
    ClusterId cluster_id = 0;
    int k = 2;
    double rk = 0.0;  // cluster size / k

    friend bool operator==(const UserAnonymity&, const UserAnonymity&) = default;
};

struct ClusterEntropy {
    ClusterId cluster_id = 0;
    std::size_t size = 0;
    double bits = 0.0;  // log2(size), uniform membership probability

    friend bool operator==(const ClusterEntropy&, const ClusterEntropy&) = default;
};

struct ClusterAreaRatio {
    ClusterId cluster_id = 0;
    double area = 0.0;        // cluster rectangle area
    double rs = 0.0;          // area / bounding rectangle of all users
    double rs_literal = 0.0;  // area / sum of all cluster areas

    friend bool operator==(const ClusterAreaRatio&, const ClusterAreaRatio&) = default;
};

/// Per-user relative anonymity, rows in user-id order.
std::vector<UserAnonymity> relative_anonymity(const ClusterSet& set);

/// Per-cluster entropy, rows in cluster-id order.
std::vector<ClusterEntropy> entropy(const ClusterSet& set);

/// Per-cluster area ratios. The rs denominator is the bounding rectangle
/// of every registered user; rs_literal divides by the summed cluster
/// areas instead. Both define 0/0 as 0 (all users coincident).
std::vector<ClusterAreaRatio> area_ratio(const ClusterSet& set);

struct SnapshotMetrics {
    std::vector<UserAnonymity> users;
    std::vector<ClusterEntropy> clusters;
    std::vector<ClusterAreaRatio> areas;
    std::vector<std::size_t> cluster_sizes;  // cluster-id order
    std::size_t cluster_count = 0;
    std::size_t total_users = 0;
    double mean_rk = 0.0;
    double min_rk = 0.0;
    double strict_rk_fraction = 0.0;  // share of users with rk > 1
    double mean_entropy = 0.0;
    double mean_cluster_size = 0.0;
    double max_cluster_size = 0.0;
    double mean_rs = 0.0;
    double mean_rs_literal = 0.0;
    double world_area = 0.0;  // bounding rectangle of all users

    friend bool operator==(const SnapshotMetrics&, const SnapshotMetrics&) = default;
};

/// Aggregates every metric family over one snapshot.
SnapshotMetrics snapshot(const ClusterSet& set);

}  // namespace clustercloak
