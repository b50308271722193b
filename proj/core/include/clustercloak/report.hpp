#pragma once

#include <algorithm>
#include <chrono>
#include <set>
#include <vector>

#include "clustercloak/types.hpp"

namespace clustercloak {

/// What one maintenance event did to the clustering, expressed as the
/// net before/after difference:
///   clusters_created — ids that exist after but not before
///   clusters_deleted — ids that existed before but not after
///   clusters_rebuilt — surviving ids whose member set changed by more
///                      than the event's own user (merge targets)
/// Clusters that only gained/lost the event user, or only had positions
/// refreshed, count as affected but not rebuilt.
struct AdjustmentReport {
    EventKind kind = EventKind::Adjust;
    std::vector<ClusterId> affected_before;
    std::vector<ClusterId> affected_after;
    int clusters_created = 0;
    int clusters_deleted = 0;
    int clusters_rebuilt = 0;
    double elapsed_us = 0.0;

    /// The robustness figure: structural damage caused by the event.
    int clusters_adjusted() const { return clusters_deleted + clusters_rebuilt; }
};

/// Accumulates net id-set changes while an event executes, so transient
/// clusters (created then deleted within the same event) cancel out and
/// the final counts match a before/after snapshot diff.
class ReportBuilder {
public:
    explicit ReportBuilder(EventKind kind)
        : kind_(kind), start_(std::chrono::steady_clock::now()) {}

    void on_created(ClusterId id) { created_.insert(id); }

    void on_deleted(ClusterId id) {
        if (created_.erase(id) > 0) return;  // transient: net no-op
        rebuilt_.erase(id);
        touched_.erase(id);
        deleted_.insert(id);
    }

    void on_rebuilt(ClusterId id) {
        if (created_.count(id)) return;
        touched_.erase(id);
        rebuilt_.insert(id);
    }

    void on_touched(ClusterId id) {
        if (created_.count(id) || rebuilt_.count(id)) return;
        touched_.insert(id);
    }

    AdjustmentReport finish() const {
        AdjustmentReport r;
        r.kind = kind_;
        for (ClusterId id : deleted_) r.affected_before.push_back(id);
        for (ClusterId id : rebuilt_) r.affected_before.push_back(id);
        for (ClusterId id : touched_) r.affected_before.push_back(id);
        std::sort(r.affected_before.begin(), r.affected_before.end());
        for (ClusterId id : created_) r.affected_after.push_back(id);
        for (ClusterId id : rebuilt_) r.affected_after.push_back(id);
        for (ClusterId id : touched_) r.affected_after.push_back(id);
        std::sort(r.affected_after.begin(), r.affected_after.end());
        r.clusters_created = static_cast<int>(created_.size());
        r.clusters_deleted = static_cast<int>(deleted_.size());
        r.clusters_rebuilt = static_cast<int>(rebuilt_.size());
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        r.elapsed_us =
            std::chrono::duration<double, std::micro>(elapsed).count();
        return r;
    }

private:
    EventKind kind_;
    std::chrono::steady_clock::time_point start_;
    std::set<ClusterId> created_;
    std::set<ClusterId> deleted_;
    std::set<ClusterId> rebuilt_;
    std::set<ClusterId> touched_;
};

}  // namespace clustercloak
