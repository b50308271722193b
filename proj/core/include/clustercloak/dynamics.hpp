#pragma once

#include "clustercloak/engine.hpp"
#include "clustercloak/report.hpp"
#include "clustercloak/rng.hpp"
#include "clustercloak/types.hpp"

namespace clustercloak {

/// Incremental maintenance. Every function applies one event, keeps all
/// clusters feasible on exit, and returns what it changed. Events are
/// strictly sequential per ClusterSet; the caller owns the generator that
/// feeds any division reseeding. An AnonymityUnsatisfiableError aborts the
/// event mid-way: the set stays internally consistent but the session is
/// over (the population can no longer cover its demanded levels).

/// Adds the user to the cluster with the nearest center, then re-divides
/// that cluster as far as it will go. Throws DuplicateUserError for a
/// taken id and ContractViolation when no cluster exists yet.
AdjustmentReport insert_user(ClusterSet& set, const UserProfile& user,
                             const EngineConfig& config, Rng& rng);

/// Refreshes one cluster's derived state, clears its Terminal mark, and
/// runs the division loop on it and its descendants.
AdjustmentReport adjust_cluster(ClusterSet& set, ClusterId id,
                                const EngineConfig& config, Rng& rng);

/// Removes the user. The remaining cluster is re-divided when it is still
/// feasible and merged away when it is not. Throws UnknownUserError.
AdjustmentReport remove_user(ClusterSet& set, UserId id,
                             const EngineConfig& config, Rng& rng);

/// Merges the cluster into a partner: among circle-touching neighbors the
/// one with the most spare members, smallest rectangle area breaking ties
/// (then lowest id); with no touching neighbor, the nearest center. Repeats
/// until the merged cluster is feasible, then re-divides it. Throws
/// AnonymityUnsatisfiableError when no partner exists.
AdjustmentReport merge_cluster(ClusterSet& set, ClusterId id,
                               const EngineConfig& config, Rng& rng);

/// Relocates a user. While the home cluster's center stays the nearest
/// (ties favor home) only the home geometry is refreshed; otherwise the
/// move is a removal followed by an insertion at the new position.
AdjustmentReport move_user(ClusterSet& set, UserId id, const Point& new_position,
                           const EngineConfig& config, Rng& rng);

}  // namespace clustercloak
