#pragma once

#include <string>
#include <vector>

#include "clustercloak/types.hpp"

namespace clustercloak {

/// Independent safety scan. Works only from raw profiles and membership
/// lists, never from cached cluster state, and checks:
///   - every cluster covers the largest k among its own members
///   - clusters are non-empty and members are registered exactly once
///   - the user index and the membership lists agree both ways
/// Returns human-readable violations; empty means the set is safe.
std::vector<std::string> safety_violations(const ClusterSet& set);

/// Consistency scan of cached derived state (center, distance sum,
/// rectangle, robustness) against a recomputation from raw profiles.
std::vector<std::string> state_violations(const ClusterSet& set);

/// Throws SafetyViolationError listing every finding of both scans.
void require_safe(const ClusterSet& set);

}  // namespace clustercloak
