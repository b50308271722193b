#pragma once

#include <span>
#include <utility>

#include "clustercloak/engine.hpp"
#include "clustercloak/rng.hpp"
#include "clustercloak/types.hpp"

namespace clustercloak {

/// Initial-center pickers. All take the candidate members (any order),
/// return two member positions, and break every tie by lowest user id so
/// replays are exact. The random pickers consume a fixed number of draws
/// from the caller-owned generator: NR one, RP two, RS two.

/// Closest adjacent pair in x-sorted order or in y-sorted order,
/// whichever gap is smaller (x wins ties). Deterministic.
std::pair<Point, Point> seeds_mn(std::span<const UserProfile> members);

/// One uniform-random member plus its nearest other member.
std::pair<Point, Point> seeds_nr(std::span<const UserProfile> members, Rng& rng);

/// Two distinct uniform-random members.
std::pair<Point, Point> seeds_rp(std::span<const UserProfile> members, Rng& rng);

/// Splits the x-sorted members into a lower half (first ceil(n/2)) and an
/// upper half, then draws one member from each.
std::pair<Point, Point> seeds_rs(std::span<const UserProfile> members, Rng& rng);

/// Dispatch on the configured method.
std::pair<Point, Point> pick_seeds(SeedingMethod method,
                                   std::span<const UserProfile> members, Rng& rng);

}  // namespace clustercloak
