#include "clustercloak/seeding.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "clustercloak/errors.hpp"

namespace clustercloak {

namespace {

void require_two(std::span<const UserProfile> members) {
    if (members.size() < 2)
        throw ContractViolation("seed selection needs at least two members");
}

// Indices sorted by (key coordinate, user id).
std::vector<std::size_t> sorted_indices(std::span<const UserProfile> members,
                                        bool by_x) {
    std::vector<std::size_t> idx(members.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const double ka = by_x ? members[a].position.x : members[a].position.y;
        const double kb = by_x ? members[b].position.x : members[b].position.y;
        if (ka != kb) return ka < kb;
        return members[a].id < members[b].id;
    });
    return idx;
}

struct AxisPair {
    double gap = std::numeric_limits<double>::infinity();
    std::size_t a = 0;
    std::size_t b = 0;
};

// Adjacent pair with the minimum coordinate gap along one sort axis.
// Equal gaps resolve to the pair with the lowest user ids.
AxisPair min_gap_pair(std::span<const UserProfile> members, bool by_x) {
    const auto idx = sorted_indices(members, by_x);
    AxisPair best;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
        const UserProfile& p = members[idx[i]];
        const UserProfile& q = members[idx[i + 1]];
        const double gap = by_x ? q.position.x - p.position.x
                                : q.position.y - p.position.y;
        const auto lo = std::min(p.id, q.id);
        const auto hi = std::max(p.id, q.id);
        const auto cur_lo = std::min(members[best.a].id, members[best.b].id);
        const auto cur_hi = std::max(members[best.a].id, members[best.b].id);
        if (gap < best.gap ||
            (gap == best.gap && (lo < cur_lo || (lo == cur_lo && hi < cur_hi)))) {
            best = {gap, idx[i], idx[i + 1]};
        }
    }
    return best;
}

}  // namespace

std::pair<Point, Point> seeds_mn(std::span<const UserProfile> members) {
    require_two(members);
    const AxisPair x_pair = min_gap_pair(members, true);
    const AxisPair y_pair = min_gap_pair(members, false);
    const AxisPair& pick = (x_pair.gap <= y_pair.gap) ? x_pair : y_pair;
    return {members[pick.a].position, members[pick.b].position};
}

std::pair<Point, Point> seeds_nr(std::span<const UserProfile> members, Rng& rng) {
    require_two(members);
    const std::size_t first = rng.below(members.size());
    std::size_t best = members.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < members.size(); ++j) {
        if (j == first) continue;
        const double d = distance(members[first].position, members[j].position);
        if (d < best_d || (d == best_d && members[j].id < members[best].id)) {
            best_d = d;
            best = j;
        }
    }
    return {members[first].position, members[best].position};
}

std::pair<Point, Point> seeds_rp(std::span<const UserProfile> members, Rng& rng) {
    require_two(members);
    const std::size_t first = rng.below(members.size());
    std::size_t second = rng.below(members.size() - 1);
    if (second >= first) ++second;
    return {members[first].position, members[second].position};
}

std::pair<Point, Point> seeds_rs(std::span<const UserProfile> members, Rng& rng) {
    require_two(members);
    const auto idx = sorted_indices(members, true);
    const std::size_t lower_size = (idx.size() + 1) / 2;  // lower half takes the odd one
    const std::size_t lo = rng.below(lower_size);
    const std::size_t hi = lower_size + rng.below(idx.size() - lower_size);
    return {members[idx[lo]].position, members[idx[hi]].position};
}

std::pair<Point, Point> pick_seeds(SeedingMethod method,
                                   std::span<const UserProfile> members, Rng& rng) {
    switch (method) {
        case SeedingMethod::MN: return seeds_mn(members);
        case SeedingMethod::NR: return seeds_nr(members, rng);
        case SeedingMethod::RP: return seeds_rp(members, rng);
        case SeedingMethod::RS: return seeds_rs(members, rng);
    }
    throw ContractViolation("unknown seeding method");
}

}  // namespace clustercloak
