#include "clustercloak/engine.hpp"

#include <algorithm>
#include <set>

#include "clustercloak/errors.hpp"
#include "clustercloak/seeding.hpp"

namespace clustercloak {

std::string to_string(SeedingMethod m) {
    switch (m) {
        case SeedingMethod::MN: return "mn";
        case SeedingMethod::NR: return "nr";
        case SeedingMethod::RP: return "rp";
        case SeedingMethod::RS: return "rs";
    }
    return "?";
}

std::optional<SeedingMethod> parse_seeding(const std::string& token) {
    if (token == "mn") return SeedingMethod::MN;
    if (token == "nr") return SeedingMethod::NR;
    if (token == "rp") return SeedingMethod::RP;
    if (token == "rs") return SeedingMethod::RS;
    return std::nullopt;
}

RobustnessState compute_robustness(const std::vector<int>& sorted_ks) {
    if (sorted_ks.empty())
        throw ContractViolation("robustness of an empty cluster");
    const int m = static_cast<int>(sorted_ks.size());
    const int k_max = sorted_ks.back();

    if (m > k_max) return {0.0, m - k_max, true};
    if (m < k_max) return {1.0, 0, false};
    // m == k_max: a departure breaks the level unless the one user holding
    // the unique maximum is the one who leaves.
    const bool unique_max = m == 1 || sorted_ks[m - 2] < k_max;
    if (unique_max) return {static_cast<double>(m - 1) / m, 0, true};
    return {1.0, 0, true};
}

bool is_division_candidate(const Cluster& c) {
    return c.split_state == SplitState::Pending && c.rebuild_probability == 0.0 &&
           c.extra_members > 1;
}

namespace {

bool half_feasible(const std::vector<const UserProfile*>& half) {
    int k_max = 0;
    for (const UserProfile* u : half) k_max = std::max(k_max, u->k);
    return static_cast<int>(half.size()) >= k_max;
}

}  // namespace

Bisection bisect_members(std::span<const UserProfile> members,
                         std::pair<Point, Point> seeds,
                         const EngineConfig& config) {
    if (members.size() < 2)
        throw ContractViolation("bisection needs at least two members");

    Point ca = seeds.first;
    Point cb = seeds.second;
    std::vector<const UserProfile*> half_a;
    std::vector<const UserProfile*> half_b;

    for (int iter = 0; iter < config.max_bisection_iterations; ++iter) {
        half_a.clear();
        half_b.clear();
        for (const UserProfile& u : members) {
            if (squared_distance(u.position, ca) <= squared_distance(u.position, cb))
                half_a.push_back(&u);
            else
                half_b.push_back(&u);
        }
        if (half_a.empty() || half_b.empty()) return {};  // degenerate seeds

        std::vector<Point> pts_a;
        pts_a.reserve(half_a.size());
        for (const UserProfile* u : half_a) pts_a.push_back(u->position);
        std::vector<Point> pts_b;
        pts_b.reserve(half_b.size());
        for (const UserProfile* u : half_b) pts_b.push_back(u->position);

        const Point na = centroid(pts_a);
        const Point nb = centroid(pts_b);
        const double moved = std::max(distance(ca, na), distance(cb, nb));
        ca = na;
        cb = nb;
        if (moved < config.center_tolerance) break;
    }

    if (!half_feasible(half_a) || !half_feasible(half_b)) return {};

    Bisection out;
    out.divided = true;
    out.center_a = ca;
    out.center_b = cb;
    out.half_a.reserve(half_a.size());
    for (const UserProfile* u : half_a) out.half_a.push_back(u->id);
    out.half_b.reserve(half_b.size());
    for (const UserProfile* u : half_b) out.half_b.push_back(u->id);
    return out;
}

std::optional<std::pair<ClusterId, ClusterId>> divide_cluster(
    ClusterSet& set, ClusterId id, const EngineConfig& config, Rng& rng,
    ReportBuilder* report) {
    const Cluster& c = set.cluster(id);
    std::vector<UserProfile> members;
    members.reserve(c.members.size());
    for (UserId uid : c.members) members.push_back(set.profile(uid));

    const auto seeds = pick_seeds(config.seeding, members, rng);
    const Bisection b = bisect_members(members, seeds, config);
    if (!b.divided) {
        set.set_split_state(id, SplitState::Terminal);
        return std::nullopt;
    }
    const auto children = set.split_cluster(id, b.half_a, b.half_b);
    if (report) {
        report->on_deleted(id);
        report->on_created(children.first);
        report->on_created(children.second);
    }
    return children;
}

void divide_to_fixpoint(ClusterSet& set, std::vector<ClusterId> ids,
                        const EngineConfig& config, Rng& rng,
                        ReportBuilder* report) {
    std::set<ClusterId> worklist(ids.begin(), ids.end());
    while (!worklist.empty()) {
        const ClusterId id = *worklist.begin();
        worklist.erase(worklist.begin());
        if (!set.has_cluster(id)) continue;
        if (!is_division_candidate(set.cluster(id))) continue;

        if (const auto children = divide_cluster(set, id, config, rng, report)) {
            worklist.insert(children->first);
            worklist.insert(children->second);
        }
    }
}

ClusterSet build_clusters(const std::vector<UserProfile>& users,
                          const EngineConfig& config, Rng& rng) {
    if (users.empty()) throw ContractViolation("cannot cluster an empty population");
    int k_max = 0;
    for (const UserProfile& u : users) {
        validate_profile(u);
        k_max = std::max(k_max, u.k);
    }
    if (static_cast<int>(users.size()) < k_max)
        throw AnonymityUnsatisfiableError(
            "population of " + std::to_string(users.size()) +
            " cannot satisfy anonymity level " + std::to_string(k_max));

    ClusterSet set;
    const ClusterId root = set.create_cluster(users);
    divide_to_fixpoint(set, {root}, config, rng);
    return set;
}

ClusterSet build_clusters(const std::vector<UserProfile>& users,
                          const EngineConfig& config) {
    Rng rng(config.rng_seed);
    return build_clusters(users, config, rng);
}

}  // namespace clustercloak
