#include "clustercloak/anonymizer.hpp"

#include <algorithm>
#include <limits>

#include "clustercloak/errors.hpp"

namespace clustercloak {

PoiStore::PoiStore(std::vector<Poi> pois) : pois_(std::move(pois)) {
    std::sort(pois_.begin(), pois_.end(),
              [](const Poi& a, const Poi& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < pois_.size(); ++i) {
        if (!is_finite(pois_[i].position))
            throw ContractViolation("poi " + std::to_string(pois_[i].id) +
                                    ": coordinates must be finite");
        if (i > 0 && pois_[i].id == pois_[i - 1].id)
            throw ContractViolation("duplicate poi id " +
                                    std::to_string(pois_[i].id));
    }
}

CloakedMessage cloak(const ClusterSet& set, const SourceMessage& msg) {
    const ClusterId home = set.cluster_of(msg.user_id);
    const MBR& box = set.cluster(home).mbr;
    CloakedMessage out;
    out.user_id = msg.user_id;
    out.message_id = msg.message_id;
    // the rectangle midpoints expanded by half width/height; written as the
    // spans themselves so boundary members never fall a rounding error
    // outside their own cloak
    out.x_range = {box.x_min, box.x_max};
    out.y_range = {box.y_min, box.y_max};
    out.content = msg.content;
    return out;
}

std::vector<Poi> lbs_range_query(const PoiStore& store, const CloakedMessage& cloaked,
                                 const std::string& category, double slack) {
    if (!(slack >= 0.0)) throw ContractViolation("slack must be >= 0");
    const MBR rect{cloaked.x_range.lo, cloaked.x_range.hi, cloaked.y_range.lo,
                   cloaked.y_range.hi};

    // Distance of every matching point to the rectangle; the smallest one
    // bounds how far the slack has to grow.
    std::vector<std::pair<double, const Poi*>> matching;
    double nearest = std::numeric_limits<double>::infinity();
    for (const Poi& poi : store.all()) {
        if (poi.category != category) continue;
        const double d = rect_distance(rect, poi.position);
        matching.emplace_back(d, &poi);
        nearest = std::min(nearest, d);
    }
    if (matching.empty())
        throw NoResultError("no point of interest in category '" + category + "'");

    // Widen an empty window: zero slack becomes one map unit, then doubles.
    double s = slack;
    while (s < nearest) s = (s == 0.0) ? 1.0 : s * 2.0;

    std::vector<Poi> out;
    for (const auto& [d, poi] : matching)
        if (d <= s) out.push_back(*poi);
    return out;  // store order == id order
}

Poi select_optimal(const std::vector<Poi>& candidates, const Point& exact) {
    if (candidates.empty())
        throw ContractViolation("select_optimal on an empty candidate list");
    const Poi* best = &candidates.front();
    double best_d = squared_distance(best->position, exact);
    for (const Poi& p : candidates) {
        const double d = squared_distance(p.position, exact);
        if (d < best_d || (d == best_d && p.id < best->id)) {
            best = &p;
            best_d = d;
        }
    }
    return *best;
}

QueryResult answer_query(const ClusterSet& set, const PoiStore& store,
                         const SourceMessage& msg, const std::string& category,
                         double slack) {
    const CloakedMessage cloaked = cloak(set, msg);
    const std::vector<Poi> candidates =
        lbs_range_query(store, cloaked, category, slack);
    QueryResult result;
    result.poi = select_optimal(candidates, msg.position);
    result.candidate_count = candidates.size();
    result.cloak_area = cloaked.x_range.width() * cloaked.y_range.width();
    return result;
}

}  // namespace clustercloak
