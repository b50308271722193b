#pragma once

#include <string>
#include <vector>

#include "clustercloak/types.hpp"

namespace clustercloak {

/// The request pipeline: a query is cloaked to the user's cluster
/// rectangle, the provider answers over the rectangle alone, and the best
/// candidate for the exact position is picked on the trusted side.

struct Poi {
    PoiId id = 0;
    Point position;
    std::string category;

    friend bool operator==(const Poi&, const Poi&) = default;
};

/// Point-of-interest table, kept sorted by id; ids are unique.
class PoiStore {
public:
    PoiStore() = default;
    /// Throws ContractViolation on duplicate ids or non-finite positions.
    explicit PoiStore(std::vector<Poi> pois);

    const std::vector<Poi>& all() const { return pois_; }
    std::size_t size() const { return pois_.size(); }
    bool empty() const { return pois_.empty(); }

private:
    std::vector<Poi> pois_;
};

struct QueryResult {
    Poi poi;
    std::size_t candidate_count = 0;  // size of the provider's list
    double cloak_area = 0.0;          // rectangle area the provider saw
};

/// Replaces the exact position in `msg` by the coordinate ranges of the
/// user's cluster rectangle. The range midpoints are the rectangle
/// midpoints, so expanding them by half width/height reproduces the
/// rectangle exactly. Throws UnknownUserError.
CloakedMessage cloak(const ClusterSet& set, const SourceMessage& msg);

/// All points of the category within `slack` of the cloaked rectangle
/// (distance 0 = inside). An empty result widens the slack (0 becomes 1,
/// then doubling) until something is caught. Throws NoResultError when the
/// store holds no point of the category at all. Results in id order.
std::vector<Poi> lbs_range_query(const PoiStore& store, const CloakedMessage& cloaked,
                                 const std::string& category, double slack);

/// Candidate nearest to the exact position; ties go to the lowest id.
/// Throws ContractViolation on an empty list.
Poi select_optimal(const std::vector<Poi>& candidates, const Point& exact);

/// cloak -> lbs_range_query -> select_optimal. The provider-facing step
/// sees only the CloakedMessage, which carries no exact position.
QueryResult answer_query(const ClusterSet& set, const PoiStore& store,
                         const SourceMessage& msg, const std::string& category,
                         double slack = 0.0);

}  // namespace clustercloak
