#include "clustercloak/geometry.hpp"

#include <algorithm>

#include "clustercloak/errors.hpp"

namespace clustercloak {

Point centroid(std::span<const Point> points) {
    if (points.empty()) throw ContractViolation("centroid of empty point set");
    double sx = 0.0;
    double sy = 0.0;
    for (const Point& p : points) {
        sx += p.x;
        sy += p.y;
    }
    const double n = static_cast<double>(points.size());
    return {sx / n, sy / n};
}

double distance_sum(std::span<const Point> points, const Point& center) {
    if (points.empty()) throw ContractViolation("distance_sum of empty point set");
    double total = 0.0;
    for (const Point& p : points) total += distance(p, center);
    return total;
}

MBR mbr_of(std::span<const Point> points) {
    if (points.empty()) throw ContractViolation("mbr_of empty point set");
    MBR box{points[0].x, points[0].x, points[0].y, points[0].y};
    for (const Point& p : points.subspan(1)) {
        box.x_min = std::min(box.x_min, p.x);
        box.x_max = std::max(box.x_max, p.x);
        box.y_min = std::min(box.y_min, p.y);
        box.y_max = std::max(box.y_max, p.y);
    }
    return box;
}

Interval interval_around(double center, double half_width) {
    if (!(half_width >= 0.0))
        throw ContractViolation("interval_around requires half_width >= 0");
    return {center - half_width, center + half_width};
}

double rect_distance(const MBR& rect, const Point& p) {
    const double dx = std::max({rect.x_min - p.x, 0.0, p.x - rect.x_max});
    const double dy = std::max({rect.y_min - p.y, 0.0, p.y - rect.y_max});
    return std::hypot(dx, dy);
}

}  // namespace clustercloak
