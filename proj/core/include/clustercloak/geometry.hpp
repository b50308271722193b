#pragma once

#include <cmath>
#include <span>

namespace clustercloak {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline bool is_finite(const Point& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double squared_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Tight axis-aligned bounding rectangle. Zero width/height is legal
/// (single point, collinear points).
struct MBR {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    Point midpoint() const { return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0}; }

    bool contains(const Point& p) const {
        return x_min <= p.x && p.x <= x_max && y_min <= p.y && p.y <= y_max;
    }

    friend bool operator==(const MBR&, const MBR&) = default;
};

/// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double midpoint() const { return (lo + hi) / 2.0; }
    bool contains(double v) const { return lo <= v && v <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Arithmetic mean of the points. Throws ContractViolation on empty input.
Point centroid(std::span<const Point> points);

/// Sum of Euclidean distances from each point to `center`.
double distance_sum(std::span<const Point> points, const Point& center);

/// Bounding rectangle of a non-empty point set.
MBR mbr_of(std::span<const Point> points);

/// Extends the value `center` to the closed interval
/// [center - half_width, center + half_width]. half_width must be >= 0.
Interval interval_around(double center, double half_width);

/// Euclidean distance from a point to a rectangle; 0 when inside or on
/// the boundary.
double rect_distance(const MBR& rect, const Point& p);

/// Circle test on cluster footprints: true when the two circles are
/// tangent or intersecting (center gap <= sum of radii).
inline bool circles_touch(const Point& ca, double ra, const Point& cb, double rb) {
    return distance(ca, cb) <= ra + rb;
}

}  // namespace clustercloak
