#include <doctest.h>

#include <cmath>
#include <vector>

#include "clustercloak/errors.hpp"
#include "clustercloak/geometry.hpp"
#include "clustercloak/rng.hpp"

using namespace clustercloak;

TEST_CASE("centroid is the arithmetic mean") {
    const std::vector<Point> tri{{0, 0}, {2, 0}, {1, 3}};
    const Point c = centroid(tri);
    CHECK(c.x == doctest::Approx(1.0));
    CHECK(c.y == doctest::Approx(1.0));

    const std::vector<Point> one{{5, 5}};
    CHECK(centroid(one) == Point{5, 5});

    const std::vector<Point> square{{0, 0}, {10, 0}, {0, 10}, {10, 10}};
    CHECK(centroid(square) == Point{5, 5});

    CHECK_THROWS_AS(centroid({}), ContractViolation);
}

TEST_CASE("centroid minimizes the squared-distance sum") {
    Rng rng(7);
    for (int round = 0; round < 20; ++round) {
        std::vector<Point> pts;
        const int n = 2 + static_cast<int>(rng.below(30));
        for (int i = 0; i < n; ++i)
            pts.push_back({rng.range(-100, 100), rng.range(-100, 100)});
        const Point c = centroid(pts);
        auto ssd = [&](const Point& q) {
            double total = 0.0;
            for (const Point& p : pts) total += squared_distance(p, q);
            return total;
        };
        const double at_centroid = ssd(c);
        for (int trial = 0; trial < 100; ++trial) {
            const Point q{c.x + rng.range(-10, 10), c.y + rng.range(-10, 10)};
            CHECK(at_centroid <= ssd(q) + 1e-9);
        }
    }
}

TEST_CASE("distance_sum over hand-checked sets") {
    // per-point: (0,0)->(1,1) is sqrt(2), (2,0)->(1,1) is sqrt(2), (1,3)->(1,1) is 2
    const std::vector<Point> tri{{0, 0}, {2, 0}, {1, 3}};
    CHECK(distance_sum(tri, {1, 1}) == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)));

    const std::vector<Point> self{{3, 3}};
    CHECK(distance_sum(self, {3, 3}) == 0.0);

    const std::vector<Point> two{{0, 0}, {6, 8}};
    CHECK(distance_sum(two, {0, 0}) == doctest::Approx(10.0));

    CHECK_THROWS_AS(distance_sum({}, {0, 0}), ContractViolation);
}

TEST_CASE("mbr_of is tight and degenerates cleanly") {
    const std::vector<Point> pts{{1, 2}, {4, 6}, {3, 1}};
    const MBR box = mbr_of(pts);
    CHECK(box == MBR{1, 4, 1, 6});

    CHECK(mbr_of(std::vector<Point>{{7, 7}}) == MBR{7, 7, 7, 7});
    CHECK(mbr_of(std::vector<Point>{{0, 0}, {0, 5}}) == MBR{0, 0, 0, 5});
}

TEST_CASE("mbr_of containment and tightness over random sets") {
    Rng rng(11);
    for (int round = 0; round < 50; ++round) {
        std::vector<Point> pts;
        const int n = 1 + static_cast<int>(rng.below(40));
        for (int i = 0; i < n; ++i)
            pts.push_back({rng.range(-50, 50), rng.range(-50, 50)});
        const MBR box = mbr_of(pts);
        bool hit_xmin = false, hit_xmax = false, hit_ymin = false, hit_ymax = false;
        for (const Point& p : pts) {
            CHECK(box.contains(p));
            hit_xmin |= p.x == box.x_min;
            hit_xmax |= p.x == box.x_max;
            hit_ymin |= p.y == box.y_min;
            hit_ymax |= p.y == box.y_max;
        }
        CHECK(hit_xmin);
        CHECK(hit_xmax);
        CHECK(hit_ymin);
        CHECK(hit_ymax);
    }
}

TEST_CASE("interval_around") {
    CHECK(interval_around(5, 2) == Interval{3, 7});
    CHECK(interval_around(11, 3) == Interval{8, 14});
    CHECK(interval_around(0, 0) == Interval{0, 0});
    CHECK_THROWS_AS(interval_around(1, -0.5), ContractViolation);

    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const double t = rng.range(-1000, 1000);
        const double s = rng.range(0, 100);
        const Interval iv = interval_around(t, s);
        CHECK(iv.width() == doctest::Approx(2 * s));
        CHECK(iv.midpoint() == doctest::Approx(t));
    }
}

TEST_CASE("circle touch test counts tangency") {
    CHECK(circles_touch({0, 0}, 2.0, {3, 0}, 1.5));        // 3 <= 3.5
    CHECK_FALSE(circles_touch({0, 0}, 1.0, {5, 0}, 1.0));  // 5 > 2
    CHECK(circles_touch({0, 0}, 1.0, {2, 0}, 1.0));        // exactly tangent

    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const Point a{rng.range(-10, 10), rng.range(-10, 10)};
        const Point b{rng.range(-10, 10), rng.range(-10, 10)};
        const double ra = rng.range(0, 5);
        const double rb = rng.range(0, 5);
        CHECK(circles_touch(a, ra, b, rb) == circles_touch(b, rb, a, ra));
    }
}

TEST_CASE("rect_distance") {
    const MBR rect{0, 10, 0, 10};
    CHECK(rect_distance(rect, {5, 5}) == 0.0);
    CHECK(rect_distance(rect, {10, 10}) == 0.0);  // boundary
    CHECK(rect_distance(rect, {20, 20}) == doctest::Approx(std::sqrt(200.0)));
    CHECK(rect_distance(rect, {15, 5}) == doctest::Approx(5.0));
}
