#include <doctest.h>

#include <cmath>
#include <vector>

#include "clustercloak/anonymizer.hpp"
#include "clustercloak/engine.hpp"
#include "clustercloak/errors.hpp"
#include "support/oracles.hpp"

using namespace clustercloak;

// the cloaked record must not be able to carry an exact position
template <typename T>
concept carries_exact_position = requires(T t) { t.position; };
static_assert(carries_exact_position<SourceMessage>);
static_assert(!carries_exact_position<CloakedMessage>);

namespace {

ClusterSet one_cluster(const std::vector<UserProfile>& users) {
    ClusterSet set;
    set.create_cluster(users);
    return set;
}

}  // namespace

TEST_CASE("cloaking reproduces the cluster rectangle") {
    // rectangle x in [8,14], y in [18,26]
    const ClusterSet set = one_cluster({{1, {8, 18}, 2}, {2, {14, 26}, 2}});
    const CloakedMessage m = cloak(set, {1, 7, {8, 18}, 2, "cafe"});
    CHECK(m.x_range.lo == doctest::Approx(8).epsilon(1e-12));
    CHECK(m.x_range.hi == doctest::Approx(14).epsilon(1e-12));
    CHECK(m.y_range.lo == doctest::Approx(18).epsilon(1e-12));
    CHECK(m.y_range.hi == doctest::Approx(26).epsilon(1e-12));
    CHECK(m.user_id == 1);
    CHECK(m.message_id == 7);
    CHECK(m.content == "cafe");
}

TEST_CASE("cloaking a degenerate cluster gives point ranges") {
    const ClusterSet set = one_cluster({{1, {7, 7}, 2}, {2, {7, 7}, 2}});
    const CloakedMessage m = cloak(set, {1, 1, {7, 7}, 2, ""});
    CHECK(m.x_range == Interval{7, 7});
    CHECK(m.y_range == Interval{7, 7});
}

TEST_CASE("the requester always sits inside the emitted ranges") {
    Rng gen(512);
    for (int round = 0; round < 20; ++round) {
        const auto users = oracles::random_users(gen, 20, {0, 100, 0, 100});
        EngineConfig cfg;
        cfg.seeding = SeedingMethod::RS;
        cfg.rng_seed = round;
        const ClusterSet set = build_clusters(users, cfg);
        for (const auto& u : users) {
            const CloakedMessage m = cloak(set, {u.id, 1, u.position, u.k, ""});
            CHECK(m.x_range.contains(u.position.x));
            CHECK(m.y_range.contains(u.position.y));
        }
    }
}

TEST_CASE("cloaked ranges rebuild the rectangle exactly") {
    Rng gen(513);
    const auto users = oracles::random_users(gen, 40, {0, 1000, 0, 1000});
    EngineConfig cfg;
    cfg.seeding = SeedingMethod::MN;
    const ClusterSet set = build_clusters(users, cfg);
    for (const auto& u : users) {
        const CloakedMessage m = cloak(set, {u.id, 1, u.position, u.k, ""});
        const MBR& box = set.cluster(set.cluster_of(u.id)).mbr;
        CHECK(std::abs(m.x_range.lo - box.x_min) < 1e-9);
        CHECK(std::abs(m.x_range.hi - box.x_max) < 1e-9);
        CHECK(std::abs(m.y_range.lo - box.y_min) < 1e-9);
        CHECK(std::abs(m.y_range.hi - box.y_max) < 1e-9);
    }
}

TEST_CASE("cluster mates are indistinguishable up to ids") {
    const ClusterSet set = one_cluster(
        {{1, {0, 0}, 2}, {2, {3, 1}, 2}, {3, {1, 4}, 2}});
    const CloakedMessage a = cloak(set, {1, 100, {0, 0}, 2, "fuel"});
    const CloakedMessage b = cloak(set, {3, 101, {1, 4}, 2, "fuel"});
    CHECK(a.x_range == b.x_range);
    CHECK(a.y_range == b.y_range);
    CHECK(a.content == b.content);
}

TEST_CASE("cloaking for a stranger fails") {
    const ClusterSet set = one_cluster({{1, {0, 0}, 2}, {2, {1, 1}, 2}});
    CHECK_THROWS_AS(cloak(set, {99, 1, {0, 0}, 2, ""}), UnknownUserError);
}

TEST_CASE("range query keeps points in or near the rectangle") {
    const PoiStore store({{1, {5, 5}, "cafe"}, {2, {20, 20}, "cafe"}});
    CloakedMessage cloaked;
    cloaked.x_range = {0, 10};
    cloaked.y_range = {0, 10};

    const auto hits = lbs_range_query(store, cloaked, "cafe", 0.0);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].id == 1);
}

TEST_CASE("an empty window widens until something is caught") {
    // (20,20) sits sqrt(200) ~ 14.14 from the rectangle; the slack path is
    // 0 -> 1 -> 2 -> 4 -> 8 -> 16, so the point is caught at 16
    const PoiStore store({{2, {20, 20}, "cafe"}});
    CloakedMessage cloaked;
    cloaked.x_range = {0, 10};
    cloaked.y_range = {0, 10};
    const double dist = rect_distance({0, 10, 0, 10}, {20, 20});
    CHECK(dist == doctest::Approx(std::sqrt(200.0)));
    double slack = 0.0;
    while (slack < dist) slack = slack == 0.0 ? 1.0 : slack * 2.0;
    CHECK(slack == 16.0);

    const auto hits = lbs_range_query(store, cloaked, "cafe", 0.0);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].id == 2);
}

TEST_CASE("a category with no points anywhere is NoResult") {
    const PoiStore store({{1, {5, 5}, "cafe"}});
    CloakedMessage cloaked;
    cloaked.x_range = {0, 10};
    cloaked.y_range = {0, 10};
    CHECK_THROWS_AS(lbs_range_query(store, cloaked, "fuel", 0.0), NoResultError);
    CHECK_THROWS_AS(lbs_range_query(PoiStore{}, cloaked, "cafe", 0.0), NoResultError);
}

TEST_CASE("optimal selection is nearest with id tie-break") {
    // both candidates sit at distance 5; the lower id wins
    const std::vector<Poi> tie{{3, {3, 4}, "x"}, {9, {5, 0}, "x"}};
    CHECK(select_optimal(tie, {0, 0}).id == 3);

    const std::vector<Poi> plain{{1, {1, 1}, "x"}, {2, {10, 10}, "x"}};
    CHECK(select_optimal(plain, {0, 0}).id == 1);

    const std::vector<Poi> single{{8, {2, 2}, "x"}};
    CHECK(select_optimal(single, {0, 0}).id == 8);

    CHECK_THROWS_AS(select_optimal({}, {0, 0}), ContractViolation);
}

TEST_CASE("answer_query composes the pipeline") {
    const ClusterSet set = one_cluster({{1, {2, 2}, 2}, {2, {8, 8}, 2}});
    const PoiStore store({{5, {4, 4}, "cafe"}});
    const QueryResult r = answer_query(set, store, {1, 1, {2, 2}, 2, "cafe"}, "cafe");
    CHECK(r.poi.id == 5);
    CHECK(r.candidate_count >= 1);
    CHECK(r.cloak_area == doctest::Approx(36.0));  // 6 x 6 rectangle
}

TEST_CASE("in-cloak winners equal the brute-force nearest point") {
    Rng gen(611);
    const MBR world{0, 200, 0, 200};
    const auto users = oracles::random_users(gen, 30, world);
    EngineConfig cfg;
    cfg.seeding = SeedingMethod::RS;
    const ClusterSet set = build_clusters(users, cfg);

    std::vector<Poi> pois;
    for (PoiId i = 1; i <= 60; ++i)
        pois.push_back({i, {gen.range(0, 200), gen.range(0, 200)}, "cafe"});
    const PoiStore store(std::move(pois));

    for (const auto& u : users) {
        // direct scan over the whole store
        const Poi* nearest = nullptr;
        for (const Poi& p : store.all())
            if (!nearest ||
                distance(p.position, u.position) < distance(nearest->position, u.position))
                nearest = &p;
        const MBR& box = set.cluster(set.cluster_of(u.id)).mbr;
        const QueryResult r =
            answer_query(set, store, {u.id, 1, u.position, u.k, "cafe"}, "cafe");
        if (rect_distance(box, nearest->position) == 0.0)
            CHECK(r.poi.id == nearest->id);
        CHECK(r.cloak_area == doctest::Approx(box.area()));
    }
}
