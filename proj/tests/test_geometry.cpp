#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace maplink;
using testutil::Rng;

namespace {

std::vector<Vec2> random_points(Rng& rng, int n) {
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back({rng.real(-50.0, 50.0), rng.real(-50.0, 50.0)});
    return pts;
}

bool box_contains(const OrientedBox& b, Vec2 p, double eps) { return testutil::oracle_point_in_box(b, p, eps); }

bool boxes_intersect_oracle(const OrientedBox& a, const OrientedBox& b) {
    auto ca = testutil::oracle_corners(a);
    auto cb = testutil::oracle_corners(b);
    for (Vec2 p : ca)
        if (testutil::oracle_point_in_box(b, p)) return true;
    for (Vec2 p : cb)
        if (testutil::oracle_point_in_box(a, p)) return true;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (testutil::oracle_segments_intersect(ca[static_cast<std::size_t>(i)],
                                                    ca[static_cast<std::size_t>((i + 1) % 4)],
                                                    cb[static_cast<std::size_t>(j)],
                                                    cb[static_cast<std::size_t>((j + 1) % 4)]))
                return true;
    return false;
}

OrientedBox random_box(Rng& rng) {
    return min_area_rect(testutil::rect_polygon({rng.real(-100.0, 100.0), rng.real(-100.0, 100.0)},
                                                rng.real(4.0, 60.0), rng.real(1.0, 3.9), rng.real(0.0, 180.0)));
}

}  // namespace

TEST_CASE("min_area_rect on an axis-aligned unit square", "[geometry]") {
    OrientedBox b = min_area_rect({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(b.center.x == Catch::Approx(0.5).margin(1e-12));
    CHECK(b.center.y == Catch::Approx(0.5).margin(1e-12));
    CHECK(b.width == Catch::Approx(1.0).margin(1e-9));
    CHECK(b.height == Catch::Approx(1.0).margin(1e-9));
    CHECK(b.angle == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("min_area_rect recovers a rotated 4x2 rectangle", "[geometry]") {
    Polygon p = testutil::rect_polygon({10.0, -3.0}, 4.0, 2.0, 45.0);
    OrientedBox b = min_area_rect(p);
    CHECK(b.width == Catch::Approx(4.0).margin(1e-9));
    CHECK(b.height == Catch::Approx(2.0).margin(1e-9));
    CHECK(b.angle == Catch::Approx(45.0).margin(1e-9));
    CHECK(b.center.x == Catch::Approx(10.0).margin(1e-9));
    CHECK(b.center.y == Catch::Approx(-3.0).margin(1e-9));
}

TEST_CASE("min_area_rect matches an angle-sweep oracle on random hulls", "[geometry]") {
    Rng rng(20240901);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Vec2> pts = random_points(rng, rng.integer(3, 10));
        OrientedBox b = min_area_rect(Polygon(pts.begin(), pts.end()));
        double oracle = testutil::sweep_min_area(pts);
        REQUIRE(b.width * b.height == Catch::Approx(oracle).margin(1e-4));
    }
}

TEST_CASE("min_area_rect degenerate and invalid inputs", "[geometry]") {
    SECTION("collinear points give a zero-height box spanning the hull") {
        OrientedBox b = min_area_rect({{0, 0}, {1, 1}, {2, 2}});
        CHECK(b.height == 0.0);
        CHECK(b.width == Catch::Approx(std::sqrt(8.0)).margin(1e-9));
    }
    SECTION("fewer than 3 vertices is rejected") {
        CHECK_THROWS_AS(min_area_rect({{0, 0}, {1, 0}}), InputError);
        CHECK_THROWS_AS(min_area_rect({}), InputError);
    }
    SECTION("consecutive duplicate vertices are rejected") {
        CHECK_THROWS_AS(min_area_rect({{0, 0}, {0, 0}, {1, 1}}), InputError);
    }
}

TEST_CASE("min_area_rect bounds and containment over random polygons", "[geometry]") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Vec2> pts = random_points(rng, rng.integer(3, 12));
        OrientedBox b = min_area_rect(Polygon(pts.begin(), pts.end()));

        double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
        for (Vec2 p : pts) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
        REQUIRE(b.width * b.height <= (xmax - xmin) * (ymax - ymin) + 1e-9);
        for (Vec2 p : pts) REQUIRE(box_contains(b, p, 1e-6));
        // Near-square boxes keep the native caliper axis, so width may trail
        // height by up to the 1% aspect window.
        REQUIRE(b.width >= 0.99 * b.height);
        REQUIRE(b.angle >= 0.0);
        REQUIRE(b.angle < 180.0);
    }
}

TEST_CASE("box_min_distance hand cases", "[geometry]") {
    OrientedBox a = min_area_rect(testutil::rect_polygon({0, 0}, 1, 1, 0));
    OrientedBox b = min_area_rect(testutil::rect_polygon({3, 0}, 1, 1, 0));
    CHECK(box_min_distance(a, b) == Catch::Approx(2.0).margin(1e-9));

    OrientedBox c = min_area_rect(testutil::rect_polygon({0.4, 0.2}, 1, 1, 30));
    CHECK(box_min_distance(a, c) == 0.0);
}

TEST_CASE("box_min_distance matches a boundary-sampling oracle", "[geometry]") {
    Rng rng(101);
    int checked = 0;
    while (checked < 80) {
        OrientedBox a = random_box(rng);
        OrientedBox b = random_box(rng);
        double got = box_min_distance(a, b);
        double want = testutil::sample_box_distance(a, b, 400);
        REQUIRE(got == Catch::Approx(want).margin(1e-3));
        ++checked;
    }
}

TEST_CASE("box_min_distance symmetry, sign, and intersection agreement", "[geometry]") {
    Rng rng(555);
    for (int trial = 0; trial < 300; ++trial) {
        OrientedBox a = random_box(rng);
        OrientedBox b = random_box(rng);
        double dab = box_min_distance(a, b);
        double dba = box_min_distance(b, a);
        REQUIRE(dab == dba);
        REQUIRE(dab >= 0.0);
        REQUIRE((dab == 0.0) == boxes_intersect_oracle(a, b));
    }
}

TEST_CASE("rigid motions preserve distance and angle difference", "[geometry]") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        Polygon pa = testutil::rect_polygon({rng.real(-40, 40), rng.real(-40, 40)}, rng.real(5, 40), rng.real(1, 4.9),
                                            rng.real(0, 180));
        Polygon pb = testutil::rect_polygon({rng.real(-40, 40), rng.real(-40, 40)}, rng.real(5, 40), rng.real(1, 4.9),
                                            rng.real(0, 180));
        double rot = rng.real(0, 360);
        Vec2 shift{rng.real(-500, 500), rng.real(-500, 500)};

        OrientedBox a0 = min_area_rect(pa), b0 = min_area_rect(pb);
        OrientedBox a1 = min_area_rect(testutil::transformed(pa, rot, shift));
        OrientedBox b1 = min_area_rect(testutil::transformed(pb, rot, shift));

        CHECK(box_min_distance(a1, b1) == Catch::Approx(box_min_distance(a0, b0)).margin(1e-6));
        CHECK(axis_angle_diff(a1, b1) == Catch::Approx(axis_angle_diff(a0, b0)).margin(1e-6));
    }
}

TEST_CASE("uniform scaling scales distance and fixes angle difference", "[geometry]") {
    Rng rng(31337);
    for (double s : {0.25, 3.0, 117.5}) {
        for (int trial = 0; trial < 40; ++trial) {
            Polygon pa = testutil::rect_polygon({rng.real(-40, 40), rng.real(-40, 40)}, rng.real(5, 40),
                                                rng.real(1, 4.9), rng.real(0, 180));
            Polygon pb = testutil::rect_polygon({rng.real(-40, 40), rng.real(-40, 40)}, rng.real(5, 40),
                                                rng.real(1, 4.9), rng.real(0, 180));
            OrientedBox a0 = min_area_rect(pa), b0 = min_area_rect(pb);
            OrientedBox a1 = min_area_rect(testutil::transformed(pa, 0.0, {0, 0}, s));
            OrientedBox b1 = min_area_rect(testutil::transformed(pb, 0.0, {0, 0}, s));

            double d0 = box_min_distance(a0, b0);
            double d1 = box_min_distance(a1, b1);
            CHECK(d1 == Catch::Approx(d0 * s).epsilon(1e-9).margin(1e-12));
            CHECK(axis_angle_diff(a1, b1) == Catch::Approx(axis_angle_diff(a0, b0)).margin(1e-9));
        }
    }
}

TEST_CASE("axis_angle_diff folds to the acute axis difference", "[geometry]") {
    auto with_angle = [](double deg) {
        OrientedBox b;
        b.center = {0, 0};
        b.width = 10;
        b.height = 2;
        b.angle = deg;
        return b;
    };
    CHECK(axis_angle_diff(with_angle(0), with_angle(0)) == 0.0);
    CHECK(axis_angle_diff(with_angle(10), with_angle(170)) == Catch::Approx(20.0).margin(1e-12));
    CHECK(axis_angle_diff(with_angle(30), with_angle(100)) == Catch::Approx(70.0).margin(1e-12));
    CHECK(axis_angle_diff(with_angle(170), with_angle(10)) == Catch::Approx(20.0).margin(1e-12));
}

TEST_CASE("corners reproduce the documented box frame", "[geometry]") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        OrientedBox b = random_box(rng);
        auto got = b.corners();
        auto want = testutil::oracle_corners(b);
        for (int i = 0; i < 4; ++i) {
            CHECK(got[static_cast<std::size_t>(i)].x ==
                  Catch::Approx(want[static_cast<std::size_t>(i)].x).margin(1e-9));
            CHECK(got[static_cast<std::size_t>(i)].y ==
                  Catch::Approx(want[static_cast<std::size_t>(i)].y).margin(1e-9));
        }
    }
}
