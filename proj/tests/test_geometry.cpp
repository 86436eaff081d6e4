#include <cmath>

#include "doctest.h"
#include "medax/geometry.hpp"

using namespace medax;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
    CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    CHECK(wrap_angle(-3 * kPi / 2) == doctest::Approx(kPi / 2));
    CHECK(wrap_angle(5 * kPi) == doctest::Approx(kPi));
}

TEST_CASE("undirected_diff folds to [0, pi/2]") {
    CHECK(undirected_diff(0.0, kPi) == doctest::Approx(0.0));  // anti-parallel walls
    CHECK(undirected_diff(0.1, -kPi + 0.1) == doctest::Approx(0.0));
    CHECK(undirected_diff(0.0, kPi / 2) == doctest::Approx(kPi / 2));
    CHECK(undirected_diff(-kPi / 4, kPi / 4) == doctest::Approx(kPi / 2));
    CHECK(undirected_diff(0.2, 0.5) == doctest::Approx(0.3));
}

TEST_CASE("circular_variance") {
    CHECK(circular_variance({0.3, 0.3, 0.3}) == doctest::Approx(0.0));
    CHECK(circular_variance({0.0, kPi / 2, kPi, -kPi / 2}) == doctest::Approx(1.0));
    // the pi seam is not special
    CHECK(circular_variance({kPi - 0.01, -kPi + 0.01}) == doctest::Approx(0.0).epsilon(1e-3));
}

TEST_CASE("direction_mean handles the mod-pi seam and the degenerate bisector") {
    CHECK(direction_mean({0.1, 0.2}) == doctest::Approx(0.15));
    // pi/2 - eps and -pi/2 + eps are the same direction family
    CHECK(std::fabs(direction_mean({kPi / 2 - 0.01, -kPi / 2 + 0.01})) > kPi / 2 - 0.02);
    // perpendicular directions have no doubled-angle mean; arithmetic fallback
    CHECK(direction_mean({0.0, kPi / 2}) == doctest::Approx(kPi / 4));
}

TEST_CASE("bresenham_line is 8-connected and hits both endpoints") {
    for (const auto &[a, b] : {std::pair<Pixel, Pixel>{{0, 0}, {7, 3}},
                               std::pair<Pixel, Pixel>{{5, 5}, {-2, 9}},
                               std::pair<Pixel, Pixel>{{3, 3}, {3, 3}},
                               std::pair<Pixel, Pixel>{{0, 0}, {0, -6}}}) {
        const auto line = bresenham_line(a, b);
        REQUIRE(!line.empty());
        CHECK(line.front() == a);
        CHECK(line.back() == b);
        for (size_t i = 0; i + 1 < line.size(); ++i) {
            CHECK(std::abs(line[i].x - line[i + 1].x) <= 1);
            CHECK(std::abs(line[i].y - line[i + 1].y) <= 1);
            CHECK(line[i] != line[i + 1]);
        }
    }
}

TEST_CASE("segment_intersection") {
    Vec2 x;
    CHECK(segment_intersection({0, 0}, {10, 0}, {5, -5}, {5, 5}, x));
    CHECK(x.x == doctest::Approx(5.0));
    CHECK(x.y == doctest::Approx(0.0));
    CHECK(!segment_intersection({0, 0}, {10, 0}, {0, 1}, {10, 1}, x));  // parallel
    CHECK(!segment_intersection({0, 0}, {1, 0}, {5, -5}, {5, 5}, x));   // too short
}

TEST_CASE("point_polyline_distance") {
    const std::vector<Vec2> poly{{0, 0}, {10, 0}, {10, 10}};
    CHECK(point_polyline_distance({5, 3}, poly) == doctest::Approx(3.0));
    CHECK(point_polyline_distance({12, 10}, poly) == doctest::Approx(2.0));
    CHECK(point_polyline_distance({-3, -4}, poly) == doctest::Approx(5.0));
}
