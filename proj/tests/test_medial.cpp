#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "medax/contour.hpp"
#include "medax/medial.hpp"
#include "medax/raster.hpp"
#include "medax/segmentation.hpp"
#include "medax/synth.hpp"

using namespace medax;

namespace {

struct Scene {
    BinaryImage img;
    std::vector<Contour> contours;
    std::vector<ContourStroke> strokes;
};

Scene build_scene(const GrayImage &gray) {
    Scene s;
    s.img = otsu_binarize(gray);
    const auto comps = connected_components(s.img);
    REQUIRE(comps.size() == 1);
    s.contours = trace_contours(comps[0], s.img);
    for (const auto &c : s.contours) {
        const auto strokes = segment_contour(c, SegConfig{});
        s.strokes.insert(s.strokes.end(), strokes.begin(), strokes.end());
    }
    return s;
}

int find_index(const Contour &c, Pixel p) {
    for (int i = 0; i < c.size(); ++i)
        if (c.points[i] == p) return i;
    return -1;
}

}  // namespace

TEST_CASE("local_orientation on straight runs") {
    const Scene bar = build_scene(make_bar(30, 8, 4).image);
    const Contour &c = bar.contours[0];
    // a pixel well inside the top wall run
    const int i = find_index(c, {15, 4});
    REQUIRE(i >= 0);
    CHECK(std::fabs(local_orientation(c, i, 5)) < 0.05);

    const Scene vbar = build_scene(make_rotated_bar(30, 8, 90, 4).image);
    const Contour &vc = vbar.contours[0];
    int vi = -1;
    for (int k = 0; k < vc.size(); ++k) {
        const Pixel &p = vc.points[k];
        bool interior_wall = true;
        for (int d = -5; d <= 5; ++d)
            if (vc.at(k + d).x != p.x) interior_wall = false;
        if (interior_wall) vi = k;
    }
    REQUIRE(vi >= 0);
    CHECK(std::fabs(std::fabs(local_orientation(vc, vi, 5)) - kPi / 2) < 0.05);
}

TEST_CASE("local_orientation at a symmetric corner is the bisector") {
    // synthetic right-angle corner: 6 px arriving from below, 6 px leaving east
    Contour c;
    for (int k = 6; k >= 1; --k) c.points.push_back({0, k});
    c.points.push_back({0, 0});  // the apex, index 6
    for (int k = 1; k <= 6; ++k) c.points.push_back({k, 0});
    // keep cyclic neighbors defined away from the window
    for (int k = 0; k < 8; ++k) c.points.push_back({6, k + 1});

    // independent hand evaluation of the ten chord angles at the apex:
    // forward chords all point east (0), backward chords point down (pi/2),
    // flipped to -pi/2; averaging as directions gives the +pi/4 bisector
    const double theta = local_orientation(c, 6, 5);
    CHECK(std::fabs(theta) == doctest::Approx(kPi / 4).epsilon(0.02));
}

TEST_CASE("perpendicular_hit crosses a bar to the same column") {
    const Scene bar = build_scene(make_bar(30, 8, 4).image);
    const Contour &c = bar.contours[0];
    const int i = find_index(c, {15, 4});
    REQUIRE(i >= 0);
    const auto hit = perpendicular_hit(bar.img, {15, 4}, 0.0, 12.0);
    REQUIRE(hit.has_value());
    CHECK(hit->pixel == Pixel{15, 11});
    CHECK(hit->distance == doctest::Approx(7.0));
}

TEST_CASE("perpendicular_hit from the outer ring lands on the hole ring") {
    // annulus with ring thickness 3
    const SynthShape shape = make_annulus(11, 5, 4);
    const Scene ring = build_scene(shape.image);
    REQUIRE(ring.contours.size() == 2);
    // top wall pixel of the outer contour, mid-run
    const Pixel p{9, 4};
    REQUIRE(ring.img.at(p));
    const auto hit = perpendicular_hit(ring.img, p, 0.0, 12.0);
    REQUIRE(hit.has_value());
    CHECK(hit->pixel.x == p.x);
    CHECK(hit->distance == doctest::Approx(2.0).epsilon(0.51));  // ring thickness
    // the hit pixel belongs to the hole contour
    bool on_hole = false;
    for (const Pixel &q : ring.contours[1].points)
        if (q == hit->pixel) on_hole = true;
    CHECK(on_hole);
}

TEST_CASE("perpendicular_hit along the bar axis finds nothing") {
    const Scene bar = build_scene(make_bar(30, 8, 4).image);
    // cap pixel, ray cast along the bar (theta_local vertical)
    const auto hit = perpendicular_hit(bar.img, {4, 7}, kPi / 2, 12.0);
    CHECK(!hit.has_value());
}

TEST_CASE("bar extraction traces the analytic midline") {
    const Scene bar = build_scene(make_bar(40, 8, 8).image);
    const auto ext = extract_medial_segments(bar.strokes, bar.contours, bar.img, MedialConfig{});
    REQUIRE(ext.segments.size() == 1);
    const double mid_y = 8 + 3.5;
    for (const Vec2 &p : ext.segments[0].points) CHECK(std::fabs(p.y - mid_y) <= 1.0);
    CHECK(ext.segments[0].points.size() >= 25);
}

TEST_CASE("plus extraction skips the central junction square") {
    const Scene plus = build_scene(make_plus(40, 8, 8).image);
    const auto ext = extract_medial_segments(plus.strokes, plus.contours, plus.img, MedialConfig{});
    CHECK(ext.segments.size() == 4);
    // junction square: the 8x8 overlap is cols/rows [24, 32) in pixel terms
    for (const auto &seg : ext.segments)
        for (const Vec2 &p : seg.points) {
            const bool inside =
                p.x > 23.5 && p.x < 31.5 && p.y > 23.5 && p.y < 31.5;
            CHECK(!inside);
        }
}

TEST_CASE("strokes thicker than the pen width yield nothing") {
    const Scene fat = build_scene(make_bar(40, 20, 8).image);
    const auto ext = extract_medial_segments(fat.strokes, fat.contours, fat.img, MedialConfig{});
    CHECK(ext.segments.empty());
}

TEST_CASE("midpoints lie on ink and generator lines stay on ink") {
    for (const SynthShape &shape :
         {make_bar(40, 8, 8), make_rotated_bar(40, 8, 30, 8), make_plus(40, 8, 8)}) {
        CAPTURE(shape.name);
        const Scene sc = build_scene(shape.image);
        const auto ext = extract_medial_segments(sc.strokes, sc.contours, sc.img, MedialConfig{});
        for (const auto &seg : ext.segments) {
            REQUIRE(int(seg.points.size()) >= 3);  // min_segment_len
            for (size_t i = 0; i < seg.points.size(); ++i) {
                const Vec2 &p = seg.points[i];
                CHECK(sc.img.at({int(std::lround(p.x)), int(std::lround(p.y))}));
                if (i > 0) CHECK(distance(seg.points[i - 1], p) <= 2.0 + 1e-9);
            }
        }
    }
}

TEST_CASE("rectangle midline accuracy, axis-aligned and rotated") {
    struct Case {
        SynthShape shape;
        double tol;
    };
    const Case cases[] = {{make_bar(40, 8, 8), 1.0},
                          {make_rotated_bar(40, 8, 30, 8), 1.5},
                          {make_rotated_bar(40, 8, 45, 8), 1.5}};
    for (const Case &tc : cases) {
        CAPTURE(tc.shape.name);
        const Scene sc = build_scene(tc.shape.image);
        const auto ext = extract_medial_segments(sc.strokes, sc.contours, sc.img, MedialConfig{});
        REQUIRE(!ext.segments.empty());
        // every emitted point near the analytic midline, and the midline's
        // middle half is covered (Hausdorff-style, both directions)
        const std::vector<Vec2> &oracle = tc.shape.oracle;
        for (const auto &seg : ext.segments)
            for (const Vec2 &p : seg.points)
                CHECK(point_polyline_distance(p, oracle) <= tc.tol);
        const Vec2 a = oracle.front(), b = oracle.back();
        for (double t = 0.25; t <= 0.75; t += 0.05) {
            const Vec2 q = a + (b - a) * t;
            double best = 1e9;
            for (const auto &seg : ext.segments)
                for (const Vec2 &p : seg.points) best = std::min(best, distance(p, q));
            CHECK(best <= tc.tol);
        }
    }
}

TEST_CASE("widening the tolerances never loses accepted midpoints") {
    for (const SynthShape &shape :
         {make_bar(40, 8, 8), make_plus(40, 8, 8), make_rotated_bar(40, 8, 30, 8)}) {
        CAPTURE(shape.name);
        const Scene sc = build_scene(shape.image);
        MedialConfig base;
        const auto ref = extract_medial_segments(sc.strokes, sc.contours, sc.img, base);
        MedialConfig wide_angle = base;
        wide_angle.angle_tol *= 2;
        MedialConfig wide_pen = base;
        wide_pen.pen_width *= 2;
        CHECK(extract_medial_segments(sc.strokes, sc.contours, sc.img, wide_angle)
                  .accepted_midpoints >= ref.accepted_midpoints);
        CHECK(extract_medial_segments(sc.strokes, sc.contours, sc.img, wide_pen)
                  .accepted_midpoints >= ref.accepted_midpoints);
    }
}
