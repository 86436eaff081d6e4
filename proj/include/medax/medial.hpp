#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "medax/contour.hpp"
#include "medax/segmentation.hpp"

namespace medax {

struct MedialConfig {
    double angle_tol = 0.45;   // radians, undirected orientation match
    double pen_width = 12.0;   // pixels, max accepted pairing distance
    int neighbor_depth = 5;    // chord count per side for local orientation
    int min_segment_len = 3;   // midpoints; shorter chains are dropped
    double chain_radius = 2.0; // midpoint gap that splits a chain
};

/// Polyline of accepted medial midpoints (half-pixel resolution).
struct MedialSegment {
    std::vector<Vec2> points;
    int stroke_a = -1;  // index of the generating stroke
    int stroke_b = -1;  // index of the stroke first hit on the opposite wall

    const Vec2 &front() const { return points.front(); }
    const Vec2 &back() const { return points.back(); }
};

struct MedialExtraction {
    std::vector<MedialSegment> segments;
    size_t accepted_midpoints = 0;  // raw acceptances, before chaining/filtering
};

/// Undirected local orientation at contour point i, averaged over `depth`
/// chords to successors and `depth` chords to predecessors (the latter
/// flipped by pi), combined as directions mod pi. Result in (-pi/2, pi/2].
double local_orientation(const Contour &contour, int i, int depth = 5);

struct RayHit {
    Pixel pixel;
    double distance = 0.0;
};

/// March both senses of the direction perpendicular to theta_local from x_i
/// through foreground, up to ceil(pen_width) steps, and return the nearest
/// pixel accepted by valid_target (default: any boundary pixel other than
/// the origin). Senses whose first step lands on background yield nothing.
std::optional<RayHit> perpendicular_hit(
    const BinaryImage &img, Pixel origin, double theta_local, double pen_width,
    const std::function<bool(const Pixel &)> &valid_target = {});

/// The pairing loop: for each unflagged stroke pixel, cast the perpendicular,
/// accept the midpoint when the opposite wall is parallel (undirected
/// difference < angle_tol) and nearer than pen_width, flag both generators,
/// and chain consecutive accepted midpoints into segments. Junction-region
/// pixels fail the conditions and are skipped for later extrapolation.
MedialExtraction extract_medial_segments(const std::vector<ContourStroke> &strokes,
                                         const std::vector<Contour> &contours,
                                         const BinaryImage &img, const MedialConfig &cfg);

}  // namespace medax
