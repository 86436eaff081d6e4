#pragma once

#include <vector>

#include "medax/medial.hpp"

namespace medax {

struct ExtrapolationConfig {
    double proximity_radius = 12.0;  // endpoint closeness threshold
    double collinear_tol = 0.45;     // "same orientation" reuse of the pairing tolerance
};

enum class PointTag : uint8_t { medial = 0, extrapolated = 1 };

/// Start or end point of a medial segment, with its outward tangent taken
/// from the last min(5, len) points.
struct EndpointRef {
    int segment = -1;
    bool is_end = false;
    Vec2 position;
    double direction = 0.0;

    friend bool operator<(const EndpointRef &a, const EndpointRef &b) {
        return a.segment != b.segment ? a.segment < b.segment : a.is_end < b.is_end;
    }
};

/// Cluster of segment endpoints around a junction region.
struct ProximitySet {
    std::vector<EndpointRef> members;
};

struct SkeletonNode {
    int id = 0;
    Vec2 pos;
    int degree = 0;
};

/// Vector stroke between two nodes; from == to marks a closed loop.
struct SkeletonEdge {
    int from = 0;
    int to = 0;
    bool closed = false;
    std::vector<Vec2> points;
    std::vector<PointTag> tags;
};

struct SkeletonGraph {
    std::vector<SkeletonNode> nodes;
    std::vector<SkeletonEdge> edges;
    int fallback_events = 0;   // extensions that fell back to the centroid join
    int reconnect_events = 0;  // disconnected parts joined by the recovery pass

    int leaf_count() const;
    int junction_count() const;  // nodes of degree >= 3
};

double outward_direction(const MedialSegment &seg, bool at_end);

/// True when the straight line between a and b stays on foreground.
bool line_inside(const BinaryImage &img, const Vec2 &a, const Vec2 &b);

/// Connected components (size >= 2) of the endpoint closeness relation:
/// distance < radius and connecting line inside the character region.
std::vector<ProximitySet> build_proximity_sets(const std::vector<MedialSegment> &segments,
                                               const BinaryImage &img, double radius);

/// Resolve every proximity set (collinear fusions first, then single
/// extensions to the extrapolated axis / an existing junction / the nearest
/// member endpoint, centroid fallback) and assemble the skeleton graph.
/// A final recovery pass joins any still-disconnected parts through the
/// foreground so connectivity matches the source component.
SkeletonGraph assemble_skeleton(const std::vector<MedialSegment> &segments,
                                const BinaryImage &img, const ExtrapolationConfig &cfg);

/// Draw every edge with integer line stepping, keep pixels on the source
/// foreground when a containment mask is given, and thin incidental doubled
/// pixels so no 2x2 foreground block remains.
BinaryImage rasterize_skeleton(const SkeletonGraph &g, int width, int height,
                               const BinaryImage *containment = nullptr);

}  // namespace medax
