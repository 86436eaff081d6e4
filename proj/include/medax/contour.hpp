#pragma once

#include <vector>

#include "medax/image.hpp"

namespace medax {

enum class ContourKind { outer, hole };

/// Closed, ordered boundary polyline of one component boundary.
/// Consecutive points (including the wrap-around pair, except across the
/// dedup seam of 1-px limbs) are 8-adjacent; no point repeats; every point
/// satisfies is_boundary_pixel. Outer contours have positive shoelace area
/// under the y-down convention, holes negative. points[0] is the
/// topmost-then-leftmost pixel of the boundary.
struct Contour {
    ContourKind kind = ContourKind::outer;
    int component = 0;
    int id = 0;  // index within the component's contour list
    std::vector<Pixel> points;

    int size() const { return int(points.size()); }
    const Pixel &at(int i) const {  // cyclic indexing
        const int n = size();
        return points[((i % n) + n) % n];
    }
};

/// True iff the 3x3 neighborhood of foreground pixel p contains background
/// (off-image counts as background). Calling it on a background pixel is a
/// caller error; it returns false there.
bool is_boundary_pixel(const BinaryImage &img, Pixel p);

/// Trace the outer boundary and one contour per interior background region
/// of a component. Moore-neighbor following with Jacob's stopping criterion,
/// plus insertion of diagonally exposed boundary pixels so that the union of
/// traced points equals the component's boundary-pixel set.
std::vector<Contour> trace_contours(const Component &comp, const BinaryImage &img);

/// Twice the signed area of the closed polyline (shoelace, y-down).
long long twice_signed_area(const std::vector<Pixel> &points);

}  // namespace medax
