#include "medax/geometry.hpp"

#include <algorithm>
#include <limits>

namespace medax {

std::vector<Pixel> bresenham_line(Pixel a, Pixel b) {
    std::vector<Pixel> out;
    int dx = std::abs(b.x - a.x), dy = -std::abs(b.y - a.y);
    int sx = a.x < b.x ? 1 : -1, sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    Pixel p = a;
    for (;;) {
        out.push_back(p);
        if (p == b) break;
        int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            p.x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            p.y += sy;
        }
    }
    return out;
}

double point_segment_distance(const Vec2 &p, const Vec2 &a, const Vec2 &b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 <= 0.0) return distance(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + ab * t);
}

double point_polyline_distance(const Vec2 &p, const std::vector<Vec2> &poly) {
    if (poly.empty()) return std::numeric_limits<double>::infinity();
    if (poly.size() == 1) return distance(p, poly.front());
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < poly.size(); ++i)
        best = std::min(best, point_segment_distance(p, poly[i], poly[i + 1]));
    return best;
}

bool segment_intersection(const Vec2 &a, const Vec2 &b, const Vec2 &c, const Vec2 &d, Vec2 &out) {
    const Vec2 r = b - a, s = d - c;
    const double denom = cross(r, s);
    if (std::fabs(denom) < 1e-12) return false;
    const Vec2 ca = c - a;
    const double t = cross(ca, s) / denom;
    const double u = cross(ca, r) / denom;
    if (t < -1e-9 || t > 1.0 + 1e-9 || u < -1e-9 || u > 1.0 + 1e-9) return false;
    out = a + r * t;
    return true;
}

}  // namespace medax
