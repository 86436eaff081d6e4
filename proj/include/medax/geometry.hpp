#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace medax {

// Image coordinate convention used throughout: x grows right, y grows down.
// Angles are atan2(dy, dx) in radians under that convention.

struct Pixel {
    int x = 0;
    int y = 0;

    friend bool operator==(const Pixel &a, const Pixel &b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Pixel &a, const Pixel &b) { return !(a == b); }
    friend bool operator<(const Pixel &a, const Pixel &b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;  // scanline order
    }
};

struct PixelHash {
    size_t operator()(const Pixel &p) const noexcept {
        return std::hash<uint64_t>{}((uint64_t(uint32_t(p.y)) << 32) | uint32_t(p.x));
    }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2 &o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2 &o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend bool operator==(const Vec2 &a, const Vec2 &b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2 &a, const Vec2 &b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2 &a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2 &a, const Vec2 &b) { return norm(a - b); }
inline Vec2 center(const Pixel &p) { return {double(p.x), double(p.y)}; }
inline double pixel_distance(const Pixel &a, const Pixel &b) {
    return std::hypot(double(a.x - b.x), double(a.y - b.y));
}

struct Rect {
    int x = 0, y = 0, width = 0, height = 0;

    bool contains(const Pixel &p) const {
        return p.x >= x && p.y >= y && p.x < x + width && p.y < y + height;
    }
    int right() const { return x + width; }    // exclusive
    int bottom() const { return y + height; }  // exclusive
};

inline constexpr double kPi = std::numbers::pi;

/// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

/// Wrap an undirected orientation to (-pi/2, pi/2].
inline double wrap_direction(double a) {
    a = std::fmod(a, kPi);
    if (a <= -kPi / 2.0) a += kPi;
    if (a > kPi / 2.0) a -= kPi;
    return a;
}

inline double angle_of(const Vec2 &d) { return std::atan2(d.y, d.x); }

/// Undirected difference between two orientations, folded to [0, pi/2].
inline double undirected_diff(double a, double b) {
    double d = std::fabs(wrap_angle(a - b));
    if (d > kPi / 2.0) d = kPi - d;
    return d;
}

/// Circular variance of directed angles: 1 - |mean unit vector|, in [0, 1].
inline double circular_variance(const std::vector<double> &angles) {
    if (angles.empty()) return 0.0;
    double sx = 0.0, sy = 0.0;
    for (double a : angles) {
        sx += std::cos(a);
        sy += std::sin(a);
    }
    const double n = double(angles.size());
    return 1.0 - std::hypot(sx, sy) / n;
}

/// Mean of undirected orientations via the doubled-angle embedding.
/// Degenerate inputs (resultant near zero) fall back to the arithmetic mean
/// of the (-pi/2, pi/2] representatives, which keeps corner bisectors defined.
inline double direction_mean(const std::vector<double> &dirs) {
    double sx = 0.0, sy = 0.0;
    for (double d : dirs) {
        sx += std::cos(2.0 * d);
        sy += std::sin(2.0 * d);
    }
    if (std::hypot(sx, sy) < 1e-9 * double(dirs.size() ? dirs.size() : 1)) {
        double acc = 0.0;
        for (double d : dirs) acc += wrap_direction(d);
        return wrap_direction(dirs.empty() ? 0.0 : acc / double(dirs.size()));
    }
    return wrap_direction(0.5 * std::atan2(sy, sx));
}

/// 8-connected line between two pixels (Bresenham), endpoints included.
std::vector<Pixel> bresenham_line(Pixel a, Pixel b);

/// Distance from point p to segment [a, b].
double point_segment_distance(const Vec2 &p, const Vec2 &a, const Vec2 &b);

/// Distance from point p to a polyline; empty polyline yields +inf.
double point_polyline_distance(const Vec2 &p, const std::vector<Vec2> &poly);

/// Proper or touching intersection of segments [a,b] and [c,d].
/// Returns true with the intersection point; collinear overlap returns false.
bool segment_intersection(const Vec2 &a, const Vec2 &b, const Vec2 &c, const Vec2 &d, Vec2 &out);

}  // namespace medax
