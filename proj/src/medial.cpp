#include "medax/medial.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace medax {

namespace {

struct ContourRef {
    int contour = -1;  // index into the contours vector
    int index = -1;    // point index on that contour
};

/// Pixel -> positions on traced contours (a pixel can sit on two boundaries
/// of a width-1 limb).
using PixelIndex = std::unordered_map<Pixel, std::vector<ContourRef>, PixelHash>;

PixelIndex build_pixel_index(const std::vector<Contour> &contours) {
    PixelIndex idx;
    for (size_t c = 0; c < contours.size(); ++c)
        for (int i = 0; i < contours[c].size(); ++i)
            idx[contours[c].points[i]].push_back({int(c), i});
    return idx;
}

int cyclic_distance(int a, int b, int n) {
    int d = std::abs(a - b) % n;
    return std::min(d, n - d);
}

}  // namespace

double local_orientation(const Contour &contour, int i, int depth) {
    std::vector<double> fwd, bwd;
    fwd.reserve(depth);
    bwd.reserve(depth);
    const Pixel &p = contour.at(i);
    for (int j = 1; j <= depth; ++j) {
        const Pixel &f = contour.at(i + j);
        const Pixel &b = contour.at(i - j);
        fwd.push_back(std::atan2(double(f.y - p.y), double(f.x - p.x)));
        bwd.push_back(std::atan2(double(b.y - p.y), double(b.x - p.x)) + kPi);
    }
    const double df = direction_mean(fwd);
    const double db = direction_mean(bwd);
    return direction_mean({df, db});
}

std::optional<RayHit> perpendicular_hit(const BinaryImage &img, Pixel origin, double theta_local,
                                        double pen_width,
                                        const std::function<bool(const Pixel &)> &valid_target) {
    const double perp = theta_local + kPi / 2.0;
    const int cap = int(std::ceil(pen_width)) + 2;
    std::optional<RayHit> best;
    for (int sense : {1, -1}) {
        const double dx = std::cos(perp) * sense;
        const double dy = std::sin(perp) * sense;
        const double reach = double(cap) * 2.0 + 4.0;
        const Pixel far{origin.x + int(std::lround(dx * reach)),
                        origin.y + int(std::lround(dy * reach))};
        if (far == origin) continue;
        const auto line = bresenham_line(origin, far);
        int steps = 0;
        for (size_t k = 1; k < line.size() && steps < cap; ++k, ++steps) {
            const Pixel &q = line[k];
            if (!img.at(q)) break;  // ray left the ink
            const bool ok = valid_target ? valid_target(q)
                                         : (q != origin && is_boundary_pixel(img, q));
            if (ok) {
                const double d = pixel_distance(origin, q);
                if (!best || d < best->distance - 1e-12) best = RayHit{q, d};
                break;
            }
        }
    }
    return best;
}

MedialExtraction extract_medial_segments(const std::vector<ContourStroke> &strokes,
                                         const std::vector<Contour> &contours,
                                         const BinaryImage &img, const MedialConfig &cfg) {
    MedialExtraction out;
    if (strokes.empty() || contours.empty()) return out;

    const PixelIndex pixel_index = build_pixel_index(contours);
    std::vector<std::vector<uint8_t>> flagged(contours.size());
    for (size_t c = 0; c < contours.size(); ++c) flagged[c].assign(contours[c].size(), 0);

    // Orientation cache, keyed per contour point; computed on demand.
    std::vector<std::vector<double>> theta_cache(contours.size());
    std::vector<std::vector<uint8_t>> theta_known(contours.size());
    for (size_t c = 0; c < contours.size(); ++c) {
        theta_cache[c].assign(contours[c].size(), 0.0);
        theta_known[c].assign(contours[c].size(), 0);
    }
    auto orientation_at = [&](int c, int i) {
        if (!theta_known[c][i]) {
            theta_cache[c][i] = local_orientation(contours[c], i, cfg.neighbor_depth);
            theta_known[c][i] = 1;
        }
        return theta_cache[c][i];
    };

    auto stroke_of = [&](int contour_id, int point_idx) {
        for (size_t s = 0; s < strokes.size(); ++s)
            if (strokes[s].contour_id == contour_id &&
                strokes[s].contains(point_idx, contours[contour_id].size()))
                return int(s);
        return -1;
    };

    std::vector<MedialSegment> chains;
    MedialSegment chain;
    auto flush_chain = [&]() {
        if (int(chain.points.size()) >= cfg.min_segment_len) chains.push_back(chain);
        chain = MedialSegment{};
    };

    for (size_t si = 0; si < strokes.size(); ++si) {
        const ContourStroke &stroke = strokes[si];
        const Contour &contour = contours[stroke.contour_id];
        const int n = contour.size();
        // Half-open span: the shared endpoint belongs to the next stroke.
        for (int o = 0; o + 1 < stroke.count; ++o) {
            const int i = (stroke.start + o) % n;
            if (flagged[stroke.contour_id][i]) continue;
            const Pixel x = contour.points[i];
            const double theta = orientation_at(stroke.contour_id, i);

            ContourRef hit_ref;
            auto valid = [&](const Pixel &q) {
                auto it = pixel_index.find(q);
                if (it == pixel_index.end()) return false;
                for (const ContourRef &r : it->second) {
                    if (r.contour == stroke.contour_id) {
                        if (stroke.contains(r.index, n)) continue;  // own stroke
                        if (cyclic_distance(r.index, i, n) <= cfg.neighbor_depth)
                            continue;  // grazing own neighborhood
                    }
                    hit_ref = r;
                    return true;
                }
                return false;
            };
            const auto hit = perpendicular_hit(img, x, theta, cfg.pen_width, valid);
            if (!hit) continue;
            const double theta_hit = orientation_at(hit_ref.contour, hit_ref.index);
            if (undirected_diff(theta, theta_hit) >= cfg.angle_tol) continue;
            if (hit->distance >= cfg.pen_width) continue;

            const Vec2 mid{(x.x + hit->pixel.x) / 2.0, (x.y + hit->pixel.y) / 2.0};
            ++out.accepted_midpoints;
            flagged[stroke.contour_id][i] = 1;
            flagged[hit_ref.contour][hit_ref.index] = 1;

            if (!chain.points.empty() && distance(chain.points.back(), mid) > cfg.chain_radius)
                flush_chain();
            if (chain.points.empty()) {
                chain.stroke_a = int(si);
                chain.stroke_b = stroke_of(hit_ref.contour, hit_ref.index);
            }
            if (chain.points.empty() || distance(chain.points.back(), mid) > 1e-9)
                chain.points.push_back(mid);
        }
    }
    flush_chain();

    // Drop chains that merely retrace an already-kept medial line (leftover
    // reverse pairings on staircase walls).
    std::vector<size_t> order(chains.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return chains[a].points.size() > chains[b].points.size();
    });
    std::vector<bool> keep(chains.size(), false);
    std::vector<size_t> kept;
    for (size_t oi : order) {
        bool subsumed = !kept.empty();
        for (const Vec2 &p : chains[oi].points) {
            bool close = false;
            for (size_t k : kept)
                if (point_polyline_distance(p, chains[k].points) <= 0.9) {
                    close = true;
                    break;
                }
            if (!close) {
                subsumed = false;
                break;
            }
        }
        if (!subsumed) {
            keep[oi] = true;
            kept.push_back(oi);
        }
    }
    for (size_t i = 0; i < chains.size(); ++i)
        if (keep[i]) out.segments.push_back(std::move(chains[i]));
    return out;
}

}  // namespace medax
