#include "medax/contour.hpp"

#include <algorithm>
#include <queue>
#include <unordered_set>

namespace medax {

namespace {

// Neighbor order is clockwise on screen (y down), starting east.
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

int direction_between(const Pixel &from, const Pixel &to) {
    for (int d = 0; d < 8; ++d)
        if (from.x + kDx[d] == to.x && from.y + kDy[d] == to.y) return d;
    return -1;
}

/// Local working grid: the component's own pixels over a padded bbox.
struct LocalGrid {
    Rect bbox;
    BinaryImage grid;  // padded by 1 on each side

    explicit LocalGrid(const Component &comp) : bbox(comp.bbox) {
        grid = BinaryImage(bbox.width + 2, bbox.height + 2);
        for (const Pixel &p : comp.pixels) grid.set(p.x - bbox.x + 1, p.y - bbox.y + 1, true);
    }
    bool fg(const Pixel &local) const { return grid.at(local); }
    Pixel to_global(const Pixel &local) const {
        return {local.x + bbox.x - 1, local.y + bbox.y - 1};
    }
};

/// Moore-neighbor boundary following. `start` must be a boundary pixel and
/// `back_dir` must point at a background neighbor. Clockwise scan order
/// circles outer boundaries; the counterclockwise order circles holes.
std::vector<Pixel> moore_trace(const LocalGrid &g, Pixel start, int back_dir, bool clockwise) {
    std::vector<Pixel> raw;
    Pixel cur = start;
    int back = back_dir;
    const Pixel start_pixel = start;
    const int start_back = back_dir;
    const size_t cap = 8 * g.grid.mask.size() + 16;
    for (;;) {
        raw.push_back(cur);
        int found = -1;
        for (int k = 1; k <= 8; ++k) {
            const int d = clockwise ? (back + k) % 8 : (back - k + 16) % 8;
            const Pixel q{cur.x + kDx[d], cur.y + kDy[d]};
            if (g.fg(q)) {
                found = d;
                break;
            }
        }
        if (found < 0) break;  // isolated pixel
        const int prev = clockwise ? (found + 7) % 8 : (found + 1) % 8;
        const Pixel background_before{cur.x + kDx[prev], cur.y + kDy[prev]};
        cur = {cur.x + kDx[found], cur.y + kDy[found]};
        back = direction_between(cur, background_before);
        if (cur == start_pixel && back == start_back) break;
        if (raw.size() > cap) break;  // safety net; unreachable for valid masks
    }
    return raw;
}

/// Insert boundary pixels that a diagonal step jumps over, so the traced set
/// covers every pixel satisfying the boundary predicate.
std::vector<Pixel> insert_diagonal_corners(const LocalGrid &g, const BinaryImage &boundary,
                                           const std::vector<Pixel> &raw) {
    if (raw.size() < 2) return raw;
    std::unordered_set<Pixel, PixelHash> seen(raw.begin(), raw.end());
    std::vector<Pixel> out;
    out.reserve(raw.size() + 8);
    const size_t n = raw.size();
    for (size_t i = 0; i < n; ++i) {
        const Pixel &p = raw[i];
        const Pixel &q = raw[(i + 1) % n];
        out.push_back(p);
        if (std::abs(p.x - q.x) == 1 && std::abs(p.y - q.y) == 1) {
            for (const Pixel r : {Pixel{p.x, q.y}, Pixel{q.x, p.y}}) {
                if (g.fg(r) && boundary.at(r) && !seen.count(r)) {
                    out.push_back(r);
                    seen.insert(r);
                    break;
                }
            }
        }
    }
    return out;
}

std::vector<Pixel> dedup_first_visit(const std::vector<Pixel> &seq) {
    std::unordered_set<Pixel, PixelHash> seen;
    std::vector<Pixel> out;
    out.reserve(seq.size());
    for (const Pixel &p : seq)
        if (seen.insert(p).second) out.push_back(p);
    return out;
}

void rotate_to_lexmin(std::vector<Pixel> &pts) {
    if (pts.empty()) return;
    auto it = std::min_element(pts.begin(), pts.end());
    std::rotate(pts.begin(), it, pts.end());
}

/// Boundary predicate on the local grid.
BinaryImage local_boundary(const LocalGrid &g) {
    BinaryImage out(g.grid.width, g.grid.height);
    for (int y = 0; y < g.grid.height; ++y)
        for (int x = 0; x < g.grid.width; ++x) {
            if (!g.grid.at(x, y)) continue;
            bool b = false;
            for (int d = 0; d < 8 && !b; ++d) b = !g.grid.at(x + kDx[d], y + kDy[d]);
            if (b) out.set(x, y, true);
        }
    return out;
}

/// 4-connected background regions that do not touch the padded border.
std::vector<std::vector<Pixel>> find_holes(const LocalGrid &g) {
    const int w = g.grid.width, h = g.grid.height;
    std::vector<int> label(size_t(w) * h, -1);
    std::vector<std::vector<Pixel>> regions;
    std::vector<bool> touches_border;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (g.grid.at(x, y) || label[size_t(y) * w + x] >= 0) continue;
            const int id = int(regions.size());
            regions.emplace_back();
            touches_border.push_back(false);
            std::queue<Pixel> frontier;
            frontier.push({x, y});
            label[size_t(y) * w + x] = id;
            while (!frontier.empty()) {
                Pixel p = frontier.front();
                frontier.pop();
                regions[id].push_back(p);
                if (p.x == 0 || p.y == 0 || p.x == w - 1 || p.y == h - 1)
                    touches_border[id] = true;
                constexpr int dx4[4] = {1, -1, 0, 0};
                constexpr int dy4[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int nx = p.x + dx4[k], ny = p.y + dy4[k];
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    if (g.grid.at(nx, ny)) continue;
                    int &l = label[size_t(ny) * w + nx];
                    if (l < 0) {
                        l = id;
                        frontier.push({nx, ny});
                    }
                }
            }
        }
    std::vector<std::vector<Pixel>> holes;
    for (size_t i = 0; i < regions.size(); ++i) {
        if (touches_border[i]) continue;
        std::sort(regions[i].begin(), regions[i].end());
        holes.push_back(std::move(regions[i]));
    }
    std::sort(holes.begin(), holes.end(),
              [](const auto &a, const auto &b) { return a.front() < b.front(); });
    return holes;
}

}  // namespace

bool is_boundary_pixel(const BinaryImage &img, Pixel p) {
    if (!img.at(p)) return false;
    for (int d = 0; d < 8; ++d)
        if (!img.at(p.x + kDx[d], p.y + kDy[d])) return true;
    return false;
}

long long twice_signed_area(const std::vector<Pixel> &points) {
    long long acc = 0;
    const size_t n = points.size();
    for (size_t i = 0; i < n; ++i) {
        const Pixel &a = points[i];
        const Pixel &b = points[(i + 1) % n];
        acc += (long long)a.x * b.y - (long long)b.x * a.y;
    }
    return acc;
}

std::vector<Contour> trace_contours(const Component &comp, const BinaryImage &img) {
    (void)img;  // component pixels already carry the relevant foreground
    std::vector<Contour> out;
    if (comp.pixels.empty()) return out;
    const LocalGrid g(comp);
    const BinaryImage boundary = local_boundary(g);

    auto finish = [&](std::vector<Pixel> raw, ContourKind kind) {
        auto pts = dedup_first_visit(insert_diagonal_corners(g, boundary, raw));
        rotate_to_lexmin(pts);
        Contour c;
        c.kind = kind;
        c.component = comp.label;
        c.id = int(out.size());
        c.points.reserve(pts.size());
        for (const Pixel &p : pts) c.points.push_back(g.to_global(p));
        out.push_back(std::move(c));
    };

    // Outer boundary: start at the topmost-then-leftmost pixel; its west
    // neighbor is guaranteed background.
    const Pixel start{comp.pixels.front().x - comp.bbox.x + 1,
                      comp.pixels.front().y - comp.bbox.y + 1};
    finish(moore_trace(g, start, 4 /*west*/, true), ContourKind::outer);

    // Each interior background region yields one hole contour, traced with
    // the opposite orientation. The pixel above a hole's topmost-leftmost
    // background pixel is foreground by construction.
    for (const auto &hole : find_holes(g)) {
        const Pixel h = hole.front();
        const Pixel p0{h.x, h.y - 1};
        finish(moore_trace(g, p0, 2 /*south*/, false), ContourKind::hole);
    }
    return out;
}

}  // namespace medax
