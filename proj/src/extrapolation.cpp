#include "medax/extrapolation.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>

namespace medax {

namespace {

constexpr double kInterpSpacing = 0.75;
constexpr double kEps = 1e-6;
constexpr double kSnapRadius = 0.6;

Pixel round_px(const Vec2 &p) { return {int(std::lround(p.x)), int(std::lround(p.y))}; }

std::vector<Vec2> interpolate(const Vec2 &a, const Vec2 &b, bool include_a, bool include_b) {
    std::vector<Vec2> out;
    const double len = distance(a, b);
    const int steps = std::max(1, int(std::ceil(len / kInterpSpacing)));
    for (int k = include_a ? 0 : 1; k <= steps; ++k) {
        if (k == steps && !include_b) break;
        const double t = double(k) / steps;
        out.push_back(a + (b - a) * t);
    }
    return out;
}

struct WorkPoly {
    std::vector<Vec2> pts;
    std::vector<PointTag> tags;
    bool closed = false;
    bool alive = true;
};

double poly_distance(const WorkPoly &p, const Vec2 &x) {
    double best = point_polyline_distance(x, p.pts);
    if (p.closed && p.pts.size() >= 2)
        best = std::min(best, point_segment_distance(x, p.pts.back(), p.pts.front()));
    return best;
}

/// A polyline whose ends may legitimately join each other (a ring seam):
/// its path length must dominate the end gap.
bool wraps_around(const WorkPoly &p) {
    if (p.pts.size() < 3) return false;
    double len = 0.0;
    for (size_t k = 0; k + 1 < p.pts.size(); ++k) len += distance(p.pts[k], p.pts[k + 1]);
    return len >= 3.0 * distance(p.pts.front(), p.pts.back());
}

int locate_subsegment(const WorkPoly &p, const Vec2 &x, double &out_dist) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    const size_t n = p.pts.size();
    if (n < 2) {
        out_dist = bd;
        return best;
    }
    const size_t m = p.closed ? n : n - 1;
    for (size_t k = 0; k < m; ++k) {
        const double d = point_segment_distance(x, p.pts[k], p.pts[(k + 1) % n]);
        if (d < bd) {
            bd = d;
            best = int(k);
        }
    }
    out_dist = bd;
    return best;
}

struct Handle {
    int poly = -1;
    bool at_end = false;
    bool consumed = false;
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = int(i);
    }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Mutable polyline workspace used while proximity sets are resolved.
class SkeletonBuilder {
  public:
    SkeletonBuilder(const std::vector<MedialSegment> &segments, const BinaryImage &img,
                    const ExtrapolationConfig &cfg)
        : img_(img), cfg_(cfg) {
        for (size_t i = 0; i < segments.size(); ++i) {
            WorkPoly p;
            p.pts = segments[i].points;
            p.tags.assign(p.pts.size(), PointTag::medial);
            polys_.push_back(std::move(p));
            handles_[{int(i), false}] = Handle{int(i), false, false};
            handles_[{int(i), true}] = Handle{int(i), true, false};
        }
    }

    void resolve(const ProximitySet &set);
    void snap_loose_ends();
    void reconnect_parts();

    std::vector<WorkPoly> &polys() { return polys_; }
    int fallback_events = 0;
    int reconnect_events = 0;

  private:
    const BinaryImage &img_;
    const ExtrapolationConfig &cfg_;
    std::vector<WorkPoly> polys_;
    std::map<std::pair<int, bool>, Handle> handles_;

    Handle *handle_for(const EndpointRef &m) {
        auto it = handles_.find({m.segment, m.is_end});
        return it == handles_.end() ? nullptr : &it->second;
    }
    Vec2 handle_pos(const Handle &h) const {
        const WorkPoly &p = polys_[h.poly];
        return h.at_end ? p.pts.back() : p.pts.front();
    }

    void fuse(Handle &a, Handle &b, std::vector<std::pair<Vec2, Vec2>> *bridges);
    void extend_to(Handle &h, const Vec2 &target);
    void split_at(const Vec2 &x, int skip_poly = -1);
    int split_poly(int poly, const Vec2 &x);
};

void SkeletonBuilder::fuse(Handle &a, Handle &b, std::vector<std::pair<Vec2, Vec2>> *bridges) {
    const Vec2 pa = handle_pos(a), pb = handle_pos(b);
    if (bridges) bridges->push_back({pa, pb});
    if (a.poly == b.poly) {  // ring closure
        WorkPoly &p = polys_[a.poly];
        for (const Vec2 &v : interpolate(p.pts.back(), p.pts.front(), false, false)) {
            p.pts.push_back(v);
            p.tags.push_back(PointTag::extrapolated);
        }
        p.closed = true;
        a.consumed = b.consumed = true;
        return;
    }
    const int a_poly = a.poly, b_poly = b.poly;
    const bool a_end = a.at_end, b_end = b.at_end;
    WorkPoly merged;
    auto append = [&merged](const WorkPoly &src, bool reversed) {
        if (!reversed) {
            merged.pts.insert(merged.pts.end(), src.pts.begin(), src.pts.end());
            merged.tags.insert(merged.tags.end(), src.tags.begin(), src.tags.end());
        } else {
            merged.pts.insert(merged.pts.end(), src.pts.rbegin(), src.pts.rend());
            merged.tags.insert(merged.tags.end(), src.tags.rbegin(), src.tags.rend());
        }
    };
    append(polys_[a_poly], !a_end);  // fused endpoint of A at the back
    for (const Vec2 &v : interpolate(pa, pb, false, false)) {
        merged.pts.push_back(v);
        merged.tags.push_back(PointTag::extrapolated);
    }
    append(polys_[b_poly], b_end);  // fused endpoint of B first

    const int merged_id = int(polys_.size());
    polys_.push_back(std::move(merged));
    polys_[a_poly].alive = false;
    polys_[b_poly].alive = false;
    a.consumed = b.consumed = true;
    for (auto &[key, h] : handles_) {
        if (h.poly == a_poly) {
            h.poly = merged_id;
            if (h.at_end != a_end) h.at_end = false;  // A's other end is the new front
        } else if (h.poly == b_poly) {
            h.poly = merged_id;
            if (h.at_end != b_end) h.at_end = true;  // B's other end is the new back
        }
    }
}

void SkeletonBuilder::extend_to(Handle &h, const Vec2 &target) {
    WorkPoly &p = polys_[h.poly];
    const Vec2 from = handle_pos(h);
    const auto bridge = interpolate(from, target, false, true);
    if (h.at_end) {
        for (const Vec2 &v : bridge) {
            p.pts.push_back(v);
            p.tags.push_back(PointTag::extrapolated);
        }
    } else {
        const std::vector<Vec2> rev(bridge.rbegin(), bridge.rend());
        p.pts.insert(p.pts.begin(), rev.begin(), rev.end());
        p.tags.insert(p.tags.begin(), rev.size(), PointTag::extrapolated);
    }
    h.consumed = true;
}

int SkeletonBuilder::split_poly(int poly, const Vec2 &x) {
    WorkPoly &p = polys_[poly];
    double d = 0.0;
    const int k = locate_subsegment(p, x, d);
    if (k < 0 || d > 0.3) return -1;
    const int n = int(p.pts.size());

    if (!p.closed && (distance(x, p.pts.front()) < kEps || distance(x, p.pts.back()) < kEps))
        return poly;  // already an endpoint

    if (p.closed) {
        // open the loop at x; both ends land on x
        WorkPoly opened;
        opened.pts.push_back(x);
        opened.tags.push_back(PointTag::extrapolated);
        for (int i = 1; i <= n; ++i) {
            const int idx = (k + i) % n;
            if (distance(p.pts[idx], x) < kEps) continue;
            opened.pts.push_back(p.pts[idx]);
            opened.tags.push_back(p.tags[idx]);
        }
        opened.pts.push_back(x);
        opened.tags.push_back(PointTag::extrapolated);
        const int id = int(polys_.size());
        p.alive = false;
        polys_.push_back(std::move(opened));
        for (auto &[key, h] : handles_)
            if (h.poly == poly) h.poly = id;
        return id;
    }

    WorkPoly front, back;
    for (int i = 0; i <= k; ++i) {
        front.pts.push_back(p.pts[i]);
        front.tags.push_back(p.tags[i]);
    }
    if (distance(front.pts.back(), x) > kEps) {
        front.pts.push_back(x);
        front.tags.push_back(p.tags[k]);
    }
    if (distance(p.pts[k + 1], x) > kEps) {
        back.pts.push_back(x);
        back.tags.push_back(p.tags[k + 1]);
    }
    for (int i = k + 1; i < n; ++i) {
        back.pts.push_back(p.pts[i]);
        back.tags.push_back(p.tags[i]);
    }
    if (int(front.pts.size()) < 2 || int(back.pts.size()) < 2) return poly;

    // p dangles once polys_ grows; finish all reads and writes through it first
    p.alive = false;
    const int front_id = int(polys_.size());
    polys_.push_back(std::move(front));
    const int back_id = int(polys_.size());
    polys_.push_back(std::move(back));
    for (auto &[key, h] : handles_) {
        if (h.poly != poly) continue;
        h.poly = h.at_end ? back_id : front_id;
    }
    return front_id;
}

void SkeletonBuilder::split_at(const Vec2 &x, int skip_poly) {
    const int n = int(polys_.size());
    for (int i = 0; i < n; ++i) {
        if (!polys_[i].alive || i == skip_poly) continue;
        if (poly_distance(polys_[i], x) > 0.3) continue;
        split_poly(i, x);
    }
}

void SkeletonBuilder::resolve(const ProximitySet &set) {
    struct Live {
        EndpointRef ref;
        Handle *handle;
    };
    std::vector<Live> live;
    for (const EndpointRef &m : set.members) {
        Handle *h = handle_for(m);
        if (h && !h->consumed) live.push_back({m, h});
    }
    if (live.size() < 2) return;

    // Phase A: fuse same-orientation pairs, closest orientation match first.
    struct Pair {
        double diff, dist;
        size_t a, b;
    };
    std::vector<Pair> pairs;
    for (size_t i = 0; i < live.size(); ++i)
        for (size_t j = i + 1; j < live.size(); ++j) {
            const double d = undirected_diff(live[i].ref.direction, live[j].ref.direction);
            if (d < cfg_.collinear_tol)
                pairs.push_back({d, distance(live[i].ref.position, live[j].ref.position), i, j});
        }
    std::sort(pairs.begin(), pairs.end(), [](const Pair &x, const Pair &y) {
        if (x.diff != y.diff) return x.diff < y.diff;
        if (x.dist != y.dist) return x.dist < y.dist;
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    std::vector<std::pair<Vec2, Vec2>> bridges;
    std::vector<bool> used(live.size(), false);
    for (const Pair &pr : pairs) {
        if (used[pr.a] || used[pr.b]) continue;
        if (pr.dist >= 2.0 * cfg_.proximity_radius) continue;
        Handle &ha = *live[pr.a].handle;
        Handle &hb = *live[pr.b].handle;
        if (ha.consumed || hb.consumed) continue;
        if (ha.poly == hb.poly && !wraps_around(polys_[ha.poly])) continue;
        if (!line_inside(img_, handle_pos(ha), handle_pos(hb))) continue;
        fuse(ha, hb, &bridges);
        used[pr.a] = used[pr.b] = true;
    }

    // Phase B: extend leftovers toward the axis, a junction, or an endpoint.
    std::vector<Vec2> set_junctions;
    const double cap = 2.5 * cfg_.proximity_radius;
    for (size_t mi = 0; mi < live.size(); ++mi) {
        if (used[mi]) continue;
        Handle *h = live[mi].handle;
        if (h->consumed) continue;
        const Vec2 pos = handle_pos(*h);
        const double dir = live[mi].ref.direction;
        const Vec2 u{std::cos(dir), std::sin(dir)};
        const Vec2 ray_end = pos + u * cap;

        // (1) nearest ray intersection with other members' current polylines
        Vec2 best_x;
        double best_t = std::numeric_limits<double>::infinity();
        std::vector<int> target_polys;
        for (size_t mj = 0; mj < live.size(); ++mj) {
            if (mj == mi) continue;
            const int tp = live[mj].handle->poly;
            if (tp < 0 || tp == h->poly || !polys_[tp].alive) continue;
            if (std::find(target_polys.begin(), target_polys.end(), tp) == target_polys.end())
                target_polys.push_back(tp);
        }
        for (int tp : target_polys) {
            const WorkPoly &P = polys_[tp];
            const size_t n = P.pts.size();
            const size_t m = P.closed ? n : n - 1;
            for (size_t k = 0; k < m; ++k) {
                Vec2 x;
                if (!segment_intersection(pos, ray_end, P.pts[k], P.pts[(k + 1) % n], x))
                    continue;
                const double t = dot(x - pos, u);
                if (t < 0.05 || t >= best_t) continue;
                best_t = t;
                best_x = x;
            }
        }
        if (std::isfinite(best_t) && line_inside(img_, pos, best_x)) {
            extend_to(*h, best_x);
            split_at(best_x, h->poly);
            set_junctions.push_back(best_x);
            continue;
        }

        // (2) an already-formed junction of this set
        double best_jt = std::numeric_limits<double>::infinity();
        Vec2 best_j;
        for (const Vec2 &j : set_junctions) {
            const double t = dot(j - pos, u);
            if (t < 0.05 || t > cap) continue;
            if (distance(j, pos + u * t) > 0.75) continue;
            if (t < best_jt) {
                best_jt = t;
                best_j = j;
            }
        }
        if (std::isfinite(best_jt) && line_inside(img_, pos, best_j)) {
            extend_to(*h, best_j);
            continue;
        }

        // (3) nearest other member endpoint
        double best_d = std::numeric_limits<double>::infinity();
        int best_m = -1;
        for (size_t mj = 0; mj < live.size(); ++mj) {
            if (mj == mi) continue;
            const Handle *hj = live[mj].handle;
            if (hj->poly == h->poly && !wraps_around(polys_[h->poly]))
                continue;  // never fold a chain back onto itself
            const Vec2 q = hj->consumed ? live[mj].ref.position : handle_pos(*hj);
            const double d = distance(pos, q);
            if (d < kEps || d >= best_d || d >= 2.0 * cfg_.proximity_radius) continue;
            if (!line_inside(img_, pos, q)) continue;
            best_d = d;
            best_m = int(mj);
        }
        if (best_m >= 0) {
            Handle *hm = live[best_m].handle;
            const bool same_poly = !hm->consumed && hm->poly == h->poly;
            if (same_poly && !wraps_around(polys_[h->poly])) {
                h->consumed = true;  // nothing sensible to join; leave the end free
                continue;
            }
            if (same_poly) {
                fuse(*h, *hm, nullptr);  // two ends of one wrapped polyline: close the loop
                used[best_m] = true;
            } else {
                const Vec2 q = hm->consumed ? live[best_m].ref.position : handle_pos(*hm);
                extend_to(*h, q);
                split_at(q, h->poly);
                if (!hm->consumed && distance(handle_pos(*hm), q) < kEps) hm->consumed = true;
            }
            continue;
        }

        // fallback: straight join toward the set centroid, clipped to the ink
        Vec2 centroid{0, 0};
        for (const Live &l : live) centroid = centroid + l.ref.position;
        centroid = centroid * (1.0 / double(live.size()));
        Vec2 target = centroid;
        if (!line_inside(img_, pos, target)) {
            const double len = distance(pos, target);
            const int steps = std::max(1, int(std::ceil(len / 0.5)));
            Vec2 last_ok = pos;
            for (int k = 1; k <= steps; ++k) {
                const Vec2 v = pos + (target - pos) * (double(k) / steps);
                if (!img_.at(round_px(v))) break;
                last_ok = v;
            }
            target = last_ok;
        }
        if (distance(pos, target) > kEps) {
            extend_to(*h, target);
            split_at(target, h->poly);
        } else {
            h->consumed = true;
        }
        ++fallback_events;
    }

    // Phase C: junctions where fusion bridges cross (or nearly cross).
    for (size_t i = 0; i < bridges.size(); ++i)
        for (size_t j = i + 1; j < bridges.size(); ++j) {
            Vec2 x;
            if (segment_intersection(bridges[i].first, bridges[i].second, bridges[j].first,
                                     bridges[j].second, x)) {
                split_at(x);
                continue;
            }
            // skew near-miss: resolve into two close junctions tied together
            double best = std::numeric_limits<double>::infinity();
            Vec2 pa, pb;
            auto consider = [&](const Vec2 &p, const Vec2 &a, const Vec2 &b, bool p_on_i) {
                const Vec2 ab = b - a;
                const double len2 = dot(ab, ab);
                const double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
                const Vec2 q = a + ab * t;
                const double d = distance(p, q);
                if (d < best) {
                    best = d;
                    pa = p_on_i ? p : q;
                    pb = p_on_i ? q : p;
                }
            };
            consider(bridges[i].first, bridges[j].first, bridges[j].second, true);
            consider(bridges[i].second, bridges[j].first, bridges[j].second, true);
            consider(bridges[j].first, bridges[i].first, bridges[i].second, false);
            consider(bridges[j].second, bridges[i].first, bridges[i].second, false);
            if (best > kEps && best <= 1.5) {
                split_at(pa);
                split_at(pb);
                WorkPoly tie;
                tie.pts = {pa, pb};
                tie.tags = {PointTag::extrapolated, PointTag::extrapolated};
                polys_.push_back(std::move(tie));
            }
        }
}

void SkeletonBuilder::snap_loose_ends() {
    for (size_t i = 0; i < polys_.size(); ++i) {
        if (!polys_[i].alive || polys_[i].closed || polys_[i].pts.size() < 2) continue;
        for (bool at_end : {false, true}) {
            WorkPoly &p = polys_[i];
            const Vec2 e = at_end ? p.pts.back() : p.pts.front();
            for (size_t j = 0; j < polys_.size(); ++j) {
                if (j == i || !polys_[j].alive) continue;
                const double d = poly_distance(polys_[j], e);
                if (d > kSnapRadius || d < kEps) continue;
                double sd = 0.0;
                const int k = locate_subsegment(polys_[j], e, sd);
                if (k < 0) continue;
                const Vec2 &a = polys_[j].pts[k];
                const Vec2 &b = polys_[j].pts[(k + 1) % polys_[j].pts.size()];
                const Vec2 ab = b - a;
                const double len2 = dot(ab, ab);
                const double t = len2 > 0 ? std::clamp(dot(e - a, ab) / len2, 0.0, 1.0) : 0.0;
                const Vec2 q = a + ab * t;
                if (at_end)
                    p.pts.back() = q;
                else
                    p.pts.front() = q;
                split_poly(int(j), q);
                break;
            }
        }
    }
}

void SkeletonBuilder::reconnect_parts() {
    auto quant = [](const Vec2 &v) {
        return std::make_pair(llround(v.x * 4096.0), llround(v.y * 4096.0));
    };
    for (;;) {
        std::vector<int> ids;
        for (size_t i = 0; i < polys_.size(); ++i)
            if (polys_[i].alive && polys_[i].pts.size() >= 2) ids.push_back(int(i));
        if (ids.size() <= 1) return;

        UnionFind uf(polys_.size());
        std::map<std::pair<long long, long long>, int> seen;
        for (int i : ids) {
            const WorkPoly &p = polys_[i];
            std::vector<Vec2> ends;
            if (p.closed)
                ends = {p.pts.front()};
            else
                ends = {p.pts.front(), p.pts.back()};
            for (const Vec2 &e : ends) {
                auto key = quant(e);
                auto it = seen.find(key);
                if (it == seen.end())
                    seen.emplace(key, i);
                else
                    uf.unite(i, it->second);
            }
        }
        std::map<int, std::vector<int>> parts;
        for (int i : ids) parts[uf.find(i)].push_back(i);
        if (parts.size() <= 1) return;

        // try the shortest ink-contained straight join between any two parts
        struct End {
            Vec2 pos;
            int part;
        };
        std::vector<End> ends;
        for (auto &[root, members] : parts)
            for (int i : members) {
                const WorkPoly &p = polys_[i];
                ends.push_back({p.pts.front(), root});
                if (!p.closed) ends.push_back({p.pts.back(), root});
            }
        double best_d = std::numeric_limits<double>::infinity();
        int ba = -1, bb = -1;
        for (size_t a = 0; a < ends.size(); ++a)
            for (size_t b = a + 1; b < ends.size(); ++b) {
                if (ends[a].part == ends[b].part) continue;
                const double d = distance(ends[a].pos, ends[b].pos);
                if (d >= best_d) continue;
                if (!line_inside(img_, ends[a].pos, ends[b].pos)) continue;
                best_d = d;
                ba = int(a);
                bb = int(b);
            }
        if (ba >= 0) {
            WorkPoly join;
            join.pts = interpolate(ends[ba].pos, ends[bb].pos, true, true);
            join.tags.assign(join.pts.size(), PointTag::extrapolated);
            polys_.push_back(std::move(join));
            ++reconnect_events;
            continue;
        }

        // otherwise walk through the ink between the two nearest parts (BFS)
        const int w = img_.width, h = img_.height;
        std::vector<int> owner(size_t(w) * h, -1);
        auto stamp = [&](int part_root, const std::vector<int> &members) {
            for (int i : members)
                for (const Vec2 &v : polys_[i].pts) {
                    const Pixel px = round_px(v);
                    if (img_.in_bounds(px.x, px.y)) owner[size_t(px.y) * w + px.x] = part_root;
                }
        };
        for (auto &[root, members] : parts) stamp(root, members);

        const int src_root = parts.begin()->first;
        std::vector<int> parent(size_t(w) * h, -2);
        std::queue<int> frontier;
        for (auto &[root, members] : parts) {
            if (root != src_root) continue;
            for (int i : members)
                for (const Vec2 &v : polys_[i].pts) {
                    const Pixel px = round_px(v);
                    if (!img_.in_bounds(px.x, px.y)) continue;
                    const int idx = px.y * w + px.x;
                    if (parent[idx] == -2) {
                        parent[idx] = -1;
                        frontier.push(idx);
                    }
                }
        }
        int goal = -1;
        constexpr int dx8[8] = {1, -1, 0, 0, 1, 1, -1, -1};
        constexpr int dy8[8] = {0, 0, 1, -1, 1, -1, 1, -1};
        while (!frontier.empty() && goal < 0) {
            const int cur = frontier.front();
            frontier.pop();
            const int cx = cur % w, cy = cur / w;
            for (int k = 0; k < 8; ++k) {
                const int nx = cx + dx8[k], ny = cy + dy8[k];
                if (!img_.at(nx, ny)) continue;
                const int idx = ny * w + nx;
                if (parent[idx] != -2) continue;
                parent[idx] = cur;
                if (owner[idx] >= 0 && owner[idx] != src_root) {
                    goal = idx;
                    break;
                }
                frontier.push(idx);
            }
        }
        if (goal < 0) return;  // nothing reachable; give up honestly
        std::vector<Vec2> path;
        for (int cur = goal; cur >= 0; cur = parent[cur])
            path.push_back({double(cur % w), double(cur / w)});
        std::reverse(path.begin(), path.end());
        WorkPoly join;
        join.pts = std::move(path);
        join.tags.assign(join.pts.size(), PointTag::extrapolated);
        if (join.pts.size() < 2) return;
        polys_.push_back(std::move(join));
        ++reconnect_events;
    }
}

}  // namespace

int SkeletonGraph::leaf_count() const {
    int n = 0;
    for (const auto &node : nodes) n += node.degree == 1;
    return n;
}

int SkeletonGraph::junction_count() const {
    int n = 0;
    for (const auto &node : nodes) n += node.degree >= 3;
    return n;
}

double outward_direction(const MedialSegment &seg, bool at_end) {
    const int n = int(seg.points.size());
    const int w = std::min(5, n - 1);
    if (w <= 0) return 0.0;
    const Vec2 d = at_end ? seg.points[n - 1] - seg.points[n - 1 - w]
                          : seg.points[0] - seg.points[w];
    return angle_of(d);
}

bool line_inside(const BinaryImage &img, const Vec2 &a, const Vec2 &b) {
    for (const Pixel &p : bresenham_line(round_px(a), round_px(b)))
        if (!img.at(p)) return false;
    return true;
}

std::vector<ProximitySet> build_proximity_sets(const std::vector<MedialSegment> &segments,
                                               const BinaryImage &img, double radius) {
    std::vector<EndpointRef> refs;
    std::vector<double> path_len;
    for (size_t i = 0; i < segments.size(); ++i) {
        if (segments[i].points.size() < 2) continue;
        double len = 0.0;
        for (size_t k = 0; k + 1 < segments[i].points.size(); ++k)
            len += distance(segments[i].points[k], segments[i].points[k + 1]);
        refs.push_back({int(i), false, segments[i].front(), outward_direction(segments[i], false)});
        path_len.push_back(len);
        refs.push_back({int(i), true, segments[i].back(), outward_direction(segments[i], true)});
        path_len.push_back(len);
    }
    UnionFind uf(refs.size());
    for (size_t a = 0; a < refs.size(); ++a)
        for (size_t b = a + 1; b < refs.size(); ++b) {
            const double d = distance(refs[a].position, refs[b].position);
            if (d >= radius) continue;
            // A segment's own two ends only count as close when the chain
            // really wraps around (a ring seam), not on short straight runs.
            if (refs[a].segment == refs[b].segment && path_len[a] < 3.0 * d) continue;
            if (!line_inside(img, refs[a].position, refs[b].position)) continue;
            uf.unite(int(a), int(b));
        }
    std::map<int, ProximitySet> groups;
    for (size_t a = 0; a < refs.size(); ++a) groups[uf.find(int(a))].members.push_back(refs[a]);
    std::vector<ProximitySet> out;
    for (auto &[root, set] : groups) {
        if (set.members.size() < 2) continue;
        std::sort(set.members.begin(), set.members.end());
        out.push_back(std::move(set));
    }
    std::sort(out.begin(), out.end(), [](const ProximitySet &a, const ProximitySet &b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        return a.members.front() < b.members.front();
    });
    return out;
}

SkeletonGraph assemble_skeleton(const std::vector<MedialSegment> &segments,
                                const BinaryImage &img, const ExtrapolationConfig &cfg) {
    SkeletonBuilder builder(segments, img, cfg);
    for (const ProximitySet &set : build_proximity_sets(segments, img, cfg.proximity_radius))
        builder.resolve(set);
    builder.snap_loose_ends();
    builder.reconnect_parts();
    builder.snap_loose_ends();
    if (std::getenv("MEDAX_DEBUG")) {
        int idx = 0;
        for (const WorkPoly &p : builder.polys()) {
            if (p.pts.empty()) { ++idx; continue; }
            std::fprintf(stderr, "poly %d alive=%d closed=%d n=%zu (%.2f,%.2f)..(%.2f,%.2f)\n",
                         idx++, int(p.alive), int(p.closed), p.pts.size(), p.pts.front().x,
                         p.pts.front().y, p.pts.back().x, p.pts.back().y);
        }
    }

    SkeletonGraph g;
    g.fallback_events = builder.fallback_events;
    g.reconnect_events = builder.reconnect_events;

    // Canonical orientation, then nodes from shared endpoint positions.
    auto quant = [](const Vec2 &v) {
        return std::make_pair(llround(v.x * 4096.0), llround(v.y * 4096.0));
    };
    std::map<std::pair<long long, long long>, int> node_of;
    auto node_id = [&](const Vec2 &pos) {
        const auto key = quant(pos);
        auto it = node_of.find(key);
        if (it != node_of.end()) return it->second;
        const int id = int(g.nodes.size());
        g.nodes.push_back({id, pos, 0});
        node_of.emplace(key, id);
        return id;
    };

    for (WorkPoly &p : builder.polys()) {
        if (!p.alive || p.pts.size() < 2) continue;
        double len = 0.0;
        for (size_t k = 0; k + 1 < p.pts.size(); ++k) len += distance(p.pts[k], p.pts[k + 1]);
        if (len < kEps) continue;
        SkeletonEdge e;
        if (p.closed) {
            e.closed = true;
            e.from = e.to = node_id(p.pts.front());
        } else {
            const Vec2 &f = p.pts.front();
            const Vec2 &b = p.pts.back();
            const bool flip = std::make_pair(b.y, b.x) < std::make_pair(f.y, f.x);
            if (flip) {
                std::reverse(p.pts.begin(), p.pts.end());
                std::reverse(p.tags.begin(), p.tags.end());
            }
            e.from = node_id(p.pts.front());
            e.to = node_id(p.pts.back());
            if (e.from == e.to) e.closed = true;
        }
        e.points = p.pts;
        e.tags = p.tags;
        g.edges.push_back(std::move(e));
    }

    // Node degrees, then collapse pass-through nodes of degree 2.
    auto recompute_degrees = [&]() {
        for (auto &n : g.nodes) n.degree = 0;
        for (const auto &e : g.edges) {
            g.nodes[e.from].degree += 1;
            g.nodes[e.to].degree += 1;
        }
    };
    recompute_degrees();
    bool merged = true;
    while (merged) {
        merged = false;
        for (const auto &node : g.nodes) {
            if (node.degree != 2) continue;
            std::vector<std::pair<int, bool>> incident;  // edge idx, node-is-from
            for (size_t ei = 0; ei < g.edges.size(); ++ei) {
                if (g.edges[ei].from == node.id) incident.push_back({int(ei), true});
                if (g.edges[ei].to == node.id) incident.push_back({int(ei), false});
            }
            if (incident.size() != 2) continue;
            const auto [e1, at_from1] = incident[0];
            const auto [e2, at_from2] = incident[1];
            if (e1 == e2) continue;  // cycle anchor stays
            if (g.edges[e1].closed || g.edges[e2].closed) continue;
            SkeletonEdge &a = g.edges[e1];
            SkeletonEdge &b = g.edges[e2];
            // orient a to end at the node, b to start at it
            if (at_from1) {
                std::reverse(a.points.begin(), a.points.end());
                std::reverse(a.tags.begin(), a.tags.end());
                std::swap(a.from, a.to);
            }
            if (!at_from2) {
                std::reverse(b.points.begin(), b.points.end());
                std::reverse(b.tags.begin(), b.tags.end());
                std::swap(b.from, b.to);
            }
            a.points.insert(a.points.end(), b.points.begin() + 1, b.points.end());
            a.tags.insert(a.tags.end(), b.tags.begin() + 1, b.tags.end());
            a.to = b.to;
            if (a.from == a.to) a.closed = true;
            g.edges.erase(g.edges.begin() + e2);
            recompute_degrees();
            merged = true;
            break;
        }
    }

    // Drop isolated nodes and renumber everything deterministically.
    std::vector<int> remap(g.nodes.size(), -1);
    std::vector<SkeletonNode> kept;
    std::vector<int> order(g.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto &na = g.nodes[a].pos;
        const auto &nb = g.nodes[b].pos;
        return std::make_pair(na.y, na.x) < std::make_pair(nb.y, nb.x);
    });
    for (int old_id : order) {
        if (g.nodes[old_id].degree == 0) continue;
        remap[old_id] = int(kept.size());
        SkeletonNode n = g.nodes[old_id];
        n.id = remap[old_id];
        kept.push_back(n);
    }
    for (auto &e : g.edges) {
        e.from = remap[e.from];
        e.to = remap[e.to];
    }
    g.nodes = std::move(kept);
    std::sort(g.edges.begin(), g.edges.end(), [](const SkeletonEdge &a, const SkeletonEdge &b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.to != b.to) return a.to < b.to;
        return a.points.size() < b.points.size();
    });
    return g;
}

BinaryImage rasterize_skeleton(const SkeletonGraph &g, int width, int height,
                               const BinaryImage *containment) {
    BinaryImage out(width, height);
    auto put = [&](Pixel px) {
        if (!out.in_bounds(px.x, px.y)) return;
        if (containment && !containment->at(px)) {
            constexpr int dx4[4] = {1, 0, -1, 0};
            constexpr int dy4[4] = {0, 1, 0, -1};
            for (int k = 0; k < 4; ++k) {
                const Pixel q{px.x + dx4[k], px.y + dy4[k]};
                if (containment->at(q)) {
                    out.set(q, true);
                    return;
                }
            }
            return;  // nothing nearby on ink; drop the pixel
        }
        out.set(px, true);
    };
    for (const SkeletonEdge &e : g.edges) {
        const size_t n = e.points.size();
        const size_t m = e.closed && e.from == e.to && n > 2 ? n : n - 1;
        for (size_t k = 0; k < m; ++k) {
            const Pixel a = Pixel{int(std::lround(e.points[k].x)), int(std::lround(e.points[k].y))};
            const Vec2 &nb = e.points[(k + 1) % n];
            const Pixel b = Pixel{int(std::lround(nb.x)), int(std::lround(nb.y))};
            for (const Pixel &p : bresenham_line(a, b)) put(p);
        }
    }

    // Thin incidental doubled pixels: remove simple pixels of 2x2 blocks.
    std::vector<Pixel> anchors;
    for (const auto &node : g.nodes)
        anchors.push_back({int(std::lround(node.pos.x)), int(std::lround(node.pos.y))});
    auto is_anchor = [&](const Pixel &p) {
        for (const Pixel &a : anchors)
            if (a == p) return true;
        return false;
    };
    auto removable = [&](int x, int y) {
        if (is_anchor({x, y})) return false;
        constexpr int dx8[8] = {0, 1, 1, 1, 0, -1, -1, -1};
        constexpr int dy8[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
        int n[8], cnt = 0;
        for (int k = 0; k < 8; ++k) {
            n[k] = out.at(x + dx8[k], y + dy8[k]) ? 1 : 0;
            cnt += n[k];
        }
        if (cnt < 2) return false;  // endpoints stay
        int transitions = 0;
        for (int k = 0; k < 8; ++k) transitions += (n[k] == 0 && n[(k + 1) % 8] == 1);
        return transitions == 1;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int y = 0; y + 1 < height && !changed; ++y)
            for (int x = 0; x + 1 < width && !changed; ++x) {
                if (!(out.at(x, y) && out.at(x + 1, y) && out.at(x, y + 1) &&
                      out.at(x + 1, y + 1)))
                    continue;
                const Pixel candidates[4] = {{x + 1, y + 1}, {x + 1, y}, {x, y + 1}, {x, y}};
                for (const Pixel &c : candidates) {
                    if (removable(c.x, c.y)) {
                        out.set(c, false);
                        changed = true;
                        break;
                    }
                }
            }
    }
    return out;
}

}  // namespace medax
