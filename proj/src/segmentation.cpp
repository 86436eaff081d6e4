#include "medax/segmentation.hpp"

#include <algorithm>
#include <cmath>

namespace medax {

namespace {

constexpr double kZeroTrendEps = 1e-9;

int trend_sign(double d) {
    if (std::fabs(d) < kZeroTrendEps) return 0;
    return d > 0 ? 1 : -1;
}

double step_angle(const Contour &c, int i) {
    const Pixel &a = c.at(i);
    const Pixel &b = c.at(i + 1);
    return std::atan2(double(b.y - a.y), double(b.x - a.x));
}

/// Variance score used by the break refinement.
double refine_score(const Contour &c, int j, int window) {
    std::vector<double> fwd, bwd;
    fwd.reserve(window);
    bwd.reserve(window);
    for (int k = 0; k < window; ++k) fwd.push_back(step_angle(c, j + k));
    for (int k = 1; k <= window; ++k) bwd.push_back(step_angle(c, j - k));
    return std::max(circular_variance(fwd), circular_variance(bwd));
}

struct CandidateScan {
    int offset = 0;  // steps from s; == limit means the scan exhausted the range
};

/// Incremental trend-group scan implementing the two stopping rules.
CandidateScan scan_candidate(const Contour &c, int s, int limit, const SegConfig &cfg) {
    CandidateScan out;
    double prev_theta = 0.0;
    int group_first = 1;         // offset of the current group's first hypothesis
    int group_trend = 0;
    bool trend_set = false;
    double group_acc = 0.0;      // accumulated wrapped delta within the group
    int prev_group_end = 0;      // offset of the preceding group's last hypothesis
    bool have_prev_group = false;
    bool group_checked_n = false;
    int group_index = 1;

    for (int k = 1; k <= limit; ++k) {
        const double theta = chord_angle(c, s, (s + k) % c.size());
        if (k > 1) {
            const double d = wrap_angle(theta - prev_theta);
            const int sign = trend_sign(d);
            if (!trend_set) {
                group_trend = sign;
                trend_set = true;
                group_acc += d;  // theta_2 - theta_1 belongs to the first group
            } else if (sign != group_trend) {
                // close the current group; no rule fired inside it
                prev_group_end = k - 1;
                have_prev_group = true;
                ++group_index;
                group_first = k;
                group_trend = sign;
                group_acc = 0.0;  // delta of a group is theta_last - theta_first
                group_checked_n = false;
            } else {
                group_acc += d;
            }
        }
        prev_theta = theta;

        // Rule (a): total orientation change of the group exceeds the threshold.
        if (std::fabs(group_acc) > cfg.theta_threshold) {
            if (group_index == 1 && !have_prev_group) {
                out.offset = k;  // first index where the accumulation reached it
                return out;
            }
            out.offset = prev_group_end;
            return out;
        }
        // Rule (b): the group grew past N_threshold pixels.
        const int group_count = k - group_first + 1;
        if (!group_checked_n && group_count > cfg.n_threshold) {
            group_checked_n = true;
            if (have_prev_group && prev_group_end > cfg.n_threshold) {
                out.offset = prev_group_end;
                return out;
            }
        }
    }
    out.offset = limit;
    return out;
}

}  // namespace

double chord_angle(const Contour &contour, int s, int e) {
    const Pixel &a = contour.at(s);
    const Pixel &b = contour.at(e);
    return wrap_angle(std::atan2(double(b.y - a.y), double(b.x - a.x)));
}

std::vector<TrendGroup> trend_groups(const Contour &contour, int s, int max_hypotheses) {
    const int n = contour.size();
    const int limit = max_hypotheses > 0 ? std::min(max_hypotheses, n) : n;
    std::vector<TrendGroup> out;
    if (n < 2 || limit < 1) return out;

    TrendGroup cur;
    cur.first_idx = (s + 1) % n;
    cur.count = 1;
    bool trend_set = false;
    double prev_theta = chord_angle(contour, s, (s + 1) % n);
    double first_theta = prev_theta;

    for (int k = 2; k <= limit; ++k) {
        const double theta = chord_angle(contour, s, (s + k) % n);
        const double d = wrap_angle(theta - prev_theta);
        const int sign = trend_sign(d);
        if (!trend_set) {
            cur.trend = sign;
            trend_set = true;
        } else if (sign != cur.trend) {
            cur.last_idx = (s + k - 1) % n;
            cur.delta_theta = wrap_angle(prev_theta - first_theta);
            out.push_back(cur);
            cur = TrendGroup{};
            cur.first_idx = (s + k) % n;
            cur.trend = sign;
            cur.count = 0;
            first_theta = theta;
        }
        ++cur.count;
        prev_theta = theta;
    }
    cur.last_idx = (s + limit) % n;
    cur.delta_theta = wrap_angle(prev_theta - first_theta);
    out.push_back(cur);
    return out;
}

int find_candidate_end(const Contour &contour, int s, const SegConfig &cfg, int max_hypotheses) {
    const int n = contour.size();
    const int limit = max_hypotheses > 0 ? std::min(max_hypotheses, n) : n;
    const auto scan = scan_candidate(contour, s, limit, cfg);
    return (s + scan.offset) % n;
}

int refine_end(const Contour &contour, int candidate, int window) {
    const int n = contour.size();
    if (n < 2 || window < 1) return candidate;
    int best = candidate;
    double best_score = refine_score(contour, candidate, window);
    for (int d = 1; d <= window; ++d) {
        for (int sgn : {-1, 1}) {
            const int j = ((candidate + sgn * d) % n + n) % n;
            const double score = refine_score(contour, j, window);
            if (score < best_score - 1e-12) {
                best_score = score;
                best = j;
            }
        }
    }
    return best;
}

std::vector<ContourStroke> segment_contour(const Contour &contour, const SegConfig &cfg) {
    std::vector<ContourStroke> out;
    const int n = contour.size();
    if (n == 0) return out;
    if (n < 4) {
        out.push_back({contour.id, 0, n + 1, 0.0});
        return out;
    }

    int s = 0;
    int covered = 0;
    while (covered < n) {
        const int limit = n - covered;
        int off = scan_candidate(contour, s, limit, cfg).offset;
        if (off < limit && cfg.refine_window > 0) {
            // Refine within the window, clamped so the break stays inside the
            // remaining arc and the stroke keeps at least 2 points.
            const int lo = std::max(1, off - cfg.refine_window);
            const int hi = std::min(limit, off + cfg.refine_window);
            int best_off = off;
            double best_score = refine_score(contour, (s + off) % n, cfg.refine_window);
            for (int d = 1; d <= cfg.refine_window; ++d) {
                for (int sgn : {-1, 1}) {
                    const int j = off + sgn * d;
                    if (j < lo || j > hi) continue;
                    const double score = refine_score(contour, (s + j) % n, cfg.refine_window);
                    if (score < best_score - 1e-12) {
                        best_score = score;
                        best_off = j;
                    }
                }
            }
            off = best_off;
        }
        ContourStroke stroke;
        stroke.contour_id = contour.id;
        stroke.start = s;
        stroke.count = off + 1;
        stroke.chord_angle =
            off == n ? 0.0 : chord_angle(contour, s, (s + off) % n);
        out.push_back(stroke);
        s = (s + off) % n;
        covered += off;
    }
    return out;
}

}  // namespace medax
