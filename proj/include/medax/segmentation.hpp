#pragma once

#include <vector>

#include "medax/contour.hpp"

namespace medax {

struct SegConfig {
    double theta_threshold = 0.7;  // radians of accumulated chord-angle change
    int n_threshold = 5;           // pixels
    int refine_window = 3;         // pixels each side of the candidate
};

/// Contiguous index span of a contour representing one boundary stroke.
/// Spans are cyclic; count is the number of points in the span (>= 2).
/// count == contour.size() + 1 encodes a stroke closing the full cycle.
struct ContourStroke {
    int contour_id = 0;
    int start = 0;
    int count = 0;
    double chord_angle = 0.0;

    int end(int contour_size) const { return (start + count - 1) % contour_size; }
    /// True when contour index i (cyclic) lies within the span.
    bool contains(int i, int contour_size) const {
        const int n = contour_size;
        int off = ((i - start) % n + n) % n;
        return off < count;
    }
};

/// Maximal run of endpoint hypotheses over which the incremental chord-angle
/// change keeps one sign.
struct TrendGroup {
    int first_idx = 0;  // contour index of the group's first hypothesis
    int last_idx = 0;   // contour index of the group's last hypothesis
    int trend = 0;      // +1, -1, or 0
    double delta_theta = 0.0;
    int count = 0;
};

/// Angle of the vector from contour point s to point e, in (-pi, pi].
double chord_angle(const Contour &contour, int s, int e);

/// Hypothesis trend groups scanned from start point s over up to
/// max_hypotheses cyclic steps (<= 0 means the full cycle).
std::vector<TrendGroup> trend_groups(const Contour &contour, int s, int max_hypotheses = 0);

/// Candidate end point for a stroke hypothesized from s, scanning up to
/// max_hypotheses steps. Returns the contour index of the candidate; the
/// index s + max_hypotheses (cyclic) signals that the scan exhausted the
/// range and the stroke closes it.
int find_candidate_end(const Contour &contour, int s, const SegConfig &cfg,
                       int max_hypotheses = 0);

/// Shift a candidate break to the position within +/-window that minimizes
/// max(forward, backward) variance of step orientations; ties resolve toward
/// the original candidate (closer offsets first, negative side first).
int refine_end(const Contour &contour, int candidate, int window);

/// Full segmentation of a closed contour into strokes that jointly cover the
/// cycle, adjacent strokes sharing exactly one endpoint index.
std::vector<ContourStroke> segment_contour(const Contour &contour, const SegConfig &cfg);

}  // namespace medax
