#include "medax/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "medax/raster.hpp"

namespace medax {

BinaryImage zhang_suen_thin(const BinaryImage &img, kernels::Exec exec) {
    BinaryImage out = img;
    for (;;) {
        const int d0 = kernels::zhang_suen_pass(out, 0, exec);
        const int d1 = kernels::zhang_suen_pass(out, 1, exec);
        if (d0 + d1 == 0) break;
    }
    return out;
}

int count_components8(const BinaryImage &img) {
    return int(connected_components(img).size());
}

int euler_number8(const BinaryImage &img) {
    // Gray's bit-quad formula for 8-connectivity:
    // E = (Q1 - Q3 - 2*Qd) / 4 over all 2x2 windows (background padding).
    long long q1 = 0, q3 = 0, qd = 0;
    for (int y = -1; y < img.height; ++y)
        for (int x = -1; x < img.width; ++x) {
            const int a = img.at(x, y) ? 1 : 0;
            const int b = img.at(x + 1, y) ? 1 : 0;
            const int c = img.at(x, y + 1) ? 1 : 0;
            const int d = img.at(x + 1, y + 1) ? 1 : 0;
            const int s = a + b + c + d;
            if (s == 1) ++q1;
            else if (s == 3) ++q3;
            else if (s == 2 && ((a && d && !b && !c) || (b && c && !a && !d))) ++qd;
        }
    return int((q1 - q3 - 2 * qd) / 4);
}

int count_holes(const BinaryImage &img) {
    return count_components8(img) - euler_number8(img);
}

int count_width_violations(const BinaryImage &img) {
    int n = 0;
    for (int y = 0; y + 1 < img.height; ++y)
        for (int x = 0; x + 1 < img.width; ++x)
            n += img.at(x, y) && img.at(x + 1, y) && img.at(x, y + 1) && img.at(x + 1, y + 1);
    return n;
}

int count_leaves(const BinaryImage &img) {
    int n = 0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            if (!img.at(x, y)) continue;
            int neighbors = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    if ((dx || dy) && img.at(x + dx, y + dy)) ++neighbors;
            n += neighbors == 1;
        }
    return n;
}

double skeleton_hausdorff(const BinaryImage &skeleton, const std::vector<Vec2> &polyline) {
    std::vector<Vec2> px;
    for (int y = 0; y < skeleton.height; ++y)
        for (int x = 0; x < skeleton.width; ++x)
            if (skeleton.at(x, y)) px.push_back({double(x), double(y)});
    if (px.empty() || polyline.empty()) return std::numeric_limits<double>::infinity();

    double fwd = 0.0;
    for (const Vec2 &p : px) fwd = std::max(fwd, point_polyline_distance(p, polyline));

    double bwd = 0.0;
    auto nearest_px = [&](const Vec2 &q) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2 &p : px) best = std::min(best, distance(p, q));
        return best;
    };
    if (polyline.size() == 1) {
        bwd = nearest_px(polyline.front());
    } else {
        for (size_t i = 0; i + 1 < polyline.size(); ++i) {
            const double len = distance(polyline[i], polyline[i + 1]);
            const int steps = std::max(1, int(std::ceil(len / 0.5)));
            for (int k = 0; k <= steps; ++k) {
                const Vec2 q = polyline[i] + (polyline[i + 1] - polyline[i]) * (double(k) / steps);
                bwd = std::max(bwd, nearest_px(q));
            }
        }
    }
    return std::max(fwd, bwd);
}

ThinMetrics compute_metrics(const BinaryImage &original, const BinaryImage &skeleton,
                            std::optional<int> expected_leaves,
                            const std::vector<Vec2> *midline_oracle) {
    if (original.width != skeleton.width || original.height != skeleton.height)
        throw std::invalid_argument("compute_metrics: dimension mismatch");
    ThinMetrics m;
    m.component_count_delta = count_components8(skeleton) - count_components8(original);
    m.hole_count_delta = count_holes(skeleton) - count_holes(original);
    m.max_width_violations = count_width_violations(skeleton);
    m.leaf_count = count_leaves(skeleton);
    if (expected_leaves)
        m.spurious_branch_count = std::max(0, m.leaf_count - *expected_leaves);
    for (size_t i = 0; i < skeleton.mask.size(); ++i)
        if (skeleton.mask[i] && !original.mask[i]) ++m.containment_violations;
    if (midline_oracle && !midline_oracle->empty())
        m.midline_hausdorff = skeleton_hausdorff(skeleton, *midline_oracle);
    return m;
}

std::vector<CompareRow> compare_run(const std::vector<CorpusEntry> &corpus,
                                    const std::vector<std::string> &methods,
                                    const PipelineConfig &cfg) {
    std::vector<CompareRow> rows;
    for (const CorpusEntry &entry : corpus) {
        for (const std::string &method : methods) {
            BinaryImage skeleton;
            if (method == "proposed") {
                skeleton = run_pipeline_binary(entry.image, cfg).skeleton;
            } else if (method == "zhang-suen" || method == "zhang_suen") {
                skeleton = zhang_suen_thin(entry.image, cfg.exec);
            } else {
                throw std::invalid_argument("unknown method: " + method);
            }
            rows.push_back({entry.name, method,
                            compute_metrics(entry.image, skeleton, entry.expected_leaves,
                                            entry.oracle.empty() ? nullptr : &entry.oracle)});
        }
    }
    return rows;
}

}  // namespace medax
