#pragma once

#include <optional>
#include <string>
#include <vector>

#include "medax/image.hpp"
#include "medax/kernels.hpp"
#include "medax/pipeline.hpp"

namespace medax {

/// Structural quality measures of a skeleton against its source image.
struct ThinMetrics {
    int component_count_delta = 0;  // skeleton minus original, 8-connected
    int hole_count_delta = 0;       // Euler-based hole counting
    int max_width_violations = 0;   // 2x2 all-foreground blocks in the skeleton
    int leaf_count = 0;             // skeleton pixels with exactly one neighbor
    int spurious_branch_count = 0;  // leaves beyond the expected leaf count
    int containment_violations = 0; // skeleton pixels off the original ink
    std::optional<double> midline_hausdorff;  // vs. the oracle, when given
};

/// Classic two-subiteration parallel thinning, run to convergence.
BinaryImage zhang_suen_thin(const BinaryImage &img,
                            kernels::Exec exec = kernels::Exec::parallel);

/// 8-connected foreground component count.
int count_components8(const BinaryImage &img);

/// Euler number for 8-connected foreground (bit-quad counting).
int euler_number8(const BinaryImage &img);

/// Holes = components - Euler number (8-connected fg / 4-connected bg duality).
int count_holes(const BinaryImage &img);

/// Count of 2x2 all-foreground blocks.
int count_width_violations(const BinaryImage &img);

/// Skeleton pixels with exactly one 8-neighbor.
int count_leaves(const BinaryImage &img);

/// Symmetric Hausdorff distance between skeleton pixels and a polyline.
double skeleton_hausdorff(const BinaryImage &skeleton, const std::vector<Vec2> &polyline);

ThinMetrics compute_metrics(const BinaryImage &original, const BinaryImage &skeleton,
                            std::optional<int> expected_leaves = std::nullopt,
                            const std::vector<Vec2> *midline_oracle = nullptr);

struct CompareRow {
    std::string input;
    std::string method;
    ThinMetrics metrics;
};

struct CorpusEntry {
    std::string name;
    BinaryImage image;
    std::optional<int> expected_leaves;
    std::vector<Vec2> oracle;  // empty when no sidecar midline is available
};

/// One metrics row per method per input, inputs in given order, methods in
/// given order. Known methods: "proposed", "zhang-suen".
std::vector<CompareRow> compare_run(const std::vector<CorpusEntry> &corpus,
                                    const std::vector<std::string> &methods,
                                    const PipelineConfig &cfg);

}  // namespace medax
