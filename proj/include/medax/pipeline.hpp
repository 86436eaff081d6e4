#pragma once

#include <vector>

#include "medax/contour.hpp"
#include "medax/extrapolation.hpp"
#include "medax/image.hpp"
#include "medax/kernels.hpp"
#include "medax/medial.hpp"
#include "medax/raster.hpp"
#include "medax/segmentation.hpp"

namespace medax {

/// All pipeline thresholds; flags are the single source of truth.
struct PipelineConfig {
    double theta_threshold = 0.7;
    int n_threshold = 5;
    double angle_tol = 0.45;
    double pen_width = 12.0;
    bool pen_width_auto = false;    // pen width = 0.25 * component bbox height
    double proximity_radius = 0.0;  // <= 0 means "use the effective pen width"
    double min_ratio = 0.2;
    int refine_window = 3;
    bool invert = false;  // light ink on dark paper
    int neighbor_depth = 5;
    double collinear_tol = 0.45;
    kernels::Exec exec = kernels::Exec::parallel;
};

struct ComponentOutput {
    Component component;
    std::vector<Contour> contours;
    std::vector<ContourStroke> strokes;
    std::vector<MedialSegment> segments;
    SkeletonGraph graph;
    double pen_width_used = 0.0;
    size_t accepted_midpoints = 0;
};

struct PipelineOutput {
    BinaryImage binary;
    std::vector<ComponentOutput> components;
    BinaryImage skeleton;
    int fallback_events = 0;
    int reconnect_events = 0;
};

/// Run the per-component stages on an already-binarized image.
PipelineOutput run_pipeline_binary(const BinaryImage &bin, const PipelineConfig &cfg);

/// Binarize, isolate components (splitting matra-joined words on the
/// vertical profile), then trace / segment / pair / extrapolate each one and
/// rasterize the union skeleton.
PipelineOutput run_pipeline(const GrayImage &img, const PipelineConfig &cfg);

}  // namespace medax
