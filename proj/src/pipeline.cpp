#include "medax/pipeline.hpp"

#include <algorithm>

namespace medax {

namespace {

ComponentOutput process_component(const Component &comp, const BinaryImage &bin,
                                  const PipelineConfig &cfg) {
    ComponentOutput out;
    out.component = comp;
    double pen = cfg.pen_width_auto ? 0.25 * comp.bbox.height : cfg.pen_width;
    pen = std::max(pen, 2.0);
    out.pen_width_used = pen;

    out.contours = trace_contours(comp, bin);

    const SegConfig seg_cfg{cfg.theta_threshold, cfg.n_threshold, cfg.refine_window};
    for (const Contour &c : out.contours) {
        auto strokes = segment_contour(c, seg_cfg);
        out.strokes.insert(out.strokes.end(), strokes.begin(), strokes.end());
    }

    MedialConfig med_cfg;
    med_cfg.angle_tol = cfg.angle_tol;
    med_cfg.pen_width = pen;
    med_cfg.neighbor_depth = cfg.neighbor_depth;
    auto extraction = extract_medial_segments(out.strokes, out.contours, bin, med_cfg);
    out.segments = std::move(extraction.segments);
    out.accepted_midpoints = extraction.accepted_midpoints;

    ExtrapolationConfig ext_cfg;
    ext_cfg.proximity_radius = cfg.proximity_radius > 0 ? cfg.proximity_radius : pen;
    ext_cfg.collinear_tol = cfg.collinear_tol;
    out.graph = assemble_skeleton(out.segments, bin, ext_cfg);
    return out;
}

}  // namespace

PipelineOutput run_pipeline_binary(const BinaryImage &bin, const PipelineConfig &cfg) {
    PipelineOutput out;
    out.binary = bin;

    std::vector<Component> components;
    for (const Component &c : connected_components(bin)) {
        auto pieces = split_by_vertical_profile(c, cfg.min_ratio);
        components.insert(components.end(), pieces.begin(), pieces.end());
    }
    for (size_t i = 0; i < components.size(); ++i) components[i].label = int(i);

    out.components.resize(components.size());
    const int n = int(components.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.exec == kernels::Exec::parallel)
#endif
    for (int i = 0; i < n; ++i)
        out.components[i] = process_component(components[i], bin, cfg);

    out.skeleton = BinaryImage(bin.width, bin.height);
    for (const ComponentOutput &c : out.components) {
        const BinaryImage layer = rasterize_skeleton(c.graph, bin.width, bin.height, &bin);
        for (size_t k = 0; k < layer.mask.size(); ++k)
            if (layer.mask[k]) out.skeleton.mask[k] = 1;
        out.fallback_events += c.graph.fallback_events;
        out.reconnect_events += c.graph.reconnect_events;
    }
    return out;
}

PipelineOutput run_pipeline(const GrayImage &img, const PipelineConfig &cfg) {
    return run_pipeline_binary(otsu_binarize(img, cfg.invert, cfg.exec), cfg);
}

}  // namespace medax
