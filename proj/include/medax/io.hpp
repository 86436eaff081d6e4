#pragma once

#include <optional>
#include <string>
#include <vector>

#include "medax/bench.hpp"
#include "medax/image.hpp"
#include "medax/pipeline.hpp"

namespace medax::io {

/// Throws std::runtime_error on unreadable or malformed files.
GrayImage read_image(const std::string &path);  // PGM (P5) or PNG by magic
GrayImage read_pgm(const std::string &path);
GrayImage read_png(const std::string &path);  // 8-bit gray; RGB via luminance

void write_pgm(const std::string &path, const GrayImage &img);
/// Foreground = 0 (ink), background = 255.
void write_mask_pgm(const std::string &path, const BinaryImage &mask);

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;  // rgb, row-major

    RgbImage() = default;
    RgbImage(int w, int h, uint8_t fill = 255)
        : width(w), height(h), data(size_t(w) * h * 3, fill) {}
    void set(int x, int y, uint8_t r, uint8_t g, uint8_t b) {
        if (x < 0 || y < 0 || x >= width || y >= height) return;
        uint8_t *p = &data[(size_t(y) * width + x) * 3];
        p[0] = r;
        p[1] = g;
        p[2] = b;
    }
};

void write_png(const std::string &path, const RgbImage &img);

// --- stage artifacts -------------------------------------------------------

std::string contours_json(const PipelineOutput &out);
std::string strokes_json(const PipelineOutput &out);
std::string medial_json(const PipelineOutput &out);
std::string skeleton_json(const PipelineOutput &out);
std::string skeleton_svg(const PipelineOutput &out);

RgbImage render_contours(const PipelineOutput &out);
RgbImage render_strokes(const PipelineOutput &out);
RgbImage render_medial(const PipelineOutput &out);

// --- comparison reports ----------------------------------------------------

std::string report_csv(const std::vector<CompareRow> &rows);
std::string report_markdown(const std::vector<CompareRow> &rows);

/// Sidecar ground truth next to a corpus image ("<stem>.json").
struct Sidecar {
    std::optional<int> expected_leaves;
    std::vector<Vec2> oracle;
};
std::string sidecar_json(const Sidecar &sc, const std::string &shape_name);
std::optional<Sidecar> read_sidecar(const std::string &path);

void write_text(const std::string &path, const std::string &content);

}  // namespace medax::io
