#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "medax/geometry.hpp"

namespace medax {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> samples;

    GrayImage() = default;
    GrayImage(int w, int h, uint8_t fill = 0) : width(w), height(h), samples(size_t(w) * h, fill) {}

    bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
    uint8_t at(int x, int y) const { return samples[size_t(y) * width + x]; }
    uint8_t &at(int x, int y) { return samples[size_t(y) * width + x]; }
    size_t pixel_count() const { return size_t(width) * height; }
    bool empty() const { return width <= 0 || height <= 0; }
};

/// Foreground/background mask; 1 = foreground (ink).
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> mask;

    BinaryImage() = default;
    BinaryImage(int w, int h, bool fill = false)
        : width(w), height(h), mask(size_t(w) * h, fill ? 1 : 0) {}

    bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
    /// Off-image coordinates read as background.
    bool at(int x, int y) const { return in_bounds(x, y) && mask[size_t(y) * width + x] != 0; }
    bool at(const Pixel &p) const { return at(p.x, p.y); }
    void set(int x, int y, bool v) { mask[size_t(y) * width + x] = v ? 1 : 0; }
    void set(const Pixel &p, bool v) { set(p.x, p.y, v); }

    size_t foreground_count() const {
        size_t n = 0;
        for (uint8_t v : mask) n += (v != 0);
        return n;
    }

    friend bool operator==(const BinaryImage &a, const BinaryImage &b) {
        return a.width == b.width && a.height == b.height && a.mask == b.mask;
    }
};

/// One 8-connected foreground set.
struct Component {
    int label = 0;
    Rect bbox;
    std::vector<Pixel> pixels;  // scanline order
};

/// Render a mask as a 0/255 grayscale image (foreground = 0, ink-on-paper).
inline GrayImage to_gray(const BinaryImage &bin) {
    GrayImage out(bin.width, bin.height, 255);
    for (size_t i = 0; i < bin.mask.size(); ++i)
        if (bin.mask[i]) out.samples[i] = 0;
    return out;
}

}  // namespace medax
