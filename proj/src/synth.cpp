#include "medax/synth.hpp"

#include <cmath>

namespace medax {

namespace {

GrayImage blank(int w, int h) { return GrayImage(w, h, 255); }

void fill_rect(GrayImage &img, int x0, int y0, int w, int h) {
    for (int y = y0; y < y0 + h; ++y)
        for (int x = x0; x < x0 + w; ++x)
            if (img.in_bounds(x, y)) img.at(x, y) = 0;
}

}  // namespace

SynthShape make_bar(int w, int h, int margin) {
    SynthShape s;
    s.name = "bar";
    s.image = blank(w + 2 * margin, h + 2 * margin);
    fill_rect(s.image, margin, margin, w, h);
    const double yc = margin + (h - 1) / 2.0;
    const double inset = (h - 1) / 2.0;
    s.oracle = {{margin + inset, yc}, {margin + (w - 1) - inset, yc}};
    s.expected_leaves = 2;
    return s;
}

SynthShape make_rotated_bar(int w, int h, double degrees, int margin) {
    SynthShape s;
    s.name = "rotated-bar";
    const int dim = int(std::ceil(std::hypot(double(w), double(h)))) + 2 * margin;
    s.image = blank(dim, dim);
    const double cx = (dim - 1) / 2.0, cy = (dim - 1) / 2.0;
    const double th = degrees * kPi / 180.0;
    const double c = std::cos(th), sn = std::sin(th);
    for (int y = 0; y < dim; ++y)
        for (int x = 0; x < dim; ++x) {
            const double u = c * (x - cx) + sn * (y - cy);
            const double v = -sn * (x - cx) + c * (y - cy);
            if (std::fabs(u) <= w / 2.0 - 0.5 && std::fabs(v) <= h / 2.0 - 0.5)
                s.image.at(x, y) = 0;
        }
    const double half = (w - h) / 2.0;  // between the cap-circle centers
    s.oracle = {{cx - c * half, cy - sn * half}, {cx + c * half, cy + sn * half}};
    s.expected_leaves = 2;
    return s;
}

SynthShape make_plus(int arm_len, int width, int margin) {
    SynthShape s;
    s.name = "plus";
    const int dim = arm_len + 2 * margin;
    s.image = blank(dim, dim);
    const int off = margin + (arm_len - width) / 2;
    fill_rect(s.image, margin, off, arm_len, width);  // horizontal
    fill_rect(s.image, off, margin, width, arm_len);  // vertical
    s.expected_leaves = 4;
    return s;
}

SynthShape make_tee(int bar_len, int width, int margin) {
    SynthShape s;
    s.name = "tee";
    const int stem_len = (3 * bar_len) / 4;
    s.image = blank(bar_len + 2 * margin, width + stem_len + 2 * margin);
    fill_rect(s.image, margin, margin, bar_len, width);
    const int sx = margin + (bar_len - width) / 2;
    fill_rect(s.image, sx, margin + width, width, stem_len);
    s.expected_leaves = 3;
    return s;
}

SynthShape make_ell(int leg_len, int width, int margin) {
    SynthShape s;
    s.name = "ell";
    const int dim = leg_len + 2 * margin;
    s.image = blank(dim, dim);
    fill_rect(s.image, margin, margin, width, leg_len);                    // vertical leg
    fill_rect(s.image, margin, margin + leg_len - width, leg_len, width);  // foot
    s.expected_leaves = 2;
    return s;
}

SynthShape make_annulus(int outer, int hole, int margin) {
    SynthShape s;
    s.name = "annulus";
    const int dim = outer + 2 * margin;
    s.image = blank(dim, dim);
    fill_rect(s.image, margin, margin, outer, outer);
    const int h0 = margin + (outer - hole) / 2;
    for (int y = h0; y < h0 + hole; ++y)
        for (int x = h0; x < h0 + hole; ++x) s.image.at(x, y) = 255;
    s.expected_leaves = 0;
    return s;
}

SynthShape make_circle(int radius, int margin) {
    SynthShape s;
    s.name = "circle";
    const int dim = 2 * radius + 1 + 2 * margin;
    s.image = blank(dim, dim);
    const int cx = margin + radius, cy = margin + radius;
    for (int y = 0; y < dim; ++y)
        for (int x = 0; x < dim; ++x)
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= radius * radius)
                s.image.at(x, y) = 0;
    s.expected_leaves = 0;
    return s;
}

std::optional<SynthShape> make_shape(const std::string &name, const std::vector<double> &params) {
    auto want = [&](size_t n) { return params.size() == n; };
    if (name == "bar" && want(2)) return make_bar(int(params[0]), int(params[1]));
    if (name == "rotated-bar" && want(3))
        return make_rotated_bar(int(params[0]), int(params[1]), params[2]);
    if (name == "plus" && want(2)) return make_plus(int(params[0]), int(params[1]));
    if (name == "tee" && want(2)) return make_tee(int(params[0]), int(params[1]));
    if (name == "ell" && want(2)) return make_ell(int(params[0]), int(params[1]));
    if (name == "annulus" && want(2)) return make_annulus(int(params[0]), int(params[1]));
    if (name == "circle" && want(1)) return make_circle(int(params[0]));
    return std::nullopt;
}

}  // namespace medax
