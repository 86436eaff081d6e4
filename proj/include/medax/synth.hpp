#pragma once

#include <optional>
#include <string>
#include <vector>

#include "medax/image.hpp"

namespace medax {

/// Synthetic test shape: ink-on-paper image plus its analytic ground truth.
struct SynthShape {
    std::string name;
    GrayImage image;             // foreground 0, background 255
    std::vector<Vec2> oracle;    // analytic midline; empty when not applicable
    int expected_leaves = 0;
};

SynthShape make_bar(int w, int h, int margin = 8);
SynthShape make_rotated_bar(int w, int h, double degrees, int margin = 8);
SynthShape make_plus(int arm_len, int width, int margin = 8);
SynthShape make_tee(int bar_len, int width, int margin = 8);
SynthShape make_ell(int leg_len, int width, int margin = 8);
SynthShape make_annulus(int outer, int hole, int margin = 8);
SynthShape make_circle(int radius, int margin = 8);

/// Dispatch by shape name; nullopt for unknown shapes or bad parameter counts.
/// Shapes: bar W H | rotated-bar W H DEG | plus L W | tee L W | ell L W |
/// annulus OUTER HOLE | circle R
std::optional<SynthShape> make_shape(const std::string &name, const std::vector<double> &params);

}  // namespace medax
