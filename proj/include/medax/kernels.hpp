#pragma once

#include <array>
#include <cstdint>

#include "medax/image.hpp"

namespace medax::kernels {

/// Execution policy for the per-pixel kernels. Every kernel has a serial
/// reference implementation and an OpenMP one; both produce bit-identical
/// results (integer work only, no cross-pixel dependences within a pass).
enum class Exec { serial, parallel };

/// 256-bin intensity histogram.
std::array<uint64_t, 256> histogram256(const GrayImage &img, Exec exec = Exec::parallel);

/// Apply a global threshold. dark_foreground: foreground = samples <= t,
/// otherwise foreground = samples > t.
BinaryImage threshold_mask(const GrayImage &img, int t, bool dark_foreground,
                           Exec exec = Exec::parallel);

/// Mask of foreground pixels whose 3x3 neighborhood contains background
/// (off-image neighbors count as background).
BinaryImage boundary_mask(const BinaryImage &img, Exec exec = Exec::parallel);

/// One Zhang-Suen subiteration (subiter 0 or 1) applied in place.
/// Returns the number of deleted pixels.
int zhang_suen_pass(BinaryImage &img, int subiter, Exec exec = Exec::parallel);

}  // namespace medax::kernels
