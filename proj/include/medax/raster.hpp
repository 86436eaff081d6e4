#pragma once

#include <optional>
#include <vector>

#include "medax/image.hpp"
#include "medax/kernels.hpp"

namespace medax {

/// Otsu threshold over a 256-bin histogram: the smallest t maximizing
/// between-class variance of the split [0..t] / [t+1..255].
/// Returns nullopt for uniform histograms (single populated bin).
std::optional<int> otsu_threshold(const std::array<uint64_t, 256> &hist);

/// Binarize with Otsu's method. Foreground is the class with lower mean
/// intensity (ink on paper); invert flips that. Uniform images produce an
/// empty foreground.
BinaryImage otsu_binarize(const GrayImage &img, bool invert = false,
                          kernels::Exec exec = kernels::Exec::parallel);

/// Maximal 8-connected foreground sets. Labels are dense from 0 in scanline
/// order of each component's first pixel; pixel lists are scanline sorted.
std::vector<Component> connected_components(const BinaryImage &img);

/// Column-sum profile of a component's pixels over its bbox.
std::vector<int> vertical_profile(const Component &comp);

/// Split a component at interior vertical-profile minima. A maximal plateau
/// of equal profile values qualifies when it does not touch the bbox sides,
/// both flanking columns are higher, and its value is <= min_ratio * median
/// of the nonzero profile. The cut falls on the plateau's middle column;
/// pixels on a cut column join the left piece. Pieces are re-labeled and
/// re-split into 8-connected sets. Returns {comp} when nothing qualifies.
std::vector<Component> split_by_vertical_profile(const Component &comp, double min_ratio = 0.2);

}  // namespace medax
