#pragma once

#include <string>
#include <vector>

#include "medax/pipeline.hpp"

namespace medax::cli {

/// Run the full pipeline on one image and write the stage artifacts
/// (contour.json/png, strokes.json/png, medial.json/png,
/// skeleton.json/svg/pgm) into outdir. Returns a process exit status.
int run_thin(const std::string &input, const std::string &outdir, const PipelineConfig &cfg);

/// Run every method over the corpus directory and write report.csv and
/// report.md into outdir.
int run_compare(const std::string &corpus_dir, const std::string &outdir,
                const std::vector<std::string> &methods, const PipelineConfig &cfg);

/// Generate a synthetic shape image plus its sidecar ground truth.
int run_synth(const std::string &shape, const std::vector<double> &params,
              const std::string &out_path);

}  // namespace medax::cli
