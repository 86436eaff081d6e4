#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "medax/cli.hpp"

namespace {

void add_config_flags(CLI::App *cmd, medax::PipelineConfig &cfg, std::string &pen_width) {
    cmd->add_option("--pen-width", pen_width, "max pen width in pixels, or 'auto'");
    cmd->add_option("--theta-threshold", cfg.theta_threshold,
                    "contour segmentation angle threshold (radians)");
    cmd->add_option("--n-threshold", cfg.n_threshold, "contour segmentation pixel threshold");
    cmd->add_option("--angle-tol", cfg.angle_tol, "medial pairing orientation tolerance (radians)");
    cmd->add_option("--proximity-radius", cfg.proximity_radius,
                    "endpoint proximity radius (default: pen width)");
    cmd->add_option("--min-ratio", cfg.min_ratio, "vertical-profile split ratio");
    cmd->add_option("--refine-window", cfg.refine_window, "break refinement window (pixels)");
    cmd->add_flag("--invert", cfg.invert, "light ink on dark paper");
}

bool apply_pen_width(const std::string &pen_width, medax::PipelineConfig &cfg) {
    if (pen_width.empty()) return true;
    if (pen_width == "auto") {
        cfg.pen_width_auto = true;
        return true;
    }
    try {
        cfg.pen_width = std::stod(pen_width);
    } catch (const std::exception &) {
        std::cerr << "error: --pen-width expects a number or 'auto'\n";
        return false;
    }
    return cfg.pen_width > 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"character image thinning via paired contour strokes"};
    app.require_subcommand(1);

    medax::PipelineConfig cfg;
    std::string pen_width;
    bool serial = false;
    app.add_flag("--serial", serial, "disable OpenMP parallel kernels");

    std::string thin_input, thin_outdir = ".";
    CLI::App *thin = app.add_subcommand("thin", "thin one image and write stage artifacts");
    thin->add_option("input", thin_input, "input image (PGM P5 or PNG)")->required();
    thin->add_option("-o,--output", thin_outdir, "output directory");
    add_config_flags(thin, cfg, pen_width);

    std::string cmp_dir, cmp_outdir = ".", methods_arg = "proposed,zhang-suen";
    CLI::App *cmp = app.add_subcommand("compare", "run methods over a corpus directory");
    cmp->add_option("corpus", cmp_dir, "directory of .pgm/.png images")->required();
    cmp->add_option("-o,--output", cmp_outdir, "output directory for report.csv/report.md");
    cmp->add_option("--methods", methods_arg, "comma-separated: proposed,zhang-suen");
    add_config_flags(cmp, cfg, pen_width);

    std::string synth_shape, synth_out;
    std::vector<double> synth_params;
    CLI::App *synth = app.add_subcommand("synth", "generate a synthetic test shape");
    synth->add_option("shape", synth_shape,
                      "bar|rotated-bar|plus|tee|ell|annulus|circle")->required();
    synth->add_option("params", synth_params, "shape parameters");
    synth->add_option("-o,--output", synth_out, "output PGM path")->required();

    CLI11_PARSE(app, argc, argv);
    if (serial) cfg.exec = medax::kernels::Exec::serial;
    if (!apply_pen_width(pen_width, cfg)) return 1;

    if (thin->parsed()) return medax::cli::run_thin(thin_input, thin_outdir, cfg);
    if (cmp->parsed()) {
        std::vector<std::string> methods;
        std::string cur;
        for (char ch : methods_arg + ",") {
            if (ch == ',') {
                if (!cur.empty()) methods.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        return medax::cli::run_compare(cmp_dir, cmp_outdir, methods, cfg);
    }
    if (synth->parsed()) return medax::cli::run_synth(synth_shape, synth_params, synth_out);
    return 1;
}
