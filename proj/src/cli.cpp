#include "medax/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "medax/io.hpp"
#include "medax/synth.hpp"

namespace medax::cli {

namespace fs = std::filesystem;

int run_thin(const std::string &input, const std::string &outdir, const PipelineConfig &cfg) {
    try {
        const GrayImage img = io::read_image(input);
        const PipelineOutput out = run_pipeline(img, cfg);
        if (out.binary.foreground_count() == 0)
            std::cerr << "warning: no foreground detected in " << input << "\n";

        // Build everything first so a failure leaves no partial stage files.
        const std::string contours = io::contours_json(out);
        const std::string strokes = io::strokes_json(out);
        const std::string medial = io::medial_json(out);
        const std::string skeleton = io::skeleton_json(out);
        const std::string svg = io::skeleton_svg(out);
        const io::RgbImage contour_png = io::render_contours(out);
        const io::RgbImage strokes_png = io::render_strokes(out);
        const io::RgbImage medial_png = io::render_medial(out);

        fs::create_directories(outdir);
        const fs::path dir(outdir);
        io::write_text((dir / "contour.json").string(), contours);
        io::write_png((dir / "contour.png").string(), contour_png);
        io::write_text((dir / "strokes.json").string(), strokes);
        io::write_png((dir / "strokes.png").string(), strokes_png);
        io::write_text((dir / "medial.json").string(), medial);
        io::write_png((dir / "medial.png").string(), medial_png);
        io::write_text((dir / "skeleton.json").string(), skeleton);
        io::write_text((dir / "skeleton.svg").string(), svg);
        io::write_mask_pgm((dir / "skeleton.pgm").string(), out.skeleton);
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_compare(const std::string &corpus_dir, const std::string &outdir,
                const std::vector<std::string> &methods, const PipelineConfig &cfg) {
    try {
        std::vector<fs::path> files;
        for (const auto &entry : fs::directory_iterator(corpus_dir)) {
            if (!entry.is_regular_file()) continue;
            const std::string ext = entry.path().extension().string();
            if (ext == ".pgm" || ext == ".png") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            std::cerr << "error: no .pgm/.png images in " << corpus_dir << "\n";
            return 1;
        }

        std::vector<CorpusEntry> corpus;
        for (const fs::path &f : files) {
            CorpusEntry entry;
            entry.name = f.filename().string();
            entry.image = otsu_binarize(io::read_image(f.string()), cfg.invert, cfg.exec);
            fs::path sidecar = f;
            sidecar.replace_extension(".json");
            if (auto sc = io::read_sidecar(sidecar.string())) {
                entry.expected_leaves = sc->expected_leaves;
                entry.oracle = sc->oracle;
            }
            corpus.push_back(std::move(entry));
        }

        const auto rows = compare_run(corpus, methods, cfg);
        fs::create_directories(outdir);
        const fs::path dir(outdir);
        io::write_text((dir / "report.csv").string(), io::report_csv(rows));
        io::write_text((dir / "report.md").string(), io::report_markdown(rows));
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_synth(const std::string &shape, const std::vector<double> &params,
              const std::string &out_path) {
    try {
        const auto made = make_shape(shape, params);
        if (!made) {
            std::cerr << "error: unknown shape or wrong parameter count: " << shape << "\n";
            return 1;
        }
        if (const fs::path parent = fs::path(out_path).parent_path(); !parent.empty())
            fs::create_directories(parent);
        io::write_pgm(out_path, made->image);
        io::Sidecar sc;
        sc.expected_leaves = made->expected_leaves;
        sc.oracle = made->oracle;
        fs::path sidecar(out_path);
        sidecar.replace_extension(".json");
        io::write_text(sidecar.string(), io::sidecar_json(sc, made->name));
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace medax::cli
