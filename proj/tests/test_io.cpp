#include <cstdio>
#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "medax/io.hpp"
#include "medax/synth.hpp"

using namespace medax;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("medax_io_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int &counter() {
        static int n = 0;
        return n;
    }
    std::string file(const std::string &name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("pgm round-trip") {
    TempDir tmp;
    const SynthShape shape = make_plus(24, 6, 4);
    io::write_pgm(tmp.file("a.pgm"), shape.image);
    const GrayImage back = io::read_pgm(tmp.file("a.pgm"));
    CHECK(back.width == shape.image.width);
    CHECK(back.height == shape.image.height);
    CHECK(back.samples == shape.image.samples);
    // read_image dispatches on the magic byte
    const GrayImage again = io::read_image(tmp.file("a.pgm"));
    CHECK(again.samples == shape.image.samples);
}

TEST_CASE("pgm reader accepts comments and rejects junk") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("c.pgm"), std::ios::binary);
        out << "P5\n# a comment\n3 2\n255\n";
        out.write("\0\1\2\3\4\5", 6);
    }
    const GrayImage img = io::read_pgm(tmp.file("c.pgm"));
    CHECK(img.width == 3);
    CHECK(img.height == 2);
    CHECK(img.at(2, 1) == 5);

    {
        std::ofstream out(tmp.file("bad.pgm"), std::ios::binary);
        out << "P5\n10 10\n255\nshort";
    }
    CHECK_THROWS(io::read_pgm(tmp.file("bad.pgm")));
    CHECK_THROWS(io::read_image(tmp.file("missing.pgm")));
}

TEST_CASE("png round-trip through the gray reader") {
    TempDir tmp;
    const SynthShape shape = make_bar(20, 6, 3);
    io::RgbImage rgb(shape.image.width, shape.image.height);
    for (int y = 0; y < shape.image.height; ++y)
        for (int x = 0; x < shape.image.width; ++x) {
            const uint8_t v = shape.image.at(x, y);
            rgb.set(x, y, v, v, v);
        }
    io::write_png(tmp.file("a.png"), rgb);
    const GrayImage back = io::read_image(tmp.file("a.png"));
    CHECK(back.width == shape.image.width);
    CHECK(back.height == shape.image.height);
    CHECK(back.samples == shape.image.samples);  // gray rgb converts losslessly
}

TEST_CASE("sidecar json round-trip") {
    TempDir tmp;
    io::Sidecar sc;
    sc.expected_leaves = 4;
    sc.oracle = {{1.5, 2.0}, {10.0, 2.0}};
    io::write_text(tmp.file("s.json"), io::sidecar_json(sc, "plus"));
    const auto back = io::read_sidecar(tmp.file("s.json"));
    REQUIRE(back.has_value());
    CHECK(back->expected_leaves == 4);
    REQUIRE(back->oracle.size() == 2);
    CHECK(back->oracle[1].x == doctest::Approx(10.0));
    CHECK(!io::read_sidecar(tmp.file("missing.json")).has_value());
}

TEST_CASE("stage json documents parse and carry the documented keys") {
    const SynthShape shape = make_tee(40, 8, 8);
    PipelineConfig cfg;
    const PipelineOutput out = run_pipeline(shape.image, cfg);

    const auto contours = nlohmann::json::parse(io::contours_json(out));
    REQUIRE(contours.contains("contours"));
    REQUIRE(!contours["contours"].empty());
    CHECK(contours["contours"][0].contains("kind"));
    CHECK(contours["contours"][0].contains("points"));

    const auto strokes = nlohmann::json::parse(io::strokes_json(out));
    REQUIRE(!strokes["strokes"].empty());
    for (const auto &s : strokes["strokes"]) {
        CHECK(s.contains("contour"));
        CHECK(s.contains("s"));
        CHECK(s.contains("e"));
    }

    const auto medial = nlohmann::json::parse(io::medial_json(out));
    REQUIRE(!medial["segments"].empty());
    CHECK(medial["segments"][0].contains("points"));

    const auto skel = nlohmann::json::parse(io::skeleton_json(out));
    REQUIRE(!skel["nodes"].empty());
    REQUIRE(!skel["edges"].empty());
    CHECK(skel["nodes"][0].contains("degree"));
    const auto &edge = skel["edges"][0];
    CHECK(edge.contains("from"));
    CHECK(edge.contains("to"));
    CHECK(edge["points"].size() == edge["provenance"].size());

    // one svg path per edge
    const std::string svg = io::skeleton_svg(out);
    size_t paths = 0;
    for (size_t pos = svg.find("<path"); pos != std::string::npos;
         pos = svg.find("<path", pos + 1))
        ++paths;
    CHECK(paths == skel["edges"].size());
}

TEST_CASE("reports") {
    std::vector<CompareRow> rows(2);
    rows[0] = {"a.pgm", "proposed", {}};
    rows[1] = {"a.pgm", "zhang-suen", {}};
    rows[1].metrics.midline_hausdorff = 1.25;
    const std::string csv = io::report_csv(rows);
    CHECK(csv.find("input,method,component_count_delta") == 0);
    CHECK(csv.find("a.pgm,proposed,0,0,0,0,0,,0\n") != std::string::npos);
    CHECK(csv.find("a.pgm,zhang-suen,0,0,0,0,0,1.25,0\n") != std::string::npos);
    const std::string md = io::report_markdown(rows);
    CHECK(md.find("| a.pgm | proposed |") != std::string::npos);
}
