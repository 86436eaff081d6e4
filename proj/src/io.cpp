#include "medax/io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace medax::io {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &msg) { throw std::runtime_error(msg); }

int pnm_token(std::istream &in) {
    // skips whitespace and '#' comments
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int v = -1;
    in >> v;
    return v;
}

struct FileCloser {
    FILE *f = nullptr;
    ~FileCloser() {
        if (f) std::fclose(f);
    }
};

// Stage colors for stroke/segment overlays.
constexpr uint8_t kPalette[12][3] = {
    {204, 0, 0},   {0, 110, 220}, {0, 150, 60},   {230, 120, 0}, {130, 60, 200}, {0, 160, 160},
    {200, 0, 140}, {110, 90, 20}, {240, 180, 10}, {70, 70, 240}, {20, 130, 20},  {160, 40, 40}};

RgbImage base_render(const PipelineOutput &out) {
    RgbImage img(out.binary.width, out.binary.height, 255);
    for (int y = 0; y < out.binary.height; ++y)
        for (int x = 0; x < out.binary.width; ++x)
            if (out.binary.at(x, y)) img.set(x, y, 210, 210, 210);
    return img;
}

std::string format_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

ordered_json point_list(const std::vector<Vec2> &pts) {
    ordered_json arr = ordered_json::array();
    for (const Vec2 &p : pts) arr.push_back({p.x, p.y});
    return arr;
}

}  // namespace

GrayImage read_pgm(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '5') fail(path + ": not a binary PGM (P5)");
    const int w = pnm_token(in);
    const int h = pnm_token(in);
    const int maxval = pnm_token(in);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
        fail(path + ": unsupported PGM header");
    in.get();  // single whitespace after maxval
    GrayImage img(w, h);
    in.read(reinterpret_cast<char *>(img.samples.data()), std::streamsize(img.samples.size()));
    if (in.gcount() != std::streamsize(img.samples.size())) fail(path + ": truncated PGM data");
    return img;
}

void write_pgm(const std::string &path, const GrayImage &img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char *>(img.samples.data()),
              std::streamsize(img.samples.size()));
}

void write_mask_pgm(const std::string &path, const BinaryImage &mask) {
    write_pgm(path, to_gray(mask));
}

GrayImage read_png(const std::string &path) {
    FileCloser fc{std::fopen(path.c_str(), "rb")};
    if (!fc.f) fail("cannot open " + path);
    png_byte header[8] = {};
    if (std::fread(header, 1, 8, fc.f) != 8 || png_sig_cmp(header, 0, 8))
        fail(path + ": not a PNG file");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) fail(path + ": libpng init failed");
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path + ": PNG decode error");
    }
    png_init_io(png, fc.f);
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_byte color = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);
    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
        color == PNG_COLOR_TYPE_PALETTE)
        png_set_rgb_to_gray_fixed(png, 1, -1, -1);  // default 299/587/114 weights
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int w = int(png_get_image_width(png, info));
    const int h = int(png_get_image_height(png, info));
    GrayImage img(w, h);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y) rows[y] = img.samples.data() + size_t(y) * w;
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

GrayImage read_image(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path);
    char m0 = 0;
    in.get(m0);
    in.close();
    if (m0 == 'P') return read_pgm(path);
    return read_png(path);
}

void write_png(const std::string &path, const RgbImage &img) {
    FileCloser fc{std::fopen(path.c_str(), "wb")};
    if (!fc.f) fail("cannot write " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) fail(path + ": libpng init failed");
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(path + ": PNG encode error");
    }
    png_init_io(png, fc.f);
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y)
        rows[y] = const_cast<png_bytep>(img.data.data() + size_t(y) * img.width * 3);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

std::string contours_json(const PipelineOutput &out) {
    ordered_json root;
    root["contours"] = ordered_json::array();
    for (const ComponentOutput &comp : out.components)
        for (const Contour &c : comp.contours) {
            ordered_json jc;
            jc["component"] = comp.component.label;
            jc["kind"] = c.kind == ContourKind::outer ? "outer" : "hole";
            ordered_json pts = ordered_json::array();
            for (const Pixel &p : c.points) pts.push_back({p.x, p.y});
            jc["points"] = std::move(pts);
            root["contours"].push_back(std::move(jc));
        }
    return root.dump(2) + "\n";
}

std::string strokes_json(const PipelineOutput &out) {
    ordered_json root;
    root["strokes"] = ordered_json::array();
    int contour_base = 0;
    for (const ComponentOutput &comp : out.components) {
        for (const ContourStroke &s : comp.strokes) {
            const int n = comp.contours[s.contour_id].size();
            ordered_json js;
            js["contour"] = contour_base + s.contour_id;
            js["s"] = s.start;
            js["e"] = s.end(n);
            root["strokes"].push_back(std::move(js));
        }
        contour_base += int(comp.contours.size());
    }
    return root.dump(2) + "\n";
}

std::string medial_json(const PipelineOutput &out) {
    ordered_json root;
    root["segments"] = ordered_json::array();
    for (const ComponentOutput &comp : out.components)
        for (const MedialSegment &seg : comp.segments) {
            ordered_json js;
            js["points"] = point_list(seg.points);
            root["segments"].push_back(std::move(js));
        }
    return root.dump(2) + "\n";
}

std::string skeleton_json(const PipelineOutput &out) {
    ordered_json root;
    root["nodes"] = ordered_json::array();
    root["edges"] = ordered_json::array();
    int node_base = 0;
    for (const ComponentOutput &comp : out.components) {
        for (const SkeletonNode &n : comp.graph.nodes) {
            ordered_json jn;
            jn["id"] = node_base + n.id;
            jn["x"] = n.pos.x;
            jn["y"] = n.pos.y;
            jn["degree"] = n.degree;
            root["nodes"].push_back(std::move(jn));
        }
        for (const SkeletonEdge &e : comp.graph.edges) {
            ordered_json je;
            je["from"] = node_base + e.from;
            je["to"] = node_base + e.to;
            je["points"] = point_list(e.points);
            ordered_json prov = ordered_json::array();
            for (PointTag t : e.tags)
                prov.push_back(t == PointTag::medial ? "medial" : "extrapolated");
            je["provenance"] = std::move(prov);
            root["edges"].push_back(std::move(je));
        }
        node_base += int(comp.graph.nodes.size());
    }
    return root.dump(2) + "\n";
}

std::string skeleton_svg(const PipelineOutput &out) {
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << out.binary.width << "\" height=\"" << out.binary.height << "\" viewBox=\"0 0 "
        << out.binary.width << " " << out.binary.height << "\">\n";
    for (const ComponentOutput &comp : out.components)
        for (const SkeletonEdge &e : comp.graph.edges) {
            if (e.points.empty()) continue;
            svg << "  <path d=\"M " << format_coord(e.points[0].x) << " "
                << format_coord(e.points[0].y);
            for (size_t i = 1; i < e.points.size(); ++i)
                svg << " L " << format_coord(e.points[i].x) << " " << format_coord(e.points[i].y);
            if (e.closed) svg << " Z";
            svg << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" "
                   "stroke-linecap=\"round\"/>\n";
        }
    svg << "</svg>\n";
    return svg.str();
}

RgbImage render_contours(const PipelineOutput &out) {
    RgbImage img = base_render(out);
    for (const ComponentOutput &comp : out.components)
        for (const Contour &c : comp.contours)
            for (const Pixel &p : c.points) img.set(p.x, p.y, 0, 0, 0);
    return img;
}

RgbImage render_strokes(const PipelineOutput &out) {
    RgbImage img = base_render(out);
    int color = 0;
    for (const ComponentOutput &comp : out.components)
        for (const ContourStroke &s : comp.strokes) {
            const Contour &c = comp.contours[s.contour_id];
            const auto &rgb = kPalette[color++ % 12];
            for (int o = 0; o < s.count && o <= c.size(); ++o) {
                const Pixel &p = c.at(s.start + o);
                img.set(p.x, p.y, rgb[0], rgb[1], rgb[2]);
            }
        }
    return img;
}

RgbImage render_medial(const PipelineOutput &out) {
    RgbImage img = base_render(out);
    int color = 0;
    for (const ComponentOutput &comp : out.components)
        for (const MedialSegment &seg : comp.segments) {
            const auto &rgb = kPalette[color++ % 12];
            for (const Vec2 &p : seg.points)
                img.set(int(std::lround(p.x)), int(std::lround(p.y)), rgb[0], rgb[1], rgb[2]);
        }
    return img;
}

std::string report_csv(const std::vector<CompareRow> &rows) {
    std::ostringstream csv;
    csv << "input,method,component_count_delta,hole_count_delta,max_width_violations,"
           "leaf_count,spurious_branch_count,midline_hausdorff,containment_violations\n";
    for (const CompareRow &r : rows) {
        csv << r.input << ',' << r.method << ',' << r.metrics.component_count_delta << ','
            << r.metrics.hole_count_delta << ',' << r.metrics.max_width_violations << ','
            << r.metrics.leaf_count << ',' << r.metrics.spurious_branch_count << ',';
        if (r.metrics.midline_hausdorff) csv << format_coord(*r.metrics.midline_hausdorff);
        csv << ',' << r.metrics.containment_violations << '\n';
    }
    return csv.str();
}

std::string report_markdown(const std::vector<CompareRow> &rows) {
    std::ostringstream md;
    md << "| input | method | comp delta | hole delta | 2x2 blocks | leaves | spurious | "
          "hausdorff | off-ink |\n";
    md << "|---|---|---|---|---|---|---|---|---|\n";
    for (const CompareRow &r : rows) {
        md << "| " << r.input << " | " << r.method << " | " << r.metrics.component_count_delta
           << " | " << r.metrics.hole_count_delta << " | " << r.metrics.max_width_violations
           << " | " << r.metrics.leaf_count << " | " << r.metrics.spurious_branch_count << " | ";
        if (r.metrics.midline_hausdorff) md << format_coord(*r.metrics.midline_hausdorff);
        else md << "-";
        md << " | " << r.metrics.containment_violations << " |\n";
    }
    return md.str();
}

std::string sidecar_json(const Sidecar &sc, const std::string &shape_name) {
    ordered_json root;
    root["shape"] = shape_name;
    if (sc.expected_leaves) root["expected_leaves"] = *sc.expected_leaves;
    if (!sc.oracle.empty()) root["oracle"] = point_list(sc.oracle);
    return root.dump(2) + "\n";
}

std::optional<Sidecar> read_sidecar(const std::string &path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    ordered_json root;
    try {
        in >> root;
    } catch (const std::exception &) {
        return std::nullopt;
    }
    Sidecar sc;
    if (root.contains("expected_leaves")) sc.expected_leaves = root["expected_leaves"].get<int>();
    if (root.contains("oracle"))
        for (const auto &p : root["oracle"])
            sc.oracle.push_back({p[0].get<double>(), p[1].get<double>()});
    return sc;
}

void write_text(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write " + path);
    out << content;
}

}  // namespace medax::io
