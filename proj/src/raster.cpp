#include "medax/raster.hpp"

#include <algorithm>
#include <queue>

namespace medax {

std::optional<int> otsu_threshold(const std::array<uint64_t, 256> &hist) {
    uint64_t total = 0;
    double weighted_total = 0.0;
    int populated = 0;
    for (int i = 0; i < 256; ++i) {
        total += hist[i];
        weighted_total += double(i) * double(hist[i]);
        populated += hist[i] > 0;
    }
    if (total == 0 || populated < 2) return std::nullopt;

    uint64_t w0 = 0;
    double sum0 = 0.0;
    double best_var = -1.0;
    int best_t = -1;
    for (int t = 0; t < 255; ++t) {
        w0 += hist[t];
        sum0 += double(t) * double(hist[t]);
        const uint64_t w1 = total - w0;
        if (w0 == 0 || w1 == 0) continue;
        const double mean0 = sum0 / double(w0);
        const double mean1 = (weighted_total - sum0) / double(w1);
        const double var = double(w0) * double(w1) * (mean0 - mean1) * (mean0 - mean1);
        if (var > best_var) {  // strict: smallest t wins ties
            best_var = var;
            best_t = t;
        }
    }
    if (best_t < 0) return std::nullopt;
    return best_t;
}

BinaryImage otsu_binarize(const GrayImage &img, bool invert, kernels::Exec exec) {
    const auto hist = kernels::histogram256(img, exec);
    const auto t = otsu_threshold(hist);
    if (!t) return BinaryImage(img.width, img.height, false);
    // Class [0..t] has the lower mean by construction; it is the ink unless inverted.
    return kernels::threshold_mask(img, *t, !invert, exec);
}

std::vector<Component> connected_components(const BinaryImage &img) {
    std::vector<Component> out;
    const int w = img.width, h = img.height;
    std::vector<int> label(size_t(w) * h, -1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!img.at(x, y) || label[size_t(y) * w + x] >= 0) continue;
            Component comp;
            comp.label = int(out.size());
            int minx = x, maxx = x, miny = y, maxy = y;
            std::queue<Pixel> frontier;
            frontier.push({x, y});
            label[size_t(y) * w + x] = comp.label;
            while (!frontier.empty()) {
                Pixel p = frontier.front();
                frontier.pop();
                comp.pixels.push_back(p);
                minx = std::min(minx, p.x);
                maxx = std::max(maxx, p.x);
                miny = std::min(miny, p.y);
                maxy = std::max(maxy, p.y);
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = p.x + dx, ny = p.y + dy;
                        if (!img.at(nx, ny)) continue;
                        int &l = label[size_t(ny) * w + nx];
                        if (l < 0) {
                            l = comp.label;
                            frontier.push({nx, ny});
                        }
                    }
            }
            std::sort(comp.pixels.begin(), comp.pixels.end());
            comp.bbox = {minx, miny, maxx - minx + 1, maxy - miny + 1};
            out.push_back(std::move(comp));
        }
    }
    return out;
}

std::vector<int> vertical_profile(const Component &comp) {
    std::vector<int> profile(comp.bbox.width, 0);
    for (const Pixel &p : comp.pixels) ++profile[p.x - comp.bbox.x];
    return profile;
}

namespace {

Component make_component(std::vector<Pixel> pixels, int label) {
    Component c;
    c.label = label;
    c.pixels = std::move(pixels);
    std::sort(c.pixels.begin(), c.pixels.end());
    int minx = c.pixels.front().x, maxx = minx;
    int miny = c.pixels.front().y, maxy = miny;
    for (const Pixel &p : c.pixels) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    c.bbox = {minx, miny, maxx - minx + 1, maxy - miny + 1};
    return c;
}

}  // namespace

std::vector<Component> split_by_vertical_profile(const Component &comp, double min_ratio) {
    if (comp.pixels.empty()) return {};
    const auto profile = vertical_profile(comp);
    const int n = int(profile.size());

    std::vector<int> nonzero;
    for (int v : profile)
        if (v > 0) nonzero.push_back(v);
    double median = 0.0;
    if (!nonzero.empty()) {
        std::sort(nonzero.begin(), nonzero.end());
        median = nonzero[nonzero.size() / 2];
    }

    // Qualifying plateau minima, cut at the plateau's middle column.
    std::vector<int> cuts;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && profile[j + 1] == profile[i]) ++j;
        if (i > 0 && j < n - 1 && profile[i - 1] > profile[i] && profile[j + 1] > profile[i] &&
            double(profile[i]) <= min_ratio * median) {
            cuts.push_back((i + j) / 2);
        }
        i = j + 1;
    }
    if (cuts.empty()) return {comp};

    // Pixels on a cut column go to the left piece.
    std::vector<std::vector<Pixel>> pieces(cuts.size() + 1);
    for (const Pixel &p : comp.pixels) {
        const int col = p.x - comp.bbox.x;
        size_t k = 0;
        while (k < cuts.size() && col > cuts[k]) ++k;
        pieces[k].push_back(p);
    }

    std::vector<Component> out;
    for (auto &piece : pieces) {
        if (piece.empty()) continue;
        // A piece may itself fall apart into several 8-connected sets.
        BinaryImage local;
        int minx = piece.front().x, maxx = minx, miny = piece.front().y, maxy = miny;
        for (const Pixel &p : piece) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        local = BinaryImage(maxx - minx + 1, maxy - miny + 1);
        for (const Pixel &p : piece) local.set(p.x - minx, p.y - miny, true);
        for (const Component &sub : connected_components(local)) {
            std::vector<Pixel> pts;
            pts.reserve(sub.pixels.size());
            for (const Pixel &p : sub.pixels) pts.push_back({p.x + minx, p.y + miny});
            out.push_back(make_component(std::move(pts), int(out.size())));
        }
    }
    return out;
}

}  // namespace medax
