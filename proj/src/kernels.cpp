#include "medax/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace medax::kernels {

namespace {

std::array<uint64_t, 256> histogram_serial(const GrayImage &img) {
    std::array<uint64_t, 256> hist{};
    for (uint8_t s : img.samples) ++hist[s];
    return hist;
}

std::array<uint64_t, 256> histogram_parallel(const GrayImage &img) {
    std::array<uint64_t, 256> hist{};
    const int h = img.height;
#ifdef _OPENMP
#pragma omp parallel
    {
        std::array<uint64_t, 256> local{};
#pragma omp for schedule(static) nowait
        for (int y = 0; y < h; ++y) {
            const uint8_t *row = img.samples.data() + size_t(y) * img.width;
            for (int x = 0; x < img.width; ++x) ++local[row[x]];
        }
#pragma omp critical
        for (int i = 0; i < 256; ++i) hist[i] += local[i];
    }
#else
    (void)h;
    hist = histogram_serial(img);
#endif
    return hist;
}

inline bool fg(const BinaryImage &img, int x, int y) {
    return x >= 0 && y >= 0 && x < img.width && y < img.height &&
           img.mask[size_t(y) * img.width + x] != 0;
}

inline bool has_background_neighbor(const BinaryImage &img, int x, int y) {
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!fg(img, x + dx, y + dy)) return true;
        }
    return false;
}

void boundary_row(const BinaryImage &img, BinaryImage &out, int y) {
    for (int x = 0; x < img.width; ++x)
        if (fg(img, x, y) && has_background_neighbor(img, x, y)) out.set(x, y, true);
}

// Neighbors in Zhang-Suen order P2..P9 = N, NE, E, SE, S, SW, W, NW.
constexpr int kZsDx[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kZsDy[8] = {-1, -1, 0, 1, 1, 1, 0, -1};

inline bool zs_deletable(const BinaryImage &img, int x, int y, int subiter) {
    int n[8];
    int count = 0;
    for (int k = 0; k < 8; ++k) {
        n[k] = fg(img, x + kZsDx[k], y + kZsDy[k]) ? 1 : 0;
        count += n[k];
    }
    if (count < 2 || count > 6) return false;
    int transitions = 0;
    for (int k = 0; k < 8; ++k) transitions += (n[k] == 0 && n[(k + 1) % 8] == 1);
    if (transitions != 1) return false;
    // n[0]=P2(N), n[2]=P4(E), n[4]=P6(S), n[6]=P8(W)
    if (subiter == 0) {
        if (n[0] * n[2] * n[4] != 0) return false;
        if (n[2] * n[4] * n[6] != 0) return false;
    } else {
        if (n[0] * n[2] * n[6] != 0) return false;
        if (n[0] * n[4] * n[6] != 0) return false;
    }
    return true;
}

int zs_pass_rows(BinaryImage &img, int subiter, bool parallel) {
    const int w = img.width, h = img.height;
    std::vector<uint8_t> kill(size_t(w) * h, 0);
    int deleted = 0;
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : deleted)
#endif
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                if (fg(img, x, y) && zs_deletable(img, x, y, subiter)) {
                    kill[size_t(y) * w + x] = 1;
                    ++deleted;
                }
    } else {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                if (fg(img, x, y) && zs_deletable(img, x, y, subiter)) {
                    kill[size_t(y) * w + x] = 1;
                    ++deleted;
                }
    }
    for (size_t i = 0; i < kill.size(); ++i)
        if (kill[i]) img.mask[i] = 0;
    return deleted;
}

}  // namespace

std::array<uint64_t, 256> histogram256(const GrayImage &img, Exec exec) {
    return exec == Exec::serial ? histogram_serial(img) : histogram_parallel(img);
}

BinaryImage threshold_mask(const GrayImage &img, int t, bool dark_foreground, Exec exec) {
    BinaryImage out(img.width, img.height);
    const int h = img.height, w = img.width;
    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int y = 0; y < h; ++y) {
            const uint8_t *row = img.samples.data() + size_t(y) * w;
            uint8_t *orow = out.mask.data() + size_t(y) * w;
            for (int x = 0; x < w; ++x)
                orow[x] = dark_foreground ? (row[x] <= t) : (row[x] > t);
        }
    } else {
        for (int y = 0; y < h; ++y) {
            const uint8_t *row = img.samples.data() + size_t(y) * w;
            uint8_t *orow = out.mask.data() + size_t(y) * w;
            for (int x = 0; x < w; ++x)
                orow[x] = dark_foreground ? (row[x] <= t) : (row[x] > t);
        }
    }
    return out;
}

BinaryImage boundary_mask(const BinaryImage &img, Exec exec) {
    BinaryImage out(img.width, img.height);
    const int h = img.height;
    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int y = 0; y < h; ++y) boundary_row(img, out, y);
    } else {
        for (int y = 0; y < h; ++y) boundary_row(img, out, y);
    }
    return out;
}

int zhang_suen_pass(BinaryImage &img, int subiter, Exec exec) {
    return zs_pass_rows(img, subiter, exec == Exec::parallel);
}

}  // namespace medax::kernels
