// Timing harness comparing the serial reference kernels against their
// OpenMP twins on a large synthetic page. Results must be bit-identical;
// only the wall time differs.

#include <chrono>
#include <cstdio>
#include <string>

#include "medax/bench.hpp"
#include "medax/kernels.hpp"
#include "medax/raster.hpp"
#include "medax/synth.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace medax;
namespace chrono = std::chrono;

namespace {

GrayImage make_page(int tiles) {
    const SynthShape glyph = make_plus(40, 8, 4);
    const int tw = glyph.image.width, th = glyph.image.height;
    GrayImage page(tiles * tw, tiles * th, 255);
    for (int ty = 0; ty < tiles; ++ty)
        for (int tx = 0; tx < tiles; ++tx)
            for (int y = 0; y < th; ++y)
                for (int x = 0; x < tw; ++x)
                    page.at(tx * tw + x, ty * th + y) = glyph.image.at(x, y);
    return page;
}

template <typename F>
double time_ms(F &&f, int reps) {
    const auto t0 = chrono::high_resolution_clock::now();
    for (int i = 0; i < reps; ++i) f();
    const auto t1 = chrono::high_resolution_clock::now();
    return chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char *name, double serial_ms, double parallel_ms) {
    std::printf("%-22s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main(int argc, char **argv) {
    const int tiles = argc > 1 ? std::max(1, std::atoi(argv[1])) : 28;
    const int reps = argc > 2 ? std::max(1, std::atoi(argv[2])) : 5;
    const GrayImage page = make_page(tiles);
    std::printf("page %dx%d (%zu pixels)\n", page.width, page.height, page.pixel_count());
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled; both columns run the serial kernel\n");
#endif
    std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    using kernels::Exec;
    report("histogram256",
           time_ms([&] { kernels::histogram256(page, Exec::serial); }, reps),
           time_ms([&] { kernels::histogram256(page, Exec::parallel); }, reps));

    report("threshold_mask",
           time_ms([&] { kernels::threshold_mask(page, 128, true, Exec::serial); }, reps),
           time_ms([&] { kernels::threshold_mask(page, 128, true, Exec::parallel); }, reps));

    const BinaryImage bin = otsu_binarize(page);
    report("boundary_mask",
           time_ms([&] { kernels::boundary_mask(bin, Exec::serial); }, reps),
           time_ms([&] { kernels::boundary_mask(bin, Exec::parallel); }, reps));

    report("zhang_suen_pass",
           time_ms(
               [&] {
                   BinaryImage work = bin;
                   kernels::zhang_suen_pass(work, 0, Exec::serial);
               },
               reps),
           time_ms(
               [&] {
                   BinaryImage work = bin;
                   kernels::zhang_suen_pass(work, 0, Exec::parallel);
               },
               reps));

    report("zhang_suen_thin",
           time_ms([&] { zhang_suen_thin(bin, Exec::serial); }, 1),
           time_ms([&] { zhang_suen_thin(bin, Exec::parallel); }, 1));

    // sanity: the twins must agree exactly
    const bool ok = zhang_suen_thin(bin, Exec::serial) == zhang_suen_thin(bin, Exec::parallel) &&
                    kernels::boundary_mask(bin, Exec::serial) ==
                        kernels::boundary_mask(bin, Exec::parallel) &&
                    kernels::histogram256(page, Exec::serial) ==
                        kernels::histogram256(page, Exec::parallel);
    std::printf("parity: %s\n", ok ? "identical" : "MISMATCH");
    return ok ? 0 : 1;
}
