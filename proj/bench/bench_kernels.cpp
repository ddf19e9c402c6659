// Timing comparison of the OpenMP kernels against their serial twins.
// The twins share block/merge order, so the value columns must agree
// bit for bit; the point of this target is the wall-clock ratio.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "capjack/harmonic.hpp"
#include "capjack/operators.hpp"

using namespace capjack;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, double max_diff) {
    std::printf("%-28s %10.1f %10.1f %8.2fx %12.3e\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, max_diff);
}

}  // namespace

int main() {
    constexpr double pi = std::numbers::pi;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-28s %10s %10s %9s %12s\n", "kernel", "serial/ms", "openmp/ms", "speedup",
                "max |diff|");

    CapGeometry geom = CapGeometry::polar(3, pi / 2);

    {
        KernelSpec spec = kernel_normalize(64, 3, pi / 2, 0.5);
        auto t0 = clock_type::now();
        MultiplierTable serial = multiplier_table_serial(spec, 9, 256);
        double serial_ms = ms_since(t0);
        t0 = clock_type::now();
        MultiplierTable parallel = multiplier_table(spec, 9, 256);
        double parallel_ms = ms_since(t0);
        double diff = 0.0;
        for (int j = 0; j <= 256; ++j)
            diff = std::max(diff, std::abs(serial.at(j) - parallel.at(j)));
        row("multiplier_table k=64 m=9", serial_ms, parallel_ms, diff);

        t0 = clock_type::now();
        MultiplierTable adaptive = multiplier_table_adaptive(spec, 9, 256);
        double adaptive_ms = ms_since(t0);
        diff = 0.0;
        for (int j = 0; j <= 256; ++j)
            diff = std::max(diff, std::abs(adaptive.at(j) - parallel.at(j)));
        std::printf("%-28s %10.1f %10s %9s %12.3e  (per-degree adaptive reference)\n",
                    "multiplier_table_adaptive", adaptive_ms, "-", "-", diff);
    }

    {
        auto grid = std::make_shared<SphereGrid>(48, 96);
        std::vector<double> values(grid->size());
        for (std::size_t i = 0; i < grid->size(); ++i) {
            const auto& x = grid->point(i);
            values[i] = std::exp(x[2]) * (1.0 + 0.3 * x[0]);
        }
        CapFunction f = CapFunction::gridded(geom, grid, values);
        auto t0 = clock_type::now();
        HarmonicExpansion serial = expand_serial(f, 32);
        double serial_ms = ms_since(t0);
        t0 = clock_type::now();
        HarmonicExpansion parallel = expand(f, 32);
        double parallel_ms = ms_since(t0);
        double diff = 0.0;
        for (std::size_t i = 0; i < serial.components.size(); ++i)
            diff = std::max(diff, std::abs(serial.components[i] - parallel.components[i]));
        row("gridded expand 48x96 j<=32", serial_ms, parallel_ms, diff);
    }

    {
        CapFunction f = CapFunction::bump(geom, pi / 4);
        KernelSpec spec = kernel_normalize(16, 3, pi / 2, 0.5);
        std::vector<double> alphas;
        for (int i = 0; i < 64; ++i) alphas.push_back(0.01 + i * (pi / 2 - 0.02) / 63.0);
        auto t0 = clock_type::now();
        std::vector<double> serial = jackson_integral_profile_serial(f, spec, alphas, 512);
        double serial_ms = ms_since(t0);
        t0 = clock_type::now();
        std::vector<double> parallel = jackson_integral_profile(f, spec, alphas, 512);
        double parallel_ms = ms_since(t0);
        double diff = 0.0;
        for (std::size_t i = 0; i < alphas.size(); ++i)
            diff = std::max(diff, std::abs(serial[i] - parallel[i]));
        row("jackson integral profile", serial_ms, parallel_ms, diff);
    }

    return 0;
}
