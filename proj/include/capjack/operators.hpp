#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "capjack/harmonic.hpp"
#include "capjack/kernel.hpp"

namespace capjack {

/// Spectral fingerprint of the Jackson-type operator J_{k,s}^m:
///   xi(j) = int_0^gamma D(theta) (P_j^n(cos theta))^m sin^{2 lambda}(theta) dtheta.
/// xi(0) = 1 (unit kernel mass) and |xi(j)| <= 1 for every j.
struct MultiplierTable {
    KernelSpec spec;
    int m = 1;
    std::vector<double> xi;

    int j_max() const { return static_cast<int>(xi.size()) - 1; }
    double at(int j) const { return xi.at(static_cast<std::size_t>(j)); }
};

/// Builds the table on a shared composite Gauss-Legendre grid: one Legendre
/// recurrence pass per node covers every degree at once, and the grid is
/// doubled until the whole table is stable to 1e-12. Panels are processed
/// in fixed-size blocks (OpenMP across blocks, merge in block order), so
/// the result is bit-identical to the serial twin at any thread count.
MultiplierTable multiplier_table(const KernelSpec& spec, int m, int j_max);

/// Single-threaded twin of multiplier_table (same algorithm, same bits).
MultiplierTable multiplier_table_serial(const KernelSpec& spec, int m, int j_max);

/// Reference path: each xi(j) by its own adaptive bisection integral with
/// at least max(32, 4k, 2j) panels. Slower; kept as the independent check
/// of the fused kernel.
MultiplierTable multiplier_table_adaptive(const KernelSpec& spec, int m, int j_max);

/// CSV rows "j,xi".
void write_multiplier_csv(const MultiplierTable& table, std::ostream& out);

/// m-th translation: degree j scales by (P_j^n(cos theta))^m.
CapFunction translate_spectral(const HarmonicExpansion& e, double theta, int m);
CapFunction translate_spectral(const CapFunction& f, double theta, int m, int j_max);

/// Circle average of f* over { y : x . y = cos theta } by the trapezoid
/// rule on a uniform angular grid (n = 3). Independent of any expansion;
/// this is the geometric oracle for translate_spectral at m = 1.
double translate_geometric(const CapFunction& f, double theta, const std::array<double, 3>& x,
                           int circle_points = 512);

/// J_{k,s}^m through the multiplier representation.
CapFunction jackson_apply_spectral(const HarmonicExpansion& e, const MultiplierTable& table);

/// J_{k,s}^1 f(x) = int_0^gamma S_theta(f)(x) D(theta) sin^{2 lambda} dtheta
/// with the circle average as the inner evaluator -- an end-to-end oracle
/// that never touches harmonic expansions (n = 3).
double jackson_integral_at(const CapFunction& f, const KernelSpec& spec,
                           const std::array<double, 3>& x, int circle_points = 512);

/// Same operator for any m >= 1 with the translated function evaluated
/// spectrally inside the theta integral (any n, zonal expansions).
double jackson_integral_at_angle(const HarmonicExpansion& e, const KernelSpec& spec, int m,
                                 double alpha);

/// Geometric-path J^1 f sampled at polar angles from the cap center
/// (zonal f); evaluation points run in parallel.
std::vector<double> jackson_integral_profile(const CapFunction& f, const KernelSpec& spec,
                                             std::span<const double> alphas,
                                             int circle_points = 512);

/// Single-threaded twin of jackson_integral_profile (identical output).
std::vector<double> jackson_integral_profile_serial(const CapFunction& f, const KernelSpec& spec,
                                                    std::span<const double> alphas,
                                                    int circle_points = 512);

}  // namespace capjack
