#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "capjack/geometry.hpp"
#include "capjack/quadrature.hpp"

namespace capjack {

/// A function on the cap D(x0, gamma), evaluated everywhere on the sphere
/// through its zero extension f* (0 off the cap). Two representations:
///   - zonal: a profile g(theta) of the angle to x0 (any n >= 3);
///   - gridded: values on a SphereGrid (n = 3 only).
/// Full-sphere mode disables the zero extension; it exists for band-limited
/// inputs (whole-sphere polynomials) and for projection self-tests, and is
/// also how synthesized series are represented, since multiplier operators
/// produce sphere functions that do not vanish off the cap.
class CapFunction {
public:
    static CapFunction zonal(CapGeometry geom, std::function<double(double)> profile,
                             bool full_sphere = false);
    static CapFunction gridded(CapGeometry geom, std::shared_ptr<const SphereGrid> grid,
                               std::vector<double> values, bool full_sphere = false);

    /// C-infinity bump exp(1 - 1/(1 - (theta/rho)^2)) for theta < rho, else 0.
    /// With rho < gamma the zero extension is globally smooth.
    static CapFunction bump(CapGeometry geom, double rho);

    /// Whole-sphere zonal polynomial sum c_j P_j^n(cos theta) (full-sphere mode).
    static CapFunction bandlimited(CapGeometry geom, std::vector<double> coeffs);

    /// Single zonal harmonic amplitude * P_j^n(cos theta) (full-sphere mode).
    static CapFunction pure_degree(CapGeometry geom, int j, double amplitude = 1.0);

    /// CSV with rows "theta,value" (radians), piecewise-linear in between;
    /// 0 beyond the last sample.
    static CapFunction zonal_from_csv(CapGeometry geom, const std::string& path);

    /// CSV with rows "theta,phi,value" covering every node of the grid
    /// (matched within 1e-9).
    static CapFunction gridded_from_csv(CapGeometry geom, std::shared_ptr<const SphereGrid> grid,
                                        const std::string& path);

    bool is_zonal() const { return zonal_; }
    bool full_sphere() const { return full_sphere_; }
    const CapGeometry& geometry() const { return geom_; }

    /// Angle beyond which the function is identically zero: gamma under the
    /// zero extension, pi in full-sphere mode.
    double support_angle() const;

    /// Zonal profile with the zero extension applied.
    double profile(double theta) const;

    /// Point evaluation (n = 3). Gridded functions interpolate bilinearly.
    double operator()(const std::array<double, 3>& x) const;

    const SphereGrid& grid() const;
    const std::vector<double>& values() const { return values_; }
    std::shared_ptr<const SphereGrid> grid_ptr() const { return grid_; }

private:
    CapFunction() = default;
    CapGeometry geom_;
    bool zonal_ = true;
    bool full_sphere_ = false;
    std::function<double(double)> profile_;
    std::shared_ptr<const SphereGrid> grid_;
    std::vector<double> values_;
};

/// Truncated expansion over zonal harmonics. For zonal f the coefficients
/// satisfy f*(x) ~ sum_j coeff[j] P_j^n(x . x0); for gridded f each degree
/// component is stored as grid values. tail_flagged marks expansions whose
/// last coefficients have not decayed below 1e-10 of the peak, i.e. j_max
/// was too small to capture the function to that accuracy.
struct HarmonicExpansion {
    CapGeometry geom;
    int j_max = 0;
    bool zonal = true;
    std::vector<double> coeff;                    // zonal path
    std::shared_ptr<const SphereGrid> grid;       // gridded path
    std::vector<double> components;               // (j_max+1) x grid->size()
    bool tail_flagged = false;
    double tail_ratio = 0.0;

    std::span<const double> component(int j) const;
};

/// Multiplier applied to the sphere-function constant in Y_j:
/// (j + lambda) G_j^lambda(1) / (lambda * |S^{n-1}|). Reduces to the
/// familiar (2j+1)/(4 pi) at n = 3.
double projection_constant(int n, int j);

/// Squared L^2(S^{n-1}) norm of the zonal harmonic P_j^n(x . x0):
/// 4 pi / (2j+1) at n = 3, quadrature otherwise.
double degree_norm_sq(int n, int j);

/// Coefficient of the degree-j zonal component of f.
double project_degree_coeff(const CapFunction& f, int j);

/// Degree-j component Y_j(f) as a sphere function.
CapFunction project_degree(const CapFunction& f, int j);

/// All degree components up to j_max.
HarmonicExpansion expand(const CapFunction& f, int j_max);

/// Single-threaded twin of expand for gridded inputs (identical output).
HarmonicExpansion expand_serial(const CapFunction& f, int j_max);

/// x -> sum_j multipliers[j] * (degree-j component)(x). Default multiplier
/// is 1. The result is a sphere function (full-sphere CapFunction);
/// restriction to the cap happens at norm time.
CapFunction synthesize(const HarmonicExpansion& e, std::span<const double> multipliers = {});

/// Spectral Laplace-Beltrami: degree j scales by -j (j + 2 lambda).
HarmonicExpansion laplace_beltrami(const HarmonicExpansion& e);

/// Sphere L^2 norm through the expansion (Parseval).
double parseval_norm(const HarmonicExpansion& e);

}  // namespace capjack
