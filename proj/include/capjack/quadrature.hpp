#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "capjack/geometry.hpp"

namespace capjack {

/// Raised when panel bisection hits the depth limit without meeting tolerance.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Nodes and weights of a quadrature rule on [a, b]. Weights are positive,
/// sum to b - a, and nodes are strictly increasing interior points.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = -1.0;
    double b = 1.0;
};

/// Gauss-Legendre rule mapped to [a, b]; exact for polynomials of degree
/// <= 2 * order - 1.
QuadratureRule gauss_legendre_rule(int order, double a, double b);

namespace detail {

// Reference Gauss-Legendre nodes/weights on [-1, 1] for the panel worker.
inline constexpr int kPanelOrder = 15;
const QuadratureRule& panel_rule();

template <class F>
double panel_estimate(F& f, double a, double b) {
    const QuadratureRule& r = panel_rule();
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return acc * half;
}

template <class F>
double refine_panel(F& f, double a, double b, double tol, int depth, int max_depth) {
    double mid = 0.5 * (a + b);
    double whole = panel_estimate(f, a, b);
    double left = panel_estimate(f, a, mid);
    double right = panel_estimate(f, mid, b);
    double two = left + right;
    double diff = std::abs(two - whole);
    if (diff <= tol || diff <= 1e-14 * (std::abs(two) + std::abs(whole)))
        return two;
    if (depth >= max_depth)
        throw convergence_error("adaptive quadrature failed to converge within depth limit");
    return refine_panel(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
           refine_panel(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

/// Panel-wise Gauss-Legendre with recursive bisection. The interval is cut
/// into min_panels equal panels first; each panel is bisected until its
/// two-level estimate difference drops below its share of tol. Throws
/// convergence_error past depth 30. Summation order is fixed, so results
/// are bit-stable regardless of threading in the caller.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol, int min_panels) {
    if (!(tol > 0.0)) throw std::domain_error("quadrature tolerance must be positive");
    if (min_panels < 1) throw std::domain_error("min_panels must be >= 1");
    if (!(a < b)) throw std::domain_error("integration interval must satisfy a < b");
    const int max_depth = 30;
    double panel_tol = tol / min_panels;
    double width = (b - a) / min_panels;
    double total = 0.0;
    for (int p = 0; p < min_panels; ++p) {
        double pa = a + p * width;
        double pb = (p + 1 == min_panels) ? b : a + (p + 1) * width;
        total += detail::refine_panel(f, pa, pb, panel_tol, 0, max_depth);
    }
    return total;
}

/// Product grid on S^2: Gauss-Legendre in cos(theta), uniform in phi.
/// Total weight is the sphere volume 4 pi; requires n_phi >= 2 n_theta so
/// the azimuthal resolution never limits accuracy.
class SphereGrid {
public:
    SphereGrid(int n_theta, int n_phi);

    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }
    std::size_t size() const { return points_.size(); }

    const std::array<double, 3>& point(std::size_t i) const { return points_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    double polar_angle(std::size_t i) const { return theta_[i / static_cast<std::size_t>(n_phi_)]; }

    /// Bilinear interpolation in (theta, phi) of per-point values.
    double interpolate(const std::vector<double>& values, const std::array<double, 3>& x) const;

private:
    int n_theta_;
    int n_phi_;
    std::vector<double> theta_;        // polar nodes, increasing
    std::vector<double> theta_weight;  // Gauss-Legendre weights in cos(theta)
    std::vector<std::array<double, 3>> points_;
    std::vector<double> weights_;
};

using SphereFn = std::function<double(const std::array<double, 3>&)>;

/// Discrete L^p norm over the whole grid (no cap restriction).
double integrate_sphere(const SphereFn& f, const SphereGrid& grid, NormP p);

/// Discrete L^p(D(x0, gamma)) norm: weighted sum of |f|^p over grid points
/// inside the cap (x . x0 >= cos gamma - 1e-14), to the 1/p power. For
/// p = inf returns the max of |f| over cap grid points.
double integrate_cap(const SphereFn& f, const CapGeometry& geom, const SphereGrid& grid, NormP p);

/// Single-threaded twin of integrate_cap, kept as the reference for the
/// OpenMP path; both fill the same per-point array and reduce in index
/// order, so they agree bit for bit.
double integrate_cap_serial(const SphereFn& f, const CapGeometry& geom, const SphereGrid& grid, NormP p);

}  // namespace capjack
