#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace capjack {

/// Norm exponent for cap norms. Only 1, 2 and the sup norm are supported.
enum class NormP { one, two, inf };

inline NormP norm_from_value(double p) {
    if (p == 1.0) return NormP::one;
    if (p == 2.0) return NormP::two;
    if (std::isinf(p)) return NormP::inf;
    throw std::domain_error("norm exponent must be 1, 2 or inf");
}

/// Spherical cap D(x0, gamma) on S^{n-1}: all unit vectors x with
/// x . x0 >= cos(gamma). The operator theory needs gamma <= pi/2.
struct CapGeometry {
    int n = 3;                    // ambient dimension
    std::vector<double> x0;      // unit cap center, length n
    double gamma = std::numbers::pi / 2;

    double lambda() const { return 0.5 * (n - 2); }

    /// Cap centered at the north pole (0, ..., 0, 1).
    static CapGeometry polar(int n, double gamma) {
        CapGeometry g;
        g.n = n;
        g.x0.assign(static_cast<std::size_t>(n), 0.0);
        g.x0.back() = 1.0;
        g.gamma = gamma;
        g.validate();
        return g;
    }

    void validate() const {
        if (n < 3) throw std::domain_error("cap geometry requires n >= 3");
        if (!(gamma > 0.0) || gamma > std::numbers::pi / 2 + 1e-12)
            throw std::domain_error("cap angle must lie in (0, pi/2]");
        if (x0.size() != static_cast<std::size_t>(n))
            throw std::domain_error("cap center must have length n");
        double norm2 = 0.0;
        for (double c : x0) norm2 += c * c;
        if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
            throw std::domain_error("cap center must be a unit vector");
    }
};

}  // namespace capjack
