#pragma once

#include <stdexcept>

namespace capjack {

/// Modified Jackson kernel on [0, gamma]:
///   D(theta) = A^{-1} sin^{2s}(k theta / 2) / sin^{2s-1}(theta / 2),
/// normalized so that  int_0^gamma D(theta) sin^{2 lambda}(theta) dtheta = 1.
/// gamma is capped at pi/2, the range where the operator bounds hold.
struct KernelSpec {
    int k = 1;          // degree
    int s = 3;          // smoothness power
    double gamma = 0;   // cap angle (0, pi/2]
    double lambda = 0;  // (n - 2) / 2
    double norm_const = 0;  // A, fixed at construction

    void validate() const;
};

/// Un-normalized kernel factor sin^{2s}(k theta/2) / sin^{2s-1}(theta/2).
/// Continuously extended by 0 at theta = 0.
double kernel_raw(double theta, int k, int s);

/// Classical Jackson kernel (sin(k theta/2) / sin(theta/2))^{2s}, kept for
/// reference; extends continuously to k^{2s} at theta = 0.
double classical_kernel(double theta, int k, int s);

/// Computes the normalization constant A by adaptive quadrature with at
/// least max(32, 4k) panels (one oscillation of sin^{2s}(k theta/2) spans
/// 2 pi / k, so 4k panels put several panels on every oscillation).
KernelSpec kernel_normalize(int k, int s, double gamma, double lambda);

/// Normalized kernel value kernel_raw(theta) / A.
double kernel_eval(const KernelSpec& spec, double theta);

/// Moment  int_0^gamma theta^beta D(theta) sin^{2 lambda}(theta) dtheta.
/// Warns on stderr when 2s <= beta + 2 lambda + 1 (scaling hypothesis
/// violated) and when 2s equals beta + 2 lambda + 2 exactly, the marginal
/// exponent where the k-scaling picks up a logarithmic factor.
double kernel_moment(const KernelSpec& spec, double beta);

/// Panel floor for kernel integrands at degree k.
int kernel_min_panels(int k);

}  // namespace capjack
