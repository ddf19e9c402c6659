#include "capjack/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "capjack/quadrature.hpp"

namespace capjack {

namespace {

double int_pow(double base, int e) {
    double r = 1.0;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace

void KernelSpec::validate() const {
    if (k < 1) throw std::domain_error("kernel degree k must be >= 1");
    if (s < 1) throw std::domain_error("kernel power s must be >= 1");
    if (!(gamma > 0.0) || gamma > std::numbers::pi / 2 + 1e-12)
        throw std::domain_error("kernel gamma must lie in (0, pi/2]");
    if (!(lambda > 0.0)) throw std::domain_error("kernel lambda must be positive");
    if (!(norm_const > 0.0)) throw std::domain_error("kernel is not normalized");
}

double kernel_raw(double theta, int k, int s) {
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::domain_error("kernel argument must lie in [0, pi]");
    if (theta == 0.0) return 0.0;  // numerator ~ theta^{2s}, denominator ~ theta^{2s-1}
    double num = int_pow(std::sin(0.5 * k * theta), 2 * s);
    double den = int_pow(std::sin(0.5 * theta), 2 * s - 1);
    return num / den;
}

double classical_kernel(double theta, int k, int s) {
    if (!(theta > 0.0) || theta > std::numbers::pi)
        throw std::domain_error("classical kernel argument must lie in (0, pi]");
    return int_pow(std::sin(0.5 * k * theta) / std::sin(0.5 * theta), 2 * s);
}

int kernel_min_panels(int k) { return std::max(32, 4 * k); }

KernelSpec kernel_normalize(int k, int s, double gamma, double lambda) {
    KernelSpec spec;
    spec.k = k;
    spec.s = s;
    spec.gamma = gamma;
    spec.lambda = lambda;
    spec.norm_const = 1.0;  // placeholder so validate() can run
    spec.validate();

    auto integrand = [&](double theta) {
        return kernel_raw(theta, k, s) * std::pow(std::sin(theta), 2.0 * lambda);
    };
    int panels = kernel_min_panels(k);
    // Pre-pass fixes the magnitude (A grows like k^{2s - 2 lambda - 2}), so
    // the adaptive tolerance can be made relative to it.
    double rough = 0.0;
    {
        double width = gamma / panels;
        for (int p = 0; p < panels; ++p)
            rough += integrand((p + 0.5) * width) * width;
    }
    double tol = 1e-10 * std::max(1.0, std::abs(rough));
    spec.norm_const = integrate_adaptive(integrand, 0.0, gamma, tol, panels);
    if (!(spec.norm_const > 0.0)) throw convergence_error("kernel normalization came out non-positive");
    return spec;
}

double kernel_eval(const KernelSpec& spec, double theta) {
    spec.validate();
    return kernel_raw(theta, spec.k, spec.s) / spec.norm_const;
}

double kernel_moment(const KernelSpec& spec, double beta) {
    spec.validate();
    if (beta < -2.0) throw std::domain_error("kernel moment requires beta >= -2");
    double margin = 2.0 * spec.s - (beta + 2.0 * spec.lambda + 1.0);
    if (margin <= 0.0)
        std::cerr << "capjack: moment beta=" << beta << " violates 2s > beta + 2*lambda + 1; "
                  << "k-scaling is not k^-beta in this regime\n";
    else if (margin == 1.0)
        std::cerr << "capjack: moment beta=" << beta << " sits at the marginal exponent; "
                  << "expect a log(k) factor on top of k^-beta\n";
    auto integrand = [&](double theta) {
        if (theta <= 0.0) return 0.0;
        return std::pow(theta, beta) * kernel_raw(theta, spec.k, spec.s) *
               std::pow(std::sin(theta), 2.0 * spec.lambda);
    };
    int panels = kernel_min_panels(spec.k);
    double rough = 0.0;
    {
        double width = spec.gamma / panels;
        for (int p = 0; p < panels; ++p)
            rough += integrand((p + 0.5) * width) * width;
    }
    double tol = 1e-10 * std::max(std::abs(rough), 1e-30);
    return integrate_adaptive(integrand, 0.0, spec.gamma, tol, panels) / spec.norm_const;
}

}  // namespace capjack
