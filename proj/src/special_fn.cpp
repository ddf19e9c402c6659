#include "capjack/special_fn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capjack {

namespace {

constexpr double kDomainSlack = 1e-12;

double checked_clamp(double t) {
    if (std::abs(t) > 1.0 + kDomainSlack)
        throw std::domain_error("polynomial argument must lie in [-1, 1]");
    return std::clamp(t, -1.0, 1.0);
}

}  // namespace

void UltrasphericalIndex::validate() const {
    if (!(lambda > 0.0)) throw std::domain_error("ultraspherical lambda must be positive");
    if (degree < 0) throw std::domain_error("ultraspherical degree must be non-negative");
}

double gegenbauer_eval(const UltrasphericalIndex& idx, double t) {
    idx.validate();
    t = checked_clamp(t);
    if (idx.degree == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * idx.lambda * t;
    for (int j = 2; j <= idx.degree; ++j) {
        double next = (2.0 * (j + idx.lambda - 1.0) * t * cur - (j + 2.0 * idx.lambda - 2.0) * prev) / j;
        prev = cur;
        cur = next;
    }
    return cur;
}

double gegenbauer_at_one(const UltrasphericalIndex& idx) {
    idx.validate();
    double value = 1.0;
    for (int i = 0; i < idx.degree; ++i)
        value *= (2.0 * idx.lambda + i) / (i + 1.0);
    return value;
}

double legendre_ratio(int n, int j, double t) {
    if (n < 3) throw std::domain_error("legendre_ratio requires n >= 3");
    return legendre_ratio_lambda(0.5 * (n - 2), j, t);
}

double legendre_ratio_lambda(double lambda, int j, double t) {
    if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
    if (j < 0) throw std::domain_error("legendre_ratio requires j >= 0");
    t = checked_clamp(t);
    if (j == 0) return 1.0;
    // Recurrence for the normalized family p_j = G_j / G_j(1):
    //   p_j = (2 (j + lambda - 1) t p_{j-1} - (j - 1) p_{j-2}) / (2 lambda + j - 1).
    // Values stay O(1), so no rescaling is needed at any degree.
    double prev = 1.0;
    double cur = t;
    for (int jj = 2; jj <= j; ++jj) {
        double next = (2.0 * (jj + lambda - 1.0) * t * cur - (jj - 1.0) * prev) / (2.0 * lambda + jj - 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

void legendre_ratio_all_lambda(double lambda, int j_max, double t, std::span<double> out) {
    if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
    if (j_max < 0 || out.size() < static_cast<std::size_t>(j_max) + 1)
        throw std::invalid_argument("output span too small for requested degrees");
    t = checked_clamp(t);
    out[0] = 1.0;
    if (j_max >= 1) out[1] = t;
    for (int j = 2; j <= j_max; ++j)
        out[j] = (2.0 * (j + lambda - 1.0) * t * out[j - 1] - (j - 1.0) * out[j - 2]) / (2.0 * lambda + j - 1.0);
}

void legendre_ratio_all(int n, int j_max, double t, std::span<double> out) {
    if (n < 3) throw std::domain_error("legendre_ratio_all requires n >= 3");
    legendre_ratio_all_lambda(0.5 * (n - 2), j_max, t, out);
}

double sphere_volume(int n) {
    if (n < 2) throw std::domain_error("sphere_volume requires n >= 2");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace capjack
