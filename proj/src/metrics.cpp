#include "capjack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capjack/operators.hpp"
#include "capjack/special_fn.hpp"

namespace capjack {

namespace {

// Zonal sup over the cap on a dense sample; the essential sup is
// inaccessible, so this is grid-limited by design.
double zonal_sup(const std::function<double(double)>& profile, double gamma) {
    constexpr int kSamples = 4096;
    double best = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
        double theta = gamma * i / kSamples;
        best = std::max(best, std::abs(profile(theta)));
    }
    return best;
}

}  // namespace

double cap_norm_zonal(const std::function<double(double)>& profile, const CapGeometry& geom,
                      NormP p, int min_panels) {
    geom.validate();
    if (p == NormP::inf) return zonal_sup(profile, geom.gamma);
    double power = p == NormP::one ? 1.0 : 2.0;
    auto integrand = [&](double theta) {
        double v = std::abs(profile(theta));
        double vp = p == NormP::one ? v : v * v;
        return vp * std::pow(std::sin(theta), geom.n - 2.0);
    };
    double ring = sphere_volume(geom.n - 1);
    double value = ring * integrate_adaptive(integrand, 0.0, geom.gamma, 1e-12, min_panels);
    return std::pow(value, 1.0 / power);
}

double cap_norm(const CapFunction& f, NormP p) {
    const CapGeometry& geom = f.geometry();
    if (f.is_zonal())
        return cap_norm_zonal([&](double theta) { return f.profile(theta); }, geom, p, 64);
    return integrate_cap([&](const std::array<double, 3>& x) { return f(x); }, geom, f.grid(), p);
}

double cap_distance(const CapFunction& a, const CapFunction& b, NormP p, int min_panels) {
    if (a.geometry().n != b.geometry().n) throw std::invalid_argument("dimension mismatch");
    if (a.is_zonal() && b.is_zonal()) {
        return cap_norm_zonal([&](double theta) { return a.profile(theta) - b.profile(theta); },
                              a.geometry(), p, min_panels);
    }
    if (a.geometry().n != 3) throw std::domain_error("mixed-representation distance requires n = 3");
    const SphereGrid& grid = a.is_zonal() ? b.grid() : a.grid();
    return integrate_cap([&](const std::array<double, 3>& x) { return a(x) - b(x); }, a.geometry(),
                         grid, p);
}

double modulus_smoothness(const HarmonicExpansion& e, const CapFunction& f, double delta, NormP p,
                          int theta_grid_size) {
    if (!(delta > 0.0)) throw std::domain_error("modulus requires delta > 0");
    if (theta_grid_size < 16) throw std::domain_error("modulus grid must have >= 16 points");

    // Geometric tail towards 0 plus a uniform sweep of (0, delta].
    std::vector<double> thetas;
    for (int i = 1; i <= 8; ++i) thetas.push_back(delta * std::pow(2.0, -i));
    for (int l = 1; l <= theta_grid_size; ++l)
        thetas.push_back(delta * l / theta_grid_size);

    int min_panels = std::max(64, e.j_max);
    double best = 0.0;
    for (double theta : thetas) {
        CapFunction translated = translate_spectral(e, theta, 1);
        double value;
        if (f.is_zonal()) {
            value = cap_norm_zonal(
                [&](double t) { return translated.profile(t) - f.profile(t); }, f.geometry(), p,
                min_panels);
        } else {
            value = cap_distance(translated, f, p);
        }
        best = std::max(best, value);
    }
    return best;
}

double modulus_smoothness(const ModulusRequest& req) {
    HarmonicExpansion e = expand(req.f, req.j_max);
    return modulus_smoothness(e, req.f, req.delta, req.p, req.theta_grid_size);
}

double k_functional_estimate(const HarmonicExpansion& e, const CapFunction& f, double delta2,
                             NormP p, int s, std::span<const int> candidate_ks,
                             std::span<const int> candidate_degrees) {
    if (!(delta2 >= 0.0)) throw std::domain_error("k-functional requires delta2 >= 0");
    const CapGeometry& geom = f.geometry();
    int min_panels = std::max(64, e.j_max);
    double lambda = geom.lambda();

    auto score = [&](std::span<const double> mu) {
        CapFunction g = synthesize(e, mu);
        double dist;
        if (f.is_zonal()) {
            dist = cap_norm_zonal([&](double t) { return g.profile(t) - f.profile(t); }, geom, p,
                                  min_panels);
        } else {
            dist = cap_distance(g, f, p);
        }
        std::vector<double> mu_lap(mu.begin(), mu.end());
        for (int j = 0; j <= e.j_max; ++j)
            mu_lap[static_cast<std::size_t>(j)] *= -j * (j + 2.0 * lambda);
        double smooth = cap_norm(synthesize(e, mu_lap), p);
        return dist + delta2 * smooth;
    };

    double best = std::numeric_limits<double>::infinity();
    for (int k : candidate_ks) {
        MultiplierTable table = multiplier_table(kernel_normalize(k, s, geom.gamma, lambda), 1,
                                                 e.j_max);
        best = std::min(best, score(table.xi));
    }
    std::vector<double> mu(static_cast<std::size_t>(e.j_max) + 1);
    for (int J : candidate_degrees) {
        for (int j = 0; j <= e.j_max; ++j) mu[static_cast<std::size_t>(j)] = j <= J ? 1.0 : 0.0;
        best = std::min(best, score(mu));
    }
    return best;
}

double k_functional_estimate(const CapFunction& f, double delta2, NormP p, int s, int j_max) {
    HarmonicExpansion e = expand(f, j_max);
    std::vector<int> ks, degrees;
    for (int k = 1; k <= 256; k *= 2) ks.push_back(k);
    for (int J = 1; J <= j_max; J *= 2) degrees.push_back(J);
    return k_functional_estimate(e, f, delta2, p, s, ks, degrees);
}

}  // namespace capjack
