#include "capjack/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "capjack/special_fn.hpp"

namespace capjack {

QuadratureRule gauss_legendre_rule(int order, double a, double b) {
    if (order < 1) throw std::domain_error("quadrature order must be >= 1");
    if (!(a < b)) throw std::domain_error("quadrature interval must satisfy a < b");
    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));

    // Newton iteration on the Legendre roots, one half by symmetry.
    const double eps = 1e-15;
    const int m = (order + 1) / 2;
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    for (int i = 1; i <= m; ++i) {
        double z = std::cos(std::numbers::pi * (i - 0.25) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= order; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = order * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= eps) break;
        }
        rule.nodes[static_cast<std::size_t>(i - 1)] = xm - xl * z;
        rule.nodes[static_cast<std::size_t>(order - i)] = xm + xl * z;
        double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.weights[static_cast<std::size_t>(i - 1)] = w;
        rule.weights[static_cast<std::size_t>(order - i)] = w;
    }
    return rule;
}

namespace detail {

const QuadratureRule& panel_rule() {
    static const QuadratureRule rule = gauss_legendre_rule(kPanelOrder, -1.0, 1.0);
    return rule;
}

}  // namespace detail

SphereGrid::SphereGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
    if (n_theta < 1 || n_phi < 1) throw std::domain_error("sphere grid resolution must be positive");
    if (n_phi < 2 * n_theta) throw std::domain_error("sphere grid requires n_phi >= 2 n_theta");
    QuadratureRule polar = gauss_legendre_rule(n_theta, -1.0, 1.0);
    theta_.resize(static_cast<std::size_t>(n_theta));
    theta_weight.resize(static_cast<std::size_t>(n_theta));
    // acos reverses order; store theta increasing.
    for (int i = 0; i < n_theta; ++i) {
        theta_[static_cast<std::size_t>(i)] = std::acos(polar.nodes[static_cast<std::size_t>(n_theta - 1 - i)]);
        theta_weight[static_cast<std::size_t>(i)] = polar.weights[static_cast<std::size_t>(n_theta - 1 - i)];
    }
    points_.reserve(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi));
    weights_.reserve(points_.capacity());
    const double wphi = 2.0 * std::numbers::pi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        double st = std::sin(theta_[static_cast<std::size_t>(i)]);
        double ct = std::cos(theta_[static_cast<std::size_t>(i)]);
        for (int l = 0; l < n_phi; ++l) {
            double phi = 2.0 * std::numbers::pi * l / n_phi;
            points_.push_back({st * std::cos(phi), st * std::sin(phi), ct});
            weights_.push_back(theta_weight[static_cast<std::size_t>(i)] * wphi);
        }
    }
}

double SphereGrid::interpolate(const std::vector<double>& values, const std::array<double, 3>& x) const {
    if (values.size() != size()) throw std::invalid_argument("value array does not match grid");
    double ct = std::clamp(x[2], -1.0, 1.0);
    double theta = std::acos(ct);
    double phi = std::atan2(x[1], x[0]);
    if (phi < 0) phi += 2.0 * std::numbers::pi;

    // Bracketing polar band, clamped at the poles.
    std::size_t hi = std::lower_bound(theta_.begin(), theta_.end(), theta) - theta_.begin();
    std::size_t i0, i1;
    double ft;
    if (hi == 0) {
        i0 = i1 = 0;
        ft = 0.0;
    } else if (hi >= theta_.size()) {
        i0 = i1 = theta_.size() - 1;
        ft = 0.0;
    } else {
        i0 = hi - 1;
        i1 = hi;
        ft = (theta - theta_[i0]) / (theta_[i1] - theta_[i0]);
    }
    const double dphi = 2.0 * std::numbers::pi / n_phi_;
    auto ring_value = [&](std::size_t band) {
        std::size_t l0 = static_cast<std::size_t>(phi / dphi) % static_cast<std::size_t>(n_phi_);
        std::size_t l1 = (l0 + 1) % static_cast<std::size_t>(n_phi_);
        double fp = phi / dphi - std::floor(phi / dphi);
        std::size_t base = band * static_cast<std::size_t>(n_phi_);
        return (1.0 - fp) * values[base + l0] + fp * values[base + l1];
    };
    return (1.0 - ft) * ring_value(i0) + ft * ring_value(i1);
}

namespace {

double reduce_norm(const std::vector<double>& contrib, NormP p) {
    // Fixed-order reduction keeps results bit-stable across thread counts.
    if (p == NormP::inf) {
        double best = 0.0;
        for (double v : contrib) best = std::max(best, v);
        return best;
    }
    double acc = 0.0;
    for (double v : contrib) acc += v;
    return p == NormP::one ? acc : std::sqrt(acc);
}

double cap_norm_impl(const SphereFn& f, const CapGeometry* geom, const SphereGrid& grid, NormP p,
                     bool parallel) {
    double cos_gamma = geom ? std::cos(geom->gamma) : 2.0;  // sentinel: no cap test
    const std::array<double, 3>* x0 = nullptr;
    if (geom) {
        if (geom->n != 3) throw std::domain_error("grid integration supports n = 3 only");
        geom->validate();
        x0 = reinterpret_cast<const std::array<double, 3>*>(geom->x0.data());
    }
    std::vector<double> contrib(grid.size(), 0.0);
    auto body = [&](std::size_t i) {
        const auto& pt = grid.point(i);
        if (geom) {
            double dot = pt[0] * (*x0)[0] + pt[1] * (*x0)[1] + pt[2] * (*x0)[2];
            if (dot < cos_gamma - 1e-14) return;
        }
        double v = std::abs(f(pt));
        switch (p) {
            case NormP::one: contrib[i] = grid.weight(i) * v; break;
            case NormP::two: contrib[i] = grid.weight(i) * v * v; break;
            case NormP::inf: contrib[i] = v; break;
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(grid.size()); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < grid.size(); ++i) body(i);
    }
    return reduce_norm(contrib, p);
}

}  // namespace

double integrate_sphere(const SphereFn& f, const SphereGrid& grid, NormP p) {
    return cap_norm_impl(f, nullptr, grid, p, true);
}

double integrate_cap(const SphereFn& f, const CapGeometry& geom, const SphereGrid& grid, NormP p) {
    return cap_norm_impl(f, &geom, grid, p, true);
}

double integrate_cap_serial(const SphereFn& f, const CapGeometry& geom, const SphereGrid& grid, NormP p) {
    return cap_norm_impl(f, &geom, grid, p, false);
}

}  // namespace capjack
