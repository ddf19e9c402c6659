#include "capjack/operators.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "capjack/special_fn.hpp"

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

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Orthonormal pair spanning the tangent plane at unit vector x.
std::pair<std::array<double, 3>, std::array<double, 3>> tangent_frame(const std::array<double, 3>& x) {
    std::array<double, 3> h = std::abs(x[2]) < 0.9 ? std::array<double, 3>{0, 0, 1}
                                                   : std::array<double, 3>{1, 0, 0};
    double hx = dot3(h, x);
    std::array<double, 3> e1{h[0] - hx * x[0], h[1] - hx * x[1], h[2] - hx * x[2]};
    double norm = std::sqrt(dot3(e1, e1));
    for (double& c : e1) c /= norm;
    std::array<double, 3> e2{x[1] * e1[2] - x[2] * e1[1], x[2] * e1[0] - x[0] * e1[2],
                             x[0] * e1[1] - x[1] * e1[0]};
    return {e1, e2};
}

// One fused pass over a composite grid of `panels` panels. Blocks of 64
// panels accumulate independently and merge in block order, which keeps the
// sum identical whether or not the block loop runs under OpenMP.
std::vector<double> table_pass(const KernelSpec& spec, int m, int j_max, int panels, bool parallel) {
    constexpr int kBlock = 64;
    const QuadratureRule& rule = detail::panel_rule();
    const int n_blocks = (panels + kBlock - 1) / kBlock;
    const double width = spec.gamma / panels;
    std::vector<std::vector<double>> block_acc(static_cast<std::size_t>(n_blocks));

    auto run_block = [&](int b) {
        std::vector<double> acc(static_cast<std::size_t>(j_max) + 1, 0.0);
        std::vector<double> p(static_cast<std::size_t>(j_max) + 1);
        int lo = b * kBlock, hi = std::min(panels, lo + kBlock);
        for (int pa = lo; pa < hi; ++pa) {
            double mid = (pa + 0.5) * width, half = 0.5 * width;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                double theta = mid + half * rule.nodes[q];
                double base = half * rule.weights[q] * kernel_raw(theta, spec.k, spec.s) *
                              std::pow(std::sin(theta), 2.0 * spec.lambda) / spec.norm_const;
                legendre_ratio_all_lambda(spec.lambda, j_max, std::cos(theta), p);
                for (int j = 0; j <= j_max; ++j)
                    acc[static_cast<std::size_t>(j)] += base * int_pow(p[static_cast<std::size_t>(j)], m);
            }
        }
        block_acc[static_cast<std::size_t>(b)] = std::move(acc);
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        for (int b = 0; b < n_blocks; ++b) run_block(b);
    }

    std::vector<double> xi(static_cast<std::size_t>(j_max) + 1, 0.0);
    for (int b = 0; b < n_blocks; ++b)
        for (int j = 0; j <= j_max; ++j)
            xi[static_cast<std::size_t>(j)] += block_acc[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
    return xi;
}

MultiplierTable table_impl(const KernelSpec& spec, int m, int j_max, bool parallel) {
    spec.validate();
    if (m < 1) throw std::domain_error("translation power m must be >= 1");
    if (j_max < 0) throw std::domain_error("multiplier table needs j_max >= 0");

    MultiplierTable table;
    table.spec = spec;
    table.m = m;

    int panels = std::max({64, kernel_min_panels(spec.k), j_max});
    std::vector<double> cur = table_pass(spec, m, j_max, panels, parallel);
    for (int round = 0;; ++round) {
        std::vector<double> fine = table_pass(spec, m, j_max, 2 * panels, parallel);
        double diff = 0.0;
        for (std::size_t j = 0; j < cur.size(); ++j) diff = std::max(diff, std::abs(fine[j] - cur[j]));
        cur = std::move(fine);
        panels *= 2;
        if (diff <= 1e-12) break;
        if (round >= 5) throw convergence_error("multiplier table did not stabilize under grid doubling");
    }
    table.xi = std::move(cur);
    return table;
}

}  // namespace

MultiplierTable multiplier_table(const KernelSpec& spec, int m, int j_max) {
    return table_impl(spec, m, j_max, true);
}

MultiplierTable multiplier_table_serial(const KernelSpec& spec, int m, int j_max) {
    return table_impl(spec, m, j_max, false);
}

MultiplierTable multiplier_table_adaptive(const KernelSpec& spec, int m, int j_max) {
    spec.validate();
    if (m < 1) throw std::domain_error("translation power m must be >= 1");
    MultiplierTable table;
    table.spec = spec;
    table.m = m;
    table.xi.assign(static_cast<std::size_t>(j_max) + 1, 0.0);
    for (int j = 0; j <= j_max; ++j) {
        auto integrand = [&](double theta) {
            return kernel_raw(theta, spec.k, spec.s) *
                   int_pow(legendre_ratio_lambda(spec.lambda, j, std::cos(theta)), m) *
                   std::pow(std::sin(theta), 2.0 * spec.lambda) / spec.norm_const;
        };
        int panels = std::max(kernel_min_panels(spec.k), 2 * j);
        table.xi[static_cast<std::size_t>(j)] =
            integrate_adaptive(integrand, 0.0, spec.gamma, 1e-12, panels);
    }
    return table;
}

void write_multiplier_csv(const MultiplierTable& table, std::ostream& out) {
    out << "j,xi\n";
    char buf[64];
    for (int j = 0; j <= table.j_max(); ++j) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", j, table.at(j));
        out << buf;
    }
}

CapFunction translate_spectral(const HarmonicExpansion& e, double theta, int m) {
    if (!(theta > 0.0) || theta > std::numbers::pi)
        throw std::domain_error("translation angle must lie in (0, pi]");
    if (m < 1) throw std::domain_error("translation power m must be >= 1");
    std::vector<double> mu(static_cast<std::size_t>(e.j_max) + 1);
    legendre_ratio_all_lambda(e.geom.lambda(), e.j_max, std::cos(theta), mu);
    for (double& v : mu) v = int_pow(v, m);
    return synthesize(e, mu);
}

CapFunction translate_spectral(const CapFunction& f, double theta, int m, int j_max) {
    return translate_spectral(expand(f, j_max), theta, m);
}

double translate_geometric(const CapFunction& f, double theta, const std::array<double, 3>& x,
                           int circle_points) {
    if (f.geometry().n != 3) throw std::domain_error("geometric translation requires n = 3");
    if (!(theta > 0.0) || theta >= std::numbers::pi)
        throw std::domain_error("translation angle must lie in (0, pi)");
    if (circle_points < 8) throw std::domain_error("circle average needs at least 8 points");
    auto [e1, e2] = tangent_frame(x);
    double ct = std::cos(theta), st = std::sin(theta);
    double acc = 0.0;
    for (int l = 0; l < circle_points; ++l) {
        double phi = 2.0 * std::numbers::pi * l / circle_points;
        double c1 = st * std::cos(phi), c2 = st * std::sin(phi);
        std::array<double, 3> y{ct * x[0] + c1 * e1[0] + c2 * e2[0],
                                ct * x[1] + c1 * e1[1] + c2 * e2[1],
                                ct * x[2] + c1 * e1[2] + c2 * e2[2]};
        acc += f(y);
    }
    return acc / circle_points;
}

CapFunction jackson_apply_spectral(const HarmonicExpansion& e, const MultiplierTable& table) {
    if (table.j_max() < e.j_max)
        throw std::invalid_argument("multiplier table shorter than expansion");
    return synthesize(e, std::span<const double>(table.xi.data(), static_cast<std::size_t>(e.j_max) + 1));
}

double jackson_integral_at(const CapFunction& f, const KernelSpec& spec,
                           const std::array<double, 3>& x, int circle_points) {
    spec.validate();
    auto integrand = [&](double theta) {
        if (theta <= 0.0) return 0.0;
        return translate_geometric(f, theta, x, circle_points) * kernel_raw(theta, spec.k, spec.s) *
               std::pow(std::sin(theta), 2.0 * spec.lambda) / spec.norm_const;
    };
    return integrate_adaptive(integrand, 0.0, spec.gamma, 1e-10, kernel_min_panels(spec.k));
}

double jackson_integral_at_angle(const HarmonicExpansion& e, const KernelSpec& spec, int m,
                                 double alpha) {
    spec.validate();
    if (!e.zonal) throw std::logic_error("spectral-integrand path requires a zonal expansion");
    std::vector<double> pa(static_cast<std::size_t>(e.j_max) + 1);
    legendre_ratio_all_lambda(e.geom.lambda(), e.j_max, std::cos(alpha), pa);
    std::vector<double> weights(pa.size());
    for (std::size_t j = 0; j < pa.size(); ++j) weights[j] = e.coeff[j] * pa[j];
    std::vector<double> pt(pa.size());
    auto integrand = [&](double theta) {
        if (theta <= 0.0) return 0.0;
        legendre_ratio_all_lambda(e.geom.lambda(), e.j_max, std::cos(theta), pt);
        double translated = 0.0;
        for (std::size_t j = 0; j < pt.size(); ++j) translated += weights[j] * int_pow(pt[j], m);
        return translated * kernel_raw(theta, spec.k, spec.s) *
               std::pow(std::sin(theta), 2.0 * spec.lambda) / spec.norm_const;
    };
    return integrate_adaptive(integrand, 0.0, spec.gamma, 1e-10,
                              std::max(kernel_min_panels(spec.k), e.j_max));
}

namespace {

std::vector<double> integral_profile_impl(const CapFunction& f, const KernelSpec& spec,
                                          std::span<const double> alphas, int circle_points,
                                          bool parallel) {
    if (!f.is_zonal()) throw std::logic_error("profile sampling requires a zonal function");
    auto [e1, e2] = tangent_frame({f.geometry().x0[0], f.geometry().x0[1], f.geometry().x0[2]});
    (void)e2;
    std::array<double, 3> x0{f.geometry().x0[0], f.geometry().x0[1], f.geometry().x0[2]};
    std::vector<double> out(alphas.size(), 0.0);
    auto body = [&](std::size_t i) {
        double ca = std::cos(alphas[i]), sa = std::sin(alphas[i]);
        std::array<double, 3> x{ca * x0[0] + sa * e1[0], ca * x0[1] + sa * e1[1],
                                ca * x0[2] + sa * e1[2]};
        out[i] = jackson_integral_at(f, spec, x, circle_points);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(alphas.size()); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < alphas.size(); ++i) body(i);
    }
    return out;
}

}  // namespace

std::vector<double> jackson_integral_profile(const CapFunction& f, const KernelSpec& spec,
                                             std::span<const double> alphas, int circle_points) {
    return integral_profile_impl(f, spec, alphas, circle_points, true);
}

std::vector<double> jackson_integral_profile_serial(const CapFunction& f, const KernelSpec& spec,
                                                    std::span<const double> alphas,
                                                    int circle_points) {
    return integral_profile_impl(f, spec, alphas, circle_points, false);
}

}  // namespace capjack
