#include "capjack/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "capjack/special_fn.hpp"

namespace capjack {

namespace {

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::array<double, 3> center3(const CapGeometry& geom) {
    return {geom.x0[0], geom.x0[1], geom.x0[2]};
}

// Tail-decay check shared by both expansion paths.
void flag_tail(HarmonicExpansion& e, const std::vector<double>& magnitudes) {
    double peak = 0.0;
    for (double v : magnitudes) peak = std::max(peak, v);
    int lo = std::max(0, e.j_max - 4);
    double tail = 0.0;
    for (int j = lo; j <= e.j_max; ++j) tail = std::max(tail, magnitudes[static_cast<std::size_t>(j)]);
    e.tail_ratio = peak > 0.0 ? tail / peak : 0.0;
    e.tail_flagged = peak > 0.0 && tail > 1e-10 * peak;
}

}  // namespace

CapFunction CapFunction::zonal(CapGeometry geom, std::function<double(double)> profile,
                               bool full_sphere) {
    geom.validate();
    CapFunction f;
    f.geom_ = std::move(geom);
    f.zonal_ = true;
    f.full_sphere_ = full_sphere;
    f.profile_ = std::move(profile);
    return f;
}

CapFunction CapFunction::gridded(CapGeometry geom, std::shared_ptr<const SphereGrid> grid,
                                 std::vector<double> values, bool full_sphere) {
    geom.validate();
    if (geom.n != 3) throw std::domain_error("gridded cap functions require n = 3");
    if (!grid) throw std::invalid_argument("gridded cap function needs a grid");
    if (values.size() != grid->size()) throw std::invalid_argument("value count does not match grid");
    CapFunction f;
    f.geom_ = std::move(geom);
    f.zonal_ = false;
    f.full_sphere_ = full_sphere;
    f.grid_ = std::move(grid);
    f.values_ = std::move(values);
    if (!full_sphere) {
        // Enforce the zero extension on the stored values.
        auto c = center3(f.geom_);
        double cg = std::cos(f.geom_.gamma);
        for (std::size_t i = 0; i < f.grid_->size(); ++i)
            if (dot3(f.grid_->point(i), c) < cg - 1e-14) f.values_[i] = 0.0;
    }
    return f;
}

CapFunction CapFunction::bump(CapGeometry geom, double rho) {
    if (!(rho > 0.0) || rho > geom.gamma)
        throw std::domain_error("bump radius must lie in (0, gamma]");
    return zonal(std::move(geom), [rho](double theta) {
        double x = theta / rho;
        if (std::abs(x) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - x * x));
    });
}

CapFunction CapFunction::bandlimited(CapGeometry geom, std::vector<double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("bandlimited function needs coefficients");
    int n = geom.n;
    auto c = std::make_shared<std::vector<double>>(std::move(coeffs));
    return zonal(
        std::move(geom),
        [c, n](double theta) {
            std::vector<double> p(c->size());
            legendre_ratio_all(n, static_cast<int>(c->size()) - 1, std::cos(theta), p);
            double acc = 0.0;
            for (std::size_t j = 0; j < c->size(); ++j) acc += (*c)[j] * p[j];
            return acc;
        },
        /*full_sphere=*/true);
}

CapFunction CapFunction::pure_degree(CapGeometry geom, int j, double amplitude) {
    if (j < 0) throw std::domain_error("degree must be non-negative");
    std::vector<double> coeffs(static_cast<std::size_t>(j) + 1, 0.0);
    coeffs.back() = amplitude;
    return bandlimited(std::move(geom), std::move(coeffs));
}

CapFunction CapFunction::zonal_from_csv(CapGeometry geom, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open zonal CSV: " + path);
    std::vector<std::pair<double, double>> samples;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double theta, value;
        if (row >> theta >> value) samples.emplace_back(theta, value);
    }
    if (samples.size() < 2) throw std::runtime_error("zonal CSV needs at least two samples: " + path);
    std::sort(samples.begin(), samples.end());
    auto data = std::make_shared<std::vector<std::pair<double, double>>>(std::move(samples));
    return zonal(std::move(geom), [data](double theta) {
        const auto& s = *data;
        if (theta <= s.front().first) return s.front().second;
        if (theta >= s.back().first) return 0.0;
        auto it = std::lower_bound(s.begin(), s.end(), std::make_pair(theta, -1e300));
        auto lo = it - 1;
        double t = (theta - lo->first) / (it->first - lo->first);
        return (1.0 - t) * lo->second + t * it->second;
    });
}

CapFunction CapFunction::gridded_from_csv(CapGeometry geom, std::shared_ptr<const SphereGrid> grid,
                                          const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open gridded CSV: " + path);
    std::vector<double> values(grid->size());
    std::vector<bool> seen(grid->size(), false);
    const double two_pi = 2.0 * std::numbers::pi;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double theta, phi, value;
        if (!(row >> theta >> phi >> value)) continue;
        // Recover the node index from (theta, phi).
        std::size_t band = grid->size();
        for (int i = 0; i < grid->n_theta(); ++i) {
            if (std::abs(grid->polar_angle(static_cast<std::size_t>(i) * grid->n_phi()) - theta) <= 1e-9) {
                band = static_cast<std::size_t>(i);
                break;
            }
        }
        double step = two_pi / grid->n_phi();
        double ratio = phi / step;
        auto l = static_cast<long long>(std::llround(ratio));
        if (band == grid->size() || std::abs(ratio - l) > 1e-9 * grid->n_phi() || l < 0 ||
            l >= grid->n_phi())
            throw std::runtime_error("gridded CSV row does not match a grid node: " + path);
        std::size_t idx = band * static_cast<std::size_t>(grid->n_phi()) + static_cast<std::size_t>(l);
        values[idx] = value;
        seen[idx] = true;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw std::runtime_error("gridded CSV does not cover every grid node: " + path);
    return gridded(std::move(geom), std::move(grid), std::move(values));
}

double CapFunction::support_angle() const {
    return full_sphere_ ? std::numbers::pi : geom_.gamma;
}

double CapFunction::profile(double theta) const {
    if (!zonal_) throw std::logic_error("profile() requires a zonal cap function");
    if (!full_sphere_ && theta > geom_.gamma) return 0.0;
    return profile_(theta);
}

double CapFunction::operator()(const std::array<double, 3>& x) const {
    if (geom_.n != 3) throw std::domain_error("point evaluation requires n = 3");
    if (zonal_) {
        double ct = std::clamp(dot3(x, center3(geom_)), -1.0, 1.0);
        return profile(std::acos(ct));
    }
    if (!full_sphere_ && dot3(x, center3(geom_)) < std::cos(geom_.gamma) - 1e-14) return 0.0;
    return grid_->interpolate(values_, x);
}

const SphereGrid& CapFunction::grid() const {
    if (zonal_) throw std::logic_error("grid() requires a gridded cap function");
    return *grid_;
}

std::span<const double> HarmonicExpansion::component(int j) const {
    if (zonal || !grid) throw std::logic_error("component() requires a gridded expansion");
    std::size_t npts = grid->size();
    return {components.data() + static_cast<std::size_t>(j) * npts, npts};
}

double projection_constant(int n, int j) {
    double lambda = 0.5 * (n - 2);
    return (j + lambda) * gegenbauer_at_one({lambda, j}) / (lambda * sphere_volume(n));
}

double degree_norm_sq(int n, int j) {
    if (n == 3) return 4.0 * std::numbers::pi / (2 * j + 1);
    double lambda = 0.5 * (n - 2);
    auto integrand = [&](double theta) {
        double p = legendre_ratio(n, j, std::cos(theta));
        return p * p * std::pow(std::sin(theta), n - 2.0);
    };
    return sphere_volume(n - 1) *
           integrate_adaptive(integrand, 0.0, std::numbers::pi, 1e-12, std::max(32, 2 * j));
}

namespace {

// Zonal projection integral  int_0^cut g(theta) P_j^n(cos theta) sin^{n-2}(theta) dtheta.
double zonal_projection_integral(const CapFunction& f, int j) {
    const auto& geom = f.geometry();
    auto integrand = [&](double theta) {
        return f.profile(theta) * legendre_ratio(geom.n, j, std::cos(theta)) *
               std::pow(std::sin(theta), geom.n - 2.0);
    };
    return integrate_adaptive(integrand, 0.0, f.support_angle(), 1e-12, std::max(32, 2 * j));
}

// All zonal coefficients in one pass over a composite grid, doubled until
// stable; falls back to per-degree adaptive integrals if doubling stalls
// (profiles with kinks, e.g. CSV interpolants).
void expand_zonal(const CapFunction& f, HarmonicExpansion& e) {
    const auto& geom = f.geometry();
    const double cut = f.support_angle();
    const int j_max = e.j_max;
    const QuadratureRule& base = detail::panel_rule();

    auto pass = [&](int panels) {
        std::vector<double> acc(static_cast<std::size_t>(j_max) + 1, 0.0);
        std::vector<double> p(static_cast<std::size_t>(j_max) + 1);
        double width = cut / panels;
        for (int pa = 0; pa < panels; ++pa) {
            double mid = (pa + 0.5) * width, half = 0.5 * width;
            for (std::size_t q = 0; q < base.nodes.size(); ++q) {
                double theta = mid + half * base.nodes[q];
                double w = half * base.weights[q] * f.profile(theta) *
                           std::pow(std::sin(theta), geom.n - 2.0);
                if (w == 0.0) continue;
                legendre_ratio_all(geom.n, j_max, std::cos(theta), p);
                for (int j = 0; j <= j_max; ++j) acc[static_cast<std::size_t>(j)] += w * p[static_cast<std::size_t>(j)];
            }
        }
        return acc;
    };

    int panels = std::max(64, j_max);
    std::vector<double> cur = pass(panels);
    bool converged = false;
    for (int round = 0; round < 6; ++round) {
        std::vector<double> fine = pass(2 * panels);
        double diff = 0.0, scale = 1.0;
        for (int j = 0; j <= j_max; ++j) {
            diff = std::max(diff, std::abs(fine[static_cast<std::size_t>(j)] - cur[static_cast<std::size_t>(j)]));
            scale = std::max(scale, std::abs(fine[static_cast<std::size_t>(j)]));
        }
        cur = std::move(fine);
        panels *= 2;
        if (diff <= 1e-11 * scale) {
            converged = true;
            break;
        }
    }
    e.coeff.assign(static_cast<std::size_t>(j_max) + 1, 0.0);
    if (converged) {
        for (int j = 0; j <= j_max; ++j)
            e.coeff[static_cast<std::size_t>(j)] =
                projection_constant(geom.n, j) * sphere_volume(geom.n - 1) * cur[static_cast<std::size_t>(j)];
    } else {
#pragma omp parallel for schedule(dynamic)
        for (int j = 0; j <= j_max; ++j)
            e.coeff[static_cast<std::size_t>(j)] =
                projection_constant(geom.n, j) * sphere_volume(geom.n - 1) * zonal_projection_integral(f, j);
    }
}

// Gridded path: Y_j(f)(x_i) = proj_const(j) * sum_y w_y P_j(x_i . y) f*(y),
// all degrees in one Legendre pass per point pair.
void expand_gridded(const CapFunction& f, HarmonicExpansion& e, bool parallel) {
    const SphereGrid& grid = f.grid();
    const std::size_t npts = grid.size();
    const int j_max = e.j_max;
    e.grid = f.grid_ptr();
    e.components.assign((static_cast<std::size_t>(j_max) + 1) * npts, 0.0);

    std::vector<double> consts(static_cast<std::size_t>(j_max) + 1);
    for (int j = 0; j <= j_max; ++j) consts[static_cast<std::size_t>(j)] = projection_constant(3, j);

    auto body = [&](std::size_t i) {
        std::vector<double> acc(static_cast<std::size_t>(j_max) + 1, 0.0);
        std::vector<double> p(static_cast<std::size_t>(j_max) + 1);
        const auto& xi = grid.point(i);
        for (std::size_t y = 0; y < npts; ++y) {
            double wf = grid.weight(y) * f.values()[y];
            if (wf == 0.0) continue;
            legendre_ratio_all(3, j_max, std::clamp(dot3(xi, grid.point(y)), -1.0, 1.0), p);
            for (int j = 0; j <= j_max; ++j) acc[static_cast<std::size_t>(j)] += wf * p[static_cast<std::size_t>(j)];
        }
        for (int j = 0; j <= j_max; ++j)
            e.components[static_cast<std::size_t>(j) * npts + i] = consts[static_cast<std::size_t>(j)] * acc[static_cast<std::size_t>(j)];
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < static_cast<long long>(npts); ++i) body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < npts; ++i) body(i);
    }
}

HarmonicExpansion expand_impl(const CapFunction& f, int j_max, bool parallel) {
    if (j_max < 0) throw std::domain_error("expansion order must be non-negative");
    HarmonicExpansion e;
    e.geom = f.geometry();
    e.j_max = j_max;
    e.zonal = f.is_zonal();
    if (e.zonal) {
        expand_zonal(f, e);
        std::vector<double> mags(e.coeff.size());
        for (std::size_t j = 0; j < e.coeff.size(); ++j) mags[j] = std::abs(e.coeff[j]);
        flag_tail(e, mags);
    } else {
        expand_gridded(f, e, parallel);
        std::vector<double> mags(static_cast<std::size_t>(j_max) + 1, 0.0);
        for (int j = 0; j <= j_max; ++j) {
            auto comp = e.component(j);
            double m = 0.0;
            for (double v : comp) m = std::max(m, std::abs(v));
            mags[static_cast<std::size_t>(j)] = m;
        }
        flag_tail(e, mags);
    }
    return e;
}

}  // namespace

double project_degree_coeff(const CapFunction& f, int j) {
    if (j < 0) throw std::domain_error("degree must be non-negative");
    if (!f.is_zonal()) throw std::logic_error("coefficient projection requires a zonal function");
    return projection_constant(f.geometry().n, j) * sphere_volume(f.geometry().n - 1) *
           zonal_projection_integral(f, j);
}

CapFunction project_degree(const CapFunction& f, int j) {
    if (j < 0) throw std::domain_error("degree must be non-negative");
    const CapGeometry& geom = f.geometry();
    if (f.is_zonal()) {
        double aj = project_degree_coeff(f, j);
        std::vector<double> coeffs(static_cast<std::size_t>(j) + 1, 0.0);
        coeffs.back() = aj;
        return CapFunction::bandlimited(geom, std::move(coeffs));
    }
    HarmonicExpansion e = expand(f, j);
    auto comp = e.component(j);
    return CapFunction::gridded(geom, f.grid_ptr(), {comp.begin(), comp.end()},
                                /*full_sphere=*/true);
}

HarmonicExpansion expand(const CapFunction& f, int j_max) { return expand_impl(f, j_max, true); }

HarmonicExpansion expand_serial(const CapFunction& f, int j_max) { return expand_impl(f, j_max, false); }

CapFunction synthesize(const HarmonicExpansion& e, std::span<const double> multipliers) {
    if (!multipliers.empty() && multipliers.size() < static_cast<std::size_t>(e.j_max) + 1)
        throw std::invalid_argument("multiplier sequence shorter than expansion");
    if (e.zonal) {
        auto scaled = std::make_shared<std::vector<double>>(e.coeff);
        if (!multipliers.empty())
            for (std::size_t j = 0; j < scaled->size(); ++j) (*scaled)[j] *= multipliers[j];
        int n = e.geom.n;
        return CapFunction::zonal(
            e.geom,
            [scaled, n](double theta) {
                std::vector<double> p(scaled->size());
                legendre_ratio_all(n, static_cast<int>(scaled->size()) - 1, std::cos(theta), p);
                double acc = 0.0;
                for (std::size_t j = 0; j < scaled->size(); ++j) acc += (*scaled)[j] * p[j];
                return acc;
            },
            /*full_sphere=*/true);
    }
    std::size_t npts = e.grid->size();
    std::vector<double> out(npts, 0.0);
    for (int j = 0; j <= e.j_max; ++j) {
        double mu = multipliers.empty() ? 1.0 : multipliers[static_cast<std::size_t>(j)];
        if (mu == 0.0) continue;
        auto comp = e.component(j);
        for (std::size_t i = 0; i < npts; ++i) out[i] += mu * comp[i];
    }
    return CapFunction::gridded(e.geom, e.grid, std::move(out), /*full_sphere=*/true);
}

HarmonicExpansion laplace_beltrami(const HarmonicExpansion& e) {
    HarmonicExpansion out = e;
    double lambda = e.geom.lambda();
    if (e.zonal) {
        for (int j = 0; j <= e.j_max; ++j)
            out.coeff[static_cast<std::size_t>(j)] *= -j * (j + 2.0 * lambda);
    } else {
        std::size_t npts = e.grid->size();
        for (int j = 0; j <= e.j_max; ++j) {
            double scale = -j * (j + 2.0 * lambda);
            for (std::size_t i = 0; i < npts; ++i)
                out.components[static_cast<std::size_t>(j) * npts + i] *= scale;
        }
    }
    return out;
}

double parseval_norm(const HarmonicExpansion& e) {
    if (!e.zonal) throw std::logic_error("parseval_norm requires a zonal expansion");
    double acc = 0.0;
    for (int j = 0; j <= e.j_max; ++j) {
        double a = e.coeff[static_cast<std::size_t>(j)];
        acc += a * a * degree_norm_sq(e.geom.n, j);
    }
    return std::sqrt(acc);
}

}  // namespace capjack
