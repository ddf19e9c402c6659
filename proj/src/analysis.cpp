#include "capjack/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace capjack {

namespace {

constexpr double kDirectSlopeTol = 0.3;
constexpr double kDirectSpreadTol = 10.0;
constexpr double kSaturationSlopeTol = 0.15;
constexpr double kEquivalenceTol = 0.25;

int bernstein_min_m(int n) {
    // Smallest integer m with m > 2 ([n/2] + 3) / (n - 2).
    return static_cast<int>(std::floor(2.0 * (n / 2 + 3) / (n - 2))) + 1;
}

double max_over_min(const std::vector<double>& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi / *lo;
}

void fit_into(ProbeResult& r) {
    std::vector<std::pair<int, double>> series;
    for (std::size_t i = 0; i < r.ks.size(); ++i) series.emplace_back(r.ks[i], r.values[i]);
    ConvergenceReport rep = fit_order(series);
    r.slope = rep.slope;
    r.r_squared = rep.r_squared;
}

double error_norm_one(const HarmonicExpansion& e, const CapFunction& f,
                      const MultiplierTable& table, NormP p) {
    CapFunction jf = jackson_apply_spectral(e, table);
    int min_panels = std::max(64, e.j_max);
    if (f.is_zonal())
        return cap_norm_zonal([&](double t) { return jf.profile(t) - f.profile(t); }, f.geometry(),
                              p, min_panels);
    return cap_distance(jf, f, p);
}

}  // namespace

ConvergenceReport fit_order(std::span<const std::pair<int, double>> series) {
    if (series.size() < 3) throw std::invalid_argument("order fit needs at least 3 points");
    ConvergenceReport rep;
    rep.series.assign(series.begin(), series.end());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int first_k = series.front().first;
    bool distinct = false;
    for (const auto& [k, v] : series) {
        if (!(v > 0.0)) throw std::invalid_argument("order fit needs positive values");
        if (k != first_k) distinct = true;
        double x = std::log(static_cast<double>(k)), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    if (!distinct) throw std::invalid_argument("order fit needs at least two distinct k");
    double n = static_cast<double>(series.size());
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.intercept = (sy - rep.slope * sx) / n;
    double ss_res = 0, ss_tot = 0, mean = sy / n;
    for (const auto& [k, v] : series) {
        double y = std::log(v);
        double pred = rep.intercept + rep.slope * std::log(static_cast<double>(k));
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - mean) * (y - mean);
    }
    rep.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return rep;
}

std::vector<double> jackson_error_norms(const HarmonicExpansion& e, const CapFunction& f,
                                        std::span<const int> ks, int s, int m, NormP p) {
    const CapGeometry& geom = f.geometry();
    std::vector<double> out;
    out.reserve(ks.size());
    for (int k : ks) {
        MultiplierTable table = multiplier_table(kernel_normalize(k, s, geom.gamma, geom.lambda()),
                                                 m, e.j_max);
        out.push_back(error_norm_one(e, f, table, p));
    }
    return out;
}

ProbeResult probe_direct(const CapFunction& f, ProbeParams params) {
    if (params.ks.empty()) params.ks = {16, 32, 64, 128, 256};
    ProbeResult r;
    r.name = "direct";
    r.ks = params.ks;
    r.tolerance = kDirectSlopeTol;

    HarmonicExpansion e = expand(f, params.j_max);
    std::vector<double> errors =
        jackson_error_norms(e, f, params.ks, params.s, params.m, params.p);
    std::vector<double> moduli;
    double fnorm = cap_norm(f, params.p);
    for (int k : params.ks)
        moduli.push_back(modulus_smoothness(e, f, 1.0 / k, params.p, params.theta_grid));

    double floor = 1e-13 * std::max(fnorm, 1.0);
    if (*std::min_element(moduli.begin(), moduli.end()) <= floor) {
        r.skipped = true;
        r.pass = true;
        r.notes = "skipped: modulus numerically zero (constant-like input)";
        return r;
    }
    for (std::size_t i = 0; i < errors.size(); ++i) r.values.push_back(errors[i] / moduli[i]);
    r.diagnostics["error"] = errors;
    r.diagnostics["modulus"] = moduli;
    fit_into(r);
    double spread = max_over_min(r.values);
    r.pass = std::abs(r.slope) <= kDirectSlopeTol && spread <= kDirectSpreadTol;
    std::ostringstream note;
    note << "max/min=" << spread;
    r.notes = note.str();
    return r;
}

ProbeResult probe_converse(const CapFunction& f, ProbeParams params) {
    const CapGeometry& geom = f.geometry();
    int m_min = bernstein_min_m(geom.n);
    if (params.m < m_min) {
        std::ostringstream msg;
        msg << "converse probe requires m > 2([n/2]+3)/(n-2); n=" << geom.n
            << " needs m >= " << m_min;
        throw std::invalid_argument(msg.str());
    }
    if (params.ks.empty()) params.ks = {128, 256, 512, 1024, 2048};
    ProbeResult r;
    r.name = "converse";
    r.ks = params.ks;
    r.tolerance = kDirectSlopeTol;

    HarmonicExpansion e = expand(f, params.j_max);

    // Dyadic v grid covering [min k, v_max_factor * max k].
    std::vector<int> vs;
    for (int v = params.ks.front(); v <= params.v_max_factor * params.ks.back(); v *= 2)
        vs.push_back(v);
    std::vector<double> verr = jackson_error_norms(e, f, vs, params.s, params.m, params.p);
    auto err_at = [&](int v) {
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (vs[i] == v) return verr[i];
        throw std::logic_error("v outside precomputed dyadic grid");
    };

    std::vector<double> moduli;
    for (int k : params.ks)
        moduli.push_back(modulus_smoothness(e, f, 1.0 / k, params.p, params.theta_grid));

    double fnorm = cap_norm(f, params.p);
    if (*std::min_element(moduli.begin(), moduli.end()) <= 1e-13 * std::max(fnorm, 1.0)) {
        r.skipped = true;
        r.pass = true;
        r.notes = "skipped: modulus numerically zero (constant-like input)";
        return r;
    }

    std::vector<double> marchaud, weighted_sqrt, weighted_max2, weighted_max94;
    for (std::size_t i = 0; i < params.ks.size(); ++i) {
        int k = params.ks[i];
        double denom = 0.0;
        for (int v = k; v <= params.v_max_factor * k; v *= 2) denom = std::max(denom, err_at(v));
        r.values.push_back(moduli[i] / denom);

        // Ungated diagnostic ratios on the same dyadic grid.
        double sum1 = 0.0, sum_half = 0.0, max2 = 0.0, max94 = 0.0;
        for (std::size_t vi = 0; vi < vs.size() && vs[vi] <= k; ++vi) {
            double v = vs[vi];
            sum1 += v * verr[vi];
            sum_half += std::sqrt(v) * verr[vi];
            max2 = std::max(max2, v * v * verr[vi]);
            max94 = std::max(max94, std::pow(v, 2.25) * verr[vi]);
        }
        double kk = k;
        marchaud.push_back(moduli[i] / (sum1 / (kk * kk)));
        weighted_sqrt.push_back(moduli[i] / (sum_half / std::pow(kk, 1.5)));
        weighted_max2.push_back(moduli[i] / (max2 / (kk * kk)));
        weighted_max94.push_back(moduli[i] / (max94 / std::pow(kk, 2.25)));
    }
    r.diagnostics["modulus"] = moduli;
    r.diagnostics["marchaud_ratio"] = marchaud;
    r.diagnostics["weighted_sqrt_sum_ratio"] = weighted_sqrt;
    r.diagnostics["weighted_max2_ratio"] = weighted_max2;
    r.diagnostics["weighted_max94_ratio"] = weighted_max94;
    fit_into(r);
    double spread = max_over_min(r.values);
    r.pass = std::abs(r.slope) <= kDirectSlopeTol && spread <= kDirectSpreadTol;
    std::ostringstream note;
    note << "max/min=" << spread;
    r.notes = note.str();
    return r;
}

ProbeResult probe_saturation(const CapFunction& f, ProbeParams params) {
    if (params.ks.empty()) params.ks = {128, 256, 512, 1024, 2048};
    ProbeResult r;
    r.name = "saturation";
    r.ks = params.ks;
    r.tolerance = kSaturationSlopeTol;

    HarmonicExpansion e = expand(f, params.j_max);
    if (e.zonal) {
        double peak = 0.0;
        for (int j = 1; j <= e.j_max; ++j)
            peak = std::max(peak, std::abs(e.coeff[static_cast<std::size_t>(j)]));
        double scale = std::max(peak, std::abs(e.coeff[0]));
        if (scale == 0.0 || peak <= 1e-13 * scale)
            throw std::invalid_argument("saturation probe needs a nonzero coefficient at j >= 1");
    }

    r.values = jackson_error_norms(e, f, params.ks, params.s, params.m, params.p);
    fit_into(r);
    r.pass = std::abs(r.slope + 2.0) <= kSaturationSlopeTol;

    // Multiplier-limit table at the largest k: (1 - xi(j)) / (1 - xi(1)) for
    // j <= 6 against the eigenvalue ratio j (j + 2 lambda) / (2 lambda + 1).
    const CapGeometry& geom = f.geometry();
    double lambda = geom.lambda();
    MultiplierTable table = multiplier_table(
        kernel_normalize(params.ks.back(), params.s, geom.gamma, lambda), params.m, 6);
    std::vector<double> limit, target;
    for (int j = 2; j <= 6; ++j) {
        limit.push_back((1.0 - table.at(j)) / (1.0 - table.at(1)));
        target.push_back(j * (j + 2.0 * lambda) / (2.0 * lambda + 1.0));
    }
    r.diagnostics["multiplier_limit"] = limit;
    r.diagnostics["multiplier_limit_target"] = target;
    return r;
}

ProbeResult probe_equivalence(const CapFunction& f, ProbeParams params) {
    if (params.ks.empty()) params.ks = {128, 256, 512, 1024, 2048};
    ProbeResult r;
    r.name = "equivalence";
    r.ks = params.ks;
    r.tolerance = kEquivalenceTol;

    HarmonicExpansion e = expand(f, params.j_max);
    std::vector<double> errors =
        jackson_error_norms(e, f, params.ks, params.s, params.m, params.p);
    std::vector<double> moduli;
    for (int k : params.ks)
        moduli.push_back(modulus_smoothness(e, f, 1.0 / k, params.p, params.theta_grid));

    double fnorm = cap_norm(f, params.p);
    double floor = 1e-13 * std::max(fnorm, 1.0);
    if (*std::min_element(moduli.begin(), moduli.end()) <= floor ||
        *std::min_element(errors.begin(), errors.end()) <= floor) {
        r.skipped = true;
        r.pass = true;
        r.notes = "skipped: degenerate series (zero error or modulus)";
        return r;
    }

    std::vector<std::pair<int, double>> err_series, mod_series;
    for (std::size_t i = 0; i < params.ks.size(); ++i) {
        err_series.emplace_back(params.ks[i], errors[i]);
        mod_series.emplace_back(params.ks[i], moduli[i]);
    }
    double alpha1 = -fit_order(err_series).slope;
    double alpha2 = -fit_order(mod_series).slope;  // modulus at delta = 1/k

    r.values = errors;
    r.diagnostics["modulus"] = moduli;
    r.diagnostics["alpha"] = {alpha1, alpha2};
    fit_into(r);
    r.pass = std::abs(alpha1 - alpha2) <= kEquivalenceTol;
    std::ostringstream note;
    note << "alpha1=" << alpha1 << " alpha2=" << alpha2;
    r.notes = note.str();
    return r;
}

}  // namespace capjack
