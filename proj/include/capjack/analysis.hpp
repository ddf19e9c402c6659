#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "capjack/harmonic.hpp"
#include "capjack/metrics.hpp"
#include "capjack/operators.hpp"

namespace capjack {

/// Log-log power-law fit of a (k, value) series.
struct ConvergenceReport {
    std::vector<std::pair<int, double>> series;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares of log(value) against log(k). Requires at least
/// three points, positive values and at least two distinct k.
ConvergenceReport fit_order(std::span<const std::pair<int, double>> series);

/// Outcome of one probe. `values` is the gated series (one entry per k);
/// diagnostics carry the ungated auxiliary ratio tables.
struct ProbeResult {
    std::string name;
    std::vector<int> ks;
    std::vector<double> values;
    double slope = 0.0;
    double r_squared = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string notes;
    std::map<std::string, std::vector<double>> diagnostics;
};

struct ProbeParams {
    std::vector<int> ks;       // degree grid; defaults depend on the probe
    int s = 3;
    int m = 1;
    NormP p = NormP::two;
    int j_max = 256;
    int v_max_factor = 4;      // truncation of max_{v >= k} to v <= factor * k
    int theta_grid = 64;       // modulus sup grid
};

/// Boundedness of ||J_k f - f|| / omega^2(f, 1/k): fitted slope within
/// +-0.3 of 0 and max/min <= 10. Skips (pass, flagged) when the modulus
/// is numerically zero.
ProbeResult probe_direct(const CapFunction& f, ProbeParams params);

/// Boundedness of omega^2(f, 1/k) / max_{k <= v <= factor*k} ||J_v f - f||
/// at m large enough for the Bernstein bound (n = 3 needs m >= 9). Also
/// reports Marchaud-style and weighted-max ratio tables as diagnostics.
ProbeResult probe_converse(const CapFunction& f, ProbeParams params);

/// Decay order of ||J_k f - f||: slope -2 +- 0.15. Reports the multiplier
/// limit table (1 - xi(j)) / (1 - xi(1)) at the largest k against
/// j (j + 2 lambda) / (2 lambda + 1) as a diagnostic.
ProbeResult probe_saturation(const CapFunction& f, ProbeParams params);

/// Order match between the error series (alpha1) and the modulus series
/// (alpha2): |alpha1 - alpha2| <= 0.25.
ProbeResult probe_equivalence(const CapFunction& f, ProbeParams params);

/// Error norms ||J_{k,s}^m f - f||_{D,p} for each k, sharing one expansion.
std::vector<double> jackson_error_norms(const HarmonicExpansion& e, const CapFunction& f,
                                        std::span<const int> ks, int s, int m, NormP p);

}  // namespace capjack
