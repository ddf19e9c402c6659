#pragma once

#include <functional>
#include <span>
#include <vector>

#include "capjack/harmonic.hpp"

namespace capjack {

/// Cap L^p norm of a cap/sphere function. Zonal inputs reduce to a 1-D
/// integral in the polar angle; gridded inputs use their grid. For p = inf
/// the sup is taken over a dense angle grid (grid-limited by construction).
double cap_norm(const CapFunction& f, NormP p);

/// Zonal profile path, usable for differences of profiles. min_panels
/// should track the oscillation content (>= j_max for synthesized series).
double cap_norm_zonal(const std::function<double(double)>& profile, const CapGeometry& geom,
                      NormP p, int min_panels = 64);

/// Cap L^p distance between two functions sharing a geometry.
double cap_distance(const CapFunction& a, const CapFunction& b, NormP p, int min_panels = 64);

/// Inputs of the second-order modulus of smoothness
///   omega^2(f, delta)_{D,p} = sup_{0 < theta <= delta} ||S_theta f - f||_{D,p},
/// approximated on a geometric-plus-uniform theta grid of theta_grid_size
/// points (a grid-limited lower bound for the sup).
struct ModulusRequest {
    CapFunction f;
    double delta = 0.1;
    NormP p = NormP::two;
    int theta_grid_size = 64;
    int j_max = 256;
};

double modulus_smoothness(const ModulusRequest& req);

/// Expansion-level variant; pass the original f for exact profile
/// differences (the expansion alone carries truncation error).
double modulus_smoothness(const HarmonicExpansion& e, const CapFunction& f, double delta, NormP p,
                          int theta_grid_size = 64);

/// Upper estimate of the K-functional
///   K(f, delta2)_{D,p} = inf_g { ||f - g||_{D,p} + delta2 ||Lap g||_{D,p} }
/// over the concrete candidate family { J_{k,s}^1 f : k in candidate_ks }
/// union { f truncated to degree J : J in candidate_degrees }. An upper
/// bound only; the true infimum is not computable.
double k_functional_estimate(const HarmonicExpansion& e, const CapFunction& f, double delta2,
                             NormP p, int s, std::span<const int> candidate_ks,
                             std::span<const int> candidate_degrees);

/// Convenience overload with dyadic candidates k in {1..256}, J in {1..j_max}.
double k_functional_estimate(const CapFunction& f, double delta2, NormP p, int s = 3,
                             int j_max = 256);

}  // namespace capjack
