#pragma once

#include <span>
#include <vector>

namespace capjack {

/// Index (lambda, j) of an ultraspherical (Gegenbauer) polynomial G_j^lambda.
/// lambda = (n-2)/2 links the family to the sphere S^{n-1}.
struct UltrasphericalIndex {
    double lambda;
    int degree;

    void validate() const;
};

/// G_j^lambda(t) by the three-term recurrence
///   G_0 = 1,  G_1 = 2 lambda t,
///   j G_j = 2 (j + lambda - 1) t G_{j-1} - (j + 2 lambda - 2) G_{j-2}.
/// |t| may exceed 1 by at most 1e-12; t is clamped to [-1, 1] afterwards.
double gegenbauer_eval(const UltrasphericalIndex& idx, double t);

/// G_j^lambda(1) = Gamma(2 lambda + j) / (Gamma(j+1) Gamma(2 lambda)),
/// computed as the product of (2 lambda + i)/(i + 1) over i < j so large
/// degrees never route through huge Gamma arguments.
double gegenbauer_at_one(const UltrasphericalIndex& idx);

/// Normalized Legendre polynomial P_j^n(t) = G_j^lambda(t) / G_j^lambda(1)
/// with lambda = (n-2)/2; satisfies |P_j^n(t)| <= 1 on [-1, 1].
double legendre_ratio(int n, int j, double t);

/// Same, parameterized by lambda directly.
double legendre_ratio_lambda(double lambda, int j, double t);

/// All of P_0^n(t), ..., P_jmax^n(t) in one recurrence pass.
/// out must have room for jmax + 1 values.
void legendre_ratio_all(int n, int j_max, double t, std::span<double> out);

/// Same, parameterized by lambda directly.
void legendre_ratio_all_lambda(double lambda, int j_max, double t, std::span<double> out);

/// Surface volume of S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_volume(int n);

}  // namespace capjack
