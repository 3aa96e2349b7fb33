#pragma once

#include <array>

#include "clebsch/errors.hpp"

namespace clebsch {

// Moduli j1 < j2 < j3 and the pencil weights (lambda, lambda_prime).
struct SystemParams {
    std::array<double, 3> j;
    double lambda;
    double lambda_prime;

    SystemParams(double j1, double j2, double j3, double lambda_,
                 double lambda_prime_);

    double jsum() const { return j[0] + j[1] + j[2]; }
    double jprod() const { return j[0] * j[1] * j[2]; }

    // Pencil coefficients: n_a = 1/(2 I_a) and n'_a = 1/(2 m_a) once physical
    // constants are requested.
    double n(int a) const { return lambda + lambda_prime * j[a]; }
    double nprime(int a) const {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        return lambda * (jsum() - j[a]) + lambda_prime * j[b] * j[c];
    }
};

struct PhysicalParams {
    std::array<double, 3> I;  // inertia
    std::array<double, 3> m;  // virtual mass
};

// I_a = 1/(2 n_a), m_a = 1/(2 n'_a). Throws DegenerateError when some n_a or
// n'_a vanishes (degenerate pencil member).
PhysicalParams derive_physical(const SystemParams& params);

// Compatibility condition (I2-I3)/m1 + (I3-I1)/m2 + (I1-I2)/m3 == 0, checked
// relative to the largest of the three terms.
bool check_clebsch(const std::array<double, 3>& I,
                   const std::array<double, 3>& m, double tol_rel = 1e-12);

// Roots of x^2 - c3 x + c4. Real pairs are ordered j4 <= j5; a conjugate pair
// re +- i*im is stored with j4 = j5 = re and im > 0.
struct QuadraticRoots {
    bool real_pair;
    double j4, j5;
    double im;
};
QuadraticRoots roots_j45(double c3, double c4);

// d1 = 1/(j3-j2), d2 = 1/(j1-j3), d3 = 1/(j2-j1); reciprocals sum to zero.
std::array<double, 3> d_params(const SystemParams& params);

// Weights (l,m,n) with l+m+n = 1: the a-th value is
// (j_a^2 - c3 j_a + c4) / ((j_a - j_b)(j_a - j_c)), which solves the 3x3
// system pairing (1, c3, c4) with the symmetric functions of the
// complementary pairs.
std::array<double, 3> compute_lmn(const SystemParams& params, double c3,
                                  double c4);

// Rebuild (1, c3, c4) from (l,m,n): the row sums of the defining 3x3 system.
std::array<double, 3> lmn_rows(const SystemParams& params,
                               const std::array<double, 3>& lmn);

struct SpectralData {
    double c3, c4;
    std::array<double, 3> lmn;
    QuadraticRoots j45;
    std::array<double, 3> d;
};
SpectralData spectral_from_c(const SystemParams& params, double c3, double c4);

}  // namespace clebsch
