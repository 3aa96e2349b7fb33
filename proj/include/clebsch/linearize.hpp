#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "clebsch/dynamics.hpp"
#include "clebsch/integrals.hpp"
#include "clebsch/params.hpp"

namespace clebsch {

// Separation coordinates and the square-root sheet used for each component
// when rebuilding (K, p) from them.
struct SeparationPoint {
    double x1, x2;
    std::array<int, 3> signs{1, 1, 1};
};

// Roots x1 <= x2 of x^2 - E x + F with E = sum (S - j_a) p_a^2 and
// F = sum j_b j_c p_a^2. Requires |p| = 1 within 1e-8.
SeparationPoint supplementary_coords(const Vec3& p, const SystemParams& params);

// p_a^2 = (j_a - x1)(j_a - x2) / ((j_a - j_b)(j_a - j_c)); sums to 1.
std::array<double, 3> p_squared_from_coords(double x1, double x2,
                                            const SystemParams& params);

// Genus-two curve y^2 = (j1-x)(j2-x)(j3-x)(j4-x)(j5-x).
struct HyperellipticCurve {
    std::array<double, 3> j;
    QuadraticRoots j45;
    double c3, c4;
    bool degenerate;  // two branch points coincide within 1e-10 * scale
    double min_gap;   // smallest pairwise distance of the real branch points

    // Principal square root of the quintic product; purely real or purely
    // imaginary for real x since the product is real.
    std::complex<double> R(double x) const;
    // (x-j1)(x-j2)(x-j3)(x-j4)(x-j5) = -Phi(x)*Psi(x)
    double monic_quintic(double x) const;
    double Phi(double x) const;  // (j1-x)(j2-x)(j3-x)
    double Psi(double x) const;  // (x-j4)(x-j5) = x^2 - c3 x + c4
    // Ascending branch points; requires a real (j4, j5) pair.
    std::array<double, 5> sorted_branch_points() const;
};

HyperellipticCurve curve_from_c(const SystemParams& params, double c3, double c4);

// Coefficient squares of the two-term radical expansion of K:
// A^2 = Phi(x2) Psi(x1) / (x2-x1)^2, B^2 = Phi(x1) Psi(x2) / (x2-x1)^2.
std::pair<double, double> ab_squared(double x1, double x2,
                                     const SpectralData& spectral,
                                     const SystemParams& params);

// K from the radical formula on the nonnegative sheet:
// K_a = r_a (A/(x2-j_a) + B/(x1-j_a)) with
// r_a = sqrt((x1-j_a)(x2-j_a) / ((j_a-j_b)(j_a-j_c))), the positive root of
// the squared momentum at (x1, x2). Throws BranchError naming the component
// whose radicand is negative (coordinates off the real oval).
Vec3 reconstruct_K(double x1, double x2, double A, double B,
                   const SystemParams& params);

struct Separation {
    SeparationPoint pt;
    double A, B;
};

// Full decomposition of a leaf state; records the sheet signs so that
// reconstruct_state is an exact inverse.
Separation decompose_state(const BodyState& s, const SystemParams& params);
BodyState reconstruct_state(const Separation& sep, const SystemParams& params);

// Residual of the vanishing first Casimir written through the linear forms
// U_a at X = (K1^2, K2^2, K3^2, 1): minimum over sign choices of
// |s1 sqrt(U1) K1 + s2 sqrt(U2) K2 + sqrt(U3) K3|.
double casimir_combination_residual(const BodyState& s,
                                    const SpectralData& spectral);

// Residuals of the linearized flow along a trajectory, with time derivatives
// of (x1, x2) estimated by centered differences:
//   r1 = s1 x1'/R(x1) + s2 x2'/R(x2) + 2 lambda'
//   r2 = s1 x1 x1'/R(x1) + s2 x2 x2'/R(x2) - 2 lambda
// where R = 2 sqrt(monic quintic) and the sheet signs (s1, s2) are chosen for
// residual continuity. Steps whose stencil straddles a turning point of x_i,
// or where x_i sits on a branch point, are excluded and counted.
struct ResidualReport {
    double max_r1 = 0.0, max_r2 = 0.0;        // 3-point estimator
    double max_r1_ho = 0.0, max_r2_ho = 0.0;  // 5-point diagnostic estimator
    std::vector<double> r1, r2;               // per interior step; NaN = excluded
    std::size_t evaluated = 0;
    std::size_t excluded = 0;
    std::vector<std::size_t> branch_failures;  // sheet flips away from folds
    bool degenerate = false;
    double lambda = 0.0, lambda_prime = 0.0;
};

ResidualReport linearization_residual(const Trajectory& traj);

// (x1, x2) along a trajectory, for CSV export.
struct XSeries {
    std::vector<double> t, x1, x2;
};
XSeries xcoords_series(const Trajectory& traj);

}  // namespace clebsch
