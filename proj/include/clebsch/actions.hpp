#pragma once

#include <array>
#include <complex>
#include <functional>

#include "clebsch/linearize.hpp"
#include "clebsch/params.hpp"

namespace clebsch {

// Integral of f over (a, b) where f may have inverse-square-root endpoint
// singularities. Substitutes x = a + (b-a) sin^2(theta) and refines an
// adaptive open Gauss rule on [0, pi/2]; the transformed integrand is defined
// as 0 wherever sin(2 theta) vanishes, and the open rule never samples those
// points (their pinned value differs from the limit when f is singular
// there). Throws ToleranceError (carrying the best estimate) when the
// refinement depth cap is hit, which is how a divergent integrand presents.
double singular_quadrature(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-10);

// Oriented segment between two branch points.
struct Cycle {
    double lo, hi;
};

// Segments [b1,b2] and [b3,b4] of the ascending real branch points. These
// carry the motion of (x1, x2) and keep the quintic nonnegative inside.
std::array<Cycle, 2> action_cycles(const HyperellipticCurve& curve);

// psi[i][j] = (2 / w[i]) * integral over cycle j of x^i / sqrt(P(x)) dx with
// P the monic quintic; the principal branch makes entries over segments with
// P < 0 purely imaginary.
struct PeriodMatrix {
    std::array<std::array<std::complex<double>, 2>, 2> psi;
    std::array<double, 2> w;

    std::complex<double> det() const {
        return psi[0][0] * psi[1][1] - psi[0][1] * psi[1][0];
    }
};

PeriodMatrix period_matrix(const HyperellipticCurve& curve,
                           const std::array<Cycle, 2>& cycles,
                           const std::array<double, 2>& w = {-2.0, 2.0},
                           double abs_tol = 1e-10);

struct ActionIntegral {
    std::complex<double> value;
    bool real;  // imaginary part negligible relative to the value
};

struct ActionValues {
    ActionIntegral a1, a2;
};

// a1 = -2 int_{j1}^{j2} sqrt(Psi(x)/Q(x)) dx, Q(x) = (x-j1)(x-j2)(x-j3),
// a2 = the same integrand from j3 to j4 (orientation may reverse). Segments
// are split at interior branch points into one-signed pieces; pieces where
// the ratio is negative contribute on the principal branch (+i times the
// real magnitude). Pairwise branch-point collisions are fine (the factors
// cancel); a cluster of three or more coinciding branch points is refused.
ActionValues actions(const HyperellipticCurve& curve, double abs_tol = 1e-10);

// Max entrywise discrepancy between central differences of the actions in
// (c4, c3) and period entries over the same literal segments with the branch
// chosen consistently with the action integrand. The identity pairs
// d a_j / d c4 with psi[0][j] and d a_j / d c3 with psi[1][j].
double verify_action_derivatives(const SystemParams& params, double c3,
                                 double c4, double fd_step = 1e-5);

}  // namespace clebsch
