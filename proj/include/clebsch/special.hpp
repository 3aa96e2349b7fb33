#pragma once

#include <variant>
#include <vector>

#include "clebsch/dynamics.hpp"
#include "clebsch/params.hpp"
#include "clebsch/rng.hpp"
#include "clebsch/vec3.hpp"

namespace clebsch {

// Reduced 3-dimensional system x' = (Mx) x grad F with diagonal M = diag(mu)
// and F = (1/2) <x, diag(f) x>. Both quadratics (1/2)<x, diag(mu) x> and
// (1/2)<x, diag(f) x> are constants of motion.
struct ModifiedBracketSystem {
    Vec3 mu;
    Vec3 f;
};

// ((mu2 f3 - mu3 f2) x2 x3, (mu3 f1 - mu1 f3) x3 x1, (mu1 f2 - mu2 f1) x1 x2)
Vec3 modified_field(const ModifiedBracketSystem& sys, const Vec3& x);

double mu_quadratic(const ModifiedBracketSystem& sys, const Vec3& x);
double f_quadratic(const ModifiedBracketSystem& sys, const Vec3& x);

// Reduced system whose field matches the full equations of motion restricted
// to the axis family (K on axis a, p in the complementary plane), in the
// reduced coordinates x = (K_a, p_b, p_c): mu = (1/I_a, 1/m_b, 1/m_c),
// f = (0, -1, -1).
ModifiedBracketSystem axis_modified_system(int axis, const PhysicalParams& phys);

// mu_a = delta_a / (delta_b delta_c), f_a = delta_a / I_a. Reproduces the
// delta-constrained reduction of the equations of motion.
ModifiedBracketSystem delta_modified_system(const Vec3& delta,
                                            const PhysicalParams& phys);

struct ReducedTrajectory {
    std::vector<double> t;
    std::vector<Vec3> x;
};

ReducedTrajectory integrate_modified(const ModifiedBracketSystem& sys,
                                     const Vec3& x0, double t_final, double h);

// Residual of the necessary condition j_axis^2 - c3 j_axis + c4 = 0 for the
// axis family p_axis = K_b = K_c = 0, relative to the size of its terms.
double axis_condition_residual(const SystemParams& params, double c3,
                               double c4, int axis);
bool axis_subspace_check(const SystemParams& params, double c3, double c4,
                         int axis, double tol = 1e-12);

// Family p_a = delta_a K_a. The constants satisfy j_a = sigma delta_a +
// sigma_prime with sigma^2 = (j1-s')(j2-s')(j3-s'); on states of the family
// with C1 = 0, C2 = 1 the integrals collapse to C3 = 2 sigma_prime and
// C4 = sigma_prime^2.
struct DeltaFamily {
    Vec3 delta;
    double sigma;
    double sigma_prime;
};

// Throws RefusalError when (j1-s')(j2-s')(j3-s') <= 0 (no real family).
DeltaFamily delta_family_from_sigma(const SystemParams& params,
                                    double sigma_prime);

// Random state with K on the axis, p unit in the complementary plane.
BodyState sample_axis_state(const SystemParams& params, int axis,
                            SplitMix64& rng, double k_radius = 1.0);

// Random state with p = delta o K, C1 = 0, C2 = 1. Throws RefusalError when
// the sign pattern of delta admits no real state (all K_a^2 would have to
// vanish).
BodyState sample_delta_state(const SystemParams& params,
                             const DeltaFamily& family, SplitMix64& rng);

struct AxisSubspace {
    int axis;  // 1..3
};
struct DeltaSubspace {
    DeltaFamily family;
};
using SubspaceSpec = std::variant<AxisSubspace, DeltaSubspace>;

// Integrates the given 6-dim field from `initial` and reports the maximum
// over time of the constraint deviation: |p_axis|, |K_b|, |K_c| for the axis
// type, |p_a - delta_a K_a| for the delta type. No projection is applied, so
// an initial state off the subspace keeps its offset.
double subspace_invariance_test(const BodyState& initial,
                                const SystemParams& params,
                                const FieldFn& field, const SubspaceSpec& sub,
                                double horizon, double h);

}  // namespace clebsch
