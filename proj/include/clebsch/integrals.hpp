#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "clebsch/params.hpp"
#include "clebsch/vec3.hpp"

namespace clebsch {

// Phase-space point: impulsive couple K and impulse p.
struct BodyState {
    Vec3 K{0.0, 0.0, 0.0};
    Vec3 p{0.0, 0.0, 0.0};
};

struct IntegralValues {
    double c1, c2, c3, c4;
    std::optional<double> h, l;
};

// The four quadratic integrals; h and l are filled in when the physical pair
// (I, m) is derivable from the pencil weights.
IntegralValues compute_integrals(const BodyState& s, const SystemParams& params);

// Energy H = (1/2)(sum K_a^2/I_a + sum p_a^2/m_a) and the companion quadratic
// L = sum K_a^2/(m_a I_a) - sum p_a^2/(m_b m_c).
std::pair<double, double> compute_HL(const BodyState& s,
                                     const std::array<double, 3>& I,
                                     const std::array<double, 3>& m);

// Six partial derivatives of a scalar function of (K, p).
struct Gradient {
    Vec3 dK{0.0, 0.0, 0.0};
    Vec3 dp{0.0, 0.0, 0.0};
};

using GradientFn = std::function<Gradient(const BodyState&)>;
using ScalarFn = std::function<double(const BodyState&)>;

// Closed-form gradient providers for the built-in quadratics.
GradientFn grad_c1();
GradientFn grad_c2();
GradientFn grad_c3(const SystemParams& params);
GradientFn grad_c4(const SystemParams& params);
GradientFn grad_h(std::array<double, 3> I, std::array<double, 3> m);
GradientFn grad_l(std::array<double, 3> I, std::array<double, 3> m);
// Coordinate functions K1,K2,K3,p1,p2,p3 indexed 0..5.
GradientFn grad_coordinate(int index);

// Central finite differences, the fallback for user-supplied functions.
Gradient fd_gradient(const ScalarFn& f, const BodyState& s, double step = 1e-6);
GradientFn grad_fd(ScalarFn f, double step = 1e-6);

// {F,G} = <K, dF_K x dG_K> + <p, dF_K x dG_p - dG_K x dF_p>.
double lie_poisson_bracket(const GradientFn& grad_f, const GradientFn& grad_g,
                           const BodyState& s);

// Velocity of the Hamiltonian field for a given gradient:
// Kdot = K x dK + p x dp, pdot = p x dK.
BodyState hamiltonian_field(const BodyState& s, const Gradient& g);

// Field of the pencil Hamiltonian lambda*C3 + lambda'*C4 in closed form.
BodyState pencil_field(const BodyState& s, const SystemParams& params);

// The physical equations of motion, written out verbatim.
BodyState kirchhoff_rhs(const BodyState& s, const std::array<double, 3>& I,
                        const std::array<double, 3>& m);

// Weber leaf: C1 = 0, C2 = 1.
bool on_leaf(const BodyState& s, double tol = 1e-10);

// Normalize p to unit length and remove the component of K along p.
BodyState project_to_leaf(const BodyState& s);

}  // namespace clebsch
