// Acceptance gate: eight end-to-end checks with pinned tolerances, one
// [PASS]/[FAIL] line each with the measured numbers. Exit status is the
// number of failed checks. The standard configuration throughout is
// j = (1, 2, 3), lambda = lambda' = 1, the seed-42 leaf state, and the
// horizon T = 10 at step h = 1e-3.
#include <chrono>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "clebsch/actions.hpp"
#include "clebsch/dynamics.hpp"
#include "clebsch/errors.hpp"
#include "clebsch/integrals.hpp"
#include "clebsch/kummer.hpp"
#include "clebsch/kummer_exact.hpp"
#include "clebsch/linearize.hpp"
#include "clebsch/params.hpp"
#include "clebsch/rng.hpp"
#include "clebsch/special.hpp"
#include "clebsch/vec3.hpp"

namespace {

using namespace clebsch;
using Clock = std::chrono::steady_clock;

std::string g3(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

SystemParams standard_params() { return SystemParams(1.0, 2.0, 3.0, 1.0, 1.0); }

BodyState standard_state() {
    SplitMix64 rng(42);
    return sample_leaf_state(rng);
}

struct Gate {
    int failures = 0;

    void report(int id, bool ok, const std::string& text) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << " " << text << "\n";
        if (!ok) ++failures;
    }

    void run(int id, const std::function<void(Gate&)>& fn) {
        try {
            fn(*this);
        } catch (const std::exception& e) {
            report(id, false, std::string("aborted by exception: ") + e.what());
        }
    }
};

// 1. All pairs of the six quadratics Poisson-commute: the bracket normalized
// by the product of gradient norms stays below 1e-12 at 1000 leaf states.
void criterion_commutation(Gate& gate) {
    auto t0 = Clock::now();
    SystemParams params = standard_params();
    PhysicalParams phys = derive_physical(params);
    struct Named {
        const char* name;
        GradientFn g;
    };
    std::vector<Named> grads = {{"C1", grad_c1()},
                                {"C2", grad_c2()},
                                {"C3", grad_c3(params)},
                                {"C4", grad_c4(params)},
                                {"H", grad_h(phys.I, phys.m)},
                                {"L", grad_l(phys.I, phys.m)}};
    auto grad_norm = [](const Gradient& g) {
        return std::sqrt(norm2(g.dK) + norm2(g.dp));
    };
    SplitMix64 rng(42);
    double worst = 0.0;
    std::string worst_pair = "none";
    int npairs = 0;
    for (int i = 0; i < 1000; ++i) {
        BodyState s = sample_leaf_state(rng);
        npairs = 0;
        for (std::size_t a = 0; a < grads.size(); ++a) {
            for (std::size_t b = a + 1; b < grads.size(); ++b) {
                ++npairs;
                double br = lie_poisson_bracket(grads[a].g, grads[b].g, s);
                double na = grad_norm(grads[a].g(s));
                double nb = grad_norm(grads[b].g(s));
                double ratio = std::fabs(br) / std::max(na * nb, 1e-300);
                if (ratio > worst) {
                    worst = ratio;
                    worst_pair = std::string(grads[a].name) + "," + grads[b].name;
                }
            }
        }
    }
    double dt = seconds_since(t0);
    bool ok = worst <= 1e-12 && dt < 5.0;
    gate.report(1, ok,
                "commutation: max |{Ci,Cj}| / |grad Ci||grad Cj| = " + g3(worst) +
                    " (bound 1e-12, worst pair " + worst_pair + ") over " +
                    std::to_string(npairs) + " pairs x 1000 leaf states, " +
                    g3(dt) + "s (cap 5s)");
}

// 2. The pencil field equals the Kirchhoff right-hand side under
// I_a = 1/(2 n_a), m_a = 1/(2 n'_a), to 1e-12 relative at 1000 leaf states.
void criterion_field_equivalence(Gate& gate) {
    auto t0 = Clock::now();
    SystemParams params = standard_params();
    PhysicalParams phys = derive_physical(params);
    SplitMix64 rng(42);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        BodyState s = sample_leaf_state(rng);
        BodyState fp = pencil_field(s, params);
        BodyState fk = kirchhoff_rhs(s, phys.I, phys.m);
        double scale = std::max({1.0, max_abs(fk.K), max_abs(fk.p)});
        double dev =
            std::max(max_abs(sub(fp.K, fk.K)), max_abs(sub(fp.p, fk.p))) / scale;
        worst = std::max(worst, dev);
    }
    double dt = seconds_since(t0);
    bool ok = worst <= 1e-12 && dt < 5.0;
    gate.report(2, ok,
                "field equivalence: max relative deviation pencil vs Kirchhoff = " +
                    g3(worst) + " (bound 1e-12) at 1000 leaf states, " + g3(dt) +
                    "s (cap 5s)");
}

// 3. The standard run keeps the relative drift of C1..C4, H, L below 1e-8 and
// halving the step shows 4th-order drift reduction.
void criterion_conservation(Gate& gate) {
    auto t0 = Clock::now();
    SystemParams params = standard_params();
    BodyState s0 = standard_state();
    Trajectory traj = integrate(s0, params, 10.0, 1e-3);
    DriftReport dr = drift_report(traj);
    double maxd = dr.max_drift();
    double order = convergence_order(s0, params, 10.0, 1e-3);
    double dt = seconds_since(t0);
    bool ok = maxd <= 1e-8 && order >= 3.2 && order <= 4.8 && dt < 30.0;
    gate.report(3, ok,
                "conservation: max relative drift of C1..C4,H,L = " + g3(maxd) +
                    " (bound 1e-8) over T=10 h=1e-3, step-halving order " +
                    g3(order) + " (window [3.2,4.8]), " + g3(dt) + "s (cap 30s)");
}

// 4. Separation round trip (K,p) -> (x1,x2,signs,A,B) -> (K,p) to 1e-10
// componentwise at 1000 leaf states, with interlacing j1<=x1<=j2<=x2<=j3
// holding at every one of them.
void criterion_round_trip(Gate& gate) {
    SystemParams params = standard_params();
    const auto& j = params.j;
    SplitMix64 rng(42);
    double worst = 0.0;
    int interlacing_ok = 0, refusals = 0;
    for (int i = 0; i < 1000; ++i) {
        BodyState s = sample_leaf_state(rng);
        try {
            Separation sep = decompose_state(s, params);
            if (j[0] <= sep.pt.x1 && sep.pt.x1 <= j[1] && j[1] <= sep.pt.x2 &&
                sep.pt.x2 <= j[2]) {
                ++interlacing_ok;
            }
            BodyState rec = reconstruct_state(sep, params);
            double err = std::max(max_abs(sub(rec.K, s.K)), max_abs(sub(rec.p, s.p)));
            worst = std::max(worst, err);
        } catch (const RefusalError&) {
            ++refusals;
        }
    }
    bool ok = worst <= 1e-10 && interlacing_ok == 1000 && refusals == 0;
    gate.report(4, ok,
                "separation round trip: worst componentwise error = " + g3(worst) +
                    " (bound 1e-10), interlacing j1<=x1<=j2<=x2<=j3 at " +
                    std::to_string(interlacing_ok) + "/1000 leaf states, " +
                    std::to_string(refusals) + " refusals");
}

// 5. Both linearization residuals stay below 1e-5 along the standard
// trajectory with centered differences, and quarter when the step halves.
// The residual maxima are dominated by finite-difference truncation next to
// the turning points of (x1, x2), where the third derivative of the
// coordinate blows up; the bound is not reached there, and this check
// reports the honest measurement rather than excluding those windows.
void criterion_linearization(Gate& gate) {
    SystemParams params = standard_params();
    BodyState s0 = standard_state();
    ResidualReport coarse = linearization_residual(integrate(s0, params, 10.0, 1e-3));
    ResidualReport fine = linearization_residual(integrate(s0, params, 10.0, 5e-4));
    double q1 = coarse.max_r1 / std::max(fine.max_r1, 1e-300);
    double q2 = coarse.max_r2 / std::max(fine.max_r2, 1e-300);
    double l1 = std::log2(q1), l2 = std::log2(q2);
    // Diagnostic: pointwise ratio at matched times (coarse step i sits at
    // t = (i+1)h, fine step 2i+1 at the same t). The median sees the
    // estimator's truncation order; the max ratio is dominated by whichever
    // evaluated step lands closest to a fold, which halves with h.
    auto matched_median = [](const std::vector<double>& c,
                             const std::vector<double>& f) {
        std::vector<double> ratios;
        for (std::size_t i = 0; i < c.size() && 2 * i + 1 < f.size(); ++i) {
            double a = std::fabs(c[i]), b = std::fabs(f[2 * i + 1]);
            if (std::isfinite(a) && std::isfinite(b) && b > 0.0) {
                ratios.push_back(a / b);
            }
        }
        if (ratios.empty()) return 0.0;
        std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2,
                         ratios.end());
        return ratios[ratios.size() / 2];
    };
    double m1 = matched_median(coarse.r1, fine.r1);
    double m2 = matched_median(coarse.r2, fine.r2);
    bool magnitude = coarse.max_r1 <= 1e-5 && coarse.max_r2 <= 1e-5;
    bool quartering = l1 >= 1.6 && l1 <= 2.4 && l2 >= 1.6 && l2 <= 2.4;
    bool ok = magnitude && quartering;
    gate.report(5, ok,
                "linearization residuals: max_r1 = " + g3(coarse.max_r1) +
                    ", max_r2 = " + g3(coarse.max_r2) +
                    " (bound 1e-5, centered differences, " +
                    std::to_string(coarse.evaluated) + " steps evaluated, " +
                    std::to_string(coarse.excluded) +
                    " excluded at folds); h->h/2 max ratios " + g3(q1) + ", " +
                    g3(q2) + " (quartering window log2 in [1.6,2.4]), "
                    "matched-time median ratios " +
                    g3(m1) + ", " + g3(m2));
}

// 6. Exact certification of all 14 double points of a generic rational
// surface, plus the cover-map images of the standard run staying on the
// quartic to 1e-9.
void criterion_kummer(Gate& gate) {
    using exact::Rat;
    exact::ExactSurface es = exact::exact_surface({Rat(1), Rat(2), Rat(3)},
                                                  Rat(10, 3), Rat(3));
    exact::Certification cert = exact::certify_double_points(es);
    bool exact_ok = cert.points.size() == 14 && cert.all_certified;

    SystemParams params = standard_params();
    BodyState s0 = standard_state();
    IntegralValues iv = compute_integrals(s0, params);
    SpectralData sp = spectral_from_c(params, iv.c3, iv.c4);
    KummerSurface surf = surface_from_spectral(sp);
    Trajectory traj = integrate(s0, params, 10.0, 1e-3);
    double worstq = 0.0;
    for (const BodyState& s : traj.states) {
        std::array<double, 4> X = state_to_kummer(s, surf, params);
        worstq = std::max(worstq, std::fabs(quartic_eval(surf, X)));
    }
    bool ok = exact_ok && worstq <= 1e-9;
    gate.report(6, ok,
                "Kummer certification: " + std::to_string(cert.points.size()) +
                    "/14 double points exact (quartic and gradient zero in "
                    "rational arithmetic, " +
                    std::to_string(cert.complex_points) +
                    " in a complex extension); cover-map quartic residual along "
                    "the standard run = " +
                    g3(worstq) + " (bound 1e-9)");
}

// 7. Closed-form actions a1 = -4, a2 = 4(sqrt(2)-1) at c = (5, 6), and the
// derivative identity against the period matrix at 10 generic c samples.
void criterion_actions(Gate& gate) {
    auto t0 = Clock::now();
    SystemParams params = standard_params();
    HyperellipticCurve curve = curve_from_c(params, 5.0, 6.0);
    ActionValues av = actions(curve);
    double e1 = std::fabs(av.a1.value.real() - (-4.0));
    double e2 = std::fabs(av.a2.value.real() - 4.0 * (std::sqrt(2.0) - 1.0));
    bool closed_ok = av.a1.real && av.a2.real && e1 <= 1e-8 && e2 <= 1e-8;

    SplitMix64 rng(42);
    int done = 0, attempts = 0;
    double worstd = 0.0;
    while (done < 10 && attempts < 60) {
        ++attempts;
        BodyState s = sample_leaf_state(rng);
        IntegralValues iv = compute_integrals(s, params);
        try {
            double d = verify_action_derivatives(params, iv.c3, iv.c4);
            worstd = std::max(worstd, d);
            ++done;
        } catch (const RefusalError&) {
            // degenerate or divergent sample; draw another
        }
    }
    double dt = seconds_since(t0);
    bool ok = closed_ok && done == 10 && worstd <= 1e-5 && dt < 60.0;
    gate.report(7, ok,
                "actions: |a1+4| = " + g3(e1) + ", |a2-4(sqrt2-1)| = " + g3(e2) +
                    " (bound 1e-8) at c=(5,6); derivative identity vs period "
                    "matrix = " +
                    g3(worstd) + " (bound 1e-5) at " + std::to_string(done) +
                    "/10 generic c samples (" + std::to_string(attempts) +
                    " draws), " + g3(dt) + "s (cap 60s)");
}

// 8. Special families: the axis condition residual, the delta-family
// integral collapse C3 = 2 sigma', C4 = sigma'^2 (so C3^2 - 4 C4 = 0), and
// subspace invariance of both families over T = 10.
void criterion_special(Gate& gate) {
    SystemParams params = standard_params();
    FieldFn field = [&](const BodyState& s) { return pencil_field(s, params); };
    SplitMix64 rng(42);

    double worst_cond = 0.0, worst_inv = 0.0;
    for (int axis = 1; axis <= 3; ++axis) {
        BodyState s = sample_axis_state(params, axis, rng);
        IntegralValues iv = compute_integrals(s, params);
        worst_cond = std::max(
            worst_cond, axis_condition_residual(params, iv.c3, iv.c4, axis));
        worst_inv = std::max(
            worst_inv,
            subspace_invariance_test(s, params, field, AxisSubspace{axis}, 10.0, 1e-3));
    }

    const double sigma_prime = 2.5;
    DeltaFamily fam = delta_family_from_sigma(params, sigma_prime);
    BodyState sd = sample_delta_state(params, fam, rng);
    IntegralValues ivd = compute_integrals(sd, params);
    double d3 = std::fabs(ivd.c3 - 2.0 * sigma_prime);
    double d4 = std::fabs(ivd.c4 - sigma_prime * sigma_prime);
    double disc = std::fabs(ivd.c3 * ivd.c3 - 4.0 * ivd.c4);
    double delta_worst = std::max({d3, d4, disc});
    double delta_inv =
        subspace_invariance_test(sd, params, field, DeltaSubspace{fam}, 10.0, 1e-3);
    worst_inv = std::max(worst_inv, delta_inv);

    bool ok = worst_cond <= 1e-12 && delta_worst <= 1e-10 && worst_inv <= 1e-8;
    gate.report(8, ok,
                "special families: axis condition residual = " + g3(worst_cond) +
                    " (bound 1e-12, axes 1..3); delta collapse |C3-2s'|, "
                    "|C4-s'^2|, |C3^2-4C4| max = " +
                    g3(delta_worst) + " (bound 1e-10, s'=2.5); subspace "
                    "invariance deviation = " +
                    g3(worst_inv) + " (bound 1e-8, T=10)");
}

}  // namespace

int main() {
    Gate gate;
    gate.run(1, criterion_commutation);
    gate.run(2, criterion_field_equivalence);
    gate.run(3, criterion_conservation);
    gate.run(4, criterion_round_trip);
    gate.run(5, criterion_linearization);
    gate.run(6, criterion_kummer);
    gate.run(7, criterion_actions);
    gate.run(8, criterion_special);
    std::cout << "acceptance: " << (8 - gate.failures) << "/8 criteria passed\n";
    return gate.failures;
}
