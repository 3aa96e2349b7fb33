#include "clebsch/special.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clebsch/errors.hpp"

namespace clebsch {

Vec3 modified_field(const ModifiedBracketSystem& sys, const Vec3& x) {
    const Vec3& mu = sys.mu;
    const Vec3& f = sys.f;
    return Vec3{(mu[1] * f[2] - mu[2] * f[1]) * x[1] * x[2],
                (mu[2] * f[0] - mu[0] * f[2]) * x[2] * x[0],
                (mu[0] * f[1] - mu[1] * f[0]) * x[0] * x[1]};
}

double mu_quadratic(const ModifiedBracketSystem& sys, const Vec3& x) {
    return 0.5 * (sys.mu[0] * x[0] * x[0] + sys.mu[1] * x[1] * x[1] +
                  sys.mu[2] * x[2] * x[2]);
}

double f_quadratic(const ModifiedBracketSystem& sys, const Vec3& x) {
    return 0.5 * (sys.f[0] * x[0] * x[0] + sys.f[1] * x[1] * x[1] +
                  sys.f[2] * x[2] * x[2]);
}

ModifiedBracketSystem axis_modified_system(int axis,
                                           const PhysicalParams& phys) {
    if (axis < 1 || axis > 3) {
        throw ConfigError("axis_modified_system: axis must be 1, 2 or 3");
    }
    int a = axis - 1, b = (a + 1) % 3, c = (a + 2) % 3;
    return ModifiedBracketSystem{Vec3{1.0 / phys.I[a], 1.0 / phys.m[b],
                                      1.0 / phys.m[c]},
                                 Vec3{0.0, -1.0, -1.0}};
}

ModifiedBracketSystem delta_modified_system(const Vec3& delta,
                                            const PhysicalParams& phys) {
    for (double d : delta) {
        if (d == 0.0) {
            throw ConfigError(
                "delta_modified_system: delta components must be nonzero");
        }
    }
    ModifiedBracketSystem sys;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        sys.mu[a] = delta[a] / (delta[b] * delta[c]);
        sys.f[a] = delta[a] / phys.I[a];
    }
    return sys;
}

ReducedTrajectory integrate_modified(const ModifiedBracketSystem& sys,
                                     const Vec3& x0, double t_final, double h) {
    if (!(h > 0) || !std::isfinite(h) || !(t_final > 0) ||
        !std::isfinite(t_final)) {
        throw ConfigError("integrate_modified: need positive finite h and horizon");
    }
    auto field = [&sys](const Vec3& x) { return modified_field(sys, x); };
    long long n = std::llround(t_final / h);
    if (n < 1) n = 1;
    ReducedTrajectory traj;
    traj.t.reserve(static_cast<std::size_t>(n) + 1);
    traj.x.reserve(static_cast<std::size_t>(n) + 1);
    Vec3 x = x0;
    traj.t.push_back(0.0);
    traj.x.push_back(x);
    for (long long i = 1; i <= n; ++i) {
        Vec3 k1 = field(x);
        Vec3 k2 = field(axpy(x, 0.5 * h, k1));
        Vec3 k3 = field(axpy(x, 0.5 * h, k2));
        Vec3 k4 = field(axpy(x, h, k3));
        for (int c = 0; c < 3; ++c) {
            x[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        if (!finite(x) || max_abs(x) > 1e12) {
            std::ostringstream msg;
            msg << "integrate_modified: state escaped at t = "
                << static_cast<double>(i - 1) * h;
            throw BlowUpError(msg.str());
        }
        traj.t.push_back(static_cast<double>(i) * h);
        traj.x.push_back(x);
    }
    return traj;
}

double axis_condition_residual(const SystemParams& params, double c3,
                               double c4, int axis) {
    if (axis < 1 || axis > 3) {
        throw ConfigError("axis_condition_residual: axis must be 1, 2 or 3");
    }
    double ja = params.j[axis - 1];
    double res = ja * ja - c3 * ja + c4;
    double scale = std::max({1.0, ja * ja, std::fabs(c3 * ja), std::fabs(c4)});
    return std::fabs(res) / scale;
}

bool axis_subspace_check(const SystemParams& params, double c3, double c4,
                         int axis, double tol) {
    return axis_condition_residual(params, c3, c4, axis) <= tol;
}

DeltaFamily delta_family_from_sigma(const SystemParams& params,
                                    double sigma_prime) {
    if (!std::isfinite(sigma_prime)) {
        throw ConfigError("delta_family_from_sigma: sigma_prime must be finite");
    }
    double product = (params.j[0] - sigma_prime) * (params.j[1] - sigma_prime) *
                     (params.j[2] - sigma_prime);
    if (!(product > 0)) {
        std::ostringstream msg;
        msg << "delta_family_from_sigma: (j1-s')(j2-s')(j3-s') = " << product
            << " at sigma_prime = " << sigma_prime
            << " is not positive; no real family";
        throw RefusalError(msg.str());
    }
    DeltaFamily fam;
    fam.sigma = std::sqrt(product);
    fam.sigma_prime = sigma_prime;
    for (int a = 0; a < 3; ++a) {
        fam.delta[a] = (params.j[a] - sigma_prime) / fam.sigma;
    }
    return fam;
}

BodyState sample_axis_state(const SystemParams& params, int axis,
                            SplitMix64& rng, double k_radius) {
    (void)params;
    if (axis < 1 || axis > 3) {
        throw ConfigError("sample_axis_state: axis must be 1, 2 or 3");
    }
    if (!(k_radius > 0) || !std::isfinite(k_radius)) {
        throw ConfigError("sample_axis_state: k_radius must be positive");
    }
    int a = axis - 1, b = (a + 1) % 3, c = (a + 2) % 3;
    double phi = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    BodyState s{Vec3{0, 0, 0}, Vec3{0, 0, 0}};
    s.p[b] = std::cos(phi);
    s.p[c] = std::sin(phi);
    s.K[a] = rng.uniform(-k_radius, k_radius);
    return s;
}

BodyState sample_delta_state(const SystemParams& params,
                             const DeltaFamily& family, SplitMix64& rng) {
    (void)params;
    const Vec3& d = family.delta;
    Vec3 d2{d[0] * d[0], d[1] * d[1], d[2] * d[2]};
    // q = (K1^2, K2^2, K3^2) must satisfy d . q = 0 (C1) and d2 . q = 1 (C2)
    // with q >= 0. Particular solution via the 2x2 Gram system, then move
    // along the null direction d x d2 to land in the feasible interval.
    double g11 = dot(d, d), g12 = dot(d, d2), g22 = dot(d2, d2);
    double det = g11 * g22 - g12 * g12;
    if (std::fabs(det) < 1e-14 * std::max(1.0, g11 * g22)) {
        throw RefusalError(
            "sample_delta_state: constraint rows are collinear; the family is "
            "degenerate");
    }
    // Solve (g11 g12; g12 g22) (u, v) = (0, 1), q0 = u d + v d2.
    double u = -g12 / det;
    double v = g11 / det;
    Vec3 q0 = axpy(scale(d, u), v, d2);
    Vec3 n = cross(d, d2);
    double tmin = -10.0, tmax = 10.0;
    for (int i = 0; i < 3; ++i) {
        if (std::fabs(n[i]) < 1e-15) {
            if (q0[i] < 0) {
                throw RefusalError(
                    "sample_delta_state: no nonnegative K^2 solves the "
                    "constraints; the family has no real states");
            }
            continue;
        }
        double bound = -q0[i] / n[i];
        if (n[i] > 0) {
            tmin = std::max(tmin, bound);
        } else {
            tmax = std::min(tmax, bound);
        }
    }
    if (!(tmin < tmax)) {
        throw RefusalError(
            "sample_delta_state: no nonnegative K^2 solves the constraints; "
            "the family has no real states");
    }
    double margin = 0.05 * (tmax - tmin);
    double t = rng.uniform(tmin + margin, tmax - margin);
    Vec3 q = axpy(q0, t, n);
    BodyState s{Vec3{0, 0, 0}, Vec3{0, 0, 0}};
    for (int i = 0; i < 3; ++i) {
        double qi = std::max(q[i], 0.0);
        double sign = (rng.uniform01() < 0.5) ? -1.0 : 1.0;
        s.K[i] = sign * std::sqrt(qi);
        s.p[i] = d[i] * s.K[i];
    }
    return s;
}

double subspace_invariance_test(const BodyState& initial,
                                const SystemParams& params,
                                const FieldFn& field, const SubspaceSpec& sub,
                                double horizon, double h) {
    Trajectory traj = integrate_field(initial, params, field, horizon, h);
    double dev = 0.0;
    if (std::holds_alternative<AxisSubspace>(sub)) {
        int axis = std::get<AxisSubspace>(sub).axis;
        if (axis < 1 || axis > 3) {
            throw ConfigError("subspace_invariance_test: axis must be 1, 2 or 3");
        }
        int a = axis - 1, b = (a + 1) % 3, c = (a + 2) % 3;
        for (const BodyState& s : traj.states) {
            dev = std::max({dev, std::fabs(s.p[a]), std::fabs(s.K[b]),
                            std::fabs(s.K[c])});
        }
    } else {
        const Vec3& d = std::get<DeltaSubspace>(sub).family.delta;
        for (const BodyState& s : traj.states) {
            for (int i = 0; i < 3; ++i) {
                dev = std::max(dev, std::fabs(s.p[i] - d[i] * s.K[i]));
            }
        }
    }
    return dev;
}

}  // namespace clebsch
