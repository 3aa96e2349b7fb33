#include "clebsch/params.hpp"

#include <cmath>
#include <string>

namespace clebsch {

SystemParams::SystemParams(double j1, double j2, double j3, double lambda_,
                           double lambda_prime_)
    : j{j1, j2, j3}, lambda(lambda_), lambda_prime(lambda_prime_) {
    if (!std::isfinite(j1) || !std::isfinite(j2) || !std::isfinite(j3) ||
        !std::isfinite(lambda_) || !std::isfinite(lambda_prime_)) {
        throw ConfigError("SystemParams: all entries must be finite");
    }
    if (!(j1 < j2 && j2 < j3)) {
        throw ConfigError("SystemParams: moduli must satisfy j1 < j2 < j3");
    }
}

PhysicalParams derive_physical(const SystemParams& params) {
    PhysicalParams out;
    for (int a = 0; a < 3; ++a) {
        double na = params.n(a);
        double npa = params.nprime(a);
        if (na == 0.0) {
            throw DegenerateError("derive_physical: n_" + std::to_string(a + 1) +
                                  " = 0, degenerate pencil member");
        }
        if (npa == 0.0) {
            throw DegenerateError("derive_physical: n'_" + std::to_string(a + 1) +
                                  " = 0, degenerate pencil member");
        }
        out.I[a] = 1.0 / (2.0 * na);
        out.m[a] = 1.0 / (2.0 * npa);
    }
    return out;
}

bool check_clebsch(const std::array<double, 3>& I,
                   const std::array<double, 3>& m, double tol_rel) {
    double t1 = (I[1] - I[2]) / m[0];
    double t2 = (I[2] - I[0]) / m[1];
    double t3 = (I[0] - I[1]) / m[2];
    double scale = std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3), 1.0});
    return std::fabs(t1 + t2 + t3) <= tol_rel * scale;
}

QuadraticRoots roots_j45(double c3, double c4) {
    QuadraticRoots r;
    double disc = c3 * c3 - 4.0 * c4;
    if (disc >= 0.0) {
        double sq = std::sqrt(disc);
        r.real_pair = true;
        r.j4 = 0.5 * (c3 - sq);
        r.j5 = 0.5 * (c3 + sq);
        r.im = 0.0;
    } else {
        r.real_pair = false;
        r.j4 = r.j5 = 0.5 * c3;
        r.im = 0.5 * std::sqrt(-disc);
    }
    return r;
}

std::array<double, 3> d_params(const SystemParams& params) {
    const auto& j = params.j;
    return {1.0 / (j[2] - j[1]), 1.0 / (j[0] - j[2]), 1.0 / (j[1] - j[0])};
}

std::array<double, 3> compute_lmn(const SystemParams& params, double c3,
                                  double c4) {
    const auto& j = params.j;
    std::array<double, 3> out;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        double den = (j[a] - j[b]) * (j[a] - j[c]);
        out[a] = (j[a] * j[a] - c3 * j[a] + c4) / den;
    }
    return out;
}

std::array<double, 3> lmn_rows(const SystemParams& params,
                               const std::array<double, 3>& lmn) {
    const auto& j = params.j;
    double r0 = 0.0, r1 = 0.0, r2 = 0.0;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        r0 += lmn[a];
        r1 += (j[b] + j[c]) * lmn[a];
        r2 += j[b] * j[c] * lmn[a];
    }
    return {r0, r1, r2};
}

SpectralData spectral_from_c(const SystemParams& params, double c3, double c4) {
    SpectralData s;
    s.c3 = c3;
    s.c4 = c4;
    s.lmn = compute_lmn(params, c3, c4);
    s.j45 = roots_j45(c3, c4);
    s.d = d_params(params);
    return s;
}

}  // namespace clebsch
