#include "clebsch/kummer.hpp"

#include <cmath>
#include <sstream>

namespace clebsch {

namespace {

// dU_i/dX_k: U_i = lmn_i X4 + d_{i+1} X_{i+1} - d_{i+2} X_{i+2} (cyclic).
double u_coeff(const KummerSurface& s, int i, int k) {
    if (k == 3) return s.lmn[i];
    if (k == (i + 1) % 3) return s.d[k];
    if (k == (i + 2) % 3) return -s.d[k];
    return 0.0;
}

}  // namespace

std::array<double, 3> KummerSurface::U(const std::array<double, 4>& X) const {
    std::array<double, 3> out;
    for (int i = 0; i < 3; ++i) {
        int b = (i + 1) % 3, c = (i + 2) % 3;
        out[i] = lmn[i] * X[3] + d[b] * X[b] - d[c] * X[c];
    }
    return out;
}

KummerSurface surface_from_spectral(const SpectralData& spectral) {
    return KummerSurface{spectral.lmn, spectral.d};
}

double quartic_eval(const KummerSurface& surface, const std::array<double, 4>& X) {
    auto u = surface.U(X);
    double g0 = X[0] * u[0], g1 = X[1] * u[1], g2 = X[2] * u[2];
    return g0 * g0 + g1 * g1 + g2 * g2 -
           2.0 * (g0 * g1 + g1 * g2 + g2 * g0);
}

std::array<double, 4> quartic_gradient(const KummerSurface& surface,
                                       const std::array<double, 4>& X) {
    auto u = surface.U(X);
    double g[3] = {X[0] * u[0], X[1] * u[1], X[2] * u[2]};
    // dF/dg_i = 2 g_i - 2 (g_j + g_k)
    double fg[3];
    for (int i = 0; i < 3; ++i) {
        fg[i] = 2.0 * g[i] - 2.0 * (g[(i + 1) % 3] + g[(i + 2) % 3]);
    }
    std::array<double, 4> grad{0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            double dgi = X[i] * u_coeff(surface, i, k);
            if (k < 3 && i == k) dgi += u[i];
            acc += fg[i] * dgi;
        }
        grad[k] = acc;
    }
    return grad;
}

std::array<double, 4> normalize_projective(std::array<double, 4> X) {
    int last = -1;
    for (int i = 3; i >= 0; --i) {
        if (X[i] != 0.0) {
            last = i;
            break;
        }
    }
    if (last < 0) throw ConfigError("normalize_projective: zero vector");
    double s = X[last];
    for (auto& v : X) v /= s;
    return X;
}

const char* double_point_case_name(DoublePointCase c) {
    switch (c) {
        case DoublePointCase::Coordinate: return "coordinate";
        case DoublePointCase::Infinity: return "infinity";
        case DoublePointCase::AffineThree: return "affine-three";
        case DoublePointCase::QuadraticPair: return "quadratic-pair";
    }
    return "unknown";
}

DoublePointReport double_points(const KummerSurface& surface) {
    DoublePointReport rep;
    rep.discriminants = {0.0, 0.0, 0.0};
    auto push = [&rep](std::array<double, 4> X, DoublePointCase kind) {
        X = normalize_projective(X);
        for (const DoublePoint& q : rep.points) {
            double diff = 0.0;
            for (int i = 0; i < 4; ++i) diff = std::max(diff, std::fabs(X[i] - q.X[i]));
            if (diff <= 1e-9) return;  // duplicate representative
        }
        rep.points.push_back(DoublePoint{X, kind});
    };

    for (int i = 0; i < 4; ++i) {
        std::array<double, 4> X{0.0, 0.0, 0.0, 0.0};
        X[i] = 1.0;
        push(X, DoublePointCase::Coordinate);
    }

    const auto& d = surface.d;
    const auto& lmn = surface.lmn;
    push({1.0 / d[0], 1.0 / d[1], 1.0 / d[2], 0.0}, DoublePointCase::Infinity);

    push({lmn[1] / d[0], -lmn[0] / d[1], 0.0, 1.0}, DoublePointCase::AffineThree);
    push({0.0, lmn[2] / d[1], -lmn[1] / d[2], 1.0}, DoublePointCase::AffineThree);
    push({-lmn[2] / d[0], 0.0, lmn[0] / d[2], 1.0}, DoublePointCase::AffineThree);

    // One family per vanishing pair X_g = U_g = 0: the line it defines meets
    // the conic X_a U_a - X_b U_b = 0 in two points (real or conjugate).
    for (int g = 0; g < 3; ++g) {
        int a = (g + 1) % 3, b = (g + 2) % 3;
        // Line basis in homogeneous (X_a, X_b, X4): d_a X_a - d_b X_b + lmn_g X4 = 0.
        std::array<double, 4> v1{0.0, 0.0, 0.0, 0.0};
        v1[a] = d[b];
        v1[b] = d[a];
        std::array<double, 4> v2{0.0, 0.0, 0.0, 0.0};
        if (d[b] != 0.0 || lmn[g] != 0.0) {
            v2[b] = lmn[g];
            v2[3] = d[b];
        } else {
            v2[a] = lmn[g];
            v2[3] = -d[a];
        }
        auto conic = [&](double t) {
            std::array<double, 4> X;
            for (int i = 0; i < 4; ++i) X[i] = v1[i] + t * v2[i];
            auto u = surface.U(X);
            return X[a] * u[a] - X[b] * u[b];
        };
        double q0 = conic(0.0), qp = conic(1.0), qm = conic(-1.0);
        double ca = 0.5 * (qp + qm) - q0;
        double cb = 0.5 * (qp - qm);
        double cc = q0;
        double scale = std::max({std::fabs(ca), std::fabs(cb), std::fabs(cc), 1e-300});
        auto point_at = [&](double t) {
            std::array<double, 4> X;
            for (int i = 0; i < 4; ++i) X[i] = v1[i] + t * v2[i];
            return X;
        };
        if (std::fabs(ca) <= 1e-14 * scale) {
            if (std::fabs(cb) > 1e-14 * scale) {
                // Degenerate quadratic: one finite root plus the direction v2.
                push(point_at(-cc / cb), DoublePointCase::QuadraticPair);
                push(v2, DoublePointCase::QuadraticPair);
            }
            rep.discriminants[g] = cb * cb;
            continue;
        }
        double disc = cb * cb - 4.0 * ca * cc;
        rep.discriminants[g] = disc;
        if (disc >= 0.0) {
            double sq = std::sqrt(disc);
            push(point_at((-cb - sq) / (2.0 * ca)), DoublePointCase::QuadraticPair);
            push(point_at((-cb + sq) / (2.0 * ca)), DoublePointCase::QuadraticPair);
        } else {
            ++rep.complex_pair_count;
        }
    }
    return rep;
}

std::array<double, 4> state_to_kummer(const BodyState& s,
                                      const KummerSurface& surface,
                                      const SystemParams& params) {
    IntegralValues v = compute_integrals(s, params);
    auto rows = lmn_rows(params, surface.lmn);
    const double tol = 1e-6;
    auto fail = [](const std::string& name, double got, double want) {
        std::ostringstream msg;
        msg << "state_to_kummer: integral " << name << " mismatch (state gives "
            << got << ", surface requires " << want << ")";
        throw ConfigError(msg.str());
    };
    if (std::fabs(v.c1) > tol) fail("C1", v.c1, 0.0);
    if (std::fabs(v.c2 - 1.0) > tol) fail("C2", v.c2, 1.0);
    if (std::fabs(v.c3 - rows[1]) > tol * std::max(1.0, std::fabs(rows[1]))) {
        fail("C3", v.c3, rows[1]);
    }
    if (std::fabs(v.c4 - rows[2]) > tol * std::max(1.0, std::fabs(rows[2]))) {
        fail("C4", v.c4, rows[2]);
    }
    return {s.K[0] * s.K[0], s.K[1] * s.K[1], s.K[2] * s.K[2], 1.0};
}

}  // namespace clebsch
