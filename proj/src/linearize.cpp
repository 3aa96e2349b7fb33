#include "clebsch/linearize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace clebsch {

namespace {

// Double-double helpers. The separation roots sit arbitrarily close to the
// moduli, and every reconstruction divides by (x_i - j_a), so a few ulps of
// root error become the dominant term of the round-trip error budget. A
// compensated solve keeps the returned roots correctly rounded.
struct Dd {
    double hi, lo;
};

Dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

Dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

Dd dd_add(Dd a, Dd b) {
    Dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    Dd r = two_sum(s.hi, s.lo);
    return r;
}

Dd dd_mul(Dd a, Dd b) {
    Dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    Dd r = two_sum(p.hi, p.lo);
    return r;
}

Dd dd_scale(Dd a, double s) {
    Dd p = two_prod(a.hi, s);
    p.lo += a.lo * s;
    Dd r = two_sum(p.hi, p.lo);
    return r;
}

// Roots of x^2 - E x + F for the p-quadratic; the discriminant is
// nonnegative for real unit p, so small negative values are rounding.
std::pair<double, double> roots_from_p(const Vec3& p, const SystemParams& params) {
    const auto& j = params.j;
    const double S = params.jsum();
    Dd E{0.0, 0.0}, F{0.0, 0.0};
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        Dd p2 = two_prod(p[a], p[a]);
        E = dd_add(E, dd_scale(p2, S - j[a]));
        F = dd_add(F, dd_mul(two_prod(j[b], j[c]), p2));
    }
    Dd disc = dd_add(dd_mul(E, E), dd_scale(F, -4.0));
    double scale = std::max({1.0, E.hi * E.hi, 4.0 * std::fabs(F.hi)});
    if (disc.hi < 0.0) {
        if (disc.hi < -1e-12 * scale) {
            throw RefusalError("supplementary_coords: negative discriminant for the p-quadratic");
        }
        disc = {0.0, 0.0};
    }
    // sqrt of the compensated discriminant, one Newton refinement.
    double s0 = std::sqrt(disc.hi);
    Dd sq{s0, 0.0};
    if (s0 > 0.0) {
        Dd resid = dd_add(disc, dd_scale(two_prod(s0, s0), -1.0));
        sq = two_sum(s0, (resid.hi + resid.lo) / (2.0 * s0));
    }
    Dd lo = dd_add(E, dd_scale(sq, -1.0));
    Dd hi = dd_add(E, sq);
    return {0.5 * (lo.hi + lo.lo), 0.5 * (hi.hi + hi.lo)};
}

}  // namespace

SeparationPoint supplementary_coords(const Vec3& p, const SystemParams& params) {
    if (std::fabs(dot(p, p) - 1.0) > 1e-8) {
        throw ConfigError("supplementary_coords: p must have unit length");
    }
    auto [x1, x2] = roots_from_p(p, params);
    SeparationPoint sp;
    sp.x1 = x1;
    sp.x2 = x2;
    return sp;
}

std::array<double, 3> p_squared_from_coords(double x1, double x2,
                                            const SystemParams& params) {
    const auto& j = params.j;
    std::array<double, 3> out;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        out[a] = (j[a] - x1) * (j[a] - x2) / ((j[a] - j[b]) * (j[a] - j[c]));
    }
    return out;
}

std::complex<double> HyperellipticCurve::R(double x) const {
    return std::sqrt(std::complex<double>(Phi(x) * Psi(x), 0.0));
}

double HyperellipticCurve::monic_quintic(double x) const {
    return -Phi(x) * Psi(x);
}

double HyperellipticCurve::Phi(double x) const {
    return (j[0] - x) * (j[1] - x) * (j[2] - x);
}

double HyperellipticCurve::Psi(double x) const {
    return x * x - c3 * x + c4;
}

std::array<double, 5> HyperellipticCurve::sorted_branch_points() const {
    if (!j45.real_pair) {
        throw DegenerateError("curve: branch points j4, j5 form a conjugate pair");
    }
    std::array<double, 5> b{j[0], j[1], j[2], j45.j4, j45.j5};
    std::sort(b.begin(), b.end());
    return b;
}

HyperellipticCurve curve_from_c(const SystemParams& params, double c3, double c4) {
    HyperellipticCurve curve{params.j, roots_j45(c3, c4), c3, c4, false, 0.0};
    std::vector<double> pts{params.j[0], params.j[1], params.j[2]};
    if (curve.j45.real_pair) {
        pts.push_back(curve.j45.j4);
        pts.push_back(curve.j45.j5);
    }
    double scale = 1.0;
    for (double v : pts) scale = std::max(scale, std::fabs(v));
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t k = i + 1; k < pts.size(); ++k) {
            gap = std::min(gap, std::fabs(pts[i] - pts[k]));
        }
    }
    curve.min_gap = gap;
    curve.degenerate = gap <= 1e-10 * scale;
    return curve;
}

std::pair<double, double> ab_squared(double x1, double x2,
                                     const SpectralData& spectral,
                                     const SystemParams& params) {
    if (x1 == x2) {
        throw DegenerateError("ab_squared: x1 = x2 lies on the discriminant locus");
    }
    auto phi = [&params](double x) {
        return (params.j[0] - x) * (params.j[1] - x) * (params.j[2] - x);
    };
    auto psi = [&spectral](double x) { return x * x - spectral.c3 * x + spectral.c4; };
    double den = (x2 - x1) * (x2 - x1);
    return {phi(x2) * psi(x1) / den, phi(x1) * psi(x2) / den};
}

Vec3 reconstruct_K(double x1, double x2, double A, double B,
                   const SystemParams& params) {
    const auto& j = params.j;
    Vec3 K;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        // One principal root of the full radicand; splitting it into a product
        // of roots would flip the sheet of the component lying above both
        // coordinates, breaking the inverse of decompose_state.
        double ratio = (x1 - j[a]) * (x2 - j[a]) /
                       ((j[a] - j[b]) * (j[a] - j[c]));
        std::complex<double> r = std::sqrt(std::complex<double>(ratio, 0.0));
        double coef = A / (x2 - j[a]) + B / (x1 - j[a]);
        std::complex<double> val = coef * r;
        if (std::fabs(val.imag()) > 1e-8 * std::max(1.0, std::fabs(val.real()))) {
            std::ostringstream msg;
            msg << "reconstruct_K: radical for component " << (a + 1)
                << " is non-real (imaginary part " << val.imag() << ")";
            throw BranchError(msg.str());
        }
        K[a] = val.real();
    }
    return K;
}

Separation decompose_state(const BodyState& s, const SystemParams& params) {
    double c1 = dot(s.K, s.p);
    double c2 = dot(s.p, s.p);
    if (std::fabs(c1) > 1e-8 || std::fabs(c2 - 1.0) > 1e-8) {
        throw ConfigError("decompose_state: state must satisfy C1 = 0, C2 = 1");
    }
    SeparationPoint pt = supplementary_coords(s.p, params);
    const auto& j = params.j;
    double xmag = std::max({1.0, std::fabs(pt.x1), std::fabs(pt.x2)});
    for (int a = 0; a < 3; ++a) {
        if (std::fabs(pt.x1 - j[a]) <= 1e-10 * xmag ||
            std::fabs(pt.x2 - j[a]) <= 1e-10 * xmag) {
            throw DegenerateError(
                "decompose_state: separation point collides with a modulus");
        }
    }
    for (int a = 0; a < 3; ++a) pt.signs[a] = s.p[a] < 0.0 ? -1 : 1;

    // K = Ae*e1 + Be*e2 with e_i = (p_a / (x_i - j_a)), solved by least
    // squares: the state sits on the leaf only to rounding, so the three rows
    // are consistent only approximately. The basis is built from the momenta
    // recomputed out of the stored coordinates, not the input p: that is the
    // basis reconstruct_state will use, so the coefficients absorb the
    // rounding of x1, x2 (which 1/(x_i - j_a) amplifies near a modulus).
    auto p2hat = p_squared_from_coords(pt.x1, pt.x2, params);
    Vec3 e1, e2;
    for (int a = 0; a < 3; ++a) {
        double ph = pt.signs[a] * std::sqrt(std::max(0.0, p2hat[a]));
        e1[a] = ph / (pt.x1 - j[a]);
        e2[a] = ph / (pt.x2 - j[a]);
    }
    double n1 = norm(e1);
    if (n1 == 0.0) {
        throw DegenerateError("decompose_state: radical basis is singular at this state");
    }
    Vec3 q1 = scale(e1, 1.0 / n1);
    double r12 = dot(q1, e2);
    Vec3 v = sub(e2, scale(q1, r12));
    double r22 = norm(v);
    if (r22 <= 1e-12 * std::max(1.0, norm(e2))) {
        throw DegenerateError("decompose_state: radical basis is singular at this state");
    }
    Vec3 q2 = scale(v, 1.0 / r22);
    double Be = dot(q2, s.K) / r22;
    double Ae = (dot(q1, s.K) - r12 * Be) / n1;
    Vec3 resid = sub(s.K, add(scale(e1, Ae), scale(e2, Be)));
    if (max_abs(resid) > 1e-6 * std::max(1.0, max_abs(s.K))) {
        throw RefusalError("decompose_state: radical expansion inconsistent across components");
    }
    // The display convention pairs A with sqrt(x1-j_a)/sqrt(x2-j_a), which is
    // the e2 direction of the linear solve.
    return Separation{pt, Be, Ae};
}

BodyState reconstruct_state(const Separation& sep, const SystemParams& params) {
    auto p2 = p_squared_from_coords(sep.pt.x1, sep.pt.x2, params);
    BodyState out;
    for (int a = 0; a < 3; ++a) {
        double v = p2[a];
        if (v < 0.0) {
            if (v < -1e-10) {
                throw DegenerateError(
                    "reconstruct_state: negative squared momentum, coordinates "
                    "outside the interlacing region");
            }
            v = 0.0;
        }
        out.p[a] = sep.pt.signs[a] * std::sqrt(v);
    }
    Vec3 Kp = reconstruct_K(sep.pt.x1, sep.pt.x2, sep.A, sep.B, params);
    for (int a = 0; a < 3; ++a) out.K[a] = sep.pt.signs[a] * Kp[a];
    return out;
}

double casimir_combination_residual(const BodyState& s,
                                    const SpectralData& spectral) {
    const auto& d = spectral.d;
    const auto& lmn = spectral.lmn;
    double X[3] = {s.K[0] * s.K[0], s.K[1] * s.K[1], s.K[2] * s.K[2]};
    double U[3] = {lmn[0] + d[1] * X[1] - d[2] * X[2],
                   lmn[1] + d[2] * X[2] - d[0] * X[0],
                   lmn[2] + d[0] * X[0] - d[1] * X[1]};
    double r[3];
    for (int a = 0; a < 3; ++a) r[a] = std::sqrt(std::max(U[a], 0.0));
    double bestv = std::numeric_limits<double>::infinity();
    for (int s1 = -1; s1 <= 1; s1 += 2) {
        for (int s2 = -1; s2 <= 1; s2 += 2) {
            double v = std::fabs(s1 * r[0] * s.K[0] + s2 * r[1] * s.K[1] +
                                 r[2] * s.K[2]);
            bestv = std::min(bestv, v);
        }
    }
    return bestv;
}

XSeries xcoords_series(const Trajectory& traj) {
    XSeries xs;
    xs.t.reserve(traj.t.size());
    xs.x1.reserve(traj.t.size());
    xs.x2.reserve(traj.t.size());
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        auto [x1, x2] = roots_from_p(traj.states[k].p, traj.params);
        xs.t.push_back(traj.t[k]);
        xs.x1.push_back(x1);
        xs.x2.push_back(x2);
    }
    return xs;
}

ResidualReport linearization_residual(const Trajectory& traj) {
    ResidualReport rep;
    rep.lambda = traj.params.lambda;
    rep.lambda_prime = traj.params.lambda_prime;
    if (traj.states.size() < 3) {
        rep.degenerate = true;
        return rep;
    }
    IntegralValues v0 = compute_integrals(traj.states.front(), traj.params);
    HyperellipticCurve curve = curve_from_c(traj.params, v0.c3, v0.c4);
    const std::size_t n = traj.states.size();
    XSeries xs = xcoords_series(traj);
    rep.r1.assign(n - 2, std::numeric_limits<double>::quiet_NaN());
    rep.r2.assign(n - 2, std::numeric_limits<double>::quiet_NaN());
    if (curve.degenerate || !curve.j45.real_pair) {
        rep.degenerate = true;
        rep.excluded = n - 2;
        return rep;
    }

    const double h = traj.h;
    const double lam = traj.params.lambda;
    const double lamp = traj.params.lambda_prime;
    int prev_combo = -1;
    bool prev_excluded = true;

    auto turning = [](const std::vector<double>& x, std::size_t k) {
        return (x[k + 1] - x[k]) * (x[k] - x[k - 1]) <= 0.0;
    };

    for (std::size_t k = 1; k + 1 < n; ++k) {
        double P1 = curve.monic_quintic(xs.x1[k]);
        double P2 = curve.monic_quintic(xs.x2[k]);
        bool excl = turning(xs.x1, k) || turning(xs.x2, k) || P1 <= 1e-12 ||
                    P2 <= 1e-12;
        if (excl) {
            ++rep.excluded;
            prev_excluded = true;
            continue;
        }
        double xd1 = (xs.x1[k + 1] - xs.x1[k - 1]) / (2.0 * h);
        double xd2 = (xs.x2[k + 1] - xs.x2[k - 1]) / (2.0 * h);
        double R1 = 2.0 * std::sqrt(P1);
        double R2 = 2.0 * std::sqrt(P2);
        double u1 = xd1 / R1, u2 = xd2 / R2;

        double best_r1 = 0.0, best_r2 = 0.0, best_cost =
            std::numeric_limits<double>::infinity();
        int best_combo = 0;
        for (int combo = 0; combo < 4; ++combo) {
            double s1 = (combo & 1) ? -1.0 : 1.0;
            double s2 = (combo & 2) ? -1.0 : 1.0;
            double r1 = s1 * u1 + s2 * u2 + 2.0 * lamp;
            double r2 = s1 * xs.x1[k] * u1 + s2 * xs.x2[k] * u2 - 2.0 * lam;
            double cost = std::fabs(r1) + std::fabs(r2);
            if (cost < best_cost) {
                best_cost = cost;
                best_r1 = r1;
                best_r2 = r2;
                best_combo = combo;
            }
        }
        if (!prev_excluded && prev_combo >= 0 && best_combo != prev_combo) {
            rep.branch_failures.push_back(k);
        }
        prev_combo = best_combo;
        prev_excluded = false;

        rep.r1[k - 1] = best_r1;
        rep.r2[k - 1] = best_r2;
        rep.max_r1 = std::max(rep.max_r1, std::fabs(best_r1));
        rep.max_r2 = std::max(rep.max_r2, std::fabs(best_r2));
        ++rep.evaluated;

        // Fourth-order five-point stencil as a separate diagnostic, away from
        // the series ends and from turning points inside the wider window.
        if (k >= 2 && k + 2 < n) {
            bool wide_excl = turning(xs.x1, k - 1) || turning(xs.x1, k + 1) ||
                             turning(xs.x2, k - 1) || turning(xs.x2, k + 1);
            if (!wide_excl) {
                double d1 = (-xs.x1[k + 2] + 8.0 * xs.x1[k + 1] -
                             8.0 * xs.x1[k - 1] + xs.x1[k - 2]) / (12.0 * h);
                double d2 = (-xs.x2[k + 2] + 8.0 * xs.x2[k + 1] -
                             8.0 * xs.x2[k - 1] + xs.x2[k - 2]) / (12.0 * h);
                double s1 = (best_combo & 1) ? -1.0 : 1.0;
                double s2 = (best_combo & 2) ? -1.0 : 1.0;
                double r1 = s1 * d1 / R1 + s2 * d2 / R2 + 2.0 * lamp;
                double r2 = s1 * xs.x1[k] * d1 / R1 + s2 * xs.x2[k] * d2 / R2 -
                            2.0 * lam;
                rep.max_r1_ho = std::max(rep.max_r1_ho, std::fabs(r1));
                rep.max_r2_ho = std::max(rep.max_r2_ho, std::fabs(r2));
            }
        }
    }
    if (rep.evaluated == 0) rep.degenerate = true;
    return rep;
}

}  // namespace clebsch
