#include "clebsch/actions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "clebsch/errors.hpp"

namespace clebsch {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct AdaptState {
    const std::function<double(double)>* g;
    bool converged = true;
    // Node budget: bounds total work even when roundoff noise in the
    // integrand keeps the pair estimate above a halving tolerance on every
    // subinterval (which would otherwise branch exponentially).
    long nodes_left = 150000;
};

// 4-point Gauss-Legendre on (a, b). Open rule: the transformed integrand is
// only ever sampled strictly inside the interval, so the zero value pinned at
// sin(2 theta) = 0 (which differs from the limit when the original integrand
// is singular there) never enters a sum.
double gauss4(const std::function<double(double)>& g, double a, double b) {
    static const double nodes[2] = {0.3399810435848563, 0.8611363115940526};
    static const double weights[2] = {0.6521451548625461, 0.3478548451374538};
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 2; ++i) {
        acc += weights[i] * (g(c - h * nodes[i]) + g(c + h * nodes[i]));
    }
    return acc * h;
}

double adapt(AdaptState& st, double a, double b, double S, double tol,
             int depth) {
    double m = 0.5 * (a + b);
    double Sl = gauss4(*st.g, a, m);
    double Sr = gauss4(*st.g, m, b);
    double S2 = Sl + Sr;
    double err = std::fabs(S2 - S);
    if (err <= tol ||
        err <= 1e-15 * (std::fabs(Sl) + std::fabs(Sr) + std::fabs(S))) {
        return S2;
    }
    if (depth <= 0 || --st.nodes_left < 0) {
        st.converged = false;
        return S2;
    }
    return adapt(st, a, m, Sl, 0.5 * tol, depth - 1) +
           adapt(st, m, b, Sr, 0.5 * tol, depth - 1);
}

}  // namespace

double singular_quadrature(const std::function<double(double)>& f, double a,
                           double b, double abs_tol) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw ConfigError("singular_quadrature: endpoints must be finite");
    }
    if (!(abs_tol > 0)) {
        throw ConfigError("singular_quadrature: tolerance must be positive");
    }
    if (a == b) return 0.0;
    double lo = std::min(a, b), hi = std::max(a, b);
    double sign = (a < b) ? 1.0 : -1.0;
    double width = hi - lo;
    auto g = std::function<double(double)>([&](double theta) {
        double s2 = std::sin(2.0 * theta);
        if (s2 == 0.0) return 0.0;
        double s = std::sin(theta);
        double x = lo + width * s * s;
        if (!(x > lo && x < hi)) return 0.0;
        double v = f(x) * width * s2;
        if (!std::isfinite(v)) return 0.0;  // roundoff spike abutting an endpoint
        return v;
    });
    AdaptState st{&g, true};
    double t0 = 0.0, t1 = 0.5 * kPi;
    double S = gauss4(g, t0, t1);
    double val = adapt(st, t0, t1, S, abs_tol, 45);
    if (!st.converged) {
        std::ostringstream msg;
        msg << "singular_quadrature: refinement depth exhausted before reaching "
            << "tolerance " << abs_tol << " (integrand may be non-integrable)";
        throw ToleranceError(msg.str(), sign * val);
    }
    return sign * val;
}

namespace {

std::array<double, 5> branch_points_or_throw(const HyperellipticCurve& curve) {
    if (!curve.j45.real_pair) {
        throw DegenerateError(
            "actions: the quadratic branch points form a conjugate pair; the "
            "real action segments are undefined");
    }
    return {curve.j[0], curve.j[1], curve.j[2], curve.j45.j4, curve.j45.j5};
}

double branch_scale(const std::array<double, 5>& b) {
    double s = 1.0;
    for (double v : b) s = std::max(s, std::fabs(v));
    return s;
}

// A cluster of >= 3 coinciding branch points defeats the pairwise-cancellation
// allowance; refuse and name the location.
void refuse_triple_clusters(const std::array<double, 5>& bp) {
    std::array<double, 5> b = bp;
    std::sort(b.begin(), b.end());
    double tol = 1e-10 * branch_scale(b);
    int run = 1;
    for (int i = 1; i < 5; ++i) {
        if (b[i] - b[i - 1] <= tol) {
            ++run;
            if (run >= 3) {
                std::ostringstream msg;
                msg << "actions: " << run
                    << " branch points coincide near x = " << b[i]
                    << "; the integrand is not reducible there";
                throw DegenerateError(msg.str());
            }
        } else {
            run = 1;
        }
    }
}

// Split the oriented segment into pieces at the branch points strictly
// between its endpoints; on each open piece Psi and Q keep their signs.
std::vector<std::pair<double, double>> split_segment(
    const std::array<double, 5>& bp, double lo, double hi) {
    double tol = 1e-12 * branch_scale(bp) * std::max(1.0, hi - lo);
    std::vector<double> cuts;
    for (double v : bp) {
        if (v > lo + tol && v < hi - tol) cuts.push_back(v);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::pair<double, double>> pieces;
    double cur = lo;
    for (double c : cuts) {
        if (c - cur > tol) {
            pieces.emplace_back(cur, c);
            cur = c;
        }
    }
    if (hi - cur > tol) pieces.emplace_back(cur, hi);
    return pieces;
}

struct SegmentIntegrals {
    std::complex<double> action;            // -2 int sqrt(Psi/Q)
    std::array<std::complex<double>, 2> period;  // int x^k sqrt-consistent
};

// One pass over the pieces of [from -> to] giving the action integral and the
// two period integrals int x^k (d/dPsi of the action integrand), i.e. with
// the square-root branch matching the action piece by piece.
SegmentIntegrals segment_integrals(const HyperellipticCurve& curve,
                                   const std::array<double, 5>& bp,
                                   double from, double to, double abs_tol,
                                   bool want_period) {
    SegmentIntegrals out{{0.0, 0.0}, {std::complex<double>(0.0), std::complex<double>(0.0)}};
    if (from == to) return out;
    double sign = (from < to) ? 1.0 : -1.0;
    double lo = std::min(from, to), hi = std::max(from, to);
    auto qtilde = [&curve](double x) { return -curve.Phi(x); };
    for (auto [p, q] : split_segment(bp, lo, hi)) {
        double mid = 0.5 * (p + q);
        double ratio_mid = curve.Psi(mid) / qtilde(mid);
        // Principal branch: sqrt(ratio) is the positive real root on positive
        // pieces and +i times the magnitude on negative pieces.
        std::complex<double> phase =
            (ratio_mid >= 0.0) ? std::complex<double>(1.0, 0.0)
                               : std::complex<double>(0.0, 1.0);
        auto mag = [&](double x) {
            return std::sqrt(std::fabs(curve.Psi(x) / qtilde(x)));
        };
        out.action += phase * std::complex<double>(
                                  singular_quadrature(mag, p, q, abs_tol));
        if (want_period) {
            // d/dPsi of the action integrand is sqrt(ratio)/Psi; on this piece
            // that is the action phase times sign(Psi) times 1/sqrt(|P|).
            double psign = (curve.Psi(mid) >= 0.0) ? 1.0 : -1.0;
            std::complex<double> pphase = phase * psign;
            for (int k = 0; k < 2; ++k) {
                auto f = [&curve, k](double x) {
                    double pk = (k == 0) ? 1.0 : x;
                    return pk / std::sqrt(std::fabs(curve.monic_quintic(x)));
                };
                out.period[k] +=
                    pphase * std::complex<double>(
                                 singular_quadrature(f, p, q, abs_tol));
            }
        }
    }
    out.action *= -2.0 * sign;
    for (auto& e : out.period) e *= sign;
    return out;
}

ActionIntegral classify(std::complex<double> v) {
    bool real = std::fabs(v.imag()) <= 1e-9 * std::max(1.0, std::abs(v));
    return ActionIntegral{v, real};
}

}  // namespace

std::array<Cycle, 2> action_cycles(const HyperellipticCurve& curve) {
    auto b = curve.sorted_branch_points();
    return {Cycle{b[0], b[1]}, Cycle{b[2], b[3]}};
}

PeriodMatrix period_matrix(const HyperellipticCurve& curve,
                           const std::array<Cycle, 2>& cycles,
                           const std::array<double, 2>& w, double abs_tol) {
    if (curve.degenerate) {
        std::ostringstream msg;
        msg << "period_matrix: branch points coincide (smallest gap "
            << curve.min_gap << "); the period integrals do not converge";
        throw DegenerateError(msg.str());
    }
    if (w[0] == 0.0 || w[1] == 0.0) {
        throw ConfigError("period_matrix: weight matrix must be invertible");
    }
    auto bp = branch_points_or_throw(curve);
    PeriodMatrix pm;
    pm.w = w;
    for (int j = 0; j < 2; ++j) {
        double from = cycles[j].lo, to = cycles[j].hi;
        double sign = (from < to) ? 1.0 : -1.0;
        double lo = std::min(from, to), hi = std::max(from, to);
        for (int i = 0; i < 2; ++i) pm.psi[i][j] = 0.0;
        if (from == to) continue;
        for (auto [p, q] : split_segment(bp, lo, hi)) {
            double mid = 0.5 * (p + q);
            // Principal branch of 1/sqrt(P): real where P > 0, -i/sqrt(|P|)
            // where P < 0.
            std::complex<double> phase =
                (curve.monic_quintic(mid) >= 0.0)
                    ? std::complex<double>(1.0, 0.0)
                    : std::complex<double>(0.0, -1.0);
            for (int i = 0; i < 2; ++i) {
                auto f = [&curve, i](double x) {
                    double pk = (i == 0) ? 1.0 : x;
                    return pk / std::sqrt(std::fabs(curve.monic_quintic(x)));
                };
                pm.psi[i][j] += phase * std::complex<double>(
                                            singular_quadrature(f, p, q, abs_tol));
            }
        }
        for (int i = 0; i < 2; ++i) pm.psi[i][j] *= sign * 2.0 / w[i];
    }
    return pm;
}

ActionValues actions(const HyperellipticCurve& curve, double abs_tol) {
    auto bp = branch_points_or_throw(curve);
    refuse_triple_clusters(bp);
    auto s1 = segment_integrals(curve, bp, curve.j[0], curve.j[1], abs_tol,
                                false);
    auto s2 = segment_integrals(curve, bp, curve.j[2], curve.j45.j4, abs_tol,
                                false);
    return ActionValues{classify(s1.action), classify(s2.action)};
}

double verify_action_derivatives(const SystemParams& params, double c3,
                                 double c4, double fd_step) {
    if (!(fd_step > 0) || !std::isfinite(fd_step)) {
        throw ConfigError("verify_action_derivatives: fd_step must be positive");
    }
    // Error budget of the check: FD truncation plus quadrature tolerance
    // amplified by 1/(2 fd_step). The default tolerance keeps the amplified
    // part at ~5e-6 for fd_step = 1e-5; a tighter tolerance buys nothing
    // because evaluating the integrand near a branch point is itself limited
    // by the conditioning of x - j there.
    const double qtol = 1e-10;
    HyperellipticCurve center = curve_from_c(params, c3, c4);
    if (center.degenerate) {
        std::ostringstream msg;
        msg << "verify_action_derivatives: curve is degenerate at c3 = " << c3
            << ", c4 = " << c4 << " (smallest branch gap " << center.min_gap
            << ")";
        throw DegenerateError(msg.str());
    }
    auto bp = branch_points_or_throw(center);
    refuse_triple_clusters(bp);

    // Ordering of the labeled branch points among the sorted ones. A finite
    // difference step must keep it fixed: if a root of Psi crosses one of the
    // moduli the literal segments change composition and the difference is
    // meaningless.
    auto signature = [](const HyperellipticCurve& c) {
        std::array<std::pair<double, int>, 5> tagged{
            std::pair{c.j[0], 0}, {c.j[1], 1}, {c.j[2], 2},
            {c.j45.j4, 3}, {c.j45.j5, 4}};
        std::sort(tagged.begin(), tagged.end());
        std::array<int, 5> sig{};
        for (int i = 0; i < 5; ++i) sig[i] = tagged[i].second;
        return sig;
    };
    auto center_sig = signature(center);
    auto refuse_step = [](double cc3, double cc4) {
        std::ostringstream msg;
        msg << "verify_action_derivatives: the step c3 = " << cc3
            << ", c4 = " << cc4
            << " crosses the discriminant locus; reduce fd_step";
        throw RefusalError(msg.str());
    };
    auto curve_at = [&](double cc3, double cc4) {
        HyperellipticCurve c = [&] {
            try {
                return curve_from_c(params, cc3, cc4);
            } catch (const DegenerateError&) {
                refuse_step(cc3, cc4);
                throw;  // unreachable
            }
        }();
        if (c.degenerate || c.j45.real_pair != center.j45.real_pair ||
            signature(c) != center_sig) {
            refuse_step(cc3, cc4);
        }
        return c;
    };
    auto actions_at = [&](double cc3, double cc4) {
        HyperellipticCurve c = curve_at(cc3, cc4);
        auto b = branch_points_or_throw(c);
        auto sa = segment_integrals(c, b, c.j[0], c.j[1], qtol, false);
        auto sb = segment_integrals(c, b, c.j[2], c.j45.j4, qtol, false);
        return std::array<std::complex<double>, 2>{sa.action, sb.action};
    };

    // Consistent-branch period entries over the literal action segments.
    auto pa = segment_integrals(center, bp, center.j[0], center.j[1], qtol, true);
    auto pb = segment_integrals(center, bp, center.j[2], center.j45.j4, qtol,
                                true);
    std::array<std::array<std::complex<double>, 2>, 2> psi;
    for (int i = 0; i < 2; ++i) {
        // Row scale 2 / w_i with w = diag(-2, 2).
        double rs = (i == 0) ? -1.0 : 1.0;
        psi[i][0] = rs * pa.period[i];
        psi[i][1] = rs * pb.period[i];
    }

    auto ap4 = actions_at(c3, c4 + fd_step);
    auto am4 = actions_at(c3, c4 - fd_step);
    auto ap3 = actions_at(c3 + fd_step, c4);
    auto am3 = actions_at(c3 - fd_step, c4);
    double max_err = 0.0;
    for (int jcol = 0; jcol < 2; ++jcol) {
        std::complex<double> d4 = (ap4[jcol] - am4[jcol]) / (2.0 * fd_step);
        std::complex<double> d3 = (ap3[jcol] - am3[jcol]) / (2.0 * fd_step);
        max_err = std::max(max_err, std::abs(d4 - psi[0][jcol]));
        max_err = std::max(max_err, std::abs(d3 - psi[1][jcol]));
    }
    return max_err;
}

}  // namespace clebsch
