#include "clebsch/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace clebsch {

namespace {

constexpr double kNormCap = 1e12;

BodyState rk4_step(const BodyState& s, const FieldFn& f, double h) {
    BodyState k1 = f(s);
    BodyState s2{axpy(s.K, 0.5 * h, k1.K), axpy(s.p, 0.5 * h, k1.p)};
    BodyState k2 = f(s2);
    BodyState s3{axpy(s.K, 0.5 * h, k2.K), axpy(s.p, 0.5 * h, k2.p)};
    BodyState k3 = f(s3);
    BodyState s4{axpy(s.K, h, k3.K), axpy(s.p, h, k3.p)};
    BodyState k4 = f(s4);
    BodyState out;
    for (int a = 0; a < 3; ++a) {
        out.K[a] = s.K[a] + h / 6.0 * (k1.K[a] + 2.0 * k2.K[a] + 2.0 * k3.K[a] + k4.K[a]);
        out.p[a] = s.p[a] + h / 6.0 * (k1.p[a] + 2.0 * k2.p[a] + 2.0 * k3.p[a] + k4.p[a]);
    }
    return out;
}

bool state_ok(const BodyState& s) {
    return finite(s.K) && finite(s.p) && max_abs(s.K) < kNormCap &&
           max_abs(s.p) < kNormCap;
}

}  // namespace

Trajectory integrate_field(const BodyState& s0, const SystemParams& params,
                           const FieldFn& field, double t_final, double h) {
    if (!(h > 0.0) || !(t_final > 0.0)) {
        throw ConfigError("integrate: need h > 0 and t_final > 0");
    }
    if (!state_ok(s0)) {
        throw ConfigError("integrate: initial state must be finite");
    }
    auto n_steps = static_cast<std::size_t>(std::llround(t_final / h));
    if (n_steps == 0) n_steps = 1;

    Trajectory traj{params, h, {}, {}};
    traj.t.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.t.push_back(0.0);
    traj.states.push_back(s0);

    BodyState s = s0;
    for (std::size_t k = 1; k <= n_steps; ++k) {
        s = rk4_step(s, field, h);
        if (!state_ok(s)) {
            std::ostringstream msg;
            msg << "integrate: state blew up, last good time t = "
                << static_cast<double>(k - 1) * h;
            throw BlowUpError(msg.str());
        }
        traj.t.push_back(static_cast<double>(k) * h);
        traj.states.push_back(s);
    }
    return traj;
}

Trajectory integrate(const BodyState& s0, const SystemParams& params,
                     double t_final, double h) {
    return integrate_field(
        s0, params,
        [&params](const BodyState& s) { return pencil_field(s, params); },
        t_final, h);
}

double DriftReport::max_drift() const {
    double d = std::max({c[0], c[1], c[2], c[3]});
    if (h_energy) d = std::max(d, *h_energy);
    if (l_integral) d = std::max(d, *l_integral);
    return d;
}

DriftReport drift_report(const Trajectory& traj) {
    if (traj.states.empty()) {
        throw ConfigError("drift_report: empty trajectory");
    }
    IntegralValues v0 = compute_integrals(traj.states.front(), traj.params);
    const double ref[4] = {v0.c1, v0.c2, v0.c3, v0.c4};

    DriftReport rep{};
    rep.c = {0.0, 0.0, 0.0, 0.0};
    double hd = 0.0, ld = 0.0;
    bool have_hl = v0.h.has_value();
    for (const BodyState& s : traj.states) {
        IntegralValues v = compute_integrals(s, traj.params);
        const double cur[4] = {v.c1, v.c2, v.c3, v.c4};
        for (int i = 0; i < 4; ++i) {
            double d = std::fabs(cur[i] - ref[i]) / std::max(1.0, std::fabs(ref[i]));
            rep.c[i] = std::max(rep.c[i], d);
        }
        if (have_hl && v.h && v.l) {
            hd = std::max(hd, std::fabs(*v.h - *v0.h) / std::max(1.0, std::fabs(*v0.h)));
            ld = std::max(ld, std::fabs(*v.l - *v0.l) / std::max(1.0, std::fabs(*v0.l)));
        }
    }
    if (have_hl) {
        rep.h_energy = hd;
        rep.l_integral = ld;
    }
    return rep;
}

double convergence_order(const BodyState& s0, const SystemParams& params,
                         double t_final, double h) {
    DriftReport coarse = drift_report(integrate(s0, params, t_final, h));
    DriftReport fine = drift_report(integrate(s0, params, t_final, 0.5 * h));
    double dc = coarse.max_drift();
    double df = fine.max_drift();
    if (!(df > 0.0)) {
        throw RefusalError("convergence_order: fine-step drift vanished, ratio undefined");
    }
    return std::log2(dc / df);
}

}  // namespace clebsch
