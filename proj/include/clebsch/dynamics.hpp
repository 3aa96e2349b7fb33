#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "clebsch/integrals.hpp"
#include "clebsch/params.hpp"

namespace clebsch {

using FieldFn = std::function<BodyState(const BodyState&)>;

struct Trajectory {
    SystemParams params;
    double h = 0.0;
    std::vector<double> t;
    std::vector<BodyState> states;
};

// Classical explicit 4th-order one-step integration of the pencil field at a
// fixed step. Throws BlowUpError (with the last good time) if the state
// escapes the norm cap 1e12 or turns non-finite.
Trajectory integrate(const BodyState& s0, const SystemParams& params,
                     double t_final, double h);

// Same integrator for an arbitrary field on (K, p); params are carried along
// for downstream consumers of the trajectory.
Trajectory integrate_field(const BodyState& s0, const SystemParams& params,
                           const FieldFn& field, double t_final, double h);

struct DriftReport {
    // max over time of |C_i(t) - C_i(0)| / max(1, |C_i(0)|), i = 1..4
    std::array<double, 4> c;
    std::optional<double> h_energy;     // same measure for H when derivable
    std::optional<double> l_integral;   // and for L
    std::optional<double> order;        // filled by convergence_order workflows

    double max_drift() const;
};

DriftReport drift_report(const Trajectory& traj);

// log2(drift(h) / drift(h/2)) where drift is the maximum entry of the report;
// close to 4 for a 4th-order scheme.
double convergence_order(const BodyState& s0, const SystemParams& params,
                         double t_final, double h);

}  // namespace clebsch
