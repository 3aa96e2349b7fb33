#include "clebsch/rng.hpp"

#include <cmath>

namespace clebsch {

Vec3 sample_unit_sphere(SplitMix64& rng) {
    for (;;) {
        double u = rng.uniform(-1.0, 1.0);
        double v = rng.uniform(-1.0, 1.0);
        double s = u * u + v * v;
        if (s >= 1.0 || s == 0.0) continue;
        double f = 2.0 * std::sqrt(1.0 - s);
        return {u * f, v * f, 1.0 - 2.0 * s};
    }
}

BodyState sample_leaf_state(SplitMix64& rng, double k_radius) {
    BodyState s;
    s.p = sample_unit_sphere(rng);
    Vec3 dir = sample_unit_sphere(rng);
    double r = k_radius * std::cbrt(rng.uniform01());
    s.K = scale(dir, r);
    s.K = axpy(s.K, -dot(s.K, s.p), s.p);
    return s;
}

}  // namespace clebsch
