#pragma once

#include <cstdint>

#include "clebsch/integrals.hpp"
#include "clebsch/vec3.hpp"

namespace clebsch {

// Deterministic 64-bit generator; the same seed reproduces the same stream on
// every platform.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
};

// Uniform direction by rejection from the disk.
Vec3 sample_unit_sphere(SplitMix64& rng);

// p uniform on the unit sphere, K uniform in the ball of radius k_radius with
// the component along p removed, so C1 = 0 and C2 = 1 hold by construction.
BodyState sample_leaf_state(SplitMix64& rng, double k_radius = 1.0);

}  // namespace clebsch
