#pragma once

#include <array>
#include <string>
#include <vector>

#include "clebsch/integrals.hpp"
#include "clebsch/params.hpp"

namespace clebsch {

// Quartic surface F = X1^2 U1^2 + X2^2 U2^2 + X3^2 U3^2
//                    - 2(X1 X2 U1 U2 + X2 X3 U2 U3 + X3 X1 U3 U1)
// with U1 = l X4 + d2 X2 - d3 X3, U2 = m X4 + d3 X3 - d1 X1,
// U3 = n X4 + d1 X1 - d2 X2, so that U1 + U2 + U3 = X4.
struct KummerSurface {
    std::array<double, 3> lmn;
    std::array<double, 3> d;

    std::array<double, 3> U(const std::array<double, 4>& X) const;
};

KummerSurface surface_from_spectral(const SpectralData& spectral);

double quartic_eval(const KummerSurface& surface, const std::array<double, 4>& X);
std::array<double, 4> quartic_gradient(const KummerSurface& surface,
                                       const std::array<double, 4>& X);

// Scale so the last nonzero coordinate is 1.
std::array<double, 4> normalize_projective(std::array<double, 4> X);

enum class DoublePointCase { Coordinate, Infinity, AffineThree, QuadraticPair };

const char* double_point_case_name(DoublePointCase c);

struct DoublePoint {
    std::array<double, 4> X;  // normalized representative
    DoublePointCase kind;
};

struct DoublePointReport {
    std::vector<DoublePoint> points;      // the real double points found
    int complex_pair_count = 0;           // conjugate quadratic-pair roots
    std::array<double, 3> discriminants;  // one per quadratic-pair family
};

// The explicitly constructible double points: 4 coordinate points, the point
// (1/d1 : 1/d2 : 1/d3 : 0), three affine points, and up to six from the
// quadratic pairs (one conic-line intersection per vanishing X_a = U_a = 0).
DoublePointReport double_points(const KummerSurface& surface);

// Cover map (K1 : K2 : K3 : 1) -> (K1^2 : K2^2 : K3^2 : 1). Verifies that the
// state sits on the level set matching the surface; the error message names
// the first mismatching integral.
std::array<double, 4> state_to_kummer(const BodyState& s,
                                      const KummerSurface& surface,
                                      const SystemParams& params);

}  // namespace clebsch
