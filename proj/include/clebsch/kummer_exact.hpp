#pragma once

#include <array>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace clebsch::exact {

using Rat = boost::multiprecision::cpp_rational;

// Element a + b*sqrt(D) of a quadratic extension of the rationals. D < 0 is
// allowed: the arithmetic is identical and a zero certificate (a == b == 0)
// is still exact. Values with b == 0 carry D == 0 and mix with any extension.
struct QuadExt {
    Rat a{}, b{}, D{};

    bool is_rational() const { return b == 0; }
    bool is_zero() const { return a == 0 && b == 0; }
};

QuadExt qe(const Rat& r);
QuadExt operator+(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x);
QuadExt operator*(const QuadExt& x, const QuadExt& y);
QuadExt inverse(const QuadExt& x);

// Exact square root of a rational if it is a perfect square.
std::optional<Rat> sqrt_exact(const Rat& r);

struct ExactSurface {
    std::array<Rat, 3> j;
    Rat c3, c4;
    std::array<Rat, 3> lmn;
    std::array<Rat, 3> d;
};

// Build the quartic surface data from rational moduli; j must be pairwise
// distinct.
ExactSurface exact_surface(const std::array<Rat, 3>& j, const Rat& c3,
                           const Rat& c4);

QuadExt quartic_eval_exact(const ExactSurface& s,
                           const std::array<QuadExt, 4>& X);
std::array<QuadExt, 4> quartic_gradient_exact(const ExactSurface& s,
                                              const std::array<QuadExt, 4>& X);

struct ExactPoint {
    std::array<QuadExt, 4> X;
    bool conjugate_pair = false;  // lives in an extension with D < 0
    bool certified = false;       // F(X) == 0 and grad F(X) == 0 exactly
};

struct Certification {
    std::vector<ExactPoint> points;
    int complex_points = 0;
    bool all_certified = false;
};

// Enumerate the double points (4 coordinate, 1 at infinity, 3 affine, and the
// conic-line pairs) with exact coordinates, then certify each one by exact
// evaluation of the quartic and its gradient.
Certification certify_double_points(const ExactSurface& s);

}  // namespace clebsch::exact
