#include "doctest.h"

#include <cmath>
#include <set>

#include "clebsch/integrals.hpp"
#include "clebsch/kummer.hpp"
#include "clebsch/kummer_exact.hpp"
#include "clebsch/params.hpp"
#include "clebsch/rng.hpp"

using namespace clebsch;

namespace {

KummerSurface worked_surface() {
    SystemParams params{1.0, 2.0, 3.0, 1.0, 1.0};
    return surface_from_spectral(spectral_from_c(params, 4.36, 4.08));
}

std::array<double, 4> random_x4(SplitMix64& rng) {
    return {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
            rng.uniform(-2, 2)};
}

}  // namespace

TEST_SUITE("kummer") {

TEST_CASE("worked surface coefficients and two known points") {
    KummerSurface surf = worked_surface();
    CHECK(surf.lmn[0] == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(surf.lmn[1] == doctest::Approx(0.64).epsilon(1e-12));
    CHECK(surf.lmn[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(surf.d[0] == doctest::Approx(1.0));
    CHECK(surf.d[1] == doctest::Approx(-0.5));
    CHECK(surf.d[2] == doctest::Approx(1.0));

    CHECK(std::fabs(quartic_eval(surf, {1.0, -2.0, 1.0, 0.0})) <= 1e-12);
    CHECK(std::fabs(quartic_eval(surf, {0.64, 0.72, 0.0, 1.0})) <= 1e-12);
    // A generic point is NOT on the surface.
    CHECK(std::fabs(quartic_eval(surf, {1.0, 1.0, 1.0, 1.0})) > 1e-6);
}

TEST_CASE("line coordinates sum to the fourth coordinate") {
    KummerSurface surf = worked_surface();
    SplitMix64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto X = random_x4(rng);
        auto U = surf.U(X);
        CHECK(U[0] + U[1] + U[2] == doctest::Approx(X[3]).epsilon(1e-12));
    }
}

TEST_CASE("gradient matches finite differences and the Euler identity") {
    KummerSurface surf = worked_surface();
    SplitMix64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto X = random_x4(rng);
        auto g = quartic_gradient(surf, X);
        double euler = 0.0;
        for (int i = 0; i < 4; ++i) {
            auto Xp = X, Xm = X;
            const double h = 1e-5;
            Xp[i] += h;
            Xm[i] -= h;
            double fd =
                (quartic_eval(surf, Xp) - quartic_eval(surf, Xm)) / (2.0 * h);
            CHECK(g[i] == doctest::Approx(fd).epsilon(1e-7));
            euler += X[i] * g[i];
        }
        // Degree-four homogeneity: X . grad F = 4 F.
        CHECK(euler ==
              doctest::Approx(4.0 * quartic_eval(surf, X)).epsilon(1e-11));
    }
}

TEST_CASE("normalize_projective scales by the last nonzero coordinate") {
    auto n1 = normalize_projective({2.0, 4.0, 0.0, 0.0});
    CHECK(n1[0] == doctest::Approx(0.5));
    CHECK(n1[1] == doctest::Approx(1.0));
    CHECK(n1[2] == 0.0);
    CHECK(n1[3] == 0.0);
    auto n2 = normalize_projective({3.0, -6.0, 1.5, -3.0});
    CHECK(n2[3] == doctest::Approx(1.0));
    CHECK(n2[0] == doctest::Approx(-1.0));
    CHECK_THROWS_AS(normalize_projective({0.0, 0.0, 0.0, 0.0}), ConfigError);
}

TEST_CASE("double point census: every point is singular, none repeat") {
    SystemParams params{1.0, 2.0, 3.0, 1.0, 1.0};
    // A smooth spectrum carries the full fourteen-node configuration.
    SpectralData spec = spectral_from_c(params, 4.5, 4.8);
    KummerSurface surf = surface_from_spectral(spec);
    DoublePointReport rep = double_points(surf);
    CHECK(rep.points.size() + 2 * rep.complex_pair_count == 14);
    for (const auto& pt : rep.points) {
        CHECK(std::fabs(quartic_eval(surf, pt.X)) <= 1e-9);
        auto g = quartic_gradient(surf, pt.X);
        for (int i = 0; i < 4; ++i) CHECK(std::fabs(g[i]) <= 1e-8);
    }
    // Normalized representatives are pairwise distinct.
    for (size_t a = 0; a < rep.points.size(); ++a) {
        for (size_t b = a + 1; b < rep.points.size(); ++b) {
            double diff = 0.0;
            for (int i = 0; i < 4; ++i) {
                diff = std::max(diff, std::fabs(rep.points[a].X[i] -
                                                rep.points[b].X[i]));
            }
            CHECK(diff > 1e-9);
        }
    }
    // The census covers all four enumeration cases.
    std::set<DoublePointCase> kinds;
    for (const auto& pt : rep.points) kinds.insert(pt.kind);
    CHECK(kinds.count(DoublePointCase::Coordinate) == 1);
    CHECK(kinds.count(DoublePointCase::Infinity) == 1);
    CHECK(kinds.count(DoublePointCase::AffineThree) == 1);
}

TEST_CASE("census on the discriminant locus: nodes merge but stay singular") {
    // The worked surface has j5 = j3, so some double points coincide; the
    // census must report fewer distinct points, all still singular.
    KummerSurface surf = worked_surface();
    DoublePointReport rep = double_points(surf);
    CHECK(rep.points.size() + 2 * rep.complex_pair_count < 14);
    CHECK(rep.points.size() >= 8);
    for (const auto& pt : rep.points) {
        CHECK(std::fabs(quartic_eval(surf, pt.X)) <= 1e-9);
        auto g = quartic_gradient(surf, pt.X);
        for (int i = 0; i < 4; ++i) CHECK(std::fabs(g[i]) <= 1e-8);
    }
    for (size_t a = 0; a < rep.points.size(); ++a) {
        for (size_t b = a + 1; b < rep.points.size(); ++b) {
            double diff = 0.0;
            for (int i = 0; i < 4; ++i) {
                diff = std::max(diff, std::fabs(rep.points[a].X[i] -
                                                rep.points[b].X[i]));
            }
            CHECK(diff > 1e-9);
        }
    }
}

TEST_CASE("exact rational arithmetic building blocks") {
    using namespace clebsch::exact;
    QuadExt a{1, 1, 2};   // 1 + sqrt(2)
    QuadExt b{1, -1, 2};  // 1 - sqrt(2)
    QuadExt prod = a * b;
    CHECK(prod.is_rational());
    CHECK(prod.a == Rat(-1));
    QuadExt inv = inverse(a);
    CHECK(inv.a == Rat(-1));
    CHECK(inv.b == Rat(1));
    QuadExt unit = a * inv;
    CHECK(unit.a == Rat(1));
    CHECK(unit.b == Rat(0));

    CHECK(sqrt_exact(Rat(9, 4)).value() == Rat(3, 2));
    CHECK(sqrt_exact(Rat(0)).value() == Rat(0));
    CHECK_FALSE(sqrt_exact(Rat(2)).has_value());
    CHECK_FALSE(sqrt_exact(Rat(-1)).has_value());
}

TEST_CASE("exact certification of all fourteen double points") {
    using namespace clebsch::exact;
    SUBCASE("surface with conjugate-pair points") {
        ExactSurface s = exact_surface({Rat(1), Rat(2), Rat(3)}, Rat(10, 3),
                                       Rat(3));
        CHECK(s.lmn[0] == Rat(1, 3));
        CHECK(s.lmn[1] == Rat(-1, 3));
        CHECK(s.lmn[2] == Rat(1));
        Certification cert = certify_double_points(s);
        CHECK(cert.points.size() == 14);
        CHECK(cert.all_certified);
        CHECK(cert.complex_points % 2 == 0);
        for (const auto& pt : cert.points) CHECK(pt.certified);
    }
    SUBCASE("generic rational surface with an irrational extension") {
        ExactSurface s = exact_surface({Rat(1), Rat(2), Rat(3)}, Rat(9, 2),
                                       Rat(24, 5));
        Certification cert = certify_double_points(s);
        CHECK(cert.points.size() == 14);
        CHECK(cert.all_certified);
    }
    SUBCASE("degenerate rational surface: merged nodes, still certified") {
        // c = (109/25, 102/25) puts j5 = j3: three node pairs collapse.
        ExactSurface s = exact_surface({Rat(1), Rat(2), Rat(3)}, Rat(109, 25),
                                       Rat(102, 25));
        Certification cert = certify_double_points(s);
        CHECK(cert.points.size() == 11);
        CHECK(cert.all_certified);
    }
    SUBCASE("repeated moduli are rejected") {
        CHECK_THROWS_AS(exact_surface({Rat(1), Rat(1), Rat(3)}, Rat(4), Rat(4)),
                        ConfigError);
    }
}

TEST_CASE("cover map lands on the surface; mismatches are named") {
    SystemParams params{1.0, 2.0, 3.0, 1.0, 1.0};
    SplitMix64 rng(42);
    BodyState s = sample_leaf_state(rng);
    IntegralValues v = compute_integrals(s, params);
    SpectralData spec = spectral_from_c(params, v.c3, v.c4);
    KummerSurface surf = surface_from_spectral(spec);
    auto X = state_to_kummer(s, surf, params);
    CHECK(X[3] == doctest::Approx(1.0));
    for (int i = 0; i < 3; ++i) {
        CHECK(X[i] == doctest::Approx(s.K[i] * s.K[i]).epsilon(1e-12));
    }
    CHECK(std::fabs(quartic_eval(surf, X)) <= 1e-10);

    // A surface with different constants must name the failing integral.
    KummerSurface other = surface_from_spectral(
        spectral_from_c(params, v.c3 + 0.5, v.c4));
    CHECK_THROWS_AS(state_to_kummer(s, other, params), ConfigError);
    try {
        state_to_kummer(s, other, params);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("C3") != std::string::npos);
    }

    // Off-leaf states are refused too.
    BodyState off = s;
    off.p = scale(off.p, 2.0);
    CHECK_THROWS_AS(state_to_kummer(off, surf, params), ConfigError);
}

}  // TEST_SUITE
