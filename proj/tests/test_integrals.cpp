#include "doctest.h"

#include <cmath>
#include <vector>

#include "clebsch/integrals.hpp"
#include "clebsch/params.hpp"
#include "clebsch/rng.hpp"

using namespace clebsch;

namespace {

double grad_norm(const Gradient& g) {
    return std::sqrt(norm2(g.dK) + norm2(g.dp));
}

BodyState random_state(SplitMix64& rng, double amp) {
    BodyState s;
    for (int i = 0; i < 3; ++i) {
        s.K[i] = rng.uniform(-amp, amp);
        s.p[i] = rng.uniform(-amp, amp);
    }
    return s;
}

}  // namespace

TEST_SUITE("integrals") {

TEST_CASE("structure constants: {K1, K2} = K3 and cyclic") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 8; ++trial) {
        BodyState s = random_state(rng, 2.0);
        for (int a = 0; a < 3; ++a) {
            int b = (a + 1) % 3, c = (a + 2) % 3;
            double br =
                lie_poisson_bracket(grad_coordinate(a), grad_coordinate(b), s);
            CHECK(br == doctest::Approx(s.K[c]).epsilon(1e-14));
            // {K_a, p_b} = p_c and {p_a, p_b} = 0 close the table.
            double kp = lie_poisson_bracket(grad_coordinate(a),
                                            grad_coordinate(3 + b), s);
            CHECK(kp == doctest::Approx(s.p[c]).epsilon(1e-14));
            double pp = lie_poisson_bracket(grad_coordinate(3 + a),
                                            grad_coordinate(3 + b), s);
            CHECK(pp == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("bracket is antisymmetric") {
    SystemParams params{1.0, 2.0, 3.0, 1.0, 1.0};
    SplitMix64 rng(11);
    for (int trial = 0; trial < 8; ++trial) {
        BodyState s = random_state(rng, 1.5);
        auto f = grad_c3(params);
        auto g = grad_c4(params);
        double fg = lie_poisson_bracket(f, g, s);
        double gf = lie_poisson_bracket(g, f, s);
        CHECK(fg == doctest::Approx(-gf).epsilon(1e-13));
    }
}

TEST_CASE("analytic gradients match finite differences") {
    SystemParams params{1.0, 2.0, 3.0, 0.7, 1.3};
    PhysicalParams phys = derive_physical(params);
    SplitMix64 rng(13);
    std::vector<std::pair<GradientFn, ScalarFn>> pairs;
    pairs.emplace_back(grad_c1(), [&](const BodyState& s) {
        return compute_integrals(s, params).c1;
    });
    pairs.emplace_back(grad_c2(), [&](const BodyState& s) {
        return compute_integrals(s, params).c2;
    });
    pairs.emplace_back(grad_c3(params), [&](const BodyState& s) {
        return compute_integrals(s, params).c3;
    });
    pairs.emplace_back(grad_c4(params), [&](const BodyState& s) {
        return compute_integrals(s, params).c4;
    });
    pairs.emplace_back(grad_h(phys.I, phys.m), [&](const BodyState& s) {
        return compute_HL(s, phys.I, phys.m).first;
    });
    pairs.emplace_back(grad_l(phys.I, phys.m), [&](const BodyState& s) {
        return compute_HL(s, phys.I, phys.m).second;
    });
    for (int trial = 0; trial < 4; ++trial) {
        BodyState s = random_state(rng, 1.0);
        for (auto& [gfn, sfn] : pairs) {
            Gradient ga = gfn(s);
            Gradient gf = fd_gradient(sfn, s);
            for (int i = 0; i < 3; ++i) {
                CHECK(ga.dK[i] == doctest::Approx(gf.dK[i]).epsilon(1e-6));
                CHECK(ga.dp[i] == doctest::Approx(gf.dp[i]).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("the four integrals plus H and L pairwise commute on the leaf") {
    SystemParams params{1.0, 2.0, 3.0, 1.0, 1.0};
    PhysicalParams phys = derive_physical(params);
    std::vector<GradientFn> grads = {grad_c1(),
                                     grad_c2(),
                                     grad_c3(params),
                                     grad_c4(params),
                                     grad_h(phys.I, phys.m),
                                     grad_l(phys.I, phys.m)};
    SplitMix64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        BodyState s = sample_leaf_state(rng);
        for (size_t a = 0; a < grads.size(); ++a) {
            for (size_t b = a + 1; b < grads.size(); ++b) {
                double br = lie_poisson_bracket(grads[a], grads[b], s);
                double na = grad_norm(grads[a](s));
                double nb = grad_norm(grads[b](s));
                double denom = std::max(na * nb, 1e-300);
                CHECK(std::fabs(br) / denom <= 1e-12);
            }
        }
    }
}

TEST_CASE("C1 and C2 commute with arbitrary smooth functions (Casimirs)") {
    SplitMix64 rng(17);
    // An asymmetric smooth test function with no special structure.
    ScalarFn f = [](const BodyState& s) {
        return s.K[0] * s.K[0] * s.p[1] + std::sin(s.K[2]) * s.p[0] -
               0.3 * s.p[2] * s.p[2] * s.K[1];
    };
    GradientFn gf = grad_fd(f);
    for (int trial = 0; trial < 8; ++trial) {
        BodyState s = random_state(rng, 1.2);
        double b1 = lie_poisson_bracket(grad_c1(), gf, s);
        double b2 = lie_poisson_bracket(grad_c2(), gf, s);
        double scale = std::max(1.0, grad_norm(gf(s)));
        CHECK(std::fabs(b1) / scale <= 1e-8);
        CHECK(std::fabs(b2) / scale <= 1e-8);
    }
}

TEST_CASE("pencil identity: H = lambda C3 + lambda' C4 up to the K/p split") {
    const double lams[][2] = {{1.0, 1.0}, {0.5, 0.0}, {0.0, 0.5}, {0.4, 1.7}};
    SplitMix64 rng(23);
    for (auto& lam : lams) {
        SystemParams params{1.0, 2.0, 3.0, lam[0], lam[1]};
        PhysicalParams phys = derive_physical(params);
        for (int trial = 0; trial < 4; ++trial) {
            BodyState s = random_state(rng, 1.0);
            IntegralValues v = compute_integrals(s, params);
            auto [h, l] = compute_HL(s, phys.I, phys.m);
            CHECK(h == doctest::Approx(lam[0] * v.c3 + lam[1] * v.c4)
                           .epsilon(1e-12));
            (void)l;
        }
    }
}

TEST_CASE("pencil field equals the Kirchhoff right-hand side") {
    const double lams[][2] = {{1.0, 1.0}, {0.3, 0.9}, {0.0, 0.5}};
    SplitMix64 rng(29);
    for (auto& lam : lams) {
        SystemParams params{1.0, 2.0, 3.0, lam[0], lam[1]};
        PhysicalParams phys = derive_physical(params);
        for (int trial = 0; trial < 6; ++trial) {
            BodyState s = random_state(rng, 1.5);
            BodyState a = pencil_field(s, params);
            BodyState b = kirchhoff_rhs(s, phys.I, phys.m);
            double scale = std::max({max_abs(a.K), max_abs(a.p), 1e-300});
            CHECK(max_abs(sub(a.K, b.K)) / scale <= 1e-12);
            CHECK(max_abs(sub(a.p, b.p)) / scale <= 1e-12);
        }
    }
}

TEST_CASE("pencil field is the Hamiltonian field of H") {
    SystemParams params{1.0, 2.0, 3.0, 1.0, 1.0};
    PhysicalParams phys = derive_physical(params);
    SplitMix64 rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        BodyState s = random_state(rng, 1.0);
        BodyState a = pencil_field(s, params);
        BodyState b = hamiltonian_field(s, grad_h(phys.I, phys.m)(s));
        double scale = std::max({max_abs(a.K), max_abs(a.p), 1e-300});
        CHECK(max_abs(sub(a.K, b.K)) / scale <= 1e-12);
        CHECK(max_abs(sub(a.p, b.p)) / scale <= 1e-12);
    }
}

TEST_CASE("leaf sampling and projection") {
    SplitMix64 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        BodyState s = sample_leaf_state(rng, 0.8);
        CHECK(on_leaf(s));
        IntegralValues v = compute_integrals(s, SystemParams{1, 2, 3, 1, 1});
        CHECK(std::fabs(v.c1) <= 1e-12);
        CHECK(v.c2 == doctest::Approx(1.0).epsilon(1e-12));

        BodyState off = random_state(rng, 1.0);
        off.p = scale(off.p, 3.7);  // push away from the unit sphere
        BodyState proj = project_to_leaf(off);
        CHECK(on_leaf(proj));
    }
}

}  // TEST_SUITE
