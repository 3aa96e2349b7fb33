#include "clebsch/integrals.hpp"

#include <cmath>

namespace clebsch {

IntegralValues compute_integrals(const BodyState& s, const SystemParams& params) {
    const auto& j = params.j;
    const double S = params.jsum();
    IntegralValues v{};
    v.c1 = dot(s.K, s.p);
    v.c2 = dot(s.p, s.p);
    v.c3 = 0.0;
    v.c4 = 0.0;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        v.c3 += s.K[a] * s.K[a] + (S - j[a]) * s.p[a] * s.p[a];
        v.c4 += j[a] * s.K[a] * s.K[a] + j[b] * j[c] * s.p[a] * s.p[a];
    }
    try {
        PhysicalParams ph = derive_physical(params);
        auto [h, l] = compute_HL(s, ph.I, ph.m);
        v.h = h;
        v.l = l;
    } catch (const DegenerateError&) {
        // H, L undefined for this pencil member; the quadratics stand alone.
    }
    return v;
}

std::pair<double, double> compute_HL(const BodyState& s,
                                     const std::array<double, 3>& I,
                                     const std::array<double, 3>& m) {
    double h = 0.0, l = 0.0;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        h += s.K[a] * s.K[a] / I[a] + s.p[a] * s.p[a] / m[a];
        l += s.K[a] * s.K[a] / (m[a] * I[a]) - s.p[a] * s.p[a] / (m[b] * m[c]);
    }
    return {0.5 * h, l};
}

GradientFn grad_c1() {
    return [](const BodyState& s) {
        Gradient g;
        g.dK = s.p;
        g.dp = s.K;
        return g;
    };
}

GradientFn grad_c2() {
    return [](const BodyState& s) {
        Gradient g;
        g.dp = scale(s.p, 2.0);
        return g;
    };
}

GradientFn grad_c3(const SystemParams& params) {
    const auto j = params.j;
    const double S = j[0] + j[1] + j[2];
    return [j, S](const BodyState& s) {
        Gradient g;
        for (int a = 0; a < 3; ++a) {
            g.dK[a] = 2.0 * s.K[a];
            g.dp[a] = 2.0 * (S - j[a]) * s.p[a];
        }
        return g;
    };
}

GradientFn grad_c4(const SystemParams& params) {
    const auto j = params.j;
    return [j](const BodyState& s) {
        Gradient g;
        for (int a = 0; a < 3; ++a) {
            int b = (a + 1) % 3, c = (a + 2) % 3;
            g.dK[a] = 2.0 * j[a] * s.K[a];
            g.dp[a] = 2.0 * j[b] * j[c] * s.p[a];
        }
        return g;
    };
}

GradientFn grad_h(std::array<double, 3> I, std::array<double, 3> m) {
    return [I, m](const BodyState& s) {
        Gradient g;
        for (int a = 0; a < 3; ++a) {
            g.dK[a] = s.K[a] / I[a];
            g.dp[a] = s.p[a] / m[a];
        }
        return g;
    };
}

GradientFn grad_l(std::array<double, 3> I, std::array<double, 3> m) {
    return [I, m](const BodyState& s) {
        Gradient g;
        for (int a = 0; a < 3; ++a) {
            int b = (a + 1) % 3, c = (a + 2) % 3;
            g.dK[a] = 2.0 * s.K[a] / (m[a] * I[a]);
            g.dp[a] = -2.0 * s.p[a] / (m[b] * m[c]);
        }
        return g;
    };
}

GradientFn grad_coordinate(int index) {
    return [index](const BodyState&) {
        Gradient g;
        if (index < 3) {
            g.dK[index] = 1.0;
        } else {
            g.dp[index - 3] = 1.0;
        }
        return g;
    };
}

Gradient fd_gradient(const ScalarFn& f, const BodyState& s, double step) {
    Gradient g;
    for (int a = 0; a < 3; ++a) {
        BodyState sp = s, sm = s;
        sp.K[a] += step;
        sm.K[a] -= step;
        g.dK[a] = (f(sp) - f(sm)) / (2.0 * step);
        sp = s;
        sm = s;
        sp.p[a] += step;
        sm.p[a] -= step;
        g.dp[a] = (f(sp) - f(sm)) / (2.0 * step);
    }
    return g;
}

GradientFn grad_fd(ScalarFn f, double step) {
    return [f = std::move(f), step](const BodyState& s) {
        return fd_gradient(f, s, step);
    };
}

double lie_poisson_bracket(const GradientFn& grad_f, const GradientFn& grad_g,
                           const BodyState& s) {
    Gradient a = grad_f(s);
    Gradient b = grad_g(s);
    return dot(s.K, cross(a.dK, b.dK)) +
           dot(s.p, sub(cross(a.dK, b.dp), cross(b.dK, a.dp)));
}

BodyState hamiltonian_field(const BodyState& s, const Gradient& g) {
    BodyState v;
    v.K = add(cross(s.K, g.dK), cross(s.p, g.dp));
    v.p = cross(s.p, g.dK);
    return v;
}

BodyState pencil_field(const BodyState& s, const SystemParams& params) {
    Gradient g;
    for (int a = 0; a < 3; ++a) {
        g.dK[a] = 2.0 * params.n(a) * s.K[a];
        g.dp[a] = 2.0 * params.nprime(a) * s.p[a];
    }
    return hamiltonian_field(s, g);
}

BodyState kirchhoff_rhs(const BodyState& s, const std::array<double, 3>& I,
                        const std::array<double, 3>& m) {
    const Vec3& K = s.K;
    const Vec3& p = s.p;
    BodyState v;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        v.K[a] = (1.0 / I[c] - 1.0 / I[b]) * K[b] * K[c] +
                 (1.0 / m[c] - 1.0 / m[b]) * p[b] * p[c];
    }
    v.p[0] = (1.0 / I[2]) * p[1] * K[2] - (1.0 / I[1]) * p[2] * K[1];
    v.p[1] = (1.0 / I[0]) * p[2] * K[0] - (1.0 / I[2]) * p[0] * K[2];
    v.p[2] = (1.0 / I[1]) * p[0] * K[1] - (1.0 / I[0]) * p[1] * K[0];
    return v;
}

bool on_leaf(const BodyState& s, double tol) {
    return std::fabs(dot(s.K, s.p)) <= tol &&
           std::fabs(dot(s.p, s.p) - 1.0) <= tol;
}

BodyState project_to_leaf(const BodyState& s) {
    double pn = norm(s.p);
    if (!(pn > 0.0) || !finite(s.p) || !finite(s.K)) {
        throw ConfigError("project_to_leaf: p must be finite and nonzero");
    }
    BodyState out;
    out.p = scale(s.p, 1.0 / pn);
    out.K = axpy(s.K, -dot(s.K, out.p), out.p);
    return out;
}

}  // namespace clebsch
