#include "clebsch/kummer_exact.hpp"

#include <stdexcept>

#include "clebsch/errors.hpp"

namespace clebsch::exact {

namespace {

QuadExt canon(QuadExt x) {
    if (x.b == 0) x.D = 0;
    return x;
}

Rat shared_d(const QuadExt& x, const QuadExt& y) {
    if (x.b == 0) return y.D;
    if (y.b == 0) return x.D;
    if (x.D != y.D) throw std::logic_error("QuadExt: mixed extensions");
    return x.D;
}

}  // namespace

QuadExt qe(const Rat& r) { return QuadExt{r, 0, 0}; }

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return canon(QuadExt{x.a + y.a, x.b + y.b, shared_d(x, y)});
}

QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return canon(QuadExt{x.a - y.a, x.b - y.b, shared_d(x, y)});
}

QuadExt operator-(const QuadExt& x) { return QuadExt{-x.a, -x.b, x.D}; }

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Rat d = shared_d(x, y);
    return canon(QuadExt{x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d});
}

QuadExt inverse(const QuadExt& x) {
    if (x.b == 0) {
        if (x.a == 0) throw std::logic_error("QuadExt: inverse of zero");
        return QuadExt{Rat(1) / x.a, 0, 0};
    }
    Rat denom = x.a * x.a - x.b * x.b * x.D;
    if (denom == 0) throw std::logic_error("QuadExt: non-invertible element");
    return canon(QuadExt{x.a / denom, -x.b / denom, x.D});
}

std::optional<Rat> sqrt_exact(const Rat& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rat(0);
    using boost::multiprecision::cpp_int;
    cpp_int num = boost::multiprecision::numerator(r);
    cpp_int den = boost::multiprecision::denominator(r);
    cpp_int sn = boost::multiprecision::sqrt(num);
    cpp_int sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rat(sn) / Rat(sd);
}

ExactSurface exact_surface(const std::array<Rat, 3>& j, const Rat& c3,
                           const Rat& c4) {
    if (j[0] == j[1] || j[1] == j[2] || j[0] == j[2]) {
        throw ConfigError("exact_surface: j values must be pairwise distinct");
    }
    ExactSurface s;
    s.j = j;
    s.c3 = c3;
    s.c4 = c4;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        s.lmn[a] = (j[a] * j[a] - c3 * j[a] + c4) / ((j[a] - j[b]) * (j[a] - j[c]));
    }
    s.d[0] = Rat(1) / (j[2] - j[1]);
    s.d[1] = Rat(1) / (j[0] - j[2]);
    s.d[2] = Rat(1) / (j[1] - j[0]);
    return s;
}

namespace {

std::array<QuadExt, 3> u_exact(const ExactSurface& s,
                               const std::array<QuadExt, 4>& X) {
    std::array<QuadExt, 3> out;
    for (int i = 0; i < 3; ++i) {
        int b = (i + 1) % 3, c = (i + 2) % 3;
        out[i] = qe(s.lmn[i]) * X[3] + qe(s.d[b]) * X[b] - qe(s.d[c]) * X[c];
    }
    return out;
}

Rat u_coeff_exact(const ExactSurface& s, int i, int k) {
    if (k == 3) return s.lmn[i];
    if (k == (i + 1) % 3) return s.d[k];
    if (k == (i + 2) % 3) return -s.d[k];
    return Rat(0);
}

}  // namespace

QuadExt quartic_eval_exact(const ExactSurface& s,
                           const std::array<QuadExt, 4>& X) {
    auto u = u_exact(s, X);
    QuadExt g0 = X[0] * u[0], g1 = X[1] * u[1], g2 = X[2] * u[2];
    QuadExt two = qe(Rat(2));
    return g0 * g0 + g1 * g1 + g2 * g2 - two * (g0 * g1 + g1 * g2 + g2 * g0);
}

std::array<QuadExt, 4> quartic_gradient_exact(const ExactSurface& s,
                                              const std::array<QuadExt, 4>& X) {
    auto u = u_exact(s, X);
    std::array<QuadExt, 3> g{X[0] * u[0], X[1] * u[1], X[2] * u[2]};
    std::array<QuadExt, 3> fg;
    QuadExt two = qe(Rat(2));
    for (int i = 0; i < 3; ++i) {
        fg[i] = two * g[i] - two * (g[(i + 1) % 3] + g[(i + 2) % 3]);
    }
    std::array<QuadExt, 4> grad{qe(0), qe(0), qe(0), qe(0)};
    for (int k = 0; k < 4; ++k) {
        QuadExt acc = qe(0);
        for (int i = 0; i < 3; ++i) {
            QuadExt dgi = X[i] * qe(u_coeff_exact(s, i, k));
            if (k < 3 && i == k) dgi = dgi + u[i];
            acc = acc + fg[i] * dgi;
        }
        grad[k] = acc;
    }
    return grad;
}

namespace {

std::array<QuadExt, 4> normalize_exact(std::array<QuadExt, 4> X) {
    int last = -1;
    for (int i = 3; i >= 0; --i) {
        if (!X[i].is_zero()) {
            last = i;
            break;
        }
    }
    if (last < 0) throw std::logic_error("normalize_exact: zero vector");
    QuadExt inv = inverse(X[last]);
    for (auto& v : X) v = v * inv;
    return X;
}

bool same_point(const std::array<QuadExt, 4>& x,
                const std::array<QuadExt, 4>& y) {
    for (int i = 0; i < 4; ++i) {
        if (x[i].a != y[i].a || x[i].b != y[i].b) return false;
        if (x[i].b != 0 && x[i].D != y[i].D) return false;
    }
    return true;
}

}  // namespace

Certification certify_double_points(const ExactSurface& s) {
    Certification cert;
    auto push = [&cert](std::array<QuadExt, 4> X, bool conj) {
        X = normalize_exact(X);
        for (const ExactPoint& q : cert.points) {
            if (same_point(X, q.X)) return;
        }
        cert.points.push_back(ExactPoint{X, conj, false});
    };
    auto rat_point = [&push](const std::array<Rat, 4>& X) {
        push({qe(X[0]), qe(X[1]), qe(X[2]), qe(X[3])}, false);
    };

    for (int i = 0; i < 4; ++i) {
        std::array<Rat, 4> X{0, 0, 0, 0};
        X[i] = 1;
        rat_point(X);
    }
    const auto& d = s.d;
    const auto& lmn = s.lmn;
    rat_point({Rat(1) / d[0], Rat(1) / d[1], Rat(1) / d[2], 0});
    rat_point({lmn[1] / d[0], -lmn[0] / d[1], 0, 1});
    rat_point({0, lmn[2] / d[1], -lmn[1] / d[2], 1});
    rat_point({-lmn[2] / d[0], 0, lmn[0] / d[2], 1});

    for (int g = 0; g < 3; ++g) {
        int a = (g + 1) % 3, b = (g + 2) % 3;
        std::array<Rat, 4> v1{0, 0, 0, 0};
        v1[a] = d[b];
        v1[b] = d[a];
        std::array<Rat, 4> v2{0, 0, 0, 0};
        if (d[b] != 0 || lmn[g] != 0) {
            v2[b] = lmn[g];
            v2[3] = d[b];
        } else {
            v2[a] = lmn[g];
            v2[3] = -d[a];
        }
        auto conic = [&](const Rat& t) {
            std::array<QuadExt, 4> X;
            for (int i = 0; i < 4; ++i) X[i] = qe(v1[i] + t * v2[i]);
            auto u = u_exact(s, X);
            QuadExt v = X[a] * u[a] - X[b] * u[b];
            return v.a;  // rational inputs give a rational value
        };
        Rat q0 = conic(0), qp = conic(1), qm = conic(-1);
        Rat ca = (qp + qm) / 2 - q0;
        Rat cb = (qp - qm) / 2;
        Rat cc = q0;
        auto line_point = [&](const QuadExt& t) {
            std::array<QuadExt, 4> X;
            for (int i = 0; i < 4; ++i) X[i] = qe(v1[i]) + t * qe(v2[i]);
            return X;
        };
        if (ca == 0) {
            if (cb != 0) {
                push(line_point(qe(-cc / cb)), false);
                push({qe(v2[0]), qe(v2[1]), qe(v2[2]), qe(v2[3])}, false);
            }
            continue;
        }
        Rat disc = cb * cb - 4 * ca * cc;
        if (auto root = sqrt_exact(disc)) {
            push(line_point(qe((-cb - *root) / (2 * ca))), false);
            push(line_point(qe((-cb + *root) / (2 * ca))), false);
        } else {
            bool conj = disc < 0;
            QuadExt tminus{-cb / (2 * ca), Rat(-1) / (2 * ca), disc};
            QuadExt tplus{-cb / (2 * ca), Rat(1) / (2 * ca), disc};
            push(line_point(tminus), conj);
            push(line_point(tplus), conj);
        }
    }

    cert.all_certified = !cert.points.empty();
    for (ExactPoint& p : cert.points) {
        if (p.conjugate_pair) ++cert.complex_points;
        bool ok = quartic_eval_exact(s, p.X).is_zero();
        if (ok) {
            auto grad = quartic_gradient_exact(s, p.X);
            for (const QuadExt& gcomp : grad) ok = ok && gcomp.is_zero();
        }
        p.certified = ok;
        cert.all_certified = cert.all_certified && ok;
    }
    return cert;
}

}  // namespace clebsch::exact
