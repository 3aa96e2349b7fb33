#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "clebsch/actions.hpp"
#include "clebsch/dynamics.hpp"
#include "clebsch/errors.hpp"
#include "clebsch/integrals.hpp"
#include "clebsch/io.hpp"
#include "clebsch/kummer.hpp"
#include "clebsch/kummer_exact.hpp"
#include "clebsch/linearize.hpp"
#include "clebsch/params.hpp"
#include "clebsch/rng.hpp"
#include "clebsch/special.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace clebsch;

namespace {

struct RunConfig {
    SystemParams params{1.0, 2.0, 3.0, 1.0, 1.0};
    std::uint64_t seed = 12345;
    double k_radius = 1.0;
    double horizon = 10.0;
    double step = 1e-3;
    std::optional<BodyState> initial_state;
    std::optional<double> c3, c4;
    int samples = 1000;
    double fd_step = 1e-5;
    std::optional<double> sigma_prime;
    std::optional<int> axis;
};

void reject_unknown_keys(const ordered_json& obj,
                         const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) ==
            allowed.end()) {
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
        }
    }
}

double need_finite_number(const ordered_json& obj, const std::string& key,
                          const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw ConfigError(where + " needs numeric '" + key + "'");
    }
    double v = obj[key].get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(where + "." + key + " must be finite");
    }
    return v;
}

Vec3 need_vec3(const ordered_json& obj, const std::string& key,
               const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_array() || obj[key].size() != 3) {
        throw ConfigError(where + " needs '" + key + "' as an array of 3 numbers");
    }
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!obj[key][i].is_number()) {
            throw ConfigError(where + "." + key + " entries must be numbers");
        }
        v[i] = obj[key][i].get<double>();
        if (!std::isfinite(v[i])) {
            throw ConfigError(where + "." + key + " entries must be finite");
        }
    }
    return v;
}

RunConfig parse_config(const ordered_json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(
        doc,
        {"version", "params", "seed", "k_radius", "horizon", "step",
         "initial_state", "c3", "c4", "samples", "fd_step", "sigma_prime",
         "axis"},
        "config");
    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != 1) {
        throw ConfigError("config needs \"version\": 1");
    }
    if (!doc.contains("params") || !doc["params"].is_object()) {
        throw ConfigError("config needs a 'params' object");
    }
    const auto& pj = doc["params"];
    reject_unknown_keys(pj, {"j", "lambda", "lambda_prime"}, "params");
    Vec3 j = need_vec3(pj, "j", "params");
    double lambda = need_finite_number(pj, "lambda", "params");
    double lambda_prime = need_finite_number(pj, "lambda_prime", "params");

    RunConfig cfg;
    cfg.params = SystemParams{j[0], j[1], j[2], lambda, lambda_prime};

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer() ||
            (doc["seed"].is_number_integer() && doc["seed"].get<long long>() < 0 &&
             !doc["seed"].is_number_unsigned())) {
            throw ConfigError("config.seed must be a nonnegative integer");
        }
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("k_radius")) {
        cfg.k_radius = need_finite_number(doc, "k_radius", "config");
        if (!(cfg.k_radius > 0)) throw ConfigError("config.k_radius must be positive");
    }
    if (doc.contains("horizon")) {
        cfg.horizon = need_finite_number(doc, "horizon", "config");
        if (!(cfg.horizon > 0)) throw ConfigError("config.horizon must be positive");
    }
    if (doc.contains("step")) {
        cfg.step = need_finite_number(doc, "step", "config");
        if (!(cfg.step > 0)) throw ConfigError("config.step must be positive");
    }
    if (doc.contains("initial_state")) {
        const auto& st = doc["initial_state"];
        if (!st.is_object()) throw ConfigError("config.initial_state must be an object");
        reject_unknown_keys(st, {"K", "p"}, "initial_state");
        BodyState s;
        s.K = need_vec3(st, "K", "initial_state");
        s.p = need_vec3(st, "p", "initial_state");
        cfg.initial_state = s;
    }
    if (doc.contains("c3") != doc.contains("c4")) {
        throw ConfigError("config needs both 'c3' and 'c4' or neither");
    }
    if (doc.contains("c3")) {
        cfg.c3 = need_finite_number(doc, "c3", "config");
        cfg.c4 = need_finite_number(doc, "c4", "config");
    }
    if (doc.contains("samples")) {
        if (!doc["samples"].is_number_integer()) {
            throw ConfigError("config.samples must be an integer");
        }
        long long n = doc["samples"].get<long long>();
        if (n < 1 || n > 10000000) {
            throw ConfigError("config.samples must be between 1 and 10^7");
        }
        cfg.samples = static_cast<int>(n);
    }
    if (doc.contains("fd_step")) {
        cfg.fd_step = need_finite_number(doc, "fd_step", "config");
        if (!(cfg.fd_step > 0)) throw ConfigError("config.fd_step must be positive");
    }
    if (doc.contains("sigma_prime")) {
        cfg.sigma_prime = need_finite_number(doc, "sigma_prime", "config");
    }
    if (doc.contains("axis")) {
        if (!doc["axis"].is_number_integer()) {
            throw ConfigError("config.axis must be an integer");
        }
        int a = doc["axis"].get<int>();
        if (a < 1 || a > 3) throw ConfigError("config.axis must be 1, 2 or 3");
        cfg.axis = a;
    }
    return cfg;
}

BodyState config_state(const RunConfig& cfg) {
    if (cfg.initial_state) return *cfg.initial_state;
    SplitMix64 rng(cfg.seed);
    return sample_leaf_state(rng, cfg.k_radius);
}

std::pair<double, double> config_c(const RunConfig& cfg, const BodyState& s) {
    if (cfg.c3) return {*cfg.c3, *cfg.c4};
    IntegralValues v = compute_integrals(s, cfg.params);
    return {v.c3, v.c4};
}

void write_json(const std::string& path, const ordered_json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

ordered_json complex_json(std::complex<double> v, bool as_real) {
    if (as_real) return v.real();
    return ordered_json::array({v.real(), v.imag()});
}

std::uint64_t sample_seed(std::uint64_t seed, long long index) {
    return seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(index + 1));
}

int run_simulate(const RunConfig& cfg, const std::string& out, bool verbose) {
    BodyState s0 = config_state(cfg);
    if (verbose) {
        std::cerr << "integrating horizon " << cfg.horizon << " at step "
                  << cfg.step << "\n";
    }
    Trajectory traj = integrate(s0, cfg.params, cfg.horizon, cfg.step);
    write_trajectory_csv(out + "/trajectory.csv", traj);
    DriftReport rep = drift_report(traj);
    ordered_json j;
    j["c1"] = rep.c[0];
    j["c2"] = rep.c[1];
    j["c3"] = rep.c[2];
    j["c4"] = rep.c[3];
    j["h"] = rep.h_energy ? ordered_json(*rep.h_energy) : ordered_json(nullptr);
    j["l"] = rep.l_integral ? ordered_json(*rep.l_integral) : ordered_json(nullptr);
    j["max"] = rep.max_drift();
    write_json(out + "/drift.json", j);
    std::cout << "wrote " << out << "/trajectory.csv\n";
    std::cout << "wrote " << out << "/drift.json\n";
    return 0;
}

int run_invariants(const RunConfig& cfg, const std::string& out, int workers,
                   bool verbose) {
    struct NamedGrad {
        std::string name;
        GradientFn g;
    };
    std::vector<NamedGrad> grads = {{"C1", grad_c1()},
                                    {"C2", grad_c2()},
                                    {"C3", grad_c3(cfg.params)},
                                    {"C4", grad_c4(cfg.params)}};
    bool have_phys = true;
    PhysicalParams phys;
    try {
        phys = derive_physical(cfg.params);
    } catch (const DegenerateError&) {
        have_phys = false;
    }
    if (have_phys) {
        grads.push_back({"H", grad_h(phys.I, phys.m)});
        grads.push_back({"L", grad_l(phys.I, phys.m)});
    }
    const std::size_t ng = grads.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < ng; ++a) {
        for (std::size_t b = a + 1; b < ng; ++b) pairs.emplace_back(a, b);
    }
    int W = std::max(1, std::min(workers, 256));
    std::vector<std::vector<double>> pairmax(
        W, std::vector<double>(pairs.size(), 0.0));
    std::vector<double> fieldmax(W, 0.0);
    auto grad_norm = [](const Gradient& g) {
        return std::sqrt(norm2(g.dK) + norm2(g.dp));
    };
    auto work = [&](int w) {
        for (long long i = w; i < cfg.samples; i += W) {
            SplitMix64 rng(sample_seed(cfg.seed, i));
            BodyState s = sample_leaf_state(rng, cfg.k_radius);
            for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
                const auto& [a, b] = pairs[pi];
                double br = lie_poisson_bracket(grads[a].g, grads[b].g, s);
                double na = grad_norm(grads[a].g(s));
                double nb = grad_norm(grads[b].g(s));
                double nrm = std::fabs(br) / std::max(na * nb, 1e-300);
                pairmax[w][pi] = std::max(pairmax[w][pi], nrm);
            }
            if (have_phys) {
                BodyState fp = pencil_field(s, cfg.params);
                BodyState fk = kirchhoff_rhs(s, phys.I, phys.m);
                double scale = std::max({1.0, max_abs(fk.K), max_abs(fk.p)});
                double dev = std::max(max_abs(sub(fp.K, fk.K)),
                                      max_abs(sub(fp.p, fk.p))) /
                             scale;
                fieldmax[w] = std::max(fieldmax[w], dev);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < W; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& th : pool) th.join();

    ordered_json pj;
    double global = 0.0;
    std::string worst;
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        double m = 0.0;
        for (int w = 0; w < W; ++w) m = std::max(m, pairmax[w][pi]);
        std::string name = grads[pairs[pi].first].name + "," +
                           grads[pairs[pi].second].name;
        pj[name] = m;
        if (m >= global) {
            global = m;
            worst = name;
        }
    }
    double fdev = 0.0;
    for (int w = 0; w < W; ++w) fdev = std::max(fdev, fieldmax[w]);
    ordered_json j;
    j["samples"] = cfg.samples;
    j["max_normalized_bracket"] = global;
    j["worst_pair"] = worst;
    j["pairs"] = pj;
    j["pencil_vs_kirchhoff_max_rel"] =
        have_phys ? ordered_json(fdev) : ordered_json(nullptr);
    write_json(out + "/invariants.json", j);
    if (verbose) {
        std::cerr << "max normalized bracket " << global << " (" << worst
                  << ")\n";
    }
    std::cout << "wrote " << out << "/invariants.json\n";
    return 0;
}

int run_linearize(const RunConfig& cfg, const std::string& out, bool verbose) {
    BodyState s0 = config_state(cfg);
    Trajectory traj = integrate(s0, cfg.params, cfg.horizon, cfg.step);
    ResidualReport rep = linearization_residual(traj);
    XSeries xs = xcoords_series(traj);
    write_xcoords_csv(out + "/xcoords.csv", xs);
    ordered_json j;
    j["max_r1"] = rep.max_r1;
    j["max_r2"] = rep.max_r2;
    j["max_r1_ho"] = rep.max_r1_ho;
    j["max_r2_ho"] = rep.max_r2_ho;
    j["evaluated"] = rep.evaluated;
    j["excluded"] = rep.excluded;
    j["branch_failures"] = rep.branch_failures.size();
    j["degenerate"] = rep.degenerate;
    j["lambda"] = rep.lambda;
    j["lambda_prime"] = rep.lambda_prime;
    write_json(out + "/residual.json", j);
    if (verbose) {
        std::cerr << "residuals r1 " << rep.max_r1 << " r2 " << rep.max_r2
                  << " over " << rep.evaluated << " steps\n";
    }
    std::cout << "wrote " << out << "/residual.json\n";
    std::cout << "wrote " << out << "/xcoords.csv\n";
    return 0;
}

double quadext_to_double(const exact::QuadExt& q) {
    double a = static_cast<double>(q.a);
    if (q.b == 0) return a;
    return a + static_cast<double>(q.b) *
                   std::sqrt(static_cast<double>(q.D));
}

int run_kummer(const RunConfig& cfg, const std::string& out, bool verbose) {
    BodyState s0 = config_state(cfg);
    auto [c3, c4] = config_c(cfg, s0);
    SpectralData spectral = spectral_from_c(cfg.params, c3, c4);
    KummerSurface surf = surface_from_spectral(spectral);
    DoublePointReport rep = double_points(surf);

    // Lift the (exactly representable) double values to rationals and certify.
    exact::ExactSurface es = exact::exact_surface(
        {exact::Rat(cfg.params.j[0]), exact::Rat(cfg.params.j[1]),
         exact::Rat(cfg.params.j[2])},
        exact::Rat(c3), exact::Rat(c4));
    exact::Certification cert = exact::certify_double_points(es);

    auto certified_near = [&cert](const std::array<double, 4>& X) {
        for (const exact::ExactPoint& p : cert.points) {
            if (p.conjugate_pair) continue;
            double diff = 0.0;
            std::array<double, 4> Y;
            for (int i = 0; i < 4; ++i) Y[i] = quadext_to_double(p.X[i]);
            // Compare normalized representatives.
            try {
                Y = normalize_projective(Y);
            } catch (const ConfigError&) {
                continue;
            }
            for (int i = 0; i < 4; ++i) {
                diff = std::max(diff, std::fabs(X[i] - Y[i]));
            }
            if (diff <= 1e-6) return p.certified;
        }
        return false;
    };

    ordered_json points = ordered_json::array();
    for (const DoublePoint& dp : rep.points) {
        ordered_json pt;
        pt["coords"] = dp.X;
        pt["case"] = double_point_case_name(dp.kind);
        pt["certified"] = certified_near(dp.X);
        pt["quartic"] = quartic_eval(surf, dp.X);
        auto g = quartic_gradient(surf, dp.X);
        double gm = 0.0;
        for (double v : g) gm = std::max(gm, std::fabs(v));
        pt["gradient_max"] = gm;
        points.push_back(pt);
    }
    ordered_json j;
    j["c3"] = c3;
    j["c4"] = c4;
    j["lmn"] = spectral.lmn;
    j["d"] = spectral.d;
    j["points"] = points;
    j["complex_pair_count"] = rep.complex_pair_count;
    j["discriminants"] = rep.discriminants;
    j["exact_points"] = cert.points.size();
    j["exact_complex_points"] = cert.complex_points;
    j["all_certified"] = cert.all_certified;
    write_json(out + "/double_points.json", j);
    std::cout << "wrote " << out << "/double_points.json\n";

    if (!cfg.c3) {
        // The surface matches the sampled state's level set, so the cover-map
        // residual series along the flow is meaningful.
        Trajectory traj = integrate(s0, cfg.params, cfg.horizon, cfg.step);
        std::vector<double> res(traj.states.size());
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            auto X = state_to_kummer(traj.states[i], surf, cfg.params);
            res[i] = quartic_eval(surf, X);
        }
        write_series_csv(out + "/quartic_residual.csv", "t,quartic_residual",
                         traj.t, res);
        std::cout << "wrote " << out << "/quartic_residual.csv\n";
        if (verbose) {
            double m = 0.0;
            for (double v : res) m = std::max(m, std::fabs(v));
            std::cerr << "max quartic residual along flow " << m << "\n";
        }
    } else if (verbose) {
        std::cerr << "explicit c3/c4 given; skipping the trajectory residual "
                     "series\n";
    }
    return 0;
}

int run_actions(const RunConfig& cfg, const std::string& out, bool verbose) {
    BodyState s0 = config_state(cfg);
    auto [c3, c4] = config_c(cfg, s0);
    HyperellipticCurve curve = curve_from_c(cfg.params, c3, c4);
    ActionValues av = actions(curve);
    ordered_json j;
    j["c3"] = c3;
    j["c4"] = c4;
    if (curve.j45.real_pair) {
        j["branch_points"] = {curve.j[0], curve.j[1], curve.j[2],
                              curve.j45.j4, curve.j45.j5};
    } else {
        j["branch_points"] = nullptr;
    }
    j["a1"] = complex_json(av.a1.value, av.a1.real);
    j["a2"] = complex_json(av.a2.value, av.a2.real);
    if (curve.degenerate) {
        j["psi"] = nullptr;
        j["derivative_check"] = nullptr;
        j["note"] = "degenerate curve: period matrix refused";
    } else {
        try {
            PeriodMatrix pm = period_matrix(curve, action_cycles(curve));
            ordered_json psi = ordered_json::array();
            for (int r = 0; r < 2; ++r) {
                ordered_json row = ordered_json::array();
                for (int c = 0; c < 2; ++c) {
                    bool real = std::fabs(pm.psi[r][c].imag()) <=
                                1e-9 * std::max(1.0, std::abs(pm.psi[r][c]));
                    row.push_back(complex_json(pm.psi[r][c], real));
                }
                psi.push_back(row);
            }
            j["psi"] = psi;
            j["derivative_check"] =
                verify_action_derivatives(cfg.params, c3, c4, cfg.fd_step);
        } catch (const RefusalError& e) {
            j["psi"] = nullptr;
            j["derivative_check"] = nullptr;
            j["note"] = e.what();
        }
    }
    write_json(out + "/actions.json", j);
    if (verbose) {
        std::cerr << "a1 " << av.a1.value << " a2 " << av.a2.value << "\n";
    }
    std::cout << "wrote " << out << "/actions.json\n";
    return 0;
}

int run_special(const RunConfig& cfg, const std::string& out, bool verbose) {
    if (!cfg.axis && !cfg.sigma_prime) {
        throw ConfigError("special: config needs 'axis' and/or 'sigma_prime'");
    }
    const SystemParams params = cfg.params;
    FieldFn field = [params](const BodyState& s) {
        return pencil_field(s, params);
    };
    ordered_json families = ordered_json::array();
    if (cfg.axis) {
        SplitMix64 rng(cfg.seed);
        BodyState s0 = sample_axis_state(params, *cfg.axis, rng, cfg.k_radius);
        IntegralValues v = compute_integrals(s0, params);
        double cond = axis_condition_residual(params, v.c3, v.c4, *cfg.axis);
        double dev = subspace_invariance_test(s0, params, field,
                                              AxisSubspace{*cfg.axis},
                                              cfg.horizon, cfg.step);
        ordered_json fam;
        fam["type"] = "axis";
        fam["axis"] = *cfg.axis;
        fam["condition_residual"] = cond;
        fam["invariance_deviation"] = dev;
        families.push_back(fam);
        if (verbose) {
            std::cerr << "axis-" << *cfg.axis << " deviation " << dev << "\n";
        }
    }
    if (cfg.sigma_prime) {
        DeltaFamily dfam = delta_family_from_sigma(params, *cfg.sigma_prime);
        SplitMix64 rng(sample_seed(cfg.seed, 1));
        BodyState s0 = sample_delta_state(params, dfam, rng);
        IntegralValues v = compute_integrals(s0, params);
        double sp = dfam.sigma_prime;
        double cond = std::max(
            std::fabs(v.c3 - 2.0 * sp) / std::max(1.0, std::fabs(2.0 * sp)),
            std::fabs(v.c4 - sp * sp) / std::max(1.0, sp * sp));
        double dev = subspace_invariance_test(s0, params, field,
                                              DeltaSubspace{dfam}, cfg.horizon,
                                              cfg.step);
        ordered_json fam;
        fam["type"] = "delta";
        fam["sigma"] = dfam.sigma;
        fam["sigma_prime"] = dfam.sigma_prime;
        fam["delta"] = dfam.delta;
        fam["condition_residual"] = cond;
        fam["invariance_deviation"] = dev;
        families.push_back(fam);
        if (verbose) {
            std::cerr << "delta family deviation " << dev << "\n";
        }
    }
    ordered_json j;
    j["families"] = families;
    write_json(out + "/special.json", j);
    std::cout << "wrote " << out << "/special.json\n";
    return 0;
}

void emit_error(const std::string& type, const std::string& message) {
    ordered_json j;
    j["error"]["type"] = type;
    j["error"]["message"] = message;
    std::cerr << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rigid body in an ideal fluid: integrable-case toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out = ".";
    std::uint64_t seed_override = 0;
    bool seed_given = false;
    int workers = 1;
    bool verbose = false;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"simulate", "integrate the equations of motion and report drift"},
        {"invariants", "bracket commutation and field-agreement checks"},
        {"linearize", "separation coordinates and flow residuals"},
        {"kummer", "quartic surface double points and cover residuals"},
        {"actions", "periods and action integrals"},
        {"special", "invariant 3-dimensional families"}};
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "path to a run config JSON")
            ->required();
        sub->add_option("--out", out, "output directory (default .)");
        sub->add_option("--seed", seed_override, "override the config seed")
            ->each([&seed_given](const std::string&) { seed_given = true; });
        sub->add_option("--workers", workers, "worker threads for sampling");
        sub->add_flag("-v,--verbose", verbose, "progress notes on stderr");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("ConfigError", e.what());
        return 1;
    }

    try {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config " + config_path);
        ordered_json doc;
        try {
            doc = ordered_json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") +
                              e.what());
        }
        RunConfig cfg = parse_config(doc);
        if (seed_given) cfg.seed = seed_override;
        if (workers < 1 || workers > 256) {
            throw ConfigError("--workers must be between 1 and 256");
        }
        std::error_code ec;
        std::filesystem::create_directories(out, ec);
        if (ec) throw ConfigError("cannot create output directory " + out);

        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "simulate") return run_simulate(cfg, out, verbose);
        if (cmd == "invariants") return run_invariants(cfg, out, workers, verbose);
        if (cmd == "linearize") return run_linearize(cfg, out, verbose);
        if (cmd == "kummer") return run_kummer(cfg, out, verbose);
        if (cmd == "actions") return run_actions(cfg, out, verbose);
        if (cmd == "special") return run_special(cfg, out, verbose);
        throw ConfigError("unknown command " + cmd);
    } catch (const ConfigError& e) {
        emit_error("ConfigError", e.what());
        return 1;
    } catch (const ToleranceError& e) {
        emit_error("ToleranceError", e.what());
        return 2;
    } catch (const DegenerateError& e) {
        emit_error("DegenerateError", e.what());
        return 2;
    } catch (const BlowUpError& e) {
        emit_error("BlowUpError", e.what());
        return 2;
    } catch (const BranchError& e) {
        emit_error("BranchError", e.what());
        return 2;
    } catch (const RefusalError& e) {
        emit_error("RefusalError", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("InternalError", e.what());
        return 2;
    }
}
