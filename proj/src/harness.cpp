#include "dnls/harness.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "dnls/fixedpoint.hpp"
#include "dnls/gauge.hpp"
#include "dnls/spectral.hpp"
#include "dnls/trains.hpp"

namespace dnls::harness {

namespace fs = std::filesystem;

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
}

void apply_override(json& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw ValidationError("override must be KEY=VALUE: " + kv);
    const std::string key = kv.substr(0, eq);
    const std::string raw = kv.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }
    json* node = &cfg;
    std::size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string part = key.substr(pos, dot - pos);
        if (part.empty()) throw ValidationError("bad override key: " + key);
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        pos = dot + 1;
    }
}

namespace {

Variant variant_from(const json& cfg) {
    const std::string v = cfg.value("variant", "dnls1");
    if (v == "dnls1") return Variant::dnls1;
    if (v == "dnls2") return Variant::dnls2;
    throw ValidationError("variant must be dnls1 or dnls2, got " + v);
}

std::string fmt17(double v) { return fmt::format("{:.17g}", v); }

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw ValidationError("cannot write " + p.string());
    out << text;
}

}  // namespace

TrainSpec spec_from_config(const json& cfg) {
    TrainSpec spec;
    spec.variant = variant_from(cfg);
    spec.b = cfg.value("b", 0.0);
    if (cfg.contains("kink")) {
        const json& k = cfg.at("kink");
        KinkParams kp;
        kp.c0 = k.at("c0").get<double>();
        kp.b = spec.b;
        kp.omega0 = k.contains("omega0") ? k.at("omega0").get<double>()
                                         : kp.c0 * kp.c0 / 4.0 + kp.omega_tilde1();
        kp.theta0 = k.value("theta0", 0.0);
        kp.x0 = k.value("x0", 0.0);
        const std::string ori = k.value("orientation", "falling");
        if (ori == "falling") kp.orientation = Orientation::falling;
        else if (ori == "rising") kp.orientation = Orientation::rising;
        else throw ValidationError("kink orientation must be rising or falling");
        spec.kink = kp;
    }
    if (cfg.contains("solitons")) {
        for (const json& s : cfg.at("solitons")) {
            SolitonParams p;
            p.variant = spec.variant;
            p.b = spec.b;
            p.omega = s.at("omega").get<double>();
            p.c = s.at("c").get<double>();
            p.theta = s.value("theta", 0.0);
            p.x0 = s.value("x0", 0.0);
            spec.solitons.push_back(p);
        }
    }
    if (cfg.contains("family")) {
        const json& f = cfg.at("family");
        auto fam = scaled_family(spec.variant, f.at("d").get<std::vector<double>>(),
                                 f.at("h").get<std::vector<double>>(),
                                 f.at("M").get<double>(), spec.b);
        const double xoff = f.value("x_offset", 0.0);
        for (auto& p : fam) {
            p.x0 += xoff;
            spec.solitons.push_back(p);
        }
    }
    spec.validate();
    return spec;
}

GridPtr grid_from_config(const json& cfg) {
    const json& g = cfg.at("grid");
    return make_grid(g.at("L").get<double>(), g.at("N").get<std::size_t>());
}

json resolved_config(const json& cfg) {
    json out = cfg;
    TrainSpec spec = spec_from_config(cfg);
    json derived;
    derived["gamma"] = gamma_of(spec.variant, spec.b);
    json hs = json::array();
    for (const auto& s : spec.solitons) hs.push_back(s.h());
    derived["h"] = hs;
    if (spec.kink) {
        derived["h0"] = spec.kink->h0();
        derived["zeta"] = spec.kink->zeta();
        derived["omega_tilde1"] = spec.kink->omega_tilde1();
        derived["v_star_includes_kink"] = true;
    }
    if (spec.members() >= 2) {
        derived["v_star"] = v_star(spec);
        derived["lambda"] = lambda_of(spec);
    }
    out["derived"] = derived;
    return out;
}

namespace {

std::vector<double> times_from(const json& cfg, const char* key = "times") {
    if (!cfg.contains(key)) throw ValidationError(std::string("config needs \"") + key + "\"");
    const json& t = cfg.at(key);
    if (t.is_array()) return t.get<std::vector<double>>();
    const double start = t.at("start").get<double>();
    const double end = t.at("end").get<double>();
    const auto count = t.at("count").get<std::size_t>();
    if (count < 2 || !(end > start))
        throw ValidationError("times: need end > start and count >= 2");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = start + (end - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

int cmd_profile(const json& cfg, const fs::path& outdir) {
    TrainSpec spec = spec_from_config(cfg);
    GridPtr grid = grid_from_config(cfg);
    const double t = cfg.value("t", 0.0);
    const double tail_tol = cfg.value("tail_tol", 1e-10);
    auto members = detail::member_fields(spec, t, grid, 0, tail_tol);
    std::string csv = "x";
    for (std::size_t j = 0; j < members.size(); ++j)
        csv += fmt::format(",re_{0},im_{0},abs_{0}", j);
    csv += ",re_sum,im_sum,abs_sum\n";
    for (std::size_t n = 0; n < grid->N; ++n) {
        csv += fmt17(grid->x(n));
        Complex sum = 0.0;
        for (const auto& m : members) {
            const Complex v = m.values[n];
            sum += v;
            csv += fmt::format(",{},{},{}", fmt17(v.real()), fmt17(v.imag()),
                               fmt17(std::abs(v)));
        }
        csv += fmt::format(",{},{},{}\n", fmt17(sum.real()), fmt17(sum.imag()),
                           fmt17(std::abs(sum)));
    }
    write_text(outdir / "profile.csv", csv);
    json report;
    report["command"] = "profile";
    report["config"] = resolved_config(cfg);
    report["t"] = t;
    write_text(outdir / "report.json", report.dump(2) + "\n");
    return 0;
}

int cmd_residual(const json& cfg, const fs::path& outdir) {
    TrainSpec spec = spec_from_config(cfg);
    GridPtr grid = grid_from_config(cfg);
    const double tail_tol = cfg.value("tail_tol", 1e-10);
    auto times = times_from(cfg);
    DecaySeries series = residual_decay(spec, grid, times, tail_tol);
    const double lam = lambda_of(spec);
    std::string csv = "t,s,bound\n";
    for (std::size_t i = 0; i < series.times.size(); ++i)
        csv += fmt::format("{},{},{}\n", fmt17(series.times[i]), fmt17(series.values[i]),
                           fmt17(std::exp(-lam * series.times[i])));
    write_text(outdir / "series.csv", csv);
    json report;
    report["command"] = "residual";
    report["config"] = resolved_config(cfg);
    report["v_star"] = v_star(spec);
    report["lambda"] = lam;
    report["fitted_rate"] = series.fit.rate;
    report["fitted_amplitude"] = series.fit.amplitude;
    report["rsquared"] = series.fit.rsquared;
    report["fit_window"] = {series.fit.t_start, series.fit.t_end};
    report["rate_dominates_lambda"] = series.fit.rate >= lam;
    if (std::isfinite(series.empirical_T0)) report["empirical_T0"] = series.empirical_T0;
    write_text(outdir / "report.json", report.dump(2) + "\n");
    return 0;
}

int cmd_evolve(const json& cfg, const fs::path& outdir) {
    TrainSpec spec = spec_from_config(cfg);
    GridPtr grid = grid_from_config(cfg);
    const double tail_tol = cfg.value("tail_tol", 1e-10);
    const double T0 = cfg.at("T0").get<double>();
    const double T1 = cfg.at("T1").get<double>();
    const double dt = cfg.at("dt").get<double>();
    const auto stride = cfg.value("stride", std::size_t{10});
    const double gate = cfg.value("gate_threshold", 0.2);
    DriftSeries series = drift_experiment(spec, grid, T0, T1, dt, gate, tail_tol, stride);
    std::string csv = "t,dist_h1\n";
    for (std::size_t i = 0; i < series.times.size(); ++i)
        csv += fmt::format("{},{}\n", fmt17(series.times[i]), fmt17(series.distances[i]));
    write_text(outdir / "series.csv", csv);
    json report;
    report["command"] = "evolve";
    report["config"] = resolved_config(cfg);
    report["separation_lhs"] = series.separation_lhs;
    report["v_star"] = series.v_star;
    report["gate_threshold"] = series.gate_threshold;
    report["separation_gate_warning"] = series.gate_warning;
    report["max_dist_h1"] = *std::max_element(series.distances.begin(), series.distances.end());
    write_text(outdir / "report.json", report.dump(2) + "\n");
    return 0;
}

int cmd_fixpoint(const json& cfg, const fs::path& outdir) {
    TrainSpec spec = spec_from_config(cfg);
    GridPtr grid = grid_from_config(cfg);
    const double tail_tol = cfg.value("tail_tol", 1e-10);
    const double T0 = cfg.at("T0").get<double>();
    const double Tmax = cfg.at("Tmax").get<double>();
    const double dt_s = cfg.at("dt_s").get<double>();
    const auto max_iters = cfg.value("max_iters", std::size_t{25});
    const double tol = cfg.value("tol", 1e-10);
    auto [eta, rep] = picard_solve(spec, grid, T0, Tmax, dt_s, max_iters, tol, tail_tol);
    Synthesis syn = synthesize(spec, eta, tail_tol);
    std::string csv = "t,dist_h1,relation_defect\n";
    for (std::size_t i = 0; i < syn.times.size(); ++i)
        csv += fmt::format("{},{},{}\n", fmt17(syn.times[i]), fmt17(syn.dist_h1[i]),
                           fmt17(syn.relation_defects[i]));
    write_text(outdir / "series.csv", csv);
    json report;
    report["command"] = "fixpoint";
    report["config"] = resolved_config(cfg);
    report["iterates"] = rep.iterates;
    report["xnorms"] = rep.xnorms;
    report["ratios"] = rep.ratios;
    report["final_defect"] = rep.final_defect;
    report["converged"] = rep.converged;
    report["lambda"] = rep.lambda;
    report["max_relation_defect"] =
        *std::max_element(syn.relation_defects.begin(), syn.relation_defects.end());
    write_text(outdir / "report.json", report.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const json& cfg, const fs::path& outdir) {
    if (!cfg.contains("runs") || !cfg.at("runs").is_array())
        throw ValidationError("sweep config needs a \"runs\" array");
    int worst = 0;
    std::size_t idx = 0;
    for (const json& run : cfg.at("runs")) {
        const std::string name = run.value("name", fmt::format("run{:03}", idx));
        const std::string cmd = run.at("command").get<std::string>();
        json sub = run;
        sub.erase("command");
        if (sub.contains("name")) sub.erase("name");
        const int rc = run_command_guarded(cmd, sub, (outdir / name).string());
        std::cout << fmt::format("sweep: {} ({}) -> exit {}\n", name, cmd, rc);
        if (rc != 0 && worst == 0) worst = rc;
        ++idx;
    }
    return worst;
}

}  // namespace

int run_command(const std::string& command, const json& cfg, const std::string& outdir) {
    fs::path out(outdir);
    fs::create_directories(out);
    if (command == "profile") return cmd_profile(cfg, out);
    if (command == "residual") return cmd_residual(cfg, out);
    if (command == "evolve") return cmd_evolve(cfg, out);
    if (command == "fixpoint") return cmd_fixpoint(cfg, out);
    if (command == "sweep") return cmd_sweep(cfg, out);
    throw ValidationError("unknown command: " + command);
}

int run_command_guarded(const std::string& command, const json& cfg, const std::string& outdir) {
    try {
        return run_command(command, cfg, outdir);
    } catch (const ValidationError& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return 2;
    } catch (const DecayViolation& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateError& e) {
        std::cerr << "degenerate experiment: " << e.what() << "\n";
        return 3;
    } catch (const DivergenceError& e) {
        std::cerr << "numerical divergence: " << e.what() << "\n";
        return 4;
    } catch (const ContractionError& e) {
        std::cerr << "contraction failure: " << e.what() << "\n";
        return 5;
    } catch (const json::exception& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace dnls::harness
