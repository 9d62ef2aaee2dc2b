// Acceptance suite: one pass/fail line per criterion. Criterion 5 is expected
// to fail at desk scale (see README); the process exit code reflects the
// remaining criteria so regressions elsewhere stay visible.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dnls/dynamics.hpp"
#include "dnls/fixedpoint.hpp"
#include "dnls/gauge.hpp"
#include "dnls/profiles.hpp"
#include "dnls/spectral.hpp"
#include "dnls/trains.hpp"

using namespace dnls;

namespace {

const Complex I(0.0, 1.0);

Field sample(const GridPtr& grid, const std::function<Complex(double)>& f, double t = 0.0) {
    Field out(grid, t);
    for (std::size_t n = 0; n < grid->N; ++n) out.values[n] = f(grid->x(n));
    return out;
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
    return m;
}

double stationary_residual(const SolitonParams& p, const GridPtr& grid) {
    Field phi = soliton_phi(p, grid);
    Field phix = spectral::derivative(phi, 1);
    Field phixx = spectral::derivative(phi, 2);
    Field nl = p.variant == Variant::dnls1
                   ? spectral::dealiased(
                         [&](Complex f, Complex fx) {
                             const double f2 = std::norm(f);
                             return -I * f2 * fx - p.b * f2 * f2 * f;
                         },
                         phi, phix)
                   : spectral::dealiased(
                         [&](Complex f, Complex fx) {
                             const double f2 = std::norm(f);
                             return -I * f * f * std::conj(fx) - p.b * f2 * f2 * f;
                         },
                         phi, phix);
    Field res(grid, 0.0);
    for (std::size_t n = 0; n < grid->N; ++n)
        res.values[n] = -phixx.values[n] + p.omega * phi.values[n] +
                        I * p.c * phix.values[n] + nl.values[n];
    return spectral::sup_norm(res);
}

TrainSpec m8_family(double h, double x_offset) {
    TrainSpec spec;
    spec.variant = Variant::dnls1;
    spec.b = 0.0;
    spec.solitons = scaled_family(Variant::dnls1, {-1.0, -2.0}, {h, h}, 8.0);
    for (auto& p : spec.solitons) p.x0 = x_offset;
    return spec;
}

TrainSpec kink_train() {
    TrainSpec spec;
    spec.variant = Variant::dnls2;
    spec.b = 0.125;
    KinkParams kp;
    kp.c0 = 1.0;
    kp.omega0 = 0.5;
    kp.b = 0.125;
    kp.orientation = Orientation::falling;
    spec.kink = kp;
    SolitonParams p;
    p.variant = Variant::dnls2;
    p.omega = 16.25;
    p.c = 8.0;
    p.b = 0.125;
    p.x0 = 5.0;
    spec.solitons.push_back(p);
    return spec;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome criterion1() {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst1 = 0.0, worst2 = 0.0;
    auto g1 = make_grid(80.0, 2048);
    for (int i = 0; i < 10; ++i) {
        SolitonParams p;
        p.variant = Variant::dnls1;
        p.b = 0.3 * unit(rng);
        p.omega = 0.8 + 0.7 * unit(rng);
        p.c = 0.6 * 2.0 * std::sqrt(p.omega) * (2.0 * unit(rng) - 1.0);
        worst1 = std::max(worst1, stationary_residual(p, g1));
    }
    auto g2 = make_grid(160.0, 4096);
    for (int i = 0; i < 10; ++i) {
        SolitonParams p;
        p.variant = Variant::dnls2;
        p.b = 0.25 * unit(rng);
        const double gamma = p.gamma();
        const double sstar = std::sqrt(gamma / (1.0 + gamma));
        p.omega = 0.8 + 0.7 * unit(rng);
        p.c = 2.0 * std::sqrt(p.omega) * (sstar + (1.0 - sstar) * (0.2 + 0.4 * unit(rng)));
        worst2 = std::max(worst2, stationary_residual(p, g2));
    }

    KinkParams kp;
    kp.c0 = 1.0;
    kp.omega0 = 0.5;
    kp.b = 0.125;
    KinkProfile prof(kp);
    auto gk = make_grid(160.0, 2048);
    Field slope(gk, 0.0);
    for (std::size_t n = 0; n < gk->N; ++n) slope.values[n] = prof.dphi(gk->x(n), 1);
    Field second = spectral::derivative(slope, 1);
    const double wt = kp.omega_tilde1();
    const double gamma = kp.gamma();
    double kink_res = 0.0;
    for (std::size_t n = 0; n < gk->N; ++n) {
        const double x = gk->x(n);
        if (std::abs(x) > 60.0) continue;
        const double P = prof.phi(x);
        const double r = -second.values[n].real() + wt * P - kp.c0 * 0.5 * P * P * P +
                         3.0 * gamma / 16.0 * P * P * P * P * P;
        kink_res = std::max(kink_res, std::abs(r));
    }
    const double zeta = kp.zeta();
    const double plateau_err =
        std::max(std::abs(prof.phi(-60.0) - zeta), std::abs(prof.phi(60.0)));

    const bool pass = worst1 < 1e-6 && worst2 < 1e-6 && kink_res < 1e-8 && plateau_err < 1e-8;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "soliton residual sup %.2e / %.2e, kink residual %.2e, plateau error %.2e",
                  worst1, worst2, kink_res, plateau_err);
    return {pass, buf};
}

Outcome criterion2() {
    bool pass = true;
    std::string detail;
    char buf[160];

    struct Case {
        Variant variant;
        double b, omega, c, L, dt;
        std::size_t N;
    };
    for (const Case& cs : {Case{Variant::dnls1, 0.0, 1.0, 0.5, 80.0, 5e-4, 1024},
                           Case{Variant::dnls2, 0.125, 1.0, 1.8, 160.0, 1e-3, 2048}}) {
        auto g = make_grid(cs.L, cs.N);
        TrainSpec spec;
        spec.variant = cs.variant;
        spec.b = cs.b;
        SolitonParams p;
        p.variant = cs.variant;
        p.omega = cs.omega;
        p.c = cs.c;
        p.b = cs.b;
        spec.solitons.push_back(p);
        Field u0 = soliton_field(p, 0.0, g);
        Trajectory traj = evolve(u0, 0.0, 5.0, cs.dt, cs.variant, cs.b, &spec, 1000);
        double dist = 0.0, drift = 0.0;
        const double m0 = traj.observations.front().mass;
        for (const auto& ob : traj.observations) {
            dist = std::max(dist, ob.dist);
            drift = std::max(drift, std::abs(ob.mass - m0) / m0);
        }
        pass = pass && dist <= 1e-6 && drift <= 1e-9;
        std::snprintf(buf, sizeof buf, "%s dist %.2e drift %.2e; ",
                      cs.variant == Variant::dnls1 ? "dnls1" : "dnls2", dist, drift);
        detail += buf;
    }

    // plane-wave dispersion, one step
    auto g = make_grid(2.0 * std::numbers::pi, 64);
    const double A = 0.7, k = 3.0, b = 0.2, dt = 1e-3;
    Field pw = sample(g, [&](double x) { return A * std::exp(I * k * x); });
    double pw_err = 0.0;
    for (Variant variant : {Variant::dnls1, Variant::dnls2}) {
        const double sgn = variant == Variant::dnls1 ? 1.0 : -1.0;
        const double sigma = k * k + sgn * A * A * k - b * A * A * A * A;
        Field one = step(pw, dt, variant, b);
        Field expect = sample(g, [&](double x) { return A * std::exp(I * (k * x - sigma * dt)); });
        pw_err = std::max(pw_err, max_abs_diff(one, expect));
    }
    pass = pass && pw_err < 1e-10;

    // one-step order under dt halving
    auto go = make_grid(40.0, 512);
    Field v0 = sample(go, [](double x) {
        return std::exp(-x * x / 3.0) * std::exp(Complex(0.0, 0.4 * x));
    });
    const double T = 0.2;
    auto solve = [&](double dts) {
        return evolve(v0, 0.0, T, dts, Variant::dnls1, 0.1).states.back();
    };
    Field ref = solve(T / 256.0);
    const double ratio = max_abs_diff(solve(T / 8.0), ref) / max_abs_diff(solve(T / 16.0), ref);
    pass = pass && ratio >= 12.0;

    std::snprintf(buf, sizeof buf, "plane-wave per-step %.2e, order ratio %.1f", pw_err, ratio);
    detail += buf;
    return {pass, detail};
}

Outcome criterion3() {
    auto g = make_grid(80.0, 2048);
    Field u = sample(g, [](double x) {
        return 0.9 / std::cosh(x) * std::exp(Complex(0.0, 0.25 * x)) +
               0.3 * std::exp(-(x - 4.0) * (x - 4.0));
    });
    double rt = 0.0, fresh = 0.0;
    for (Variant variant : {Variant::dnls1, Variant::dnls2}) {
        GaugePair pair = to_gauge(u, variant);
        Field back = from_gauge(pair);
        Field diff = back;
        for (std::size_t n = 0; n < diff.size(); ++n) diff.values[n] -= u.values[n];
        rt = std::max(rt, spectral::sobolev_norm(diff, 1));
        fresh = std::max(fresh, relation_defect(pair));
    }

    // gauged-system residual on exact solitons via Richardson-free small-step FD
    double res = 0.0;
    struct Case {
        Variant variant;
        double b, omega, c, L;
        std::size_t N;
    };
    for (const Case& cs : {Case{Variant::dnls1, 0.0, 1.0, 0.5, 80.0, 1024},
                           Case{Variant::dnls2, 0.125, 1.0, 1.8, 160.0, 2048}}) {
        auto gg = make_grid(cs.L, cs.N);
        TrainSpec spec;
        spec.variant = cs.variant;
        spec.b = cs.b;
        SolitonParams p;
        p.variant = cs.variant;
        p.omega = cs.omega;
        p.c = cs.c;
        p.b = cs.b;
        spec.solitons.push_back(p);
        const double t = 0.7, fd = 2e-4;
        GaugePair W = gauge_profile(spec, t, gg);
        GaugePair Wp = gauge_profile(spec, t + fd, gg);
        GaugePair Wm = gauge_profile(spec, t - fd, gg);
        GaugePair pq = nonlinearity(W, cs.b);
        Field fxx = spectral::derivative(W.first, 2);
        Field sxx = spectral::derivative(W.second, 2);
        for (std::size_t n = 0; n < gg->N; ++n) {
            const Complex ft = (Wp.first.values[n] - Wm.first.values[n]) / (2.0 * fd);
            const Complex st = (Wp.second.values[n] - Wm.second.values[n]) / (2.0 * fd);
            res = std::max(res, std::abs(ft - (I * fxx.values[n] - I * pq.first.values[n])));
            res = std::max(res, std::abs(st - (I * sxx.values[n] - I * pq.second.values[n])));
        }
    }
    const bool pass = rt <= 1e-12 && fresh <= 1e-12 && res <= 1e-6;
    char buf[160];
    std::snprintf(buf, sizeof buf, "round trip %.2e, fresh defect %.2e, gauged residual %.2e",
                  rt, fresh, res);
    return {pass, buf};
}

Outcome criterion4() {
    bool pass = true;
    std::string detail;
    char buf[160];
    std::vector<double> times;
    for (int i = 0; i <= 8; ++i) times.push_back(2.0 + 0.5 * i);
    struct Case {
        const char* name;
        TrainSpec spec;
    };
    for (const Case& cs : {Case{"family", m8_family(1.0, 64.0)}, Case{"kink", kink_train()}}) {
        auto g = make_grid(240.0, 2048);
        const double lam = lambda_of(cs.spec);
        DecaySeries series = residual_decay(cs.spec, g, times, 1e-8);
        bool bound = std::isfinite(series.empirical_T0);
        for (std::size_t i = 0; i < times.size() && bound; ++i)
            if (times[i] >= series.empirical_T0)
                bound = series.values[i] <= std::exp(-lam * times[i]);
        const bool ok = series.fit.rate >= lam && series.fit.rsquared >= 0.98 && bound;
        pass = pass && ok;
        std::snprintf(buf, sizeof buf, "%s rate %.3f (>= %.4f) rsq %.4f T0 %.1f; ", cs.name,
                      series.fit.rate, lam, series.fit.rsquared, series.empirical_T0);
        detail += buf;
    }
    return {pass, detail};
}

Outcome criterion5() {
    auto g = make_grid(240.0, 2048);
    TrainSpec spec = m8_family(1.0, 96.0);
    double mx = 0.0, mn = std::numeric_limits<double>::infinity();
    for (double t = 2.0; t <= 8.0 + 1e-9; t += 1.0) {
        ProfileSources src = profile_sources(spec, t, g, 1e-8);
        const double r = spectral::sobolev_norm(src.mn.first, 1) +
                         spectral::sobolev_norm(src.mn.second, 1);
        mx = std::max(mx, r);
        mn = std::min(mn, r);
    }
    const double ratio = mx / mn;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "H1 max/min ratio %.3e over [2,8] (< 10 required; sources decay ~e^{-3.5t})",
                  ratio);
    return {ratio < 10.0, buf};
}

struct PicardOutcome {
    Outcome c6;
    Outcome c7;
};

PicardOutcome criteria6and7() {
    auto g = make_grid(240.0, 2048);
    TrainSpec spec = m8_family(1.0, 96.0);
    auto [eta, rep] = picard_solve(spec, g, 3.0, 9.0, 0.01, 25, 1e-10, 1e-8);
    double worst_ratio = 0.0;
    for (double r : rep.ratios) worst_ratio = std::max(worst_ratio, r);
    double ball = 0.0;
    for (std::size_t i = 0; i < eta.pairs.size(); ++i) {
        const auto& p = eta.pairs[i];
        const double v = spectral::sobolev_norm(p.first, 0) +
                         spectral::sobolev_norm(spectral::derivative(p.first, 1), 0);
        ball = std::max(ball, std::exp(rep.lambda * eta.times[i]) * v);
    }
    PicardOutcome out;
    out.c6.pass = rep.converged && worst_ratio <= 0.5 && rep.final_defect <= 1e-6 && ball <= 1.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "converged %d in %zu iterates, max ratio %.3f, defect %.2e, ball %.2e",
                  static_cast<int>(rep.converged), rep.iterates, worst_ratio, rep.final_defect,
                  ball);
    out.c6.detail = buf;

    Synthesis syn = synthesize(spec, eta, 1e-8);
    const double t_end = 9.0 - 2.0 / rep.lambda;
    std::vector<double> ft, fv;
    for (std::size_t i = 0; i < syn.times.size(); ++i)
        if (syn.times[i] <= t_end + 1e-12) {
            ft.push_back(syn.times[i]);
            fv.push_back(syn.dist_h1[i]);
        }
    DecayFit fit = log_linear_fit(ft, fv);
    const double defect =
        *std::max_element(syn.relation_defects.begin(), syn.relation_defects.end());
    out.c7.pass = fit.rate >= rep.lambda && fit.rsquared >= 0.95 && defect <= 1e-6;
    std::snprintf(buf, sizeof buf,
                  "decay rate %.3f (>= %.2f) rsq %.4f on [%.0f,%.0f], relation defect %.2e",
                  fit.rate, rep.lambda, fit.rsquared, ft.front(), ft.back(), defect);
    out.c7.detail = buf;
    return out;
}

Outcome criterion8() {
    auto g = make_grid(512.0, 4096);
    double lhs[2], vs[2];
    int i = 0;
    for (double M : {8.0, 16.0}) {
        TrainSpec spec;
        spec.variant = Variant::dnls1;
        spec.b = 0.0;
        spec.solitons = scaled_family(Variant::dnls1, {-1.0, -2.0}, {0.05, 0.05}, M);
        lhs[i] = separation_lhs(spec, g, {0.0}, 1e-3);
        vs[i] = v_star(spec);
        ++i;
    }
    const double ratio = lhs[1] / lhs[0];
    const bool pass = ratio <= 1.1 && std::abs(vs[1] - 2.0 * vs[0]) < 1e-12 * vs[1];
    char buf[160];
    std::snprintf(buf, sizeof buf, "LHS(16)/LHS(8) = %.4f (<= 1.1), v* %.3f -> %.3f", ratio,
                  vs[0], vs[1]);
    return {pass, buf};
}

}  // namespace

int main() {
    const std::set<int> expected_fail{5};
    std::vector<Outcome> results(9);
    auto guard = [](const std::function<Outcome()>& fn) -> Outcome {
        try {
            return fn();
        } catch (const std::exception& e) {
            return {false, std::string("exception: ") + e.what()};
        }
    };
    results[1] = guard(criterion1);
    results[2] = guard(criterion2);
    results[3] = guard(criterion3);
    results[4] = guard(criterion4);
    results[5] = guard(criterion5);
    try {
        PicardOutcome pk = criteria6and7();
        results[6] = pk.c6;
        results[7] = pk.c7;
    } catch (const std::exception& e) {
        results[6] = results[7] = {false, std::string("exception: ") + e.what()};
    }
    results[8] = guard(criterion8);

    int rc = 0;
    for (int i = 1; i <= 8; ++i) {
        const bool expected = expected_fail.count(i) != 0;
        std::printf("criterion %d: %s%s — %s\n", i, results[i].pass ? "PASS" : "FAIL",
                    !results[i].pass && expected ? " (expected at desk scale)" : "",
                    results[i].detail.c_str());
        if (!results[i].pass && !expected) rc = 1;
    }
    return rc;
}
