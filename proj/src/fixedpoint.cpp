#include "dnls/fixedpoint.hpp"

#include <fmt/format.h>

#include <cmath>

#include "dnls/spectral.hpp"
#include "dnls/trains.hpp"

namespace dnls {

namespace {

const Complex I(0.0, 1.0);

GaugePair zero_pair(const GridPtr& grid, double t, Variant variant) {
    GaugePair p;
    p.variant = variant;
    p.first = Field(grid, t);
    p.second = Field(grid, t);
    return p;
}

GaugePair pair_axpy(const GaugePair& a, const GaugePair& b, Complex s) {
    GaugePair out = a;
    for (std::size_t n = 0; n < out.first.size(); ++n) {
        out.first.values[n] += s * b.first.values[n];
        out.second.values[n] += s * b.second.values[n];
    }
    return out;
}

GaugePair pair_propagate(const GaugePair& p, double tau) {
    GaugePair out = p;
    out.first = spectral::free_propagate(p.first, tau);
    out.second = spectral::free_propagate(p.second, tau);
    return out;
}

// Pointwise f = (P,Q) at explicitly supplied sample values.
inline void eval_f(Variant variant, double b, Complex f, Complex s, Complex& P, Complex& Q) {
    const double f2 = std::norm(f);
    if (variant == Variant::dnls1) {
        P = I * f * f * std::conj(s) - b * f2 * f2 * f;
        Q = -I * s * s * std::conj(f) - 3.0 * b * f2 * f2 * s -
            2.0 * b * f2 * f * f * std::conj(s);
    } else {
        P = -I * f * f * std::conj(s) + (0.5 - b) * f2 * f2 * f;
        Q = I * s * s * std::conj(f) + (1.5 - 3.0 * b) * f2 * f2 * s +
            (1.0 - 2.0 * b) * f2 * f * f * std::conj(s);
    }
}

// W on the 3x refined grid. Without a kink the band-limited coarse W is
// resampled spectrally; with a kink the members are rebuilt analytically on
// the refined grid, since the plateau makes W non-periodic.
GaugePair fine_W(const TrainSpec& spec, const GaugePair& W_coarse, double t,
                 const GridPtr& fine, double tail_tol) {
    if (!spec.kink) {
        GaugePair out = W_coarse;
        out.first = spectral::upsample(W_coarse.first, 3);
        out.second = spectral::upsample(W_coarse.second, 3);
        return out;
    }
    GaugePair out;
    out.variant = spec.variant;
    out.first = train_profile(spec, t, fine, 0, tail_tol);
    Field vx = train_profile(spec, t, fine, 1, tail_tol);
    out.second = Field(fine, t);
    for (std::size_t n = 0; n < fine->N; ++n) {
        const Complex v = out.first.values[n];
        out.second.values[n] = vx.values[n] + I * 0.5 * std::norm(v) * v;
    }
    return out;
}

}  // namespace

std::pair<PairTrajectory, PairTrajectory> build_W_H(const TrainSpec& spec,
                                                    const std::vector<double>& times,
                                                    const GridPtr& grid, double tail_tol) {
    spec.validate();
    PairTrajectory W, H;
    W.times = H.times = times;
    for (double t : times) {
        W.pairs.push_back(gauge_profile(spec, t, grid, tail_tol));
        ProfileSources src = profile_sources(spec, t, grid, tail_tol);
        const double w = std::exp(-src.lambda * t);
        GaugePair h = src.mn;
        for (auto& v : h.first.values) v *= w;
        for (auto& v : h.second.values) v *= w;
        H.pairs.push_back(std::move(h));
    }
    return {std::move(W), std::move(H)};
}

PairTrajectory duhamel_apply(const PairTrajectory& G) {
    if (G.times.size() < 2) throw ValidationError("duhamel_apply: need at least two nodes");
    const double dt = G.times[1] - G.times[0];
    for (std::size_t i = 1; i < G.times.size(); ++i)
        if (std::abs(G.times[i] - G.times[i - 1] - dt) > 1e-9 * std::max(1.0, dt))
            throw ValidationError("duhamel_apply: time grid must be uniform");
    PairTrajectory out;
    out.times = G.times;
    out.pairs.resize(G.pairs.size());
    const std::size_t last = G.pairs.size() - 1;
    out.pairs[last] = zero_pair(G.pairs[last].first.grid, G.times[last], G.pairs[last].variant);
    for (std::size_t i = last; i-- > 0;) {
        GaugePair carried = pair_propagate(out.pairs[i + 1], -dt);
        GaugePair incr = pair_axpy(G.pairs[i], pair_propagate(G.pairs[i + 1], -dt), 1.0);
        out.pairs[i] = pair_axpy(carried, incr, -I * 0.5 * dt);
        out.pairs[i].first.t = G.times[i];
        out.pairs[i].second.t = G.times[i];
    }
    return out;
}

double xnorm(const PairTrajectory& eta, double lambda) {
    double best = 0.0;
    for (std::size_t i = 0; i < eta.pairs.size(); ++i) {
        const GaugePair& p = eta.pairs[i];
        const double v = spectral::sobolev_norm(p.first, 0) +
                         spectral::sobolev_norm(p.second, 0) +
                         spectral::sobolev_norm(spectral::derivative(p.first, 1), 0) +
                         spectral::sobolev_norm(spectral::derivative(p.second, 1), 0);
        best = std::max(best, std::exp(lambda * eta.times[i]) * v);
    }
    return best;
}

namespace {

// G = f(W+eta) - f(W) + H on the coarse grid, dealiased through the fine grid.
PairTrajectory picard_rhs(const TrainSpec& spec, const std::vector<GaugePair>& W_fine,
                          const PairTrajectory& H, const PairTrajectory& eta) {
    PairTrajectory G;
    G.times = eta.times;
    G.pairs.resize(eta.pairs.size());
    for (std::size_t i = 0; i < eta.pairs.size(); ++i) {
        const GridPtr& fine = W_fine[i].first.grid;
        Field e1 = spectral::upsample(eta.pairs[i].first, 3);
        Field e2 = spectral::upsample(eta.pairs[i].second, 3);
        Field d1(fine, eta.times[i]), d2(fine, eta.times[i]);
        for (std::size_t n = 0; n < fine->N; ++n) {
            const Complex h = W_fine[i].first.values[n];
            const Complex k = W_fine[i].second.values[n];
            Complex P1, Q1, P0, Q0;
            eval_f(spec.variant, spec.b, h + e1.values[n], k + e2.values[n], P1, Q1);
            eval_f(spec.variant, spec.b, h, k, P0, Q0);
            d1.values[n] = P1 - P0;
            d2.values[n] = Q1 - Q0;
        }
        GaugePair g;
        g.variant = spec.variant;
        g.first = spectral::downsample(d1, 3);
        g.second = spectral::downsample(d2, 3);
        g.first.grid = eta.pairs[i].first.grid;
        g.second.grid = g.first.grid;
        for (std::size_t n = 0; n < g.first.size(); ++n) {
            g.first.values[n] += H.pairs[i].first.values[n];
            g.second.values[n] += H.pairs[i].second.values[n];
        }
        G.pairs[i] = std::move(g);
    }
    return G;
}

PairTrajectory pair_diff(const PairTrajectory& a, const PairTrajectory& b) {
    PairTrajectory out = a;
    for (std::size_t i = 0; i < a.pairs.size(); ++i)
        out.pairs[i] = pair_axpy(a.pairs[i], b.pairs[i], -1.0);
    return out;
}

}  // namespace

std::pair<PairTrajectory, PicardReport> picard_solve(const TrainSpec& spec, const GridPtr& grid,
                                                     double T0, double Tmax, double dt_s,
                                                     std::size_t max_iters, double tol,
                                                     double tail_tol) {
    spec.validate();
    if (!(Tmax > T0) || !(dt_s > 0.0))
        throw ValidationError("picard_solve: need Tmax > T0 and dt_s > 0");
    const double count_real = (Tmax - T0) / dt_s;
    const auto count = static_cast<std::size_t>(std::llround(count_real));
    if (std::abs(count_real - static_cast<double>(count)) > 1e-9)
        throw ValidationError("picard_solve: (Tmax - T0)/dt_s must be integral");
    std::vector<double> times(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
        times[i] = T0 + (Tmax - T0) * static_cast<double>(i) / static_cast<double>(count);

    auto [W, H] = build_W_H(spec, times, grid, tail_tol);
    const double lambda = spec.members() >= 2 ? lambda_of(spec) : 0.0;
    auto fine = make_grid_unchecked(grid->L, 3 * grid->N);
    std::vector<GaugePair> W_fine;
    W_fine.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        W_fine.push_back(fine_W(spec, W.pairs[i], times[i], fine, tail_tol));

    PairTrajectory eta;
    eta.times = times;
    for (double t : times) eta.pairs.push_back(zero_pair(grid, t, spec.variant));

    PicardReport report;
    report.lambda = lambda;
    double prev_delta = -1.0;
    std::size_t bad_streak = 0;
    for (std::size_t it = 1; it <= max_iters; ++it) {
        PairTrajectory next = duhamel_apply(picard_rhs(spec, W_fine, H, eta));
        const double delta = xnorm(pair_diff(next, eta), lambda);
        eta = std::move(next);
        report.iterates = it;
        report.xnorms.push_back(xnorm(eta, lambda));
        if (prev_delta > 0.0) {
            const double ratio = delta / prev_delta;
            report.ratios.push_back(ratio);
            bad_streak = ratio >= 1.0 ? bad_streak + 1 : 0;
            if (bad_streak >= 2)
                throw ContractionError(fmt::format(
                    "picard_solve: contraction failure (last ratios {:.3g}, {:.3g} >= 1 "
                    "after {} iterates)",
                    report.ratios[report.ratios.size() - 2], report.ratios.back(), it));
        }
        prev_delta = delta;
        if (delta < tol) {
            report.converged = true;
            break;
        }
    }
    PairTrajectory once_more = duhamel_apply(picard_rhs(spec, W_fine, H, eta));
    report.final_defect = xnorm(pair_diff(eta, once_more), lambda);
    return {std::move(eta), std::move(report)};
}

Synthesis synthesize(const TrainSpec& spec, const PairTrajectory& eta, double tail_tol) {
    spec.validate();
    Synthesis out;
    out.times = eta.times;
    for (std::size_t i = 0; i < eta.pairs.size(); ++i) {
        const double t = eta.times[i];
        const GridPtr& grid = eta.pairs[i].first.grid;
        GaugePair W = gauge_profile(spec, t, grid, tail_tol);
        GaugePair full = pair_axpy(W, eta.pairs[i], 1.0);
        Field u;
        double defect;
        if (spec.variant == Variant::dnls1) {
            u = from_gauge(full, tail_tol);
            defect = relation_defect(full);
        } else {
            u = full.first;
            // defect = eta2 - d/dx eta1 - (i/2)(|u|^2 u - |V|^2 V): the profile
            // part of k cancels exactly, so no spectral derivative ever touches
            // a possibly non-periodic kink.
            Field de1 = spectral::derivative(eta.pairs[i].first, 1);
            Field d(grid, t);
            for (std::size_t n = 0; n < grid->N; ++n) {
                const Complex uu = u.values[n];
                const Complex vv = W.first.values[n];
                d.values[n] = eta.pairs[i].second.values[n] - de1.values[n] -
                              I * 0.5 * (std::norm(uu) * uu - std::norm(vv) * vv);
            }
            defect = spectral::sobolev_norm(d, 0);
        }
        Field prof = train_profile(spec, t, grid, 0, tail_tol);
        Field diff = u;
        for (std::size_t n = 0; n < grid->N; ++n) diff.values[n] -= prof.values[n];
        out.dist_h1.push_back(spectral::sobolev_norm(diff, 1));
        out.relation_defects.push_back(defect);
        out.u.push_back(std::move(u));
    }
    return out;
}

}  // namespace dnls
