#include "dnls/trains.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "dnls/dynamics.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

DecayFit log_linear_fit(const std::vector<double>& times, const std::vector<double>& values) {
    if (times.size() != values.size() || times.size() < 2)
        throw ValidationError("log_linear_fit: need matching series with at least two points");
    const auto n = static_cast<double>(times.size());
    double st = 0, sl = 0, stt = 0, stl = 0;
    std::vector<double> logs(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(values[i] > 0.0))
            throw DegenerateError("log_linear_fit: degenerate-fit (non-positive series value)");
        logs[i] = std::log(values[i]);
        st += times[i];
        sl += logs[i];
        stt += times[i] * times[i];
        stl += times[i] * logs[i];
    }
    const double denom = n * stt - st * st;
    const double slope = (n * stl - st * sl) / denom;
    const double icept = (sl - slope * st) / n;
    double ssres = 0, sstot = 0;
    const double mean = sl / n;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double pred = icept + slope * times[i];
        ssres += (logs[i] - pred) * (logs[i] - pred);
        sstot += (logs[i] - mean) * (logs[i] - mean);
    }
    DecayFit fit;
    fit.rate = -slope;
    fit.amplitude = std::exp(icept);
    fit.rsquared = sstot > 0.0 ? 1.0 - ssres / sstot : 1.0;
    fit.t_start = times.front();
    fit.t_end = times.back();
    return fit;
}

namespace detail {

std::vector<Field> member_fields(const TrainSpec& spec, double t, const GridPtr& grid,
                                 int deriv_order, double tail_tol) {
    std::vector<Field> out;
    if (spec.kink) out.push_back(kink_field(*spec.kink, t, grid, deriv_order, tail_tol));
    for (std::size_t j = 0; j < spec.solitons.size(); ++j) {
        try {
            out.push_back(soliton_field(spec.solitons[j], t, grid, deriv_order, tail_tol));
        } catch (const DecayViolation& e) {
            throw DecayViolation(fmt::format("member {}: {}", j + 1, e.what()));
        }
    }
    return out;
}

}  // namespace detail

Field train_profile(const TrainSpec& spec, double t, const GridPtr& grid, int deriv_order,
                    double tail_tol) {
    auto members = detail::member_fields(spec, t, grid, deriv_order, tail_tol);
    Field sum(grid, t);
    for (const auto& m : members)
        for (std::size_t n = 0; n < grid->N; ++n) sum.values[n] += m.values[n];
    return sum;
}

Field train_profile_dt(const TrainSpec& spec, double t, const GridPtr& grid, double tail_tol) {
    auto r = detail::member_fields(spec, t, grid, 0, tail_tol);
    auto rx = detail::member_fields(spec, t, grid, 1, tail_tol);
    Field sum(grid, t);
    std::size_t idx = 0;
    if (spec.kink) {
        for (std::size_t n = 0; n < grid->N; ++n)
            sum.values[n] += Complex(0.0, spec.kink->omega0) * r[0].values[n] -
                             spec.kink->c0 * rx[0].values[n];
        idx = 1;
    }
    for (const auto& s : spec.solitons) {
        for (std::size_t n = 0; n < grid->N; ++n)
            sum.values[n] += Complex(0.0, s.omega) * r[idx].values[n] - s.c * rx[idx].values[n];
        ++idx;
    }
    return sum;
}

namespace detail {

std::pair<Field, Field> residual_chi_scaled(const TrainSpec& spec, double t, const GridPtr& grid,
                                            double eps, double tail_tol) {
    spec.validate();
    auto fine = make_grid_unchecked(grid->L, 3 * grid->N);
    auto r = member_fields(spec, t, fine, 0, tail_tol);
    auto rx = member_fields(spec, t, fine, 1, tail_tol);
    if (eps != 1.0) {
        for (auto& f : r)
            for (auto& v : f.values) v *= eps;
        for (auto& f : rx)
            for (auto& v : f.values) v *= eps;
    }
    const std::size_t M = fine->N;
    Field chi1(fine, t), chi2(fine, t);
    const Complex I(0.0, 1.0);
    for (std::size_t n = 0; n < M; ++n) {
        Complex V = 0.0, Vx = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            V += r[j].values[n];
            Vx += rx[j].values[n];
        }
        Complex c1, c2;
        if (spec.variant == Variant::dnls1) {
            c1 = I * std::norm(V) * Vx;
            for (std::size_t j = 0; j < r.size(); ++j)
                c1 -= I * std::norm(r[j].values[n]) * rx[j].values[n];
        } else {
            c1 = I * V * V * std::conj(Vx);
            for (std::size_t j = 0; j < r.size(); ++j)
                c1 -= I * r[j].values[n] * r[j].values[n] * std::conj(rx[j].values[n]);
        }
        c2 = std::norm(V) * std::norm(V) * V;
        for (std::size_t j = 0; j < r.size(); ++j) {
            const Complex rj = r[j].values[n];
            c2 -= std::norm(rj) * std::norm(rj) * rj;
        }
        chi1.values[n] = c1;
        chi2.values[n] = spec.b * c2;
    }
    Field out1 = spectral::downsample(chi1, 3);
    Field out2 = spectral::downsample(chi2, 3);
    out1.grid = grid;
    out2.grid = grid;
    out1.t = out2.t = t;
    return {std::move(out1), std::move(out2)};
}

}  // namespace detail

std::pair<Field, Field> residual_chi(const TrainSpec& spec, double t, const GridPtr& grid,
                                     double tail_tol) {
    return detail::residual_chi_scaled(spec, t, grid, 1.0, tail_tol);
}

DecaySeries residual_decay(const TrainSpec& spec, const GridPtr& grid,
                           const std::vector<double>& times, double tail_tol) {
    if (times.size() < 4) throw ValidationError("residual_decay: need at least 4 times");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw ValidationError("residual_decay: times must be increasing");
    DecaySeries out;
    out.times = times;
    for (double t : times) {
        auto [c1, c2] = residual_chi(spec, t, grid, tail_tol);
        const double s = spectral::sobolev_norm(c1, 2) + spectral::sobolev_norm(c2, 2);
        if (s == 0.0)
            throw DegenerateError("residual_decay: degenerate-fit (zero residual, single member?)");
        out.values.push_back(s);
    }
    out.fit = log_linear_fit(out.times, out.values);
    const double lam = lambda_of(spec);
    out.empirical_T0 = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = times.size(); i-- > 0;) {
        if (out.values[i] <= std::exp(-lam * times[i]))
            out.empirical_T0 = times[i];
        else
            break;
    }
    return out;
}

DriftSeries drift_experiment(const TrainSpec& spec, const GridPtr& grid, double T0, double T1,
                             double dt, double gate_threshold, double tail_tol,
                             std::size_t stride) {
    spec.validate();
    DriftSeries out;
    out.gate_threshold = gate_threshold;
    out.v_star = v_star(spec);
    std::vector<double> gate_times;
    for (int i = 0; i <= 4; ++i) gate_times.push_back(T0 + (T1 - T0) * i / 4.0);
    out.separation_lhs = separation_lhs(spec, grid, gate_times, tail_tol);
    out.gate_warning = out.separation_lhs / out.v_star > gate_threshold;
    Field u0 = train_profile(spec, T0, grid, 0, tail_tol);
    Trajectory traj = evolve(u0, T0, T1, dt, spec.variant, spec.b, &spec, stride, tail_tol);
    out.times = traj.times;
    for (const auto& ob : traj.observations) out.distances.push_back(ob.dist);
    return out;
}

}  // namespace dnls
