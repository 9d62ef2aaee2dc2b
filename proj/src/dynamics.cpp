#include "dnls/dynamics.hpp"

#include <fmt/format.h>

#include <cmath>

#include "dnls/spectral.hpp"
#include "dnls/trains.hpp"

namespace dnls {

double mass(const Field& f) {
    const double n0 = spectral::sobolev_norm(f, 0);
    return n0 * n0;
}

namespace {

// Nonlinear part N(u) = rhs(u) - i u_xx, evaluated dealiased.
Field nonlinear_part(const Field& u, Variant variant, double b) {
    Field ux = spectral::derivative(u, 1);
    const Complex I(0.0, 1.0);
    if (variant == Variant::dnls1) {
        return spectral::dealiased(
            [&](Complex a, Complex ax) {
                const double a2 = std::norm(a);
                return -a2 * ax + I * b * a2 * a2 * a;
            },
            u, ux);
    }
    return spectral::dealiased(
        [&](Complex a, Complex ax) {
            const double a2 = std::norm(a);
            return -a * a * std::conj(ax) + I * b * a2 * a2 * a;
        },
        u, ux);
}

Field add_scaled(const Field& a, const Field& b, Complex s) {
    Field out = a;
    for (std::size_t n = 0; n < out.size(); ++n) out.values[n] += s * b.values[n];
    return out;
}

}  // namespace

Field rhs(const Field& u, Variant variant, double b) {
    Field lin = spectral::derivative(u, 2);
    Field nl = nonlinear_part(u, variant, b);
    const Complex I(0.0, 1.0);
    Field out(u.grid, u.t);
    for (std::size_t n = 0; n < u.size(); ++n)
        out.values[n] = I * lin.values[n] + nl.values[n];
    return out;
}

GaugePair rhs(const GaugePair& pair, double b) {
    GaugePair pq = nonlinearity(pair, b);
    const Complex I(0.0, 1.0);
    GaugePair out = pair;
    Field d1 = spectral::derivative(pair.first, 2);
    Field d2 = spectral::derivative(pair.second, 2);
    for (std::size_t n = 0; n < pair.first.size(); ++n) {
        out.first.values[n] = I * d1.values[n] - I * pq.first.values[n];
        out.second.values[n] = I * d2.values[n] - I * pq.second.values[n];
    }
    return out;
}

Field step(const Field& u, double dt, Variant variant, double b) {
    if (!(dt > 0.0)) throw ValidationError("step: dt must be positive");
    auto nonlin = [&](const Field& f) {
        Field n = nonlinear_part(f, variant, b);
        for (auto& v : n.values) v *= dt;
        return n;
    };
    // Stage B needs S(dt/2)(u + A/2) propagated as one piece.
    Field A = nonlin(u);
    Field B = nonlin(spectral::free_propagate(add_scaled(u, A, 0.5), 0.5 * dt));
    Field uh = spectral::free_propagate(u, 0.5 * dt);
    Field C = nonlin(add_scaled(uh, B, 0.5));
    Field D = nonlin(add_scaled(spectral::free_propagate(u, dt),
                                spectral::free_propagate(C, 0.5 * dt), 1.0));
    Field out = spectral::free_propagate(u, dt);
    Field pA = spectral::free_propagate(A, dt);
    Field pBC = spectral::free_propagate(add_scaled(B, C, 1.0), 0.5 * dt);
    for (std::size_t n = 0; n < out.size(); ++n)
        out.values[n] += (pA.values[n] + 2.0 * pBC.values[n] + D.values[n]) / 6.0;
    out.t = u.t + dt;
    return out;
}

GaugePair step(const GaugePair& pair, double dt, double b) {
    if (!(dt > 0.0)) throw ValidationError("step: dt must be positive");
    const Complex I(0.0, 1.0);
    auto nonlin = [&](const GaugePair& p) {
        GaugePair pq = nonlinearity(p, b);
        for (auto& v : pq.first.values) v *= -I * dt;
        for (auto& v : pq.second.values) v *= -I * dt;
        return pq;
    };
    auto prop = [](const GaugePair& p, double tau) {
        GaugePair out = p;
        out.first = spectral::free_propagate(p.first, tau);
        out.second = spectral::free_propagate(p.second, tau);
        return out;
    };
    auto add = [](const GaugePair& a, const GaugePair& b2, double s) {
        GaugePair out = a;
        for (std::size_t n = 0; n < out.first.size(); ++n) {
            out.first.values[n] += s * b2.first.values[n];
            out.second.values[n] += s * b2.second.values[n];
        }
        return out;
    };
    GaugePair A = nonlin(pair);
    GaugePair B = nonlin(prop(add(pair, A, 0.5), 0.5 * dt));
    GaugePair C = nonlin(add(prop(pair, 0.5 * dt), B, 0.5));
    GaugePair D = nonlin(add(prop(pair, dt), prop(C, 0.5 * dt), 1.0));
    GaugePair out = prop(pair, dt);
    GaugePair pA = prop(A, dt);
    GaugePair pBC = prop(add(B, C, 1.0), 0.5 * dt);
    for (std::size_t n = 0; n < out.first.size(); ++n) {
        out.first.values[n] += (pA.first.values[n] + 2.0 * pBC.first.values[n] +
                                D.first.values[n]) / 6.0;
        out.second.values[n] += (pA.second.values[n] + 2.0 * pBC.second.values[n] +
                                 D.second.values[n]) / 6.0;
    }
    out.first.t = pair.first.t + dt;
    out.second.t = out.first.t;
    return out;
}

Trajectory evolve(const Field& u0, double t0, double t1, double dt, Variant variant, double b,
                  const TrainSpec* reference, std::size_t stride, double tail_tol) {
    if (!(t1 > t0)) throw ValidationError("evolve: t1 must exceed t0");
    const double steps_real = (t1 - t0) / dt;
    const auto nsteps = static_cast<std::size_t>(std::llround(steps_real));
    if (std::abs(steps_real - static_cast<double>(nsteps)) > 1e-9)
        throw ValidationError("evolve: (t1 - t0)/dt must be integral");
    Trajectory traj;
    Field u = u0;
    u.t = t0;
    auto record = [&](const Field& f) {
        Observation ob;
        ob.t = f.t;
        ob.mass = mass(f);
        ob.h1 = spectral::sobolev_norm(f, 1);
        if (reference) {
            Field prof = train_profile(*reference, f.t, f.grid, 0, tail_tol);
            Field diff = f;
            for (std::size_t n = 0; n < diff.size(); ++n) diff.values[n] -= prof.values[n];
            ob.dist = spectral::sobolev_norm(diff, 1);
        }
        traj.times.push_back(f.t);
        traj.states.push_back(f);
        traj.observations.push_back(ob);
    };
    record(u);
    for (std::size_t i = 1; i <= nsteps; ++i) {
        u = step(u, dt, variant, b);
        u.t = t0 + static_cast<double>(i) * dt;  // avoid accumulated rounding
        for (const auto& v : u.values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DivergenceError(fmt::format("evolve: non-finite sample at t = {}", u.t));
        if (i % stride == 0 || i == nsteps) record(u);
    }
    return traj;
}

}  // namespace dnls
