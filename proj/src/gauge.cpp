#include "dnls/gauge.hpp"

#include <cmath>

#include "dnls/spectral.hpp"
#include "dnls/trains.hpp"

namespace dnls {

namespace {

const Complex I(0.0, 1.0);

Field modulus_sq(const Field& u) {
    Field out(u.grid, u.t);
    for (std::size_t n = 0; n < u.size(); ++n) out.values[n] = std::norm(u.values[n]);
    return out;
}

}  // namespace

GaugePair to_gauge(const Field& u, Variant variant, double tail_tol) {
    GaugePair out;
    out.variant = variant;
    if (variant == Variant::dnls1) {
        Field mass = spectral::cumulative_integral(modulus_sq(u), spectral::Anchor::left,
                                                   tail_tol);
        Field phi(u.grid, u.t);
        for (std::size_t n = 0; n < u.size(); ++n)
            phi.values[n] = std::exp(I * 0.5 * mass.values[n].real()) * u.values[n];
        Field phix = spectral::derivative(phi, 1);
        Field cubic = spectral::dealiased(
            [](Complex a) { return std::norm(a) * a; }, phi);
        Field psi(u.grid, u.t);
        for (std::size_t n = 0; n < u.size(); ++n)
            psi.values[n] = phix.values[n] - I * 0.5 * cubic.values[n];
        out.first = std::move(phi);
        out.second = std::move(psi);
        return out;
    }
    Field ux = spectral::derivative(u, 1);
    Field cubic = spectral::dealiased([](Complex a) { return std::norm(a) * a; }, u);
    Field v(u.grid, u.t);
    for (std::size_t n = 0; n < u.size(); ++n)
        v.values[n] = ux.values[n] + I * 0.5 * cubic.values[n];
    out.first = u;
    out.second = std::move(v);
    return out;
}

Field from_gauge(const GaugePair& pair, double tail_tol) {
    if (pair.variant == Variant::dnls2) return pair.first;
    Field mass = spectral::cumulative_integral(modulus_sq(pair.first), spectral::Anchor::left,
                                               tail_tol);
    Field u(pair.first.grid, pair.first.t);
    for (std::size_t n = 0; n < u.size(); ++n)
        u.values[n] = std::exp(-I * 0.5 * mass.values[n].real()) * pair.first.values[n];
    return u;
}

GaugePair nonlinearity(const GaugePair& pair, double b) {
    GaugePair out = pair;
    if (pair.variant == Variant::dnls1) {
        out.first = spectral::dealiased(
            [b](Complex f, Complex s) {
                const double f2 = std::norm(f);
                return I * f * f * std::conj(s) - b * f2 * f2 * f;
            },
            pair.first, pair.second);
        out.second = spectral::dealiased(
            [b](Complex f, Complex s) {
                const double f2 = std::norm(f);
                return -I * s * s * std::conj(f) - 3.0 * b * f2 * f2 * s -
                       2.0 * b * f2 * f * f * std::conj(s);
            },
            pair.first, pair.second);
        return out;
    }
    out.first = spectral::dealiased(
        [b](Complex f, Complex s) {
            const double f2 = std::norm(f);
            return -I * f * f * std::conj(s) + (0.5 - b) * f2 * f2 * f;
        },
        pair.first, pair.second);
    out.second = spectral::dealiased(
        [b](Complex f, Complex s) {
            const double f2 = std::norm(f);
            return I * s * s * std::conj(f) + (1.5 - 3.0 * b) * f2 * f2 * s +
                   (1.0 - 2.0 * b) * f2 * f * f * std::conj(s);
        },
        pair.first, pair.second);
    return out;
}

double relation_defect(const GaugePair& pair) {
    const double sign = pair.variant == Variant::dnls1 ? -1.0 : 1.0;
    Field fx = spectral::derivative(pair.first, 1);
    Field cubic = spectral::dealiased([](Complex a) { return std::norm(a) * a; }, pair.first);
    Field d(pair.first.grid, pair.first.t);
    for (std::size_t n = 0; n < d.size(); ++n)
        d.values[n] = pair.second.values[n] -
                      (fx.values[n] + sign * I * 0.5 * cubic.values[n]);
    return spectral::sobolev_norm(d, 0);
}

GaugePair gauge_profile(const TrainSpec& spec, double t, const GridPtr& grid, double tail_tol) {
    if (spec.variant == Variant::dnls1) {
        Field R = train_profile(spec, t, grid, 0, tail_tol);
        return to_gauge(R, Variant::dnls1, tail_tol);
    }
    // dnls2: h = V, k = V_x + (i/2)|V|^2 V with member derivatives analytic so
    // a non-periodic kink never meets a spectral derivative.
    GaugePair out;
    out.variant = Variant::dnls2;
    out.first = train_profile(spec, t, grid, 0, tail_tol);
    Field vx = train_profile(spec, t, grid, 1, tail_tol);
    out.second = Field(grid, t);
    for (std::size_t n = 0; n < grid->N; ++n) {
        const Complex v = out.first.values[n];
        out.second.values[n] = vx.values[n] + I * 0.5 * std::norm(v) * v;
    }
    return out;
}

ProfileSources profile_sources(const TrainSpec& spec, double t, const GridPtr& grid,
                               double tail_tol) {
    spec.validate();
    ProfileSources out;
    out.lambda = spec.members() >= 2 ? lambda_of(spec) : 0.0;
    auto [chi1, chi2] = residual_chi(spec, t, grid, tail_tol);
    Field v_res(grid, t);
    const double w = std::exp(out.lambda * t);
    for (std::size_t n = 0; n < grid->N; ++n)
        v_res.values[n] = w * (chi1.values[n] + chi2.values[n]);
    out.v_res = v_res;
    out.mn.variant = spec.variant;
    if (spec.variant == Variant::dnls1) {
        Field R = train_profile(spec, t, grid, 0, tail_tol);
        Field mass = spectral::cumulative_integral(modulus_sq(R), spectral::Anchor::left,
                                                   tail_tol);
        Field h(grid, t);
        for (std::size_t n = 0; n < grid->N; ++n)
            h.values[n] = std::exp(I * 0.5 * mass.values[n].real()) * R.values[n];
        // m = v e^{(i/2) int |R|^2} - h int_-inf^x Im(v conj(R))
        Field im_vr(grid, t);
        for (std::size_t n = 0; n < grid->N; ++n)
            im_vr.values[n] = std::imag(v_res.values[n] * std::conj(R.values[n]));
        Field corr = spectral::cumulative_integral(im_vr, spectral::Anchor::left, tail_tol);
        Field m(grid, t);
        for (std::size_t n = 0; n < grid->N; ++n)
            m.values[n] = v_res.values[n] * std::exp(I * 0.5 * mass.values[n].real()) -
                          h.values[n] * corr.values[n].real();
        Field mx = spectral::derivative(m, 1);
        Field cub = spectral::dealiased(
            [](Complex hh, Complex mm) {
                return -I * std::norm(hh) * mm + I * 0.5 * hh * hh * std::conj(mm);
            },
            h, m);
        Field nn(grid, t);
        for (std::size_t n = 0; n < grid->N; ++n)
            nn.values[n] = mx.values[n] + cub.values[n];
        out.mn.first = std::move(m);
        out.mn.second = std::move(nn);
        return out;
    }
    // dnls2: m = v_res; n = m_x + i|h|^2 m - (i/2) h^2 conj(m). The cubic is
    // evaluated on the refined grid with the members built there directly,
    // since h may contain a non-periodic kink.
    Field m = v_res;
    Field mx = spectral::derivative(m, 1);
    auto fine = make_grid_unchecked(grid->L, 3 * grid->N);
    auto members = detail::member_fields(spec, t, fine, 0, tail_tol);
    Field m_f = spectral::upsample(m, 3);
    Field cub_f(fine, t);
    for (std::size_t n = 0; n < fine->N; ++n) {
        Complex hv = 0.0;
        for (const auto& mem : members) hv += mem.values[n];
        cub_f.values[n] =
            I * std::norm(hv) * m_f.values[n] - I * 0.5 * hv * hv * std::conj(m_f.values[n]);
    }
    Field cub = spectral::downsample(cub_f, 3);
    cub.grid = grid;
    Field nn(grid, t);
    for (std::size_t n = 0; n < grid->N; ++n)
        nn.values[n] = mx.values[n] + cub.values[n];
    out.mn.first = std::move(m);
    out.mn.second = std::move(nn);
    return out;
}

}  // namespace dnls
