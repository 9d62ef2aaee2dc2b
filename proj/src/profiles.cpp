#include "dnls/profiles.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "dnls/spectral.hpp"
#include "dnls/trains.hpp"

namespace dnls {

double gamma_of(Variant variant, double b) {
    return variant == Variant::dnls1 ? 1.0 + 16.0 * b / 3.0 : 5.0 / 3.0 - 16.0 * b / 3.0;
}

double SolitonParams::h() const { return std::sqrt(std::max(0.0, 4.0 * omega - c * c)); }

bool SolitonParams::algebraic() const {
    return variant == Variant::dnls1 && omega > 0.0 &&
           std::abs(c - 2.0 * std::sqrt(omega)) <= 1e-12 * (1.0 + std::abs(c));
}

Validation validate_soliton(const SolitonParams& p) {
    Validation v;
    const double g = p.gamma();
    if (!(p.omega > 0.0)) {
        v.ok = false;
        v.message = "soliton requires omega > 0";
        return v;
    }
    const double two_sw = 2.0 * std::sqrt(p.omega);
    if (p.variant == Variant::dnls1) {
        if (g > 0.0) {
            if (p.algebraic()) {
                v.algebraic = true;
                v.message = "algebraic soliton (c = 2*sqrt(omega)) - valid profile, invalid in trains";
                return v;
            }
            if (!(p.c > -two_sw)) {
                v.ok = false;
                v.message = fmt::format("window violated: need c > -2*sqrt(omega) = {}", -two_sw);
            } else if (!(p.c < two_sw)) {
                v.ok = false;
                v.message = fmt::format("window violated: need c <= 2*sqrt(omega) = {}", two_sw);
            }
        } else {
            const double sstar = std::sqrt(-g / (1.0 - g));
            const double hi = -sstar * two_sw;
            if (!(p.c > -two_sw)) {
                v.ok = false;
                v.message = fmt::format("window violated: need c > -2*sqrt(omega) = {}", -two_sw);
            } else if (!(p.c < hi)) {
                v.ok = false;
                v.message =
                    fmt::format("window violated (gamma <= 0): need c < -2*s_star*sqrt(omega) = {}", hi);
            }
        }
    } else {
        if (!(g > 0.0)) {
            v.ok = false;
            v.message = "dnls2 solitons require gamma = 5/3 - 16b/3 > 0";
            return v;
        }
        const double sstar = std::sqrt(g / (1.0 + g));
        const double lo = sstar * two_sw;
        if (!(p.c > lo)) {
            v.ok = false;
            v.message = fmt::format("window violated: need c > 2*s_star*sqrt(omega) = {}", lo);
        } else if (!(p.c < two_sw)) {
            v.ok = false;
            v.message = fmt::format("window violated: need c < 2*sqrt(omega) = {}", two_sw);
        }
    }
    return v;
}

double capital_phi_sq(const SolitonParams& p, double x) {
    const double g = p.gamma();
    if (p.algebraic()) return 4.0 * p.c / ((p.c * x) * (p.c * x) + g);
    const double h = p.h();
    if (p.variant == Variant::dnls1) {
        const double disc = p.c * p.c + g * h * h;
        if (disc <= 0.0) throw ValidationError("capital_phi: c^2 + gamma*h^2 must be positive");
        return 2.0 * h * h / (std::sqrt(disc) * std::cosh(h * x) - p.c);
    }
    const double disc = p.c * p.c - g * h * h;
    if (disc <= 0.0) throw ValidationError("capital_phi: c^2 - gamma*h^2 must be positive");
    return 2.0 * h * h / (std::sqrt(disc) * std::cosh(h * x) + p.c);
}

double capital_phi(const SolitonParams& p, double x) { return std::sqrt(capital_phi_sq(p, x)); }

namespace {

void check_tails(const Field& mod, double tail_tol, const char* what) {
    const std::size_t N = mod.grid->N;
    if (std::abs(mod.values[0]) > tail_tol)
        throw DecayViolation(fmt::format("{}: tail tolerance exceeded at the left boundary "
                                         "({} > {})",
                                         what, std::abs(mod.values[0]), tail_tol));
    if (std::abs(mod.values[N - 1]) > tail_tol)
        throw DecayViolation(fmt::format("{}: tail tolerance exceeded at the right boundary "
                                         "({} > {})",
                                         what, std::abs(mod.values[N - 1]), tail_tol));
}

}  // namespace

Field soliton_phi(const SolitonParams& p, const GridPtr& grid, double tail_tol) {
    Validation v = validate_soliton(p);
    if (!v.ok) throw ValidationError("soliton_phi: " + v.message);
    Field phi2(grid, 0.0);
    for (std::size_t n = 0; n < grid->N; ++n) phi2.values[n] = capital_phi_sq(p, grid->x(n));
    check_tails(phi2, tail_tol * tail_tol, "soliton_phi");
    const auto anchor =
        p.variant == Variant::dnls1 ? spectral::Anchor::left : spectral::Anchor::right;
    Field mass = spectral::cumulative_integral(phi2, anchor, tail_tol);
    Field out(grid, 0.0);
    for (std::size_t n = 0; n < grid->N; ++n) {
        const double x = grid->x(n);
        const double phase = 0.5 * p.c * x - 0.25 * mass.values[n].real();
        out.values[n] = std::sqrt(phi2.values[n].real()) * std::exp(Complex(0.0, phase));
    }
    return out;
}

Field soliton_field(const SolitonParams& p, double t, const GridPtr& grid, int deriv_order,
                    double tail_tol) {
    Field phi = soliton_phi(p, grid, tail_tol);
    if (deriv_order > 0) phi = spectral::derivative(phi, deriv_order);
    Field out = spectral::shift(phi, p.x0 + p.c * t);
    const Complex ph = std::exp(Complex(0.0, p.theta + p.omega * t));
    for (auto& v : out.values) v *= ph;
    out.t = t;
    check_tails(out, std::max(1.0, std::pow(2.0 * std::abs(p.c), deriv_order)) * tail_tol,
                "soliton_field");
    return out;
}

double KinkParams::zeta() const { return std::sqrt(2.0 * c0 / gamma()); }
double KinkParams::h0() const { return std::sqrt(std::max(0.0, 4.0 * omega0 - c0 * c0)); }

void KinkParams::check() const {
    if (!(gamma() > 0.0)) throw ValidationError("kink requires gamma = 5/3 - 16b/3 > 0");
    if (!(c0 > 0.0)) throw ValidationError("kink requires c0 > 0");
    const double expect = c0 * c0 / 4.0 + omega_tilde1();
    if (std::abs(omega0 - expect) > 1e-9 * (1.0 + std::abs(omega0)))
        throw ValidationError(
            fmt::format("kink requires omega0 = c0^2/4 + c0^2/(4*gamma) = {}", expect));
}

namespace {

// Quintic Hermite on [0,1] given value/first/second derivatives at both ends.
double quintic(double u, double dx, double f0, double d0, double s0, double f1, double d1,
               double s1) {
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    const double H0 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
    const double H1 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
    const double H2 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5;
    const double H3 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
    const double H4 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
    const double H5 = 0.5 * u3 - u4 + 0.5 * u5;
    return f0 * H0 + dx * d0 * H1 + dx * dx * s0 * H2 + f1 * H3 + dx * d1 * H4 +
           dx * dx * s1 * H5;
}

}  // namespace

KinkProfile::KinkProfile(const KinkParams& kp) : kp_(kp) {
    kp_.check();
    const double g = kp_.gamma();
    const double z2 = kp_.zeta() * kp_.zeta();
    rate_ = 2.0 * std::sqrt(kp_.omega_tilde1());  // = c0/sqrt(gamma)
    xmax_ = 40.0 / rate_ + 10.0;
    step_ = 0.004 / std::max(1.0, rate_);
    const auto half = static_cast<std::size_t>(std::ceil(xmax_ / step_));
    xmax_ = step_ * static_cast<double>(half);
    const std::size_t total = 2 * half + 1;
    y_.assign(total, 0.0);
    m_.assign(total, 0.0);
    // Logistic first integral for y = Phi^2 in the rising frame; the mass
    // integral rides along as an extra component.
    auto f = [&](double y) { return 0.5 * std::sqrt(g) * y * (z2 - y); };
    for (int dir : {+1, -1}) {
        double y = 0.5 * z2, m = 0.0;
        const double hstep = dir * step_;
        for (std::size_t i = 0; i <= half; ++i) {
            const std::size_t idx =
                static_cast<std::size_t>(static_cast<long>(half) + dir * static_cast<long>(i));
            y_[idx] = y;
            m_[idx] = m;
            const double k1 = f(y);
            const double k2 = f(y + 0.5 * hstep * k1);
            const double k3 = f(y + 0.5 * hstep * k2);
            const double k4 = f(y + hstep * k3);
            m += hstep / 6.0 *
                 (y + 2.0 * (y + 0.5 * hstep * k1) + 2.0 * (y + 0.5 * hstep * k2) +
                  (y + hstep * k3));
            y += hstep / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    mass_left_ = m_.front() - y_.front() / rate_;
}

double KinkProfile::y_at(double xr) const {
    const double z2 = kp_.zeta() * kp_.zeta();
    if (xr <= -xmax_) return y_.front() * std::exp(rate_ * (xr + xmax_));
    if (xr >= xmax_) return z2 - (z2 - y_.back()) * std::exp(-rate_ * (xr - xmax_));
    const double g = kp_.gamma();
    const double pos = (xr + xmax_) / step_;
    auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= y_.size()) i = y_.size() - 2;
    const double u = pos - static_cast<double>(i);
    auto d1 = [&](double y) { return 0.5 * std::sqrt(g) * y * (z2 - y); };
    auto d2 = [&](double y) { return 0.5 * std::sqrt(g) * (z2 - 2.0 * y) * d1(y); };
    return quintic(u, step_, y_[i], d1(y_[i]), d2(y_[i]), y_[i + 1], d1(y_[i + 1]),
                   d2(y_[i + 1]));
}

double KinkProfile::mass_at(double xr) const {
    const double z2 = kp_.zeta() * kp_.zeta();
    if (xr <= -xmax_) return m_.front() - (y_.front() - y_at(xr)) / rate_;
    if (xr >= xmax_) {
        const double ex = z2 - y_.back();
        return m_.back() + z2 * (xr - xmax_) -
               (ex / rate_) * (1.0 - std::exp(-rate_ * (xr - xmax_)));
    }
    const double g = kp_.gamma();
    const double pos = (xr + xmax_) / step_;
    auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= y_.size()) i = y_.size() - 2;
    const double u = pos - static_cast<double>(i);
    auto d1 = [&](double y) { return 0.5 * std::sqrt(g) * y * (z2 - y); };
    return quintic(u, step_, m_[i], y_[i], d1(y_[i]), m_[i + 1], y_[i + 1], d1(y_[i + 1]));
}

double KinkProfile::phi_sq(double z) const {
    const double s = kp_.orientation == Orientation::rising ? 1.0 : -1.0;
    return std::max(0.0, y_at(s * z));
}

double KinkProfile::phi(double z) const { return std::sqrt(phi_sq(z)); }

double KinkProfile::dphi(double z, int order) const {
    if (order < 1 || order > 3) throw ValidationError("KinkProfile::dphi: order must be 1..3");
    const double s = kp_.orientation == Orientation::rising ? 1.0 : -1.0;
    const double P = phi(z);
    const double g = kp_.gamma();
    const double z2 = kp_.zeta() * kp_.zeta();
    const double q = 0.25 * std::sqrt(g);
    // Phi' = q Phi (zeta^2 - Phi^2) and its chain-rule consequences.
    const double g1 = q * P * (z2 - P * P);
    const double g1p = q * (z2 - 3.0 * P * P);
    const double g1pp = -6.0 * q * P;
    double val = 0.0;
    if (order == 1) val = g1;
    else if (order == 2) val = g1p * g1;
    else val = (g1pp * g1 + g1p * g1p) * g1;
    const double sgn = order % 2 == 1 ? s : 1.0;
    return sgn * val;
}

double KinkProfile::mass_from_decay_side(double z) const {
    const double s = kp_.orientation == Orientation::rising ? 1.0 : -1.0;
    return s * (mass_at(s * z) - mass_left_);
}

Field halfkink_phi(const KinkParams& kp, const GridPtr& grid) {
    KinkProfile prof(kp);
    Field out(grid, 0.0);
    for (std::size_t n = 0; n < grid->N; ++n)
        out.values[n] = prof.phi(grid->x(n) - kp.x0);
    return out;
}

Field kink_field(const KinkParams& kp, double t, const GridPtr& grid, int deriv_order,
                 double tail_tol) {
    if (kp.orientation != Orientation::falling)
        throw ValidationError(
            "kink_field: unsupported-orientation (trains need the plateau at -infinity)");
    KinkProfile prof(kp);
    const double off = kp.x0 + kp.c0 * t;
    if (prof.phi(grid->x(grid->N - 1) - off) > tail_tol)
        throw DecayViolation("kink_field: decay-side tail tolerance exceeded at the right boundary");
    Field out(grid, t);
    const Complex base = std::exp(Complex(0.0, kp.theta0 + kp.omega0 * t));
    for (std::size_t n = 0; n < grid->N; ++n) {
        const double z = grid->x(n) - off;
        const double P = prof.phi(z);
        const double Th = 0.5 * kp.c0 * z - 0.25 * prof.mass_from_decay_side(z);
        const Complex e = base * std::exp(Complex(0.0, Th));
        if (deriv_order == 0) {
            out.values[n] = e * P;
            continue;
        }
        const double P1 = prof.dphi(z, 1);
        const double T1 = 0.5 * kp.c0 - 0.25 * P * P;
        if (deriv_order == 1) {
            out.values[n] = e * Complex(P1, T1 * P);
            continue;
        }
        const double P2 = prof.dphi(z, 2);
        const double T2 = -0.5 * P * P1;
        if (deriv_order == 2) {
            out.values[n] = e * Complex(P2 - T1 * T1 * P, 2.0 * T1 * P1 + T2 * P);
            continue;
        }
        const double P3 = prof.dphi(z, 3);
        const double T3 = -0.5 * (P1 * P1 + P * P2);
        out.values[n] = e * Complex(P3 - 3.0 * T1 * T1 * P1 - 3.0 * T1 * T2 * P,
                                    3.0 * T1 * P2 + 3.0 * T2 * P1 + T3 * P - T1 * T1 * T1 * P);
    }
    return out;
}

void TrainSpec::validate() const {
    if (solitons.empty()) throw ValidationError("train: at least one soliton required");
    for (const auto& s : solitons) {
        if (s.variant != variant) throw ValidationError("train: member variant mismatch");
        if (s.b != b) throw ValidationError("train: member quintic coefficient mismatch");
        Validation v = validate_soliton(s);
        if (!v.ok) throw ValidationError("train: " + v.message);
        if (v.algebraic) throw ValidationError("train: " + v.message);
        if (s.c == 0.0) throw ValidationError("train: member speeds must be nonzero");
    }
    for (std::size_t i = 0; i < solitons.size(); ++i)
        for (std::size_t j = i + 1; j < solitons.size(); ++j)
            if (solitons[i].c == solitons[j].c)
                throw ValidationError("train: member speeds must be pairwise distinct");
    if (kink) {
        if (variant != Variant::dnls2) throw ValidationError("train: kinks require dnls2");
        if (kink->b != b) throw ValidationError("train: kink quintic coefficient mismatch");
        kink->check();
        if (kink->orientation != Orientation::falling)
            throw ValidationError("train: kink orientation must be falling");
        for (const auto& s : solitons)
            if (!(s.c > kink->c0))
                throw ValidationError("train: soliton speeds must exceed the kink speed");
    }
}

double v_star(const TrainSpec& spec) {
    std::vector<std::pair<double, double>> hc;  // (h_j, c_j)
    if (spec.kink) hc.emplace_back(spec.kink->h0(), spec.kink->c0);
    for (const auto& s : spec.solitons) hc.emplace_back(s.h(), s.c);
    if (hc.size() < 2) throw DegenerateError("v_star: insufficient-members (need at least two)");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < hc.size(); ++j)
        for (std::size_t k = 0; k < hc.size(); ++k)
            if (j != k) best = std::min(best, hc[j].first * std::abs(hc[j].second - hc[k].second));
    return best;
}

double lambda_of(const TrainSpec& spec) { return v_star(spec) / 16.0; }

std::vector<SolitonParams> scaled_family(Variant variant, const std::vector<double>& d,
                                         const std::vector<double>& h, double M, double b) {
    if (d.size() != h.size() || d.empty())
        throw ValidationError("invalid-family: d and h must be nonempty and equal length");
    if (!(M > 0.0)) throw ValidationError("invalid-family: M must be positive");
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0.0) throw ValidationError("invalid-family: d entries must be nonzero");
        if (!(h[i] > 0.0)) throw ValidationError("invalid-family: h entries must be positive");
        for (std::size_t j = i + 1; j < d.size(); ++j)
            if (d[i] == d[j]) throw ValidationError("invalid-family: duplicate d entries");
    }
    std::vector<SolitonParams> out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        SolitonParams p;
        p.variant = variant;
        p.b = b;
        p.c = M * d[i];
        p.omega = 0.25 * (h[i] * h[i] + M * M * d[i] * d[i]);
        out.push_back(p);
    }
    return out;
}

double separation_lhs(const TrainSpec& spec, const GridPtr& grid,
                      const std::vector<double>& times, double tail_tol) {
    if (times.empty()) throw ValidationError("separation_lhs: times must be nonempty");
    spec.validate();
    double supv = 0.0, supvx = 0.0;
    for (double t : times) {
        supv = std::max(supv, spectral::sup_norm(train_profile(spec, t, grid, 0, tail_tol)));
        supvx = std::max(supvx, spectral::sup_norm(train_profile(spec, t, grid, 1, tail_tol)));
    }
    return (1.0 + supvx) * (1.0 + supv) + supv * supv * supv * supv;
}

}  // namespace dnls
