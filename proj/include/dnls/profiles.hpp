#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dnls/types.hpp"

namespace dnls {

enum class Variant { dnls1, dnls2 };

// dnls1: i u_t + u_xx + i|u|^2 u_x + b|u|^4 u = 0
// dnls2: i u_t + u_xx + i u^2 conj(u_x) + b|u|^4 u = 0
double gamma_of(Variant variant, double b);

struct SolitonParams {
    Variant variant = Variant::dnls1;
    double omega = 1.0;
    double c = 0.0;
    double theta = 0.0;
    double x0 = 0.0;
    double b = 0.0;

    double gamma() const { return gamma_of(variant, b); }
    double h() const;  // sqrt(4*omega - c^2)
    bool algebraic() const;
};

struct Validation {
    bool ok = true;
    bool algebraic = false;  // valid profile, but banned from trains
    std::string message;
};

Validation validate_soliton(const SolitonParams& p);

double capital_phi_sq(const SolitonParams& p, double x);
double capital_phi(const SolitonParams& p, double x);

// Centered gauged profile phi_{omega,c}: |phi| = Phi, phase anchored per variant.
Field soliton_phi(const SolitonParams& p, const GridPtr& grid, double tail_tol = 1e-10);
// Full member field e^{i(theta+omega t)} phi(x - x0 - c t); deriv_order in {0..3}
// returns the corresponding spatial derivative of the field.
Field soliton_field(const SolitonParams& p, double t, const GridPtr& grid,
                    int deriv_order = 0, double tail_tol = 1e-10);

enum class Orientation { rising, falling };

struct KinkParams {
    double omega0 = 0.5;
    double c0 = 1.0;
    double theta0 = 0.0;
    double x0 = 0.0;
    double b = 0.125;
    Orientation orientation = Orientation::falling;

    double gamma() const { return gamma_of(Variant::dnls2, b); }
    double omega_tilde1() const { return c0 * c0 / (4.0 * gamma()); }
    double zeta() const;  // sqrt(2 c0 / gamma)
    double h0() const;    // sqrt(4*omega0 - c0^2)
    void check() const;   // throws ValidationError on invariant failure
};

// Heteroclinic profile from the zero-energy first integral. y = Phi^2 obeys
// y' = (sqrt(gamma)/2) y (zeta^2 - y) in the rising frame; the tabulated orbit
// plus its exponential tails give Phi and spatial derivatives up to order 3 at
// arbitrary points, along with the mass integral anchored on the decay side.
class KinkProfile {
public:
    explicit KinkProfile(const KinkParams& kp);

    // z is the profile coordinate (field callers pass x - x0 - c0 t).
    double phi(double z) const;
    double phi_sq(double z) const;
    double dphi(double z, int order) const;  // order 1..3
    // int_{decay side infinity}^{z} Phi^2; <= 0 since it runs against decay.
    double mass_from_decay_side(double z) const;

    const KinkParams& params() const { return kp_; }

private:
    double y_at(double xr) const;       // rising-frame orbit value
    double mass_at(double xr) const;    // rising-frame int_0^xr y
    KinkParams kp_;
    double rate_ = 0.0;                 // 2*sqrt(omega_tilde1), tail rate of y
    double xmax_ = 0.0;
    double step_ = 0.0;
    std::vector<double> y_, m_;         // tables on [-xmax, xmax]
    double mass_left_ = 0.0;            // lim_{xr->-inf} int_0^xr y (finite)
};

Field halfkink_phi(const KinkParams& kp, const GridPtr& grid);
// Full kink member e^{i(theta0+omega0 t)} phi(x - x0 - c0 t) with the phase
// integral anchored at +infinity (falling orientation required).
Field kink_field(const KinkParams& kp, double t, const GridPtr& grid,
                 int deriv_order = 0, double tail_tol = 1e-10);

struct TrainSpec {
    Variant variant = Variant::dnls1;
    double b = 0.0;
    std::optional<KinkParams> kink;
    std::vector<SolitonParams> solitons;

    std::size_t members() const { return solitons.size() + (kink ? 1 : 0); }
    void validate() const;  // throws ValidationError with a violation report
};

double v_star(const TrainSpec& spec);
double lambda_of(const TrainSpec& spec);

std::vector<SolitonParams> scaled_family(Variant variant, const std::vector<double>& d,
                                         const std::vector<double>& h, double M,
                                         double b = 0.0);

// (1+||R_x||_inf)(1+||R||_inf) + ||R||_inf^4 over the sampled times
// (kink trains use the (1+||V_x||_inf) factor convention with V included).
double separation_lhs(const TrainSpec& spec, const GridPtr& grid,
                      const std::vector<double>& times, double tail_tol = 1e-10);

}  // namespace dnls
