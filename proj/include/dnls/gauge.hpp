#pragma once

#include "dnls/profiles.hpp"
#include "dnls/types.hpp"

namespace dnls {

// (phi, psi) for dnls1, (u, v) for dnls2; also reused for W=(h,k), H=(m,n)
// and the unknown eta.
struct GaugePair {
    Field first;
    Field second;
    Variant variant = Variant::dnls1;
};

GaugePair to_gauge(const Field& u, Variant variant, double tail_tol = 1e-10);
Field from_gauge(const GaugePair& pair, double tail_tol = 1e-10);

// Pointwise (P,Q) on the dealiased grid.
GaugePair nonlinearity(const GaugePair& pair, double b);

// L2 norm of second - (d/dx first -/+ (i/2)|first|^2 first); minus for dnls1,
// plus for dnls2.
double relation_defect(const GaugePair& pair);

struct ProfileSources {
    GaugePair mn;  // (m, n)
    Field v_res;   // e^{lambda t} (chi1 + chi2)
    double lambda = 0.0;
};

ProfileSources profile_sources(const TrainSpec& spec, double t, const GridPtr& grid,
                               double tail_tol = 1e-10);

// W = (h,k) of the gauged profile at time t. For kink trains every spatial
// derivative of the non-periodic profile is taken analytically.
GaugePair gauge_profile(const TrainSpec& spec, double t, const GridPtr& grid,
                        double tail_tol = 1e-10);

}  // namespace dnls
