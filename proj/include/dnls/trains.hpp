#pragma once

#include <vector>

#include "dnls/profiles.hpp"
#include "dnls/types.hpp"

namespace dnls {

struct DecayFit {
    double rate = 0.0;       // decay rate lambda_fit from ln s(t) = ln A - rate * t
    double amplitude = 0.0;  // A
    double rsquared = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
};

DecayFit log_linear_fit(const std::vector<double>& times, const std::vector<double>& values);

// Sum of member fields (kink first when present); deriv_order passes through
// to the members, so kink derivatives stay analytic rather than spectral.
Field train_profile(const TrainSpec& spec, double t, const GridPtr& grid, int deriv_order = 0,
                    double tail_tol = 1e-10);

// Analytic time derivative of the train profile: each member contributes
// i*omega*R_j - c_j * dR_j/dx.
Field train_profile_dt(const TrainSpec& spec, double t, const GridPtr& grid,
                       double tail_tol = 1e-10);

// Interaction residuals of the superposed profile. chi2 is stored already
// multiplied by b so chi1 + chi2 is the literal PDE residual.
std::pair<Field, Field> residual_chi(const TrainSpec& spec, double t, const GridPtr& grid,
                                     double tail_tol = 1e-10);

namespace detail {
// Amplitude-scale hook for homogeneity experiments: every member field is
// multiplied by eps inside residual_chi.
std::pair<Field, Field> residual_chi_scaled(const TrainSpec& spec, double t, const GridPtr& grid,
                                            double eps, double tail_tol = 1e-10);
// Members evaluated directly on an arbitrary (possibly refined) grid.
std::vector<Field> member_fields(const TrainSpec& spec, double t, const GridPtr& grid,
                                 int deriv_order, double tail_tol);
}  // namespace detail

struct DecaySeries {
    std::vector<double> times;
    std::vector<double> values;  // s(t) = ||chi1||_{H2} + ||chi2||_{H2}
    DecayFit fit;
    double empirical_T0 = 0.0;   // first sampled t from which s(t) <= e^{-lambda t} onward
};

DecaySeries residual_decay(const TrainSpec& spec, const GridPtr& grid,
                           const std::vector<double>& times, double tail_tol = 1e-10);

struct DriftSeries {
    std::vector<double> times;
    std::vector<double> distances;  // ||u(t) - profile(t)||_{H1}
    double separation_lhs = 0.0;
    double v_star = 0.0;
    bool gate_warning = false;      // separation_lhs / v_star above the gate
    double gate_threshold = 0.2;
};

DriftSeries drift_experiment(const TrainSpec& spec, const GridPtr& grid, double T0, double T1,
                             double dt, double gate_threshold = 0.2, double tail_tol = 1e-10,
                             std::size_t stride = 10);

}  // namespace dnls
