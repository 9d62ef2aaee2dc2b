#pragma once

#include <utility>
#include <vector>

#include "dnls/gauge.hpp"
#include "dnls/types.hpp"

namespace dnls {

struct PairTrajectory {
    std::vector<double> times;  // uniform grid on [T0, Tmax]
    std::vector<GaugePair> pairs;
};

struct PicardReport {
    std::size_t iterates = 0;
    std::vector<double> xnorms;  // xnorm of each iterate
    std::vector<double> ratios;  // successive difference ratios
    double final_defect = 0.0;
    bool converged = false;
    double lambda = 0.0;
};

// W = (h,k) and H = e^{-lambda t}(m,n) sampled on the given times.
std::pair<PairTrajectory, PairTrajectory> build_W_H(const TrainSpec& spec,
                                                    const std::vector<double>& times,
                                                    const GridPtr& grid,
                                                    double tail_tol = 1e-10);

// -i int_t^Tmax S(t-s) G(s) ds by backward trapezoid recursion with the group
// applied exactly between nodes; the value at Tmax is zero.
PairTrajectory duhamel_apply(const PairTrajectory& G);

// sup over grid times of e^{lambda t}(||eta1|| + ||eta2|| + ||d eta1|| + ||d eta2||)_{L2}.
double xnorm(const PairTrajectory& eta, double lambda);

std::pair<PairTrajectory, PicardReport> picard_solve(const TrainSpec& spec, const GridPtr& grid,
                                                     double T0, double Tmax, double dt_s,
                                                     std::size_t max_iters = 25,
                                                     double tol = 1e-10,
                                                     double tail_tol = 1e-10);

struct Synthesis {
    std::vector<double> times;
    std::vector<Field> u;
    std::vector<double> dist_h1;           // ||u(t) - profile(t)||_{H1}
    std::vector<double> relation_defects;  // of (h + eta1, k + eta2)
};

Synthesis synthesize(const TrainSpec& spec, const PairTrajectory& eta, double tail_tol = 1e-10);

}  // namespace dnls
