#pragma once

#include <vector>

#include "dnls/gauge.hpp"
#include "dnls/profiles.hpp"
#include "dnls/types.hpp"

namespace dnls {

struct Observation {
    double t = 0.0;
    double mass = 0.0;
    double h1 = 0.0;
    double dist = 0.0;  // ||u - profile||_{H1} when a reference spec is given
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Field> states;
    std::vector<Observation> observations;
};

double mass(const Field& f);

Field rhs(const Field& u, Variant variant, double b);
GaugePair rhs(const GaugePair& pair, double b);

// One integrating-factor RK4 step: the linear phase e^{-ik^2 dt} is exact,
// the nonlinearity is treated explicitly on the dealiased grid.
Field step(const Field& u, double dt, Variant variant, double b);
GaugePair step(const GaugePair& pair, double dt, double b);

Trajectory evolve(const Field& u0, double t0, double t1, double dt, Variant variant, double b,
                  const TrainSpec* reference = nullptr, std::size_t stride = 10,
                  double tail_tol = 1e-10);

}  // namespace dnls
