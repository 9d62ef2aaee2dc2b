#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dnls/dynamics.hpp"
#include "dnls/gauge.hpp"
#include "dnls/spectral.hpp"
#include "dnls/trains.hpp"
#include "test_util.hpp"

using namespace dnls;
using namespace dnls::testing;

namespace {

const Complex I(0.0, 1.0);
constexpr double pi = std::numbers::pi;

TrainSpec one_soliton(Variant variant, double omega, double c, double b) {
    TrainSpec spec;
    spec.variant = variant;
    spec.b = b;
    SolitonParams p;
    p.variant = variant;
    p.omega = omega;
    p.c = c;
    p.b = b;
    spec.solitons.push_back(p);
    return spec;
}

}  // namespace

// Plane waves A e^{i(kx - sigma t)} are exact solutions with
// sigma = k^2 + A^2 k - b A^4 (dnls1) and sigma = k^2 - A^2 k - b A^4 (dnls2).
TEST_CASE("plane-wave dispersion relation") {
    auto g = make_grid(2.0 * pi, 64);
    const double A = 0.7, k = 3.0, b = 0.2, T = 0.5, dt = 1e-3;
    Field u0 = sample(g, [&](double x) { return A * std::exp(I * k * x); });
    for (Variant variant : {Variant::dnls1, Variant::dnls2}) {
        const double sgn = variant == Variant::dnls1 ? 1.0 : -1.0;
        const double sigma = k * k + sgn * A * A * k - b * A * A * A * A;
        Trajectory traj = evolve(u0, 0.0, T, dt, variant, b);
        Field expect = sample(g, [&](double x) {
            return A * std::exp(I * (k * x - sigma * T));
        });
        CHECK(max_abs_diff(traj.states.back(), expect) < 1e-10);
    }
}

TEST_CASE("zero initial data stays zero") {
    auto g = make_grid(20.0, 64);
    Trajectory traj = evolve(Field(g, 0.0), 0.0, 1.0, 0.01, Variant::dnls1, 0.5);
    CHECK(spectral::sup_norm(traj.states.back()) == 0.0);
}

TEST_CASE("one-step convergence is fourth order") {
    auto g = make_grid(40.0, 512);
    Field u0 = sample(g, [](double x) {
        return std::exp(-x * x / 3.0) * std::exp(Complex(0.0, 0.4 * x));
    });
    const double T = 0.2;
    auto solve = [&](double dt) {
        return evolve(u0, 0.0, T, dt, Variant::dnls1, 0.1).states.back();
    };
    Field ref = solve(T / 256.0);
    const double e1 = max_abs_diff(solve(T / 8.0), ref);
    const double e2 = max_abs_diff(solve(T / 16.0), ref);
    const double e3 = max_abs_diff(solve(T / 32.0), ref);
    CHECK(e1 / e2 > 12.0);
    CHECK(e2 / e3 > 12.0);
}

TEST_CASE("evolve validates its arguments") {
    auto g = make_grid(20.0, 64);
    Field u(g, 0.0);
    CHECK_THROWS_AS(evolve(u, 1.0, 0.5, 0.01, Variant::dnls1, 0.0), ValidationError);
    CHECK_THROWS_AS(evolve(u, 0.0, 1.0, 0.0301, Variant::dnls1, 0.0), ValidationError);
    CHECK_THROWS_AS(step(u, -0.1, Variant::dnls1, 0.0), ValidationError);
}

TEST_CASE("single soliton tracks its own profile") {
    auto g = make_grid(80.0, 1024);
    TrainSpec spec = one_soliton(Variant::dnls1, 1.0, 0.5, 0.0);
    Field u0 = soliton_field(spec.solitons[0], 0.0, g);
    Trajectory traj = evolve(u0, 0.0, 5.0, 1e-3, spec.variant, spec.b, &spec, 500);
    const double m0 = traj.observations.front().mass;
    for (const auto& ob : traj.observations) {
        CHECK(ob.dist < 2e-6);
        CHECK(std::abs(ob.mass - m0) / m0 < 1e-9);
    }
}

TEST_CASE("dnls2 soliton tracks its own profile and conserves mass") {
    auto g = make_grid(160.0, 2048);
    TrainSpec spec = one_soliton(Variant::dnls2, 1.0, 1.8, 0.125);
    Field u0 = soliton_field(spec.solitons[0], 0.0, g);
    Trajectory traj = evolve(u0, 0.0, 2.0, 1e-3, spec.variant, spec.b, &spec, 500);
    const double m0 = traj.observations.front().mass;
    for (const auto& ob : traj.observations) {
        CHECK(ob.dist < 1e-6);
        CHECK(std::abs(ob.mass - m0) / m0 < 1e-9);
    }
}

// Gauging and evolving commute: to_gauge(u(T)) equals the flow of the gauged
// system started at to_gauge(u(0)).
TEST_CASE("gauge transform commutes with the flow") {
    auto g = make_grid(80.0, 1024);
    const double T = 2.0, dt = 1e-3;
    Field u0 = sample(g, [](double x) {
        return 0.9 / std::cosh(x) * std::exp(Complex(0.0, 0.25 * x)) +
               0.3 * std::exp(-(x - 4.0) * (x - 4.0));
    });
    for (Variant variant : {Variant::dnls1, Variant::dnls2}) {
        const double b = variant == Variant::dnls1 ? 0.0 : 0.125;
        Trajectory traj = evolve(u0, 0.0, T, dt, variant, b, nullptr, 2000);
        GaugePair pair = to_gauge(u0, variant);
        const auto nsteps = static_cast<std::size_t>(std::llround(T / dt));
        for (std::size_t i = 0; i < nsteps; ++i) pair = step(pair, dt, b);
        GaugePair direct = to_gauge(traj.states.back(), variant);
        CHECK(max_abs_diff(pair.first, direct.first) < 1e-5);
        CHECK(max_abs_diff(pair.second, direct.second) < 1e-4);
        CHECK(relation_defect(pair) < 1e-5);
    }
}
