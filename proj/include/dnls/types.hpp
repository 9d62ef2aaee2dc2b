#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnls {

using Complex = std::complex<double>;

// Error taxonomy; the CLI maps these to exit codes.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DecayViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Periodic grid on [-L/2, L/2). Wavenumbers are stored in FFT order:
// k[n] = 2*pi/L * n for n < N/2, and 2*pi/L * (n - N) otherwise.
struct Grid {
    double L;
    std::size_t N;
    double dx;
    std::vector<double> k;

    double x(std::size_t n) const { return -0.5 * L + dx * static_cast<double>(n); }
};

using GridPtr = std::shared_ptr<const Grid>;

// make_grid enforces the public contract (power-of-two N >= 16).
GridPtr make_grid(double L, std::size_t N);
// Internal helper used for refined product grids (3N points); skips the
// power-of-two requirement but keeps everything else.
GridPtr make_grid_unchecked(double L, std::size_t N);

struct Field {
    GridPtr grid;
    double t = 0.0;
    std::vector<Complex> values;

    Field() = default;
    Field(GridPtr g, double time) : grid(std::move(g)), t(time), values(grid->N) {}
    Field(GridPtr g, double time, std::vector<Complex> v)
        : grid(std::move(g)), t(time), values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    Complex& operator[](std::size_t i) { return values[i]; }
    const Complex& operator[](std::size_t i) const { return values[i]; }
};

bool same_grid(const Field& a, const Field& b);

}  // namespace dnls
