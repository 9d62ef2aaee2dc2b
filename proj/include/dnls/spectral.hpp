#pragma once

#include <functional>
#include <vector>

#include "dnls/types.hpp"

namespace dnls::spectral {

// Normalized Fourier coefficients in FFT order: c[n] = (1/N) sum_j f(x_j) e^{-i k_n x_j}.
std::vector<Complex> to_coeffs(const Field& f);
Field from_coeffs(const GridPtr& grid, double t, const std::vector<Complex>& coeffs);

// Raw transforms of a plain buffer (unnormalized forward, normalized inverse),
// no x-offset phase applied. Used internally and by the up/downsamplers.
std::vector<Complex> fft_forward(const std::vector<Complex>& in);
std::vector<Complex> fft_inverse(const std::vector<Complex>& in);

Field derivative(const Field& f, int order);
double sobolev_norm(const Field& f, int s);
double sup_norm(const Field& f);
Field free_propagate(const Field& f, double tau);

enum class Anchor { left, right };

// Antiderivative of a real field anchored so the value at the chosen boundary
// is zero; anchor=right returns -int_x^{xmax}. The anchored boundary sample
// must be below tail_tol or a DecayViolation is thrown.
Field cumulative_integral(const Field& f, Anchor anchor, double tail_tol = 1e-10);

// Translate f by delta (f(x) -> f(x - delta)) via the Fourier shift theorem.
Field shift(const Field& f, double delta);

// Band-limited resampling between N and factor*N points on the same domain.
Field upsample(const Field& f, std::size_t factor);
Field downsample(const Field& f, std::size_t factor);

// Pointwise evaluation of a polynomial nonlinearity on a 3x refined grid,
// truncated back to the original band: exact for products of up to five
// band-limited factors.
Field dealiased_map(const std::vector<const Field*>& inputs,
                    const std::function<Complex(const Complex*)>& fn);

template <typename Fn, typename... Fs>
Field dealiased(Fn&& fn, const Fs&... fields) {
    std::vector<const Field*> in{&fields...};
    return dealiased_map(in, [&](const Complex* v) {
        return [&]<std::size_t... I>(std::index_sequence<I...>) {
            return fn(v[I]...);
        }(std::index_sequence_for<Fs...>{});
    });
}

}  // namespace dnls::spectral
