#include "dnls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace dnls {

GridPtr make_grid_unchecked(double L, std::size_t N) {
    auto g = std::make_shared<Grid>();
    g->L = L;
    g->N = N;
    g->dx = L / static_cast<double>(N);
    g->k.resize(N);
    const double dk = 2.0 * std::numbers::pi / L;
    for (std::size_t n = 0; n < N; ++n) {
        const auto sn = static_cast<long>(n);
        const long half = static_cast<long>(N) / 2;
        g->k[n] = dk * static_cast<double>(sn < half ? sn : sn - static_cast<long>(N));
    }
    return g;
}

GridPtr make_grid(double L, std::size_t N) {
    if (!(L > 0.0)) throw ValidationError("make_grid: L must be positive");
    if (N < 16 || (N & (N - 1)) != 0)
        throw ValidationError("make_grid: N must be a power of two >= 16");
    return make_grid_unchecked(L, N);
}

bool same_grid(const Field& a, const Field& b) {
    if (a.grid == b.grid) return true;
    return a.grid && b.grid && a.grid->N == b.grid->N && a.grid->L == b.grid->L;
}

namespace spectral {

namespace {

// One cached plan per (size, direction). Plans are created FFTW_UNALIGNED so
// they can execute on any caller buffer via fftw_execute_dft.
class PlanCache {
public:
    static fftw_plan get(std::size_t n, int sign) {
        static PlanCache cache;
        std::scoped_lock lk(cache.mu_);
        auto key = std::make_pair(n, sign);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;
        std::vector<Complex> scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache.plans_.emplace(key, p);
        return p;
    }

private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

std::vector<Complex> run_fft(const std::vector<Complex>& in, int sign) {
    std::vector<Complex> out(in);
    fftw_plan p = PlanCache::get(in.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(p, buf, buf);
    return out;
}

}  // namespace

std::vector<Complex> fft_forward(const std::vector<Complex>& in) {
    return run_fft(in, FFTW_FORWARD);
}

std::vector<Complex> fft_inverse(const std::vector<Complex>& in) {
    auto out = run_fft(in, FFTW_BACKWARD);
    const double s = 1.0 / static_cast<double>(in.size());
    for (auto& v : out) v *= s;
    return out;
}

std::vector<Complex> to_coeffs(const Field& f) {
    auto c = fft_forward(f.values);
    const double s = 1.0 / static_cast<double>(c.size());
    for (auto& v : c) v *= s;
    return c;
}

Field from_coeffs(const GridPtr& grid, double t, const std::vector<Complex>& coeffs) {
    Field out(grid, t);
    out.values = run_fft(coeffs, FFTW_BACKWARD);
    return out;
}

Field derivative(const Field& f, int order) {
    if (order < 1 || order > 3) throw ValidationError("derivative: order must be 1, 2 or 3");
    auto c = to_coeffs(f);
    const auto& k = f.grid->k;
    const std::size_t N = f.grid->N;
    for (std::size_t n = 0; n < N; ++n) {
        Complex mult = std::pow(Complex(0.0, k[n]), order);
        c[n] *= mult;
    }
    if (order % 2 == 1) c[N / 2] = 0.0;  // unpaired Nyquist mode
    return from_coeffs(f.grid, f.t, c);
}

double sobolev_norm(const Field& f, int s) {
    if (s < 0 || s > 2) throw ValidationError("sobolev_norm: s must be 0, 1 or 2");
    auto c = to_coeffs(f);
    const auto& k = f.grid->k;
    double acc = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) {
        double w = 1.0;
        for (int j = 0; j < s; ++j) w *= 1.0 + k[n] * k[n];
        acc += w * std::norm(c[n]);
    }
    return std::sqrt(f.grid->L * acc);
}

double sup_norm(const Field& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

Field free_propagate(const Field& f, double tau) {
    auto c = to_coeffs(f);
    const auto& k = f.grid->k;
    for (std::size_t n = 0; n < c.size(); ++n)
        c[n] *= std::exp(Complex(0.0, -k[n] * k[n] * tau));
    Field out = from_coeffs(f.grid, f.t + tau, c);
    return out;
}

Field cumulative_integral(const Field& f, Anchor anchor, double tail_tol) {
    const std::size_t N = f.grid->N;
    const std::size_t edge = (anchor == Anchor::left) ? 0 : N - 1;
    if (std::abs(f.values[edge]) > tail_tol) {
        throw DecayViolation(std::string("cumulative_integral: integrand exceeds tail "
                                         "tolerance at the ") +
                             (anchor == Anchor::left ? "left" : "right") + " boundary");
    }
    auto c = to_coeffs(f);
    const double mean = c[0].real();
    // Antiderivative of the mean-free part is periodic; the mean contributes a
    // linear ramp handled separately so nothing is lost to the k=0 division.
    c[0] = 0.0;
    c[N / 2] = 0.0;
    const auto& k = f.grid->k;
    for (std::size_t n = 1; n < N; ++n)
        if (n != N / 2) c[n] /= Complex(0.0, k[n]);
    Field g = from_coeffs(f.grid, f.t, c);
    Field out(f.grid, f.t);
    const double base = g.values[0].real();  // antiderivative at x = -L/2 (ramp is 0 there)
    const double total = mean * f.grid->L;
    for (std::size_t n = 0; n < N; ++n) {
        double v = g.values[n].real() + mean * (f.grid->x(n) + 0.5 * f.grid->L) - base;
        if (anchor == Anchor::right) v -= total;
        out.values[n] = v;
    }
    return out;
}

Field shift(const Field& f, double delta) {
    auto c = to_coeffs(f);
    const auto& k = f.grid->k;
    for (std::size_t n = 0; n < c.size(); ++n)
        c[n] *= std::exp(Complex(0.0, -k[n] * delta));
    return from_coeffs(f.grid, f.t, c);
}

Field upsample(const Field& f, std::size_t factor) {
    if (factor == 1) return f;
    const std::size_t N = f.grid->N;
    const std::size_t M = N * factor;
    auto c = to_coeffs(f);
    std::vector<Complex> cf(M, 0.0);
    for (std::size_t n = 0; n < N / 2; ++n) cf[n] = c[n];
    for (std::size_t n = N / 2 + 1; n < N; ++n) cf[M - (N - n)] = c[n];
    cf[N / 2] = 0.5 * c[N / 2];  // split the Nyquist mode symmetrically
    cf[M - N / 2] = 0.5 * c[N / 2];
    auto fine = make_grid_unchecked(f.grid->L, M);
    return from_coeffs(fine, f.t, cf);
}

Field downsample(const Field& f, std::size_t factor) {
    if (factor == 1) return f;
    const std::size_t M = f.grid->N;
    const std::size_t N = M / factor;
    auto cf = to_coeffs(f);
    std::vector<Complex> c(N, 0.0);
    for (std::size_t n = 0; n < N / 2; ++n) c[n] = cf[n];
    for (std::size_t n = N / 2 + 1; n < N; ++n) c[n] = cf[M - (N - n)];
    c[N / 2] = cf[N / 2] + cf[M - N / 2];
    auto coarse = make_grid_unchecked(f.grid->L, N);
    return from_coeffs(coarse, f.t, c);
}

Field dealiased_map(const std::vector<const Field*>& inputs,
                    const std::function<Complex(const Complex*)>& fn) {
    if (inputs.empty()) throw ValidationError("dealiased_map: no inputs");
    const Field& first = *inputs.front();
    std::vector<Field> fine;
    fine.reserve(inputs.size());
    for (const Field* f : inputs) {
        if (!same_grid(*f, first)) throw ValidationError("dealiased_map: grid mismatch");
        fine.push_back(upsample(*f, 3));
    }
    const std::size_t M = fine.front().size();
    Field prod(fine.front().grid, first.t);
    std::vector<Complex> args(inputs.size());
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < inputs.size(); ++j) args[j] = fine[j].values[i];
        prod.values[i] = fn(args.data());
    }
    Field out = downsample(prod, 3);
    out.grid = first.grid;
    return out;
}

}  // namespace spectral
}  // namespace dnls
