#include "grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace muhs {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

GridPtr make_grid(int n) {
    if (n < 4) throw std::invalid_argument("make_grid: need n >= 4");
    if (n % 2 != 0) throw std::invalid_argument("make_grid: need even n");
    auto g = std::make_shared<PeriodicGrid>();
    g->n = n;
    g->h = 1.0 / n;
    g->nodes.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) g->nodes[static_cast<size_t>(j)] = static_cast<double>(j) / n;
    return g;
}

Field make_field(const GridPtr& g, double fill) {
    return Field{g, std::vector<double>(static_cast<size_t>(g->n), fill)};
}

bool all_finite(const Field& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

double mean(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / f.n();
}

double l2_norm(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s / f.n());
}

double sup_norm(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double min_value(const Field& f) {
    double m = f.values[0];
    for (double v : f.values) m = std::min(m, v);
    return m;
}

Field deriv(const Field& f) {
    const int n = f.n();
    auto c = fft::forward(f.values);
    for (int k = 0; k < n / 2; ++k) c[static_cast<size_t>(k)] *= std::complex<double>(0.0, two_pi * k);
    c[static_cast<size_t>(n / 2)] = 0.0;  // odd derivative of the Nyquist mode is ill-defined
    return Field{f.grid, fft::inverse(c, n)};
}

Field cumint(const Field& f) {
    const int n = f.n();
    auto c = fft::forward(f.values);
    const double mu = c[0].real();
    c[0] = 0.0;
    for (int k = 1; k < n / 2; ++k) c[static_cast<size_t>(k)] /= std::complex<double>(0.0, two_pi * k);
    // The node samples of the Nyquist cosine's antiderivative vanish identically.
    c[static_cast<size_t>(n / 2)] = 0.0;
    std::vector<double> g = fft::inverse(c, n);
    const double g0 = g[0];
    Field out{f.grid, std::move(g)};
    for (int j = 0; j < n; ++j)
        out.values[static_cast<size_t>(j)] += mu * f.grid->nodes[static_cast<size_t>(j)] - g0;
    return out;
}

Field lowpass_two_thirds(const Field& f) {
    const int n = f.n();
    const int kmax = n / 3;
    auto c = fft::forward(f.values);
    for (int k = kmax + 1; k <= n / 2; ++k) c[static_cast<size_t>(k)] = 0.0;
    return Field{f.grid, fft::inverse(c, n)};
}

Field operator+(const Field& a, const Field& b) {
    Field out = a;
    for (size_t j = 0; j < out.values.size(); ++j) out.values[j] += b.values[j];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    Field out = a;
    for (size_t j = 0; j < out.values.size(); ++j) out.values[j] -= b.values[j];
    return out;
}

Field operator*(const Field& a, const Field& b) {
    Field out = a;
    for (size_t j = 0; j < out.values.size(); ++j) out.values[j] *= b.values[j];
    return out;
}

Field operator*(double c, const Field& a) {
    Field out = a;
    for (double& v : out.values) v *= c;
    return out;
}

Field operator+(const Field& a, double c) {
    Field out = a;
    for (double& v : out.values) v += c;
    return out;
}

Field operator-(const Field& a, double c) {
    Field out = a;
    for (double& v : out.values) v -= c;
    return out;
}

SpectralInterpolant::SpectralInterpolant(const Field& f) : n(f.n()), coef(fft::forward(f.values)) {}

double SpectralInterpolant::operator()(double x) const {
    // c0 + 2 sum_{0<k<n/2} Re(c_k e^{2 pi i k x}) + Re(c_{n/2}) cos(pi n x)
    double v = coef[0].real();
    for (int k = 1; k < n / 2; ++k) {
        const double a = two_pi * k * x;
        v += 2.0 * (coef[static_cast<size_t>(k)].real() * std::cos(a) -
                    coef[static_cast<size_t>(k)].imag() * std::sin(a));
    }
    v += coef[static_cast<size_t>(n / 2)].real() * std::cos(std::numbers::pi * n * x);
    return v;
}

}  // namespace muhs
