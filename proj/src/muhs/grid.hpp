#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace muhs {

// Uniform grid on the unit circle [0,1) with n nodes x_j = j/n.
struct PeriodicGrid {
    int n;
    double h;
    std::vector<double> nodes;
};

using GridPtr = std::shared_ptr<const PeriodicGrid>;

// n must be >= 4 and even (real-transform layout); throws std::invalid_argument.
GridPtr make_grid(int n);

// Real periodic grid function: samples at the grid nodes. Immutable by
// convention once built; all operations below return fresh fields.
struct Field {
    GridPtr grid;
    std::vector<double> values;

    int n() const { return grid->n; }
    double operator[](size_t j) const { return values[j]; }
    double& operator[](size_t j) { return values[j]; }
};

Field make_field(const GridPtr& g, double fill = 0.0);

template <class Fn>
Field sample(const GridPtr& g, Fn&& fn) {
    Field f = make_field(g);
    for (int j = 0; j < g->n; ++j) f.values[static_cast<size_t>(j)] = fn(g->nodes[static_cast<size_t>(j)]);
    return f;
}

bool all_finite(const Field& f);

// Mean over one period, (1/n) sum_j f_j. Exact for band-limited integrands.
double mean(const Field& f);
// sqrt(mean(f^2))
double l2_norm(const Field& f);
double sup_norm(const Field& f);
double min_value(const Field& f);

// Spectral derivative; the Nyquist mode is zeroed.
Field deriv(const Field& f);

// F(x_j) ~ integral of f from 0 to x_j: periodic antiderivative of the
// mean-free part plus the ramp mean(f)*x, pinned to F(0) = 0.
Field cumint(const Field& f);

// Zero all modes with |k| > n/3 (2/3-rule product dealiasing helper).
Field lowpass_two_thirds(const Field& f);

// Pointwise arithmetic.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator*(double c, const Field& a);
Field operator+(const Field& a, double c);
Field operator-(const Field& a, double c);

// Trigonometric interpolant of a field, evaluable anywhere on the circle.
struct SpectralInterpolant {
    int n = 0;
    std::vector<std::complex<double>> coef;

    SpectralInterpolant() = default;
    explicit SpectralInterpolant(const Field& f);
    double operator()(double x) const;
};

}  // namespace muhs
