#include "nonlocal.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace muhs {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double green_function(double x) {
    double y = x - std::floor(x);
    return 0.5 * y * (y - 1.0) + 13.0 / 12.0;
}

GreenKernel green_kernel(const GridPtr& g) {
    const double shift = 1.0 / (12.0 * static_cast<double>(g->n) * g->n);
    Field values = sample(g, [shift](double x) { return green_function(x) - shift; });
    return GreenKernel{std::move(values)};
}

Field apply_A(const Field& v) {
    Field out = deriv(deriv(v));
    const double mu = mean(v);
    for (double& x : out.values) x = mu - x;
    return out;
}

Field ainv_spectral(const Field& w) {
    const int n = w.n();
    auto c = fft::forward(w.values);
    for (int k = 1; k <= n / 2; ++k) c[static_cast<size_t>(k)] /= (two_pi * k) * (two_pi * k);
    return Field{w.grid, fft::inverse(c, n)};
}

Field ainv_formula(const Field& w) {
    const GridPtr& g = w.grid;
    const double mu = mean(w);

    // W1 = int_0^x w = mu*x + P with P periodic, P(0) = 0.
    Field w1 = cumint(w);
    Field p = w1;
    for (int j = 0; j < g->n; ++j) p.values[static_cast<size_t>(j)] -= mu * g->nodes[static_cast<size_t>(j)];
    const double mp = mean(p);

    // int_0^x int_0^y w = mu*x^2/2 + cumint(P), with cumint(P) = mp*x + Q.
    Field cp = cumint(p);
    Field q = cp;
    for (int j = 0; j < g->n; ++j) q.values[static_cast<size_t>(j)] -= mp * g->nodes[static_cast<size_t>(j)];
    const double mq = mean(q);

    const double double_int_01 = 0.5 * mu + mp;        // int_0^1 int_0^y w
    const double triple_int_01 = mu / 6.0 + 0.5 * mp + mq;  // int_0^1 int_0^y int_0^s w

    Field out = make_field(g);
    for (int j = 0; j < g->n; ++j) {
        const double x = g->nodes[static_cast<size_t>(j)];
        const double double_int_x = 0.5 * mu * x * x + cp.values[static_cast<size_t>(j)];
        out.values[static_cast<size_t>(j)] = (0.5 * x * x - 0.5 * x + 13.0 / 12.0) * mu +
                                             (x - 0.5) * double_int_01 - double_int_x + triple_int_01;
    }
    return out;
}

Field conv_green(const GreenKernel& kernel, const Field& w) {
    const int n = w.n();
    auto ck = fft::forward(kernel.values.values);
    auto cw = fft::forward(w.values);
    // h * circular convolution of samples: with mean-normalized spectra the
    // coefficients simply multiply.
    for (int k = 0; k <= n / 2; ++k) ck[static_cast<size_t>(k)] *= cw[static_cast<size_t>(k)];
    Field out{w.grid, fft::inverse(ck, n)};

    // Euler-Maclaurin corrections for the kernel's derivative jump.
    const double h = w.grid->h;
    const double mu = mean(w);
    const Field wxx = deriv(deriv(w));
    const double c2 = h * h / 12.0;
    const double c4 = h * h * h * h / 240.0;
    for (int j = 0; j < n; ++j)
        out.values[static_cast<size_t>(j)] += -c2 * (w.values[static_cast<size_t>(j)] - mu) +
                                              c4 * wxx.values[static_cast<size_t>(j)];
    return out;
}

Field conv_green(const Field& w) { return conv_green(green_kernel(w.grid), w); }

Field ainv_dx(const Field& w) {
    const GridPtr& g = w.grid;
    const double mu = mean(w);
    Field w1 = cumint(w);
    Field p = w1;
    for (int j = 0; j < g->n; ++j) p.values[static_cast<size_t>(j)] -= mu * g->nodes[static_cast<size_t>(j)];
    const double mp = mean(p);
    const double int_of_w1 = 0.5 * mu + mp;  // int_0^1 int_0^x w

    Field out = make_field(g);
    for (int j = 0; j < g->n; ++j) {
        const double x = g->nodes[static_cast<size_t>(j)];
        out.values[static_cast<size_t>(j)] = (x - 0.5) * mu - w1.values[static_cast<size_t>(j)] + int_of_w1;
    }
    return out;
}

Field ainv_dxx(const Field& w) {
    const double mu = mean(w);
    Field out = w;
    for (double& v : out.values) v = mu - v;
    return out;
}

}  // namespace muhs
