#pragma once

#include "grid.hpp"

namespace muhs {

// Inverse family of A = mu - d_xx on the unit circle. Every routine accepts
// arbitrary Field samples; the stated accuracies hold for band-limited inputs
// (rougher data is interpreted through its trigonometric interpolant).

// Periodic Green's function of A: g(x) = x(x-1)/2 + 13/12 on [0,1), extended
// periodically. Unit mean.
double green_function(double x);

// Node samples of g shifted by the exact constant -1/(12 n^2) so that the
// discrete mean is 1. (The raw node sum of the parabola overshoots the
// integral by exactly 1/(12 n^2) because of the derivative jump at 0.)
struct GreenKernel {
    Field values;
};

GreenKernel green_kernel(const GridPtr& g);

// A v = mean(v) - v_xx.
Field apply_A(const Field& v);

// A^{-1} by Fourier symbol: mode 0 unchanged, mode k divided by (2 pi k)^2.
Field ainv_spectral(const Field& w);

// A^{-1} by the explicit antiderivative formula
//   v(x) = (x^2/2 - x/2 + 13/12) mu(w) + (x - 1/2) * II(1) - II(x) + III(1),
// with II the double and III the triple iterated integral of w from 0.
// The iterated integrals are split into exact polynomial ramps plus periodic
// parts handled by cumint, so the evaluation stays spectrally accurate.
Field ainv_formula(const Field& w);

// A^{-1} as a periodic convolution with the sampled kernel, computed by
// transform multiplication. The kernel's derivative jump at 0 makes the plain
// trapezoidal convolution only O(h^2); the two Euler-Maclaurin jump
// corrections below push it to O(h^6):
//   (g*w)(x_j) = h sum_i g(x_j - x_i) w(x_i) - h^2/12 (w - mu(w)) + h^4/240 w''.
Field conv_green(const Field& w);
Field conv_green(const GreenKernel& kernel, const Field& w);

// A^{-1} d_x w = (x - 1/2) mu(w) - int_0^x w + int_0^1 int_0^x w.
Field ainv_dx(const Field& w);

// A^{-1} d_xx w = -w + mu(w), evaluated pointwise with no transforms.
Field ainv_dxx(const Field& w);

}  // namespace muhs
