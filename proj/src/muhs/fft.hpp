#pragma once

#include <complex>
#include <span>
#include <vector>

namespace muhs::fft {

// Normalized half spectrum of a real sequence of even length n:
//   c[k] = (1/n) * sum_j f_j exp(-2 pi i j k / n),  k = 0..n/2,
// so c[0] is the mean and c[k] are the coefficients of the trigonometric
// interpolant. inverse() is the exact round trip.
std::vector<std::complex<double>> forward(std::span<const double> f);

std::vector<double> inverse(std::span<const std::complex<double>> c, int n);

}  // namespace muhs::fft
