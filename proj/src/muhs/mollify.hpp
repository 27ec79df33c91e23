#pragma once

#include <functional>

#include "dynamics.hpp"
#include "grid.hpp"

namespace muhs {

// The standard compactly supported bump: exp(1/(x^2-1)) on |x|<1, 0 outside.
double bump(double x);

// int_{-1}^{1} bump, by adaptive Simpson quadrature (cached). Used only as a
// sampling-fidelity cross-check; the discrete kernels are renormalized anyway.
double bump_integral();

struct MollifierSpec {
    int n;  // family index; n >= 2 keeps the support inside (-1/2, 1/2)
};

// Grid samples of the periodized scaled bump n*bump(n x)/bump_integral(),
// renormalized so the discrete mean is exactly 1. Throws for n < 2.
Field mollifier(const MollifierSpec& spec, const GridPtr& g);

// Periodic convolution with the renormalized mollifier samples. Preserves the
// mean exactly and contracts the discrete L2 norm and lower bounds.
Field mollify(const Field& f, const MollifierSpec& spec);

// Analytic initial-data profiles, sampled at grid nodes. Piecewise kinds use
// right-continuous values at breakpoints.
struct Profile {
    enum class Kind { PiecewiseLinear, PiecewiseConstant, Fourier, Samples };
    Kind kind = Kind::Fourier;

    // PiecewiseLinear / PiecewiseConstant: breakpoints xs in [0,1), values ys.
    std::vector<double> xs, ys;
    // Fourier: a0 + sum_k cos_coef[k-1] cos(2 pi k x) + sin_coef[k-1] sin(2 pi k x)
    double a0 = 0.0;
    std::vector<double> cos_coef, sin_coef;
    // Samples: one value per node of the grid it is used with.
    std::vector<double> samples;

    double eval(double x) const;
    bool has_deriv() const { return kind == Kind::PiecewiseLinear || kind == Kind::Fourier; }
    double eval_deriv(double x) const;
    double lipschitz() const;
};

Profile hat_profile();                          // dist(x, {0,1}): slopes +-1, peak 1/2
Profile step_profile(double left, double right);  // left on [0,1/2), right on [1/2,1)
Profile constant_profile(double c);
Profile fourier_profile(double a0, std::vector<double> cos_coef, std::vector<double> sin_coef);

struct RoughInitialData {
    Profile u0;
    Profile rho0;
    double alpha = 0.0;  // claimed essential lower bound of rho0 (> 0 for the global regime)
};

// Norm bookkeeping for the smoothing step: discrete norms of the sampled rough
// data against the mollified data, the smallest rho values, and the H1
// distance between them on the grid.
struct MollifyReport {
    double u0_l2 = 0, u0n_l2 = 0;
    double u0x_l2 = 0, u0xn_l2 = 0;
    double rho0_l2 = 0, rho0n_l2 = 0;
    double min_rho0 = 0, min_rho0n = 0;
    double h1_dist = 0;
    double normalizer = 0;
};

struct InitialAssembly {
    State state;
    ConservedInit init;
    MollifyReport report;
};

// Samples the rough profiles directly (no smoothing); validates alpha.
State sample_initial(const RoughInitialData& data, const GridPtr& g);

// Samples, mollifies both components, assembles the initial state and its
// conserved invariants. Rejects data whose sampled rho0 dips below the
// declared alpha.
InitialAssembly make_initial(const RoughInitialData& data, const GridPtr& g, const MollifierSpec& spec);

// Adaptive Simpson quadrature, exposed for oracle-style use.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace muhs
