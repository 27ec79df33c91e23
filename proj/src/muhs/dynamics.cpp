#include "dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nonlocal.hpp"

namespace muhs {

namespace {
constexpr double kHoldTol = 1e-8;  // absolute slack on inequality monitors
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

ConservedInit conserved_init(const State& s, double alpha) {
    ConservedInit c;
    const Field ux = deriv(s.u);
    c.mu0 = mean(s.u);
    c.mu1_sq = energy(s);
    c.u0_l2 = l2_norm(s.u);
    c.u0x_sup = sup_norm(ux);
    c.rho0_sup = sup_norm(s.rho);
    double b = std::numeric_limits<double>::infinity();
    for (double v : s.rho.values) b = std::min(b, std::abs(v));
    c.beta = b;
    c.alpha = alpha;
    return c;
}

Tendencies rhs(const State& s, const Params& p) {
    const Field ux = deriv(s.u);
    const double m0 = mean(s.u);

    Field uxsq = ux * ux;
    Field rhosq = s.rho * s.rho;
    Field rho_u = s.rho * s.u;
    if (p.dealias) {
        uxsq = lowpass_two_thirds(uxsq);
        rhosq = lowpass_two_thirds(rhosq);
        rho_u = lowpass_two_thirds(rho_u);
    }

    Field w = make_field(s.u.grid);
    for (size_t j = 0; j < w.values.size(); ++j)
        w.values[j] = 2.0 * m0 * s.u.values[j] + 0.5 * uxsq.values[j] + 0.5 * rhosq.values[j];

    Field du = ainv_dx(w);
    for (size_t j = 0; j < du.values.size(); ++j)
        du.values[j] += (s.u.values[j] + p.gamma) * ux.values[j];

    Field drho = deriv(rho_u) + p.gamma * deriv(s.rho);
    return Tendencies{std::move(du), std::move(drho)};
}

double mu0(const State& s) { return mean(s.u); }

double energy(const State& s) {
    const Field ux = deriv(s.u);
    double acc = 0.0;
    for (size_t j = 0; j < ux.values.size(); ++j)
        acc += ux.values[j] * ux.values[j] + s.rho.values[j] * s.rho.values[j];
    return acc / s.u.n();
}

BoundReport sup_bound_check(const State& s, const ConservedInit& c) {
    if (s.blown_up || !all_finite(s.u))
        return BoundReport{-std::numeric_limits<double>::infinity(), false};
    const double margin = std::abs(c.mu0) + (kSqrt3 / 6.0) * std::sqrt(c.mu1_sq) - sup_norm(s.u);
    return BoundReport{margin, margin >= -kHoldTol};
}

double poincare_gap(const Field& f) {
    const double m = mean(f);
    Field g = f - m;
    const Field gx = deriv(g);
    double max_sq = 0.0;
    for (double v : g.values) max_sq = std::max(max_sq, v * v);
    double gx_sq = 0.0;
    for (double v : gx.values) gx_sq += v * v;
    gx_sq /= f.n();
    return gx_sq / 12.0 - max_sq;
}

double c1_tilde(double t, const ConservedInit& c) {
    if (!(c.beta > 0.0)) throw std::invalid_argument("c1_tilde: requires inf|rho0| > 0");
    const double mu1 = std::sqrt(c.mu1_sq);
    const double rate = 4.0 * c.u0_l2 * c.u0_l2 + 0.5 * c.mu1_sq + (kSqrt3 / 3.0) * c.u0_l2 * mu1 + 0.5;
    return 1.0 / (2.0 * c.beta) * (1.0 + c.rho0_sup * c.rho0_sup + c.u0x_sup * c.u0x_sup) *
           std::exp(rate * t);
}

double c2_tilde(double t, const ConservedInit& c) {
    return std::exp(c1_tilde(t, c) * t) * c.rho0_sup;
}

Field energy_transport_residual(const State& s, const Params& p, const Tendencies& tend,
                                double mu0_val, double mu1_sq_val) {
    const Field ux = deriv(s.u);
    const Field dux = deriv(tend.du);

    Field density = make_field(s.u.grid);  // u_x^2 + rho^2
    for (size_t j = 0; j < density.values.size(); ++j)
        density.values[j] = ux.values[j] * ux.values[j] + s.rho.values[j] * s.rho.values[j];

    Field flux = make_field(s.u.grid);
    for (size_t j = 0; j < flux.values.size(); ++j)
        flux.values[j] = (s.u.values[j] + p.gamma) * density.values[j];
    const Field flux_x = deriv(flux);

    Field out = make_field(s.u.grid);
    for (size_t j = 0; j < out.values.size(); ++j) {
        const double dt_density = 2.0 * ux.values[j] * dux.values[j] +
                                  2.0 * s.rho.values[j] * tend.drho.values[j];
        const double source = -4.0 * mu0_val * s.u.values[j] * ux.values[j] +
                              4.0 * mu0_val * mu0_val * ux.values[j] + mu1_sq_val * ux.values[j];
        out.values[j] = dt_density - flux_x.values[j] - source;
    }
    return out;
}

Field energy_transport_residual(const State& s, const Params& p, const Tendencies& tend) {
    return energy_transport_residual(s, p, tend, mean(s.u), energy(s));
}

Field ux_equation_residual(const State& s, const Params& p, const Tendencies& tend,
                           double mu0_val, double mu1_sq_val) {
    const Field ux = deriv(s.u);
    const Field uxx = deriv(ux);
    const Field dux = deriv(tend.du);

    Field out = make_field(s.u.grid);
    for (size_t j = 0; j < out.values.size(); ++j) {
        const double rhs_val = -2.0 * mu0_val * s.u.values[j] + 0.5 * ux.values[j] * ux.values[j] -
                               0.5 * s.rho.values[j] * s.rho.values[j] + 2.0 * mu0_val * mu0_val +
                               0.5 * mu1_sq_val;
        out.values[j] = dux.values[j] - (s.u.values[j] + p.gamma) * uxx.values[j] - rhs_val;
    }
    return out;
}

Field ux_equation_residual(const State& s, const Params& p, const Tendencies& tend) {
    return ux_equation_residual(s, p, tend, mean(s.u), energy(s));
}

}  // namespace muhs
