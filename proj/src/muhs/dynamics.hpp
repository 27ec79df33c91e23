#pragma once

#include "grid.hpp"

namespace muhs {

struct Params {
    double gamma = 0.0;
    // 2/3-rule truncation of the quadratic products in the right-hand side.
    // Off by default; the conservation diagnostics are the arbiter.
    bool dealias = false;
};

// The evolved pair z = (u, rho) at one instant.
struct State {
    Field u;
    Field rho;
    double t = 0.0;
    bool blown_up = false;
};

struct Tendencies {
    Field du;
    Field drho;
};

// Invariants and norms of the initial data feeding the a priori bounds.
struct ConservedInit {
    double mu0 = 0.0;       // mean of u0, conserved along the flow
    double mu1_sq = 0.0;    // int (u0_x^2 + rho0^2), conserved along the flow
    double u0_l2 = 0.0;
    double u0x_sup = 0.0;
    double rho0_sup = 0.0;
    double beta = 0.0;      // inf |rho0|
    double alpha = 0.0;     // claimed lower bound on rho0 (0 when none)
};

ConservedInit conserved_init(const State& s, double alpha = 0.0);

// Nonlocal evolution form:
//   u_t   = (u + gamma) u_x + A^{-1} d_x (2 mu0 u + u_x^2/2 + rho^2/2)
//   rho_t = (rho u)_x + gamma rho_x
// mu0 is read from the current mean of u (it is conserved, so keeping it live
// makes the mean-conservation check self-reinforcing).
Tendencies rhs(const State& s, const Params& p);

double mu0(const State& s);
// int (u_x^2 + rho^2) over one period.
double energy(const State& s);

struct BoundReport {
    double margin = 0.0;
    bool holds = false;
};

// Transport sup bound: sup|u(t)| <= |mu0| + (sqrt(3)/6) mu1.
BoundReport sup_bound_check(const State& s, const ConservedInit& c);

// Circle Poincare inequality for the centered field: (1/12) int f_x^2 - max f^2 >= 0.
double poincare_gap(const Field& f);

// A priori bounds, valid when rho0 is bounded away from zero (beta > 0):
//   C1(t) = 1/(2 beta) (1 + sup|rho0|^2 + sup|u0_x|^2)
//           * exp[(4 ||u0||_2^2 + mu1^2/2 + (sqrt(3)/3) ||u0||_2 mu1 + 1/2) t]
//   C2(t) = exp(C1(t) t) sup|rho0|
double c1_tilde(double t, const ConservedInit& c);
double c2_tilde(double t, const ConservedInit& c);

// Pointwise defect of the energy-transport identity
//   d_t(u_x^2 + rho^2) - d_x[(u+gamma)(u_x^2 + rho^2)]
//     = -4 mu0 u u_x + 4 mu0^2 u_x + mu1^2 u_x,
// with the time term assembled from the supplied tendencies.
Field energy_transport_residual(const State& s, const Params& p, const Tendencies& tend,
                                double mu0_val, double mu1_sq_val);
Field energy_transport_residual(const State& s, const Params& p, const Tendencies& tend);

// Pointwise defect of the differentiated u equation
//   u_tx - (u+gamma) u_xx = -2 mu0 u + u_x^2/2 - rho^2/2 + 2 mu0^2 + mu1^2/2.
Field ux_equation_residual(const State& s, const Params& p, const Tendencies& tend,
                           double mu0_val, double mu1_sq_val);
Field ux_equation_residual(const State& s, const Params& p, const Tendencies& tend);

}  // namespace muhs
