#pragma once

#include <span>
#include <vector>

#include "mollify.hpp"
#include "stepper.hpp"

namespace muhs {

// Space-time test function phi(t,x) = window(t) * chi(x): chi a trigonometric
// polynomial, window the polynomial bump (s(1-s))^power with s = t/t_end,
// vanishing at both endpoints so the in-time boundary terms drop out.
struct TestFunction {
    double t_end = 1.0;
    int power = 3;
    double a0 = 0.0;
    std::vector<double> cos_coef, sin_coef;  // modes 1..K

    double space(double x) const;
    double space_dx(double x) const;
    double window(double t) const;
    double window_dt(double t) const;

    TestFunction scaled(double c) const;
};

TestFunction operator+(const TestFunction& a, const TestFunction& b);

// |iint u d_t(phi) + [(u+gamma) u_x + A^{-1} d_x(2 mu0 u + u_x^2/2 + rho^2/2)] phi|,
// trapezoid in time over the recorded snapshots, exact trigonometric
// quadrature in x. Small for solutions of the u equation.
double weak_residual_u(const TrajectoryRecord& traj, const Params& p, const TestFunction& phi);

// |iint rho d_t(phi) - (rho u + gamma rho) d_x(phi)|: the fully weak form of
// rho_t - (rho u)_x = gamma rho_x, no derivatives on rho.
double weak_residual_rho(const TrajectoryRecord& traj, const Params& p, const TestFunction& phi);

struct ConvergenceReport {
    std::vector<int> n_list;
    std::vector<double> probe_times;

    struct PairDist {
        int n_lo = 0, n_hi = 0;
        double l2_u = 0, l2_ux = 0, l2_rho = 0;
        double sup_u = 0, sup_ux = 0, sup_rho = 0;
    };
    // pairs[probe][pair]
    std::vector<std::vector<PairDist>> pairs;

    std::vector<double> run_energy0;          // (mu1^n)^2 per run at t = 0
    double rough_mu1_sq = 0;                  // energy of the unsmoothed samples
    std::vector<double> max_energy_probes;    // max over probes of int(u_x^2 + rho^2) per run
    bool energy_dominance = false;            // every run, every probe: <= rough_mu1_sq + tol
    bool cauchy_decay = false;                // strictly decreasing pair distances per probe
    // norm_sums[run][probe] = ||u_x(t)||_2 + ||rho(t)||_2 at the probe
    std::vector<std::vector<double>> norm_sums;
    double rough_norm_sum = 0;                // ||u0_x||_2 + ||rho0||_2 of the rough samples
    double admissibility_margin = 0;          // finest run: rough norm sum + tol - max probe sum
    bool admissible = false;
    double dt_used = 0;
};

// Smooths the data with each mollifier index, runs all indices with one fixed
// CFL-safe step sequence on one grid (so differences isolate the smoothing
// index), and measures consecutive-pair distances at the probe times.
// Requires an increasing n_list of length >= 3 and alpha > 0. Any blow-up is a
// study failure (throws).
ConvergenceReport convergence_study(const RoughInitialData& data, std::span<const int> n_list,
                                    const GridPtr& grid, const Params& p, const TimeStepConfig& cfg,
                                    std::span<const double> probe_times, bool parallel = true);

struct InitialEnergyReport {
    std::vector<double> times;      // decreasing early times
    std::vector<double> diff_ux2;   // |int u_x^2(t) - int u0_x^2|
    std::vector<double> diff_rho2;  // |int rho^2(t) - int rho0^2|
    bool monotone_ux2 = false;      // decreasing along the (decreasing) times
    bool monotone_rho2 = false;
};

// Checks the t -> 0+ limits of the split energies against their initial
// values, using snapshots recorded at the given decreasing early times.
InitialEnergyReport initial_energy_limit(const TrajectoryRecord& traj,
                                         std::span<const double> early_times);

}  // namespace muhs
