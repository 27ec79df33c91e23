#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dynamics.hpp"

namespace muhs {

struct TimeStepConfig {
    double t_end = 1.0;
    double cfl = 0.3;                  // in (0, 1]
    double dt_max = 1e-2;
    int record_every = 1;
    double blowup_threshold = 1e6;     // on sup|u_x|
    std::optional<double> fixed_dt;    // bypass the CFL rule (reproducible step sequences)
    std::vector<double> forced_times;  // snapshot exactly at these times
};

struct Diagnostics {
    double mu0 = 0, energy = 0;
    double sup_u = 0, sup_ux = 0, sup_rho = 0, min_rho = 0;
    double sup_bound_margin = 0;  // |mu0| + (sqrt3/6) mu1 - sup|u|
    double c1_margin = 0;         // C1(t) - sup|u_x|   (NaN when beta = 0)
    double c2_margin = 0;         // C2(t) - sup|rho|
};

struct Snapshot {
    double t = 0;
    Field u, rho;
    Field du, drho;  // tendencies at the snapshot, for Hermite reconstruction
    Diagnostics diag;
};

enum class Termination { ReachedEnd, BlowUp };

struct TrajectoryRecord {
    std::vector<Snapshot> snaps;
    Termination termination = Termination::ReachedEnd;
    double blowup_time = 0.0;  // meaningful only for BlowUp
    ConservedInit init;
    Params params;

    const Snapshot& front() const { return snaps.front(); }
    const Snapshot& back() const { return snaps.back(); }
    bool blew_up() const { return termination == Termination::BlowUp; }
};

// dt = min(dt_max, cfl * h / (sup|u| + |gamma| + 1e-12)); 0 for blown-up states.
double cfl_dt(const State& s, const Params& p, const TimeStepConfig& cfg);

// Classical four-stage Runge-Kutta update; returns a blow-up-flagged state if
// any stage goes non-finite.
State step_rk4(const State& s, const Params& p, double dt);

// Method-of-lines integration until t_end, gradient blow-up, or non-finite
// values. Records every record_every-th step plus t = 0, forced times, and the
// final time. Blow-up is a recorded outcome, not an error.
TrajectoryRecord run(const State& s0, const Params& p, const TimeStepConfig& cfg,
                     const ConservedInit* init = nullptr);

struct CharPoint {
    double t, x, r;
};

// One transport path: dX/dt = -(u(t,X) + gamma), dR/dt = u_x(t,X) R, so R
// carries rho along the path and can never change sign.
struct Characteristic {
    double x0 = 0;
    std::vector<CharPoint> path;
    double max_mismatch = 0;  // max |R - rho(t, X)| / max(1, sup|rho|) over the path
};

// Integrates characteristics through a recorded trajectory, reconstructing
// u(t,x) by cubic Hermite interpolation in time (using the stored tendencies)
// and trigonometric interpolation in x. Rejects blown-up trajectories.
std::vector<Characteristic> evolve_characteristics(const TrajectoryRecord& traj, const Params& p,
                                                   std::span<const double> seeds);

}  // namespace muhs
