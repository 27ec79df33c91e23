#include "stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace muhs {

namespace {

bool finite_state(const State& s) { return all_finite(s.u) && all_finite(s.rho); }

Diagnostics diagnostics_for(const State& s, const ConservedInit& init) {
    Diagnostics d;
    d.mu0 = mean(s.u);
    d.energy = energy(s);
    d.sup_u = sup_norm(s.u);
    d.sup_ux = sup_norm(deriv(s.u));
    d.sup_rho = sup_norm(s.rho);
    d.min_rho = min_value(s.rho);
    d.sup_bound_margin = sup_bound_check(s, init).margin;
    if (init.beta > 0.0) {
        d.c1_margin = c1_tilde(s.t, init) - d.sup_ux;
        d.c2_margin = c2_tilde(s.t, init) - d.sup_rho;
    } else {
        d.c1_margin = std::numeric_limits<double>::quiet_NaN();
        d.c2_margin = std::numeric_limits<double>::quiet_NaN();
    }
    return d;
}

}  // namespace

double cfl_dt(const State& s, const Params& p, const TimeStepConfig& cfg) {
    if (s.blown_up || !finite_state(s)) return 0.0;
    const double speed = sup_norm(s.u) + std::abs(p.gamma) + 1e-12;
    return std::min(cfg.dt_max, cfg.cfl * s.u.grid->h / speed);
}

State step_rk4(const State& s, const Params& p, double dt) {
    const size_t n = s.u.values.size();
    auto advance = [&](const State& base, const Tendencies& k, double frac) {
        State out{base.u, base.rho, base.t + frac * dt, false};
        for (size_t j = 0; j < n; ++j) {
            out.u.values[j] = base.u.values[j] + frac * dt * k.du.values[j];
            out.rho.values[j] = base.rho.values[j] + frac * dt * k.drho.values[j];
        }
        return out;
    };

    const Tendencies k1 = rhs(s, p);
    State s2 = advance(s, k1, 0.5);
    if (!finite_state(s2)) return State{s.u, s.rho, s.t, true};
    const Tendencies k2 = rhs(s2, p);
    State s3 = advance(s, k2, 0.5);
    if (!finite_state(s3)) return State{s.u, s.rho, s.t, true};
    const Tendencies k3 = rhs(s3, p);
    State s4 = advance(s, k3, 1.0);
    if (!finite_state(s4)) return State{s.u, s.rho, s.t, true};
    const Tendencies k4 = rhs(s4, p);

    State out{s.u, s.rho, s.t + dt, false};
    const double w = dt / 6.0;
    for (size_t j = 0; j < n; ++j) {
        out.u.values[j] += w * (k1.du.values[j] + 2.0 * k2.du.values[j] + 2.0 * k3.du.values[j] +
                                k4.du.values[j]);
        out.rho.values[j] += w * (k1.drho.values[j] + 2.0 * k2.drho.values[j] +
                                  2.0 * k3.drho.values[j] + k4.drho.values[j]);
    }
    if (!finite_state(out)) return State{s.u, s.rho, s.t, true};
    return out;
}

TrajectoryRecord run(const State& s0, const Params& p, const TimeStepConfig& cfg,
                     const ConservedInit* init) {
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw std::invalid_argument("run: cfl must lie in (0,1]");
    if (!(cfg.dt_max > 0.0)) throw std::invalid_argument("run: dt_max must be positive");
    if (cfg.record_every < 1) throw std::invalid_argument("run: record_every must be >= 1");
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end))
        throw std::invalid_argument("run: t_end must be finite and >= 0");
    if (!(cfg.blowup_threshold > 0.0))
        throw std::invalid_argument("run: blowup_threshold must be positive");

    TrajectoryRecord traj;
    traj.params = p;
    traj.init = init ? *init : conserved_init(s0);

    std::vector<double> forced = cfg.forced_times;
    std::sort(forced.begin(), forced.end());
    forced.erase(std::unique(forced.begin(), forced.end()), forced.end());
    size_t next_forced = 0;
    auto skip_past = [&](double t) {
        while (next_forced < forced.size() && forced[next_forced] <= t + 1e-12) ++next_forced;
    };

    State s = s0;
    s.t = 0.0;
    auto record = [&](const State& st) {
        Snapshot snap;
        snap.t = st.t;
        snap.u = st.u;
        snap.rho = st.rho;
        Tendencies tend = rhs(st, p);
        snap.du = std::move(tend.du);
        snap.drho = std::move(tend.drho);
        snap.diag = diagnostics_for(st, traj.init);
        traj.snaps.push_back(std::move(snap));
    };

    record(s);
    skip_past(0.0);
    if (cfg.t_end <= 0.0) return traj;

    long step_index = 0;
    while (s.t < cfg.t_end - 1e-12) {
        double dt = cfg.fixed_dt ? *cfg.fixed_dt : cfl_dt(s, p, cfg);
        if (dt <= 0.0) {
            traj.termination = Termination::BlowUp;
            traj.blowup_time = s.t;
            return traj;
        }
        bool at_forced = false;
        double target = std::numeric_limits<double>::infinity();
        if (next_forced < forced.size() && forced[next_forced] <= cfg.t_end + 1e-12)
            target = forced[next_forced];
        if (s.t + dt >= target - 1e-12) {
            dt = target - s.t;
            at_forced = true;
        }
        const bool at_end = s.t + dt >= cfg.t_end - 1e-12;
        if (at_end && !at_forced) dt = cfg.t_end - s.t;

        s = step_rk4(s, p, dt);
        ++step_index;
        if (at_forced) {
            s.t = target;
            skip_past(target);
        } else if (at_end) {
            s.t = cfg.t_end;
        }

        if (s.blown_up || !finite_state(s) || sup_norm(deriv(s.u)) > cfg.blowup_threshold) {
            record(s);
            traj.termination = Termination::BlowUp;
            traj.blowup_time = s.t;
            return traj;
        }
        const bool final_step = s.t >= cfg.t_end - 1e-12;
        if (at_forced || final_step || step_index % cfg.record_every == 0) record(s);
        if (final_step) break;
    }
    traj.termination = Termination::ReachedEnd;
    return traj;
}

namespace {

// Per-snapshot interpolants for Hermite-in-time reconstruction of u, u_x and
// direct evaluation of rho.
struct SnapshotInterp {
    SpectralInterpolant u, ux, du, dux, rho;
};

struct Reconstruction {
    const TrajectoryRecord* traj;
    std::vector<SnapshotInterp> interp;

    explicit Reconstruction(const TrajectoryRecord& tr) : traj(&tr) {
        interp.reserve(tr.snaps.size());
        for (const Snapshot& s : tr.snaps) {
            SnapshotInterp si;
            si.u = SpectralInterpolant(s.u);
            si.ux = SpectralInterpolant(deriv(s.u));
            si.du = SpectralInterpolant(s.du);
            si.dux = SpectralInterpolant(deriv(s.du));
            si.rho = SpectralInterpolant(s.rho);
            interp.push_back(std::move(si));
        }
    }

    // Hermite value at (t, x) within snapshot interval i.
    double eval_u(size_t i, double t, double x) const {
        return hermite(t, i, interp[i].u(x), interp[i].du(x), interp[i + 1].u(x),
                       interp[i + 1].du(x));
    }
    double eval_ux(size_t i, double t, double x) const {
        return hermite(t, i, interp[i].ux(x), interp[i].dux(x), interp[i + 1].ux(x),
                       interp[i + 1].dux(x));
    }

  private:
    double hermite(double t, size_t i, double f0, double d0, double f1, double d1) const {
        const double t0 = traj->snaps[i].t, t1 = traj->snaps[i + 1].t;
        const double dt = t1 - t0;
        const double tau = (t - t0) / dt;
        const double h00 = (1.0 + 2.0 * tau) * (1.0 - tau) * (1.0 - tau);
        const double h10 = tau * (1.0 - tau) * (1.0 - tau);
        const double h01 = tau * tau * (3.0 - 2.0 * tau);
        const double h11 = tau * tau * (tau - 1.0);
        return h00 * f0 + h10 * dt * d0 + h01 * f1 + h11 * dt * d1;
    }
};

double wrap_unit(double x) { return x - std::floor(x); }

}  // namespace

std::vector<Characteristic> evolve_characteristics(const TrajectoryRecord& traj, const Params& p,
                                                   std::span<const double> seeds) {
    if (traj.blew_up())
        throw std::invalid_argument("evolve_characteristics: trajectory terminated in blow-up");
    if (traj.snaps.size() < 2)
        throw std::invalid_argument("evolve_characteristics: need at least two snapshots");

    const Reconstruction rec(traj);
    double sup_rho_all = 1.0;
    for (const Snapshot& s : traj.snaps) sup_rho_all = std::max(sup_rho_all, s.diag.sup_rho);

    std::vector<Characteristic> out(seeds.size());

#pragma omp parallel for schedule(dynamic)
    for (long si = 0; si < static_cast<long>(seeds.size()); ++si) {
        Characteristic ch;
        ch.x0 = wrap_unit(seeds[static_cast<size_t>(si)]);
        double x = ch.x0;
        double r = rec.interp[0].rho(x);
        ch.path.push_back({traj.snaps[0].t, x, r});

        for (size_t i = 0; i + 1 < traj.snaps.size(); ++i) {
            const double t0 = traj.snaps[i].t;
            const double dt = traj.snaps[i + 1].t - t0;
            auto f = [&](double t, double xx, double rr, double& dxdt, double& drdt) {
                const double uval = rec.eval_u(i, t, wrap_unit(xx));
                const double uxval = rec.eval_ux(i, t, wrap_unit(xx));
                dxdt = -(uval + p.gamma);
                drdt = uxval * rr;
            };
            double k1x, k1r, k2x, k2r, k3x, k3r, k4x, k4r;
            f(t0, x, r, k1x, k1r);
            f(t0 + 0.5 * dt, x + 0.5 * dt * k1x, r + 0.5 * dt * k1r, k2x, k2r);
            f(t0 + 0.5 * dt, x + 0.5 * dt * k2x, r + 0.5 * dt * k2r, k3x, k3r);
            f(t0 + dt, x + dt * k3x, r + dt * k3r, k4x, k4r);
            x = x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            r = r + dt / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
            x = wrap_unit(x);
            ch.path.push_back({traj.snaps[i + 1].t, x, r});
            const double rho_here = rec.interp[i + 1].rho(x);
            ch.max_mismatch = std::max(ch.max_mismatch, std::abs(r - rho_here) / sup_rho_all);
        }
        out[static_cast<size_t>(si)] = std::move(ch);
    }
    return out;
}

}  // namespace muhs
