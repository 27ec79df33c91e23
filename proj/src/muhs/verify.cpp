#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sweep.hpp"

namespace muhs {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double TestFunction::space(double x) const {
    double v = a0;
    for (size_t k = 0; k < cos_coef.size(); ++k) v += cos_coef[k] * std::cos(two_pi * (k + 1) * x);
    for (size_t k = 0; k < sin_coef.size(); ++k) v += sin_coef[k] * std::sin(two_pi * (k + 1) * x);
    return v;
}

double TestFunction::space_dx(double x) const {
    double v = 0.0;
    for (size_t k = 0; k < cos_coef.size(); ++k)
        v -= cos_coef[k] * two_pi * (k + 1) * std::sin(two_pi * (k + 1) * x);
    for (size_t k = 0; k < sin_coef.size(); ++k)
        v += sin_coef[k] * two_pi * (k + 1) * std::cos(two_pi * (k + 1) * x);
    return v;
}

double TestFunction::window(double t) const {
    const double s = t / t_end;
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return std::pow(s * (1.0 - s), power);
}

double TestFunction::window_dt(double t) const {
    const double s = t / t_end;
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return power * std::pow(s * (1.0 - s), power - 1) * (1.0 - 2.0 * s) / t_end;
}

TestFunction TestFunction::scaled(double c) const {
    TestFunction out = *this;
    out.a0 *= c;
    for (double& v : out.cos_coef) v *= c;
    for (double& v : out.sin_coef) v *= c;
    return out;
}

TestFunction operator+(const TestFunction& a, const TestFunction& b) {
    if (a.t_end != b.t_end || a.power != b.power)
        throw std::invalid_argument("TestFunction: summands need matching time windows");
    TestFunction out = a;
    out.cos_coef.resize(std::max(a.cos_coef.size(), b.cos_coef.size()), 0.0);
    out.sin_coef.resize(std::max(a.sin_coef.size(), b.sin_coef.size()), 0.0);
    out.a0 += b.a0;
    for (size_t k = 0; k < b.cos_coef.size(); ++k) out.cos_coef[k] += b.cos_coef[k];
    for (size_t k = 0; k < b.sin_coef.size(); ++k) out.sin_coef[k] += b.sin_coef[k];
    return out;
}

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& v) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < t.size(); ++i) acc += 0.5 * (t[i + 1] - t[i]) * (v[i] + v[i + 1]);
    return acc;
}

Field space_field(const TestFunction& phi, const GridPtr& g) {
    return sample(g, [&](double x) { return phi.space(x); });
}

Field space_dx_field(const TestFunction& phi, const GridPtr& g) {
    return sample(g, [&](double x) { return phi.space_dx(x); });
}

}  // namespace

double weak_residual_u(const TrajectoryRecord& traj, const Params&, const TestFunction& phi) {
    const GridPtr& g = traj.front().u.grid;
    const Field chi = space_field(phi, g);
    std::vector<double> ts, integrand;
    ts.reserve(traj.snaps.size());
    integrand.reserve(traj.snaps.size());
    for (const Snapshot& s : traj.snaps) {
        const double wt = phi.window(s.t), wdt = phi.window_dt(s.t);
        double acc = 0.0;
        for (size_t j = 0; j < chi.values.size(); ++j)
            acc += (s.u.values[j] * wdt + s.du.values[j] * wt) * chi.values[j];
        ts.push_back(s.t);
        integrand.push_back(acc / g->n);
    }
    return std::abs(trapezoid(ts, integrand));
}

double weak_residual_rho(const TrajectoryRecord& traj, const Params& p, const TestFunction& phi) {
    const GridPtr& g = traj.front().rho.grid;
    const Field chi = space_field(phi, g);
    const Field chi_x = space_dx_field(phi, g);
    std::vector<double> ts, integrand;
    ts.reserve(traj.snaps.size());
    integrand.reserve(traj.snaps.size());
    for (const Snapshot& s : traj.snaps) {
        const double wt = phi.window(s.t), wdt = phi.window_dt(s.t);
        double acc = 0.0;
        for (size_t j = 0; j < chi.values.size(); ++j) {
            const double flux = s.rho.values[j] * s.u.values[j] + p.gamma * s.rho.values[j];
            acc += s.rho.values[j] * wdt * chi.values[j] - flux * wt * chi_x.values[j];
        }
        ts.push_back(s.t);
        integrand.push_back(acc / g->n);
    }
    return std::abs(trapezoid(ts, integrand));
}

ConvergenceReport convergence_study(const RoughInitialData& data, std::span<const int> n_list,
                                    const GridPtr& grid, const Params& p, const TimeStepConfig& cfg,
                                    std::span<const double> probe_times, bool parallel) {
    if (n_list.size() < 3)
        throw std::invalid_argument("convergence_study: need at least three mollifier indices");
    for (size_t i = 0; i + 1 < n_list.size(); ++i)
        if (n_list[i + 1] <= n_list[i])
            throw std::invalid_argument("convergence_study: indices must be strictly increasing");
    if (!(data.alpha > 0.0))
        throw std::invalid_argument("convergence_study: needs alpha > 0 (global regime)");
    if (probe_times.empty())
        throw std::invalid_argument("convergence_study: needs at least one probe time");

    ConvergenceReport rep;
    rep.n_list.assign(n_list.begin(), n_list.end());
    rep.probe_times.assign(probe_times.begin(), probe_times.end());

    // One fixed step sequence for every run, sized from the transport bound of
    // the rough data: sup|u^n| <= ||u0||_2 + (sqrt3/6) mu1 uniformly in n.
    const State rough = sample_initial(data, grid);
    rep.rough_mu1_sq = energy(rough);
    const double rough_u0_l2 = l2_norm(rough.u);
    const double speed = rough_u0_l2 + std::sqrt(3.0) / 6.0 * std::sqrt(rep.rough_mu1_sq) +
                         std::abs(p.gamma) + 1e-12;
    double dt = std::min(cfg.dt_max, cfg.cfl * grid->h / speed);
    if (cfg.fixed_dt) dt = std::min(dt, *cfg.fixed_dt);
    const long nsteps = std::max(1L, static_cast<long>(std::ceil(cfg.t_end / dt - 1e-9)));
    dt = cfg.t_end / static_cast<double>(nsteps);
    rep.dt_used = dt;

    TimeStepConfig run_cfg = cfg;
    run_cfg.fixed_dt = dt;
    run_cfg.forced_times.insert(run_cfg.forced_times.end(), probe_times.begin(), probe_times.end());

    struct RunResult {
        TrajectoryRecord traj;
        std::vector<size_t> probe_idx;
    };
    std::vector<RunResult> runs(n_list.size());

    sweep::parallel_for(static_cast<long>(n_list.size()), parallel, [&](long i) {
        const MollifierSpec spec{n_list[static_cast<size_t>(i)]};
        InitialAssembly ia = make_initial(data, grid, spec);
        RunResult rr;
        rr.traj = run(ia.state, p, run_cfg, &ia.init);
        for (double pt : probe_times) {
            size_t found = rr.traj.snaps.size();
            for (size_t k = 0; k < rr.traj.snaps.size(); ++k)
                if (std::abs(rr.traj.snaps[k].t - pt) < 1e-9) found = k;
            rr.probe_idx.push_back(found);
        }
        runs[static_cast<size_t>(i)] = std::move(rr);
    });

    for (const RunResult& rr : runs) {
        if (rr.traj.blew_up())
            throw std::runtime_error("convergence_study: a run blew up in the global regime");
        for (size_t idx : rr.probe_idx)
            if (idx >= rr.traj.snaps.size())
                throw std::runtime_error("convergence_study: probe time not captured");
    }

    rep.pairs.resize(probe_times.size());
    rep.cauchy_decay = true;
    for (size_t pi = 0; pi < probe_times.size(); ++pi) {
        for (size_t i = 0; i + 1 < runs.size(); ++i) {
            const Snapshot& a = runs[i].traj.snaps[runs[i].probe_idx[pi]];
            const Snapshot& b = runs[i + 1].traj.snaps[runs[i + 1].probe_idx[pi]];
            ConvergenceReport::PairDist d;
            d.n_lo = rep.n_list[i];
            d.n_hi = rep.n_list[i + 1];
            const Field du = b.u - a.u;
            const Field dux = deriv(b.u) - deriv(a.u);
            const Field drho = b.rho - a.rho;
            d.l2_u = l2_norm(du);
            d.l2_ux = l2_norm(dux);
            d.l2_rho = l2_norm(drho);
            d.sup_u = sup_norm(du);
            d.sup_ux = sup_norm(dux);
            d.sup_rho = sup_norm(drho);
            rep.pairs[pi].push_back(d);
        }
        for (size_t i = 0; i + 1 < rep.pairs[pi].size(); ++i) {
            const auto& d0 = rep.pairs[pi][i];
            const auto& d1 = rep.pairs[pi][i + 1];
            if (!(d1.l2_u < d0.l2_u && d1.l2_ux < d0.l2_ux && d1.l2_rho < d0.l2_rho))
                rep.cauchy_decay = false;
        }
    }

    rep.energy_dominance = true;
    for (const RunResult& rr : runs) {
        rep.run_energy0.push_back(rr.traj.front().diag.energy);
        double emax = 0.0;
        for (size_t idx : rr.probe_idx) emax = std::max(emax, rr.traj.snaps[idx].diag.energy);
        rep.max_energy_probes.push_back(emax);
        if (emax > rep.rough_mu1_sq + 1e-10) rep.energy_dominance = false;
        if (rr.traj.front().diag.energy > rep.rough_mu1_sq + 1e-10) rep.energy_dominance = false;
    }

    // Admissibility against the rough-data norms; the finest run is the gate.
    const Field rough_ux = deriv(rough.u);
    rep.rough_norm_sum = l2_norm(rough_ux) + l2_norm(rough.rho);
    for (const RunResult& rr : runs) {
        std::vector<double> sums;
        for (size_t idx : rr.probe_idx) {
            const Snapshot& s = rr.traj.snaps[idx];
            sums.push_back(l2_norm(deriv(s.u)) + l2_norm(s.rho));
        }
        rep.norm_sums.push_back(std::move(sums));
    }
    double worst = -1e300;
    for (double s : rep.norm_sums.back()) worst = std::max(worst, s);
    rep.admissibility_margin = rep.rough_norm_sum + 1e-8 - worst;
    rep.admissible = rep.admissibility_margin >= 0.0;
    return rep;
}

InitialEnergyReport initial_energy_limit(const TrajectoryRecord& traj,
                                         std::span<const double> early_times) {
    if (traj.blew_up())
        throw std::invalid_argument("initial_energy_limit: trajectory terminated in blow-up");
    for (size_t i = 0; i + 1 < early_times.size(); ++i)
        if (early_times[i + 1] >= early_times[i])
            throw std::invalid_argument("initial_energy_limit: times must decrease");

    const Snapshot& s0 = traj.front();
    const Field u0x = deriv(s0.u);
    const double ux2_0 = l2_norm(u0x) * l2_norm(u0x);
    const double rho2_0 = l2_norm(s0.rho) * l2_norm(s0.rho);

    InitialEnergyReport rep;
    for (double t : early_times) {
        const Snapshot* snap = nullptr;
        for (const Snapshot& s : traj.snaps)
            if (std::abs(s.t - t) < 1e-9) snap = &s;
        if (!snap) throw std::invalid_argument("initial_energy_limit: no snapshot at a requested time");
        const Field ux = deriv(snap->u);
        const double ux2 = l2_norm(ux) * l2_norm(ux);
        const double rho2 = l2_norm(snap->rho) * l2_norm(snap->rho);
        rep.times.push_back(t);
        rep.diff_ux2.push_back(std::abs(ux2 - ux2_0));
        rep.diff_rho2.push_back(std::abs(rho2 - rho2_0));
    }
    rep.monotone_ux2 = true;
    rep.monotone_rho2 = true;
    for (size_t i = 0; i + 1 < rep.times.size(); ++i) {
        if (!(rep.diff_ux2[i + 1] < rep.diff_ux2[i])) rep.monotone_ux2 = false;
        if (!(rep.diff_rho2[i + 1] < rep.diff_rho2[i])) rep.monotone_rho2 = false;
    }
    return rep;
}

}  // namespace muhs
