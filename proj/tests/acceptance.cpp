// Acceptance suite: every checkable contract of the solver and harness, one
// pass/fail line each, with the tolerances pinned in code. Exits nonzero if
// any check fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "muhs/nonlocal.hpp"
#include "muhs/verify.hpp"

using namespace muhs;

namespace {

constexpr double pi = std::numbers::pi;
int g_failures = 0;

double now_s() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

void report(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %-34s %s\n", ok ? "PASS" : "FAIL", idx, name, detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

Field random_bandlimited(const GridPtr& g, std::mt19937_64& rng, int kmax) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> a(static_cast<size_t>(kmax)), b(static_cast<size_t>(kmax));
    for (int k = 0; k < kmax; ++k) {
        a[static_cast<size_t>(k)] = dist(rng);
        b[static_cast<size_t>(k)] = dist(rng);
    }
    return sample(g, [&](double x) {
        double v = 0.0;
        for (int k = 1; k <= kmax; ++k)
            v += a[static_cast<size_t>(k - 1)] * std::cos(2 * pi * k * x) +
                 b[static_cast<size_t>(k - 1)] * std::sin(2 * pi * k * x);
        return v;
    });
}

// ---- criterion 1: operator identity suite ---------------------------------

void criterion1() {
    const double t0 = now_s();
    auto g = make_grid(256);
    std::mt19937_64 rng(20240811);

    double worst_routes = 0.0, worst_dxx = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Field w = random_bandlimited(g, rng, 10);
        const Field v = ainv_spectral(w);
        worst_routes = std::max(worst_routes, sup_norm(ainv_formula(w) - v));
        worst_routes = std::max(worst_routes, sup_norm(conv_green(w) - v));
        const Field dxx = ainv_dxx(w);
        const double m = mean(w);
        for (size_t j = 0; j < w.values.size(); ++j)
            worst_dxx = std::max(worst_dxx, std::abs(dxx.values[j] + (w.values[j] - m)));
    }
    const double green_mean_err = std::abs(mean(green_kernel(g).values) - 1.0);
    const double elapsed = now_s() - t0;

    const bool ok = worst_routes <= 1e-9 && worst_dxx == 0.0 && green_mean_err <= 1e-12 &&
                    elapsed < 5.0;
    report(1, "operator identities (n=256)", ok,
           fmt("routes=%.2e (<=1e-9), dxx=%.1g (==0), mean(g)-1=%.1g (<=1e-12), %.2fs (<5s)",
               worst_routes, worst_dxx, green_mean_err, elapsed));
}

// ---- criteria 2-4 share one global-regime trajectory -----------------------

TrajectoryRecord global_run() {
    auto g = make_grid(256);
    State s0{sample(g, [](double x) { return 0.1 * std::sin(2 * pi * x); }), make_field(g, 1.0), 0,
             false};
    const ConservedInit init = conserved_init(s0, 1.0);
    Params p{0.3};
    TimeStepConfig cfg;
    cfg.t_end = 2.0;
    cfg.cfl = 0.3;
    cfg.dt_max = 1e-2;
    cfg.record_every = 1;  // dense snapshots for the characteristics check
    return run(s0, p, cfg, &init);
}

void criterion2(const TrajectoryRecord& traj, double elapsed) {
    const double e0 = traj.front().diag.energy;
    double drift_e = 0.0, drift_m = 0.0;
    for (const Snapshot& s : traj.snaps) {
        drift_e = std::max(drift_e, std::abs(s.diag.energy - e0) / e0);
        drift_m = std::max(drift_m, std::abs(s.diag.mu0 - traj.init.mu0));
    }
    const bool ok = !traj.blew_up() && drift_e <= 1e-7 && drift_m <= 1e-10 && elapsed < 30.0;
    report(2, "conservation along the run", ok,
           fmt("energy drift=%.2e (<=1e-7), mean drift=%.2e (<=1e-10), %.2fs (<30s)", drift_e,
               drift_m, elapsed));
}

void criterion3(const TrajectoryRecord& traj) {
    double worst_sup = 1e300, worst_c1 = 1e300, worst_c2 = 1e300;
    for (const Snapshot& s : traj.snaps) {
        worst_sup = std::min(worst_sup, s.diag.sup_bound_margin);
        worst_c1 = std::min(worst_c1, s.diag.c1_margin);
        worst_c2 = std::min(worst_c2, s.diag.c2_margin);
    }
    // 1e-8 absolute slack on every inequality monitor
    const bool ok = worst_sup >= -1e-8 && worst_c1 >= -1e-8 && worst_c2 >= -1e-8;
    report(3, "sup bound and a priori bounds", ok,
           fmt("sup margin=%.3e (>=-1e-8), C1 margin=%.3e, C2 margin=%.3e", worst_sup, worst_c1,
               worst_c2));
}

void criterion4(const TrajectoryRecord& traj) {
    double min_rho = 1e300;
    for (const Snapshot& s : traj.snaps) min_rho = std::min(min_rho, s.diag.min_rho);

    std::vector<double> seeds;
    for (int i = 0; i < 16; ++i) seeds.push_back(i / 16.0);
    const auto chars = evolve_characteristics(traj, traj.params, seeds);
    double mismatch = 0.0;
    bool signs_ok = true;
    for (const auto& ch : chars) {
        mismatch = std::max(mismatch, ch.max_mismatch);
        for (const auto& pt : ch.path)
            if (!(pt.r > 0.0)) signs_ok = false;
    }
    const bool ok = min_rho > 0.0 && signs_ok && mismatch <= 1e-4;
    report(4, "sign preservation + characteristics", ok,
           fmt("min rho=%.4f (>0), R>0 %s, mismatch=%.2e (<=1e-4)", min_rho,
               signs_ok ? "yes" : "NO", mismatch));
}

// ---- criterion 5: mollification properties ---------------------------------

void criterion5() {
    auto g = make_grid(256);
    RoughInitialData data{hat_profile(), step_profile(2.0, 1.0), 1.0};
    bool contraction = true, positivity = true, h1_decreasing = true;
    double prev_h1 = 1e300, worst = 0.0;
    for (int mn : {4, 8, 16, 32}) {
        const InitialAssembly ia = make_initial(data, g, MollifierSpec{mn});
        const double c1 = ia.report.u0n_l2 - ia.report.u0_l2;
        const double c2 = ia.report.u0xn_l2 - ia.report.u0x_l2;
        const double c3 = ia.report.rho0n_l2 - ia.report.rho0_l2;
        worst = std::max({worst, c1, c2, c3});
        if (c1 > 1e-12 || c2 > 1e-12 || c3 > 1e-12) contraction = false;
        if (ia.report.min_rho0n < data.alpha - 1e-12) positivity = false;
        if (!(ia.report.h1_dist < prev_h1)) h1_decreasing = false;
        prev_h1 = ia.report.h1_dist;
    }
    const bool ok = contraction && positivity && h1_decreasing;
    report(5, "mollification properties", ok,
           fmt("contraction excess=%.1e (<=1e-12), min rho>=alpha %s, H1 decreasing %s", worst,
               positivity ? "yes" : "NO", h1_decreasing ? "yes" : "NO"));
}

// ---- criteria 6-8: convergence study and its finest run ---------------------

void criteria678() {
    auto g = make_grid(256);
    RoughInitialData data{hat_profile(), step_profile(2.0, 1.0), 1.0};
    Params p{0.3};
    TimeStepConfig cfg;
    cfg.t_end = 0.5;
    cfg.cfl = 0.3;
    cfg.dt_max = 1e-2;
    cfg.record_every = 8;
    const std::vector<int> nl{4, 8, 16, 32};
    const std::vector<double> probes{0.25, 0.5};

    const double t0 = now_s();
    const ConvergenceReport rep = convergence_study(data, nl, g, p, cfg, probes);
    const double elapsed = now_s() - t0;

    double worst_ratio = 0.0;  // largest d_{k+1}/d_k over probes and fields
    for (size_t pi = 0; pi < probes.size(); ++pi)
        for (size_t i = 0; i + 1 < rep.pairs[pi].size(); ++i) {
            const auto& a = rep.pairs[pi][i];
            const auto& b = rep.pairs[pi][i + 1];
            worst_ratio = std::max({worst_ratio, b.l2_u / a.l2_u, b.l2_ux / a.l2_ux,
                                    b.l2_rho / a.l2_rho});
        }
    report(6, "approximate-solution convergence", rep.cauchy_decay && elapsed < 180.0,
           fmt("strict decay %s (worst ratio %.2f), %.1fs (<180s)",
               rep.cauchy_decay ? "yes" : "NO", worst_ratio, elapsed));

    // criterion 7: admissibility at all probes + weak-residual refinement decay
    auto stride_run = [&](int n) {
        auto gg = make_grid(n);
        InitialAssembly ia = make_initial(data, gg, MollifierSpec{32});
        TimeStepConfig rcfg;
        rcfg.t_end = 1.0;
        rcfg.record_every = 8;
        const double speed = l2_norm(ia.state.u) +
                             std::sqrt(3.0) / 6.0 * std::sqrt(energy(ia.state)) +
                             std::abs(p.gamma);
        long steps = static_cast<long>(std::ceil(rcfg.t_end / (0.3 * gg->h / speed)));
        steps = ((steps + 7) / 8) * 8;  // keep the snapshot grid exactly uniform
        rcfg.fixed_dt = rcfg.t_end / static_cast<double>(steps);
        return run(ia.state, p, rcfg, &ia.init);
    };
    TestFunction phi;
    phi.t_end = 1.0;
    phi.power = 3;
    phi.cos_coef = {0.7};
    phi.sin_coef = {0.0, 0.4};
    const TrajectoryRecord coarse = stride_run(128);
    const TrajectoryRecord fine = stride_run(256);
    const double ru_c = weak_residual_u(coarse, p, phi);
    const double ru_f = weak_residual_u(fine, p, phi);
    const double rr_c = weak_residual_rho(coarse, p, phi);
    const double rr_f = weak_residual_rho(fine, p, phi);
    const bool resid_ok = ru_c / ru_f >= 4.0 && rr_c / rr_f >= 4.0;
    const bool ok7 = rep.admissibility_margin >= 0.0 && resid_ok;
    report(7, "weak-solution admissibility", ok7,
           fmt("margin=%.3e (>=0), residual decay u %.1fx rho %.1fx (>=4x)",
               rep.admissibility_margin, ru_c / ru_f, rr_c / rr_f));

    // criterion 8: t -> 0+ energy limits on the finest data (grid 256)
    InitialAssembly fine_ia = make_initial(data, g, MollifierSpec{32});
    TimeStepConfig ecfg;
    ecfg.t_end = 0.12;
    ecfg.cfl = 0.3;
    ecfg.dt_max = 1e-2;
    ecfg.record_every = 1;
    ecfg.forced_times = {0.1, 0.05, 0.025};
    const TrajectoryRecord etraj = run(fine_ia.state, p, ecfg, &fine_ia.init);
    const std::vector<double> times{0.1, 0.05, 0.025};
    const InitialEnergyReport erep = initial_energy_limit(etraj, times);
    const bool ok8 = erep.monotone_ux2 && erep.monotone_rho2;
    report(8, "initial-energy limits", ok8,
           fmt("|du_x^2|: %.3e > %.3e > %.3e, monotone %s", erep.diff_ux2[0], erep.diff_ux2[1],
               erep.diff_ux2[2], ok8 ? "yes" : "NO"));
}

// ---- criterion 9: temporal order --------------------------------------------

void criterion9() {
    auto g = make_grid(64);
    State s0{sample(g, [](double x) { return 0.2 * std::sin(2 * pi * x); }), make_field(g, 1.0), 0,
             false};
    Params p{0.3};
    auto final_state = [&](double dt) {
        TimeStepConfig cfg;
        cfg.t_end = 1.0;
        cfg.fixed_dt = dt;
        cfg.record_every = 1 << 20;
        return run(s0, p, cfg).back();
    };
    const double dt0 = 4e-3;
    const Snapshot ref = final_state(dt0 / 8.0);
    const Snapshot a = final_state(dt0);
    const Snapshot b = final_state(dt0 / 2.0);
    const double ea = sup_norm(a.u - ref.u) + sup_norm(a.rho - ref.rho);
    const double eb = sup_norm(b.u - ref.u) + sup_norm(b.rho - ref.rho);
    const double ratio = ea / eb;
    const bool ok = ratio >= 12.0 && ratio <= 20.0;
    report(9, "temporal order (RK4)", ok,
           fmt("error ratio under halving=%.2f (in [12,20]), e(dt)=%.2e", ratio, ea));
}

}  // namespace

int main() {
    std::printf("acceptance suite, grid sizes 64-256, all tolerances pinned\n");
    criterion1();

    const double t0 = now_s();
    const TrajectoryRecord traj = global_run();
    const double run_elapsed = now_s() - t0;
    criterion2(traj, run_elapsed);
    criterion3(traj);
    criterion4(traj);

    criterion5();
    criteria678();
    criterion9();

    if (g_failures == 0) {
        std::printf("all criteria PASSED\n");
        return 0;
    }
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
}
