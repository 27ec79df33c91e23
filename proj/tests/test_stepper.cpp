#include <doctest.h>

#include <cmath>
#include <numbers>

#include "muhs/stepper.hpp"

using namespace muhs;
namespace {
constexpr double pi = std::numbers::pi;

State small_state(const GridPtr& g, double amp) {
    return State{sample(g, [amp](double x) { return amp * std::sin(2 * pi * x); }),
                 make_field(g, 1.0), 0, false};
}
}  // namespace

TEST_CASE("cfl_dt formula and caps") {
    auto g = make_grid(128);
    TimeStepConfig cfg;
    cfg.cfl = 0.3;
    cfg.dt_max = 1e-3;
    {
        State s{make_field(g, 0.0), make_field(g, 1.0), 0, false};
        CHECK(cfl_dt(s, Params{0.0}, cfg) == 1e-3);  // advective speed ~ 0: cap binds
    }
    {
        State s{make_field(g, 1.0), make_field(g, 1.0), 0, false};
        cfg.dt_max = 1.0;
        const double want = 0.3 / (128.0 * 1.5);
        CHECK(cfl_dt(s, Params{0.5}, cfg) == doctest::Approx(want).epsilon(1e-9));
    }
    {
        State s{make_field(g, 1.0), make_field(g, 1.0), 0, true};
        CHECK(cfl_dt(s, Params{0.0}, cfg) == 0.0);
    }
}

TEST_CASE("step_rk4: steady state, local order, per-step energy drift") {
    auto g = make_grid(64);
    Params p{0.3};
    {
        State s{make_field(g, 0.4), make_field(g, 1.2), 0, false};
        const State out = step_rk4(s, p, 1e-2);
        CHECK(sup_norm(out.u - s.u) < 1e-14);
        CHECK(sup_norm(out.rho - s.rho) < 1e-14);
        CHECK(out.t == doctest::Approx(1e-2).epsilon(1e-15));
    }
    {
        // one full step vs two half steps: the gap scales like dt^5, so
        // halving dt shrinks it ~32x
        State s = small_state(g, 0.5);
        auto gap = [&](double dt) {
            const State full = step_rk4(s, p, dt);
            const State half = step_rk4(step_rk4(s, p, dt / 2), p, dt / 2);
            return sup_norm(full.u - half.u) + sup_norm(full.rho - half.rho);
        };
        const double g1 = gap(1e-2);
        const double g2 = gap(5e-3);
        CHECK(g1 > 1e-13);
        CHECK(g1 / g2 > 20.0);
        CHECK(g1 / g2 < 44.0);
    }
    {
        State s = small_state(make_grid(128), 0.05);
        const double e0 = energy(s);
        const State out = step_rk4(s, Params{0.0}, 1e-4);
        CHECK(std::abs(energy(out) - e0) / e0 < 1e-12);
    }
}

TEST_CASE("run: global regime conserves, records, and respects bounds") {
    auto g = make_grid(128);
    State s0 = small_state(g, 0.1);
    const ConservedInit init = conserved_init(s0, 1.0);
    Params p{0.3};
    TimeStepConfig cfg;
    cfg.t_end = 1.0;
    cfg.cfl = 0.3;
    cfg.dt_max = 5e-3;
    cfg.record_every = 4;
    const TrajectoryRecord traj = run(s0, p, cfg, &init);

    REQUIRE(traj.termination == Termination::ReachedEnd);
    CHECK(traj.front().t == 0.0);
    CHECK(traj.back().t == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 0; i + 1 < traj.snaps.size(); ++i)
        CHECK(traj.snaps[i + 1].t > traj.snaps[i].t);

    const double e0 = traj.front().diag.energy;
    for (const Snapshot& s : traj.snaps) {
        CHECK(std::abs(s.diag.mu0 - init.mu0) <= 1e-10);
        CHECK(std::abs(s.diag.energy - e0) / e0 <= 1e-8);
        CHECK(s.diag.sup_bound_margin >= -1e-8);
        CHECK(s.diag.c1_margin >= -1e-8);
        CHECK(s.diag.c2_margin >= -1e-8);
        CHECK(s.diag.min_rho > 0.0);
    }

    // admissibility: the L2 norm sum never exceeds its initial value
    const double sum0 = l2_norm(deriv(traj.front().u)) + l2_norm(traj.front().rho);
    for (const Snapshot& s : traj.snaps)
        CHECK(l2_norm(deriv(s.u)) + l2_norm(s.rho) <= sum0 + 1e-8);
}

TEST_CASE("run: t_end = 0 records only the initial snapshot") {
    auto g = make_grid(64);
    State s0 = small_state(g, 0.1);
    TimeStepConfig cfg;
    cfg.t_end = 0.0;
    const TrajectoryRecord traj = run(s0, Params{0.0}, cfg);
    CHECK(traj.snaps.size() == 1);
    CHECK(traj.termination == Termination::ReachedEnd);
}

TEST_CASE("run: decimation and forced times") {
    auto g = make_grid(64);
    State s0 = small_state(g, 0.05);
    TimeStepConfig cfg;
    cfg.t_end = 0.1;
    cfg.fixed_dt = 1e-2;
    cfg.record_every = 3;
    cfg.forced_times = {0.025};
    const TrajectoryRecord traj = run(s0, Params{0.0}, cfg);

    bool has_forced = false;
    for (const Snapshot& s : traj.snaps)
        if (s.t == 0.025) has_forced = true;
    CHECK(has_forced);
    CHECK(traj.front().t == 0.0);
    CHECK(traj.back().t == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("run: gradient blow-up is a recorded outcome") {
    auto g = make_grid(128);
    State s0{sample(g, [](double x) { return std::sin(2 * pi * x); }), make_field(g, 0.0), 0, false};
    TimeStepConfig cfg;
    cfg.t_end = 2.0;
    cfg.blowup_threshold = 1e4;
    const TrajectoryRecord traj = run(s0, Params{0.0}, cfg);

    for (size_t i = 0; i + 1 < traj.snaps.size(); ++i)
        CHECK(traj.snaps[i + 1].t > traj.snaps[i].t);

    if (traj.blew_up()) {
        CHECK(traj.blowup_time <= 2.0);
        // the slope sinks hard before the detector trips
        double min_ux0 = min_value(deriv(traj.front().u));
        double min_ux_late = min_value(deriv(traj.snaps[traj.snaps.size() - 2].u));
        CHECK(min_ux_late < min_ux0);
    } else {
        CHECK(traj.back().t == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("temporal order: global error scales like dt^4") {
    auto g = make_grid(64);
    State s0{sample(g, [](double x) { return 0.2 * std::sin(2 * pi * x); }), make_field(g, 1.0), 0,
             false};
    Params p{0.3};
    auto final_state = [&](double dt) {
        TimeStepConfig cfg;
        cfg.t_end = 0.5;
        cfg.fixed_dt = dt;
        cfg.record_every = 1 << 20;  // endpoints only
        return run(s0, p, cfg).back();
    };
    const Snapshot ref = final_state(5e-4);
    const Snapshot a = final_state(4e-3);
    const Snapshot b = final_state(2e-3);
    const double ea = sup_norm(a.u - ref.u) + sup_norm(a.rho - ref.rho);
    const double eb = sup_norm(b.u - ref.u) + sup_norm(b.rho - ref.rho);
    CHECK(ea > 1e-13);
    CHECK(ea / eb > 12.0);
    CHECK(ea / eb < 20.0);
}

TEST_CASE("characteristics: frozen flow and pure drift") {
    auto g = make_grid(64);
    TimeStepConfig cfg;
    cfg.t_end = 1.0;
    cfg.fixed_dt = 0.02;
    cfg.record_every = 1;
    const std::vector<double> seeds{0.0, 0.33, 0.8};
    {
        State s0{make_field(g, 0.0), make_field(g, 1.0), 0, false};
        const TrajectoryRecord traj = run(s0, Params{0.0}, cfg);
        const auto chars = evolve_characteristics(traj, Params{0.0}, seeds);
        for (const auto& ch : chars) {
            CHECK(ch.path.back().x == doctest::Approx(ch.x0).epsilon(1e-12));
            CHECK(ch.path.back().r == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(ch.max_mismatch < 1e-12);
        }
    }
    {
        State s0{make_field(g, 0.0), make_field(g, 1.0), 0, false};
        const TrajectoryRecord traj = run(s0, Params{0.25}, cfg);
        const auto chars = evolve_characteristics(traj, Params{0.25}, seeds);
        for (const auto& ch : chars) {
            const double want = ch.x0 - 0.25 - std::floor(ch.x0 - 0.25);
            CHECK(ch.path.back().x == doctest::Approx(want).epsilon(1e-10));
            CHECK(ch.path.back().r == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("characteristics: sign preservation and transport consistency") {
    auto g = make_grid(128);
    State s0 = small_state(g, 0.1);
    Params p{0.3};
    TimeStepConfig cfg;
    cfg.t_end = 1.0;
    cfg.cfl = 0.3;
    cfg.dt_max = 5e-3;
    cfg.record_every = 1;
    const TrajectoryRecord traj = run(s0, p, cfg);
    REQUIRE_FALSE(traj.blew_up());

    std::vector<double> seeds;
    for (int i = 0; i < 16; ++i) seeds.push_back(i / 16.0);
    const auto chars = evolve_characteristics(traj, p, seeds);
    for (const auto& ch : chars) {
        for (const auto& pt : ch.path) CHECK(pt.r > 0.0);
        CHECK(ch.max_mismatch < 1e-4);
    }
}

TEST_CASE("characteristics reject blown-up trajectories") {
    auto g = make_grid(64);
    TrajectoryRecord traj;
    traj.termination = Termination::BlowUp;
    traj.snaps.resize(2);
    const std::vector<double> seeds{0.1};
    CHECK_THROWS_AS(evolve_characteristics(traj, Params{}, seeds), std::invalid_argument);
}
