// Compares the serial reference sweep against the OpenMP job-parallel sweep
// on a mollifier-family batch of runs, and reports per-run timings. The two
// paths must produce identical results; per-element field loops are left
// serial on purpose (grids of a few hundred points do not amortize thread
// fork-join), so the parallelism lives at the run level.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "muhs/mollify.hpp"
#include "muhs/stepper.hpp"
#include "muhs/sweep.hpp"

using namespace muhs;

namespace {

double wall() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

struct BatchResult {
    std::vector<double> final_energy;
    double seconds = 0;
};

BatchResult run_batch(bool parallel, int n, const std::vector<int>& mollifiers, double t_end) {
    auto g = make_grid(n);
    RoughInitialData data{hat_profile(), step_profile(2.0, 1.0), 1.0};
    Params p{0.3};

    BatchResult res;
    res.final_energy.resize(mollifiers.size());
    const double t0 = wall();
    sweep::parallel_for(static_cast<long>(mollifiers.size()), parallel, [&](long i) {
        InitialAssembly ia = make_initial(data, g, MollifierSpec{mollifiers[static_cast<size_t>(i)]});
        TimeStepConfig cfg;
        cfg.t_end = t_end;
        cfg.cfl = 0.3;
        cfg.dt_max = 1e-2;
        cfg.record_every = 1 << 20;
        const TrajectoryRecord traj = run(ia.state, p, cfg, &ia.init);
        res.final_energy[static_cast<size_t>(i)] = traj.back().diag.energy;
    });
    res.seconds = wall() - t0;
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 256;
    const double t_end = argc > 2 ? std::atof(argv[2]) : 1.0;
    std::vector<int> mollifiers;
    for (int m = 2; m <= 64; m *= 2) mollifiers.push_back(m);
    mollifiers.push_back(3);
    mollifiers.push_back(6);
    mollifiers.push_back(12);

    std::printf("sweep of %zu runs, grid n=%d, t_end=%.2f, %d thread(s) available\n",
                mollifiers.size(), n, t_end, sweep::max_threads());

    const BatchResult serial = run_batch(false, n, mollifiers, t_end);
    const BatchResult parallel = run_batch(true, n, mollifiers, t_end);

    double max_dev = 0.0;
    for (size_t i = 0; i < mollifiers.size(); ++i)
        max_dev = std::max(max_dev,
                           std::abs(serial.final_energy[i] - parallel.final_energy[i]));

    std::printf("serial reference: %7.3f s\n", serial.seconds);
    std::printf("openmp sweep:     %7.3f s   speedup %.2fx\n", parallel.seconds,
                serial.seconds / parallel.seconds);
    std::printf("max |serial - parallel| over runs: %.3e %s\n", max_dev,
                max_dev == 0.0 ? "(identical)" : "");
    return max_dev == 0.0 ? 0 : 1;
}
