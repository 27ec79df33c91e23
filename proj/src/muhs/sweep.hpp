#pragma once

namespace muhs::sweep {

// Job-level parallelism for independent runs (mollifier sweeps, seed batches,
// random-input suites). Each job writes to its own pre-sized slot, so results
// do not depend on the schedule; `parallel = false` is the serial reference
// path used in tests and benchmarks.
template <class Fn>
void parallel_for(long njobs, bool parallel, Fn&& fn) {
    if (!parallel) {
        for (long i = 0; i < njobs; ++i) fn(i);
        return;
    }
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < njobs; ++i) fn(i);
}

int max_threads();

}  // namespace muhs::sweep
