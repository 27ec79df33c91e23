#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace muhs::fft {

namespace {

// FFTW planning is not thread safe; execution through plan-owned buffers is,
// as long as each thread uses its own plans.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanSet {
    int n;
    double* real;
    fftw_complex* cplx;
    fftw_plan r2c;
    fftw_plan c2r;

    explicit PlanSet(int n_) : n(n_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        real = fftw_alloc_real(static_cast<size_t>(n));
        cplx = fftw_alloc_complex(static_cast<size_t>(n / 2 + 1));
        r2c = fftw_plan_dft_r2c_1d(n, real, cplx, FFTW_ESTIMATE);
        c2r = fftw_plan_dft_c2r_1d(n, cplx, real, FFTW_ESTIMATE);
    }
    ~PlanSet() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(c2r);
        fftw_destroy_plan(r2c);
        fftw_free(cplx);
        fftw_free(real);
    }
    PlanSet(const PlanSet&) = delete;
    PlanSet& operator=(const PlanSet&) = delete;
};

PlanSet& plans_for(int n) {
    thread_local std::map<int, std::unique_ptr<PlanSet>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<PlanSet>(n);
    return *slot;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const double> f) {
    const int n = static_cast<int>(f.size());
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("fft: length must be even and >= 2");
    PlanSet& p = plans_for(n);
    std::copy(f.begin(), f.end(), p.real);
    fftw_execute(p.r2c);
    std::vector<std::complex<double>> c(static_cast<size_t>(n / 2 + 1));
    const double s = 1.0 / n;
    for (int k = 0; k <= n / 2; ++k) c[static_cast<size_t>(k)] = {p.cplx[k][0] * s, p.cplx[k][1] * s};
    return c;
}

std::vector<double> inverse(std::span<const std::complex<double>> c, int n) {
    if (static_cast<int>(c.size()) != n / 2 + 1)
        throw std::invalid_argument("fft: spectrum length must be n/2+1");
    PlanSet& p = plans_for(n);
    for (int k = 0; k <= n / 2; ++k) {
        p.cplx[k][0] = c[static_cast<size_t>(k)].real();
        p.cplx[k][1] = c[static_cast<size_t>(k)].imag();
    }
    fftw_execute(p.c2r);
    return std::vector<double>(p.real, p.real + n);
}

}  // namespace muhs::fft
