#include "mollify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace muhs {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double m, double b,
                            double fa, double fm, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_simpson_rec(f, a, m, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 48);
}

double bump(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(1.0 / (x * x - 1.0));
}

double bump_integral() {
    static const double value =
        adaptive_simpson([](double x) { return bump(x); }, -1.0, 1.0, 1e-14);
    return value;
}

Field mollifier(const MollifierSpec& spec, const GridPtr& g) {
    if (spec.n < 2) throw std::invalid_argument("mollifier: need family index n >= 2");
    const double scale = spec.n / bump_integral();
    Field phi = sample(g, [&](double x) {
        double y = x - std::floor(x);       // [0,1)
        if (y > 0.5) y -= 1.0;              // [-1/2, 1/2): support fits, no wrap terms
        return scale * bump(spec.n * y);
    });
    const double m = mean(phi);
    for (double& v : phi.values) v /= m;  // exact unit discrete mean
    return phi;
}

Field mollify(const Field& f, const MollifierSpec& spec) {
    const int n = f.n();
    const Field phi = mollifier(spec, f.grid);
    auto cf = fft::forward(f.values);
    auto cp = fft::forward(phi.values);
    for (int k = 0; k <= n / 2; ++k) cf[static_cast<size_t>(k)] *= cp[static_cast<size_t>(k)];
    return Field{f.grid, fft::inverse(cf, n)};
}

double Profile::eval(double x) const {
    double y = x - std::floor(x);
    switch (kind) {
        case Kind::PiecewiseLinear: {
            // xs strictly increasing in [0,1); segment from (xs_i, ys_i) to the
            // next breakpoint (wrapping to xs_0 + 1).
            size_t i = 0;
            while (i + 1 < xs.size() && xs[i + 1] <= y) ++i;
            const double x0 = xs[i], y0 = ys[i];
            const double x1 = (i + 1 < xs.size()) ? xs[i + 1] : xs[0] + 1.0;
            const double y1 = (i + 1 < xs.size()) ? ys[i + 1] : ys[0];
            return y0 + (y1 - y0) * (y - x0) / (x1 - x0);
        }
        case Kind::PiecewiseConstant: {
            size_t i = 0;
            while (i + 1 < xs.size() && xs[i + 1] <= y) ++i;
            return ys[i];
        }
        case Kind::Fourier: {
            double v = a0;
            for (size_t k = 0; k < cos_coef.size(); ++k)
                v += cos_coef[k] * std::cos(two_pi * (k + 1) * y);
            for (size_t k = 0; k < sin_coef.size(); ++k)
                v += sin_coef[k] * std::sin(two_pi * (k + 1) * y);
            return v;
        }
        case Kind::Samples:
            throw std::logic_error("Profile: sample profiles have no off-grid values");
    }
    return 0.0;
}

double Profile::eval_deriv(double x) const {
    double y = x - std::floor(x);
    switch (kind) {
        case Kind::PiecewiseLinear: {
            size_t i = 0;
            while (i + 1 < xs.size() && xs[i + 1] <= y) ++i;
            const double x0 = xs[i], y0 = ys[i];
            const double x1 = (i + 1 < xs.size()) ? xs[i + 1] : xs[0] + 1.0;
            const double y1 = (i + 1 < xs.size()) ? ys[i + 1] : ys[0];
            return (y1 - y0) / (x1 - x0);
        }
        case Kind::Fourier: {
            double v = 0.0;
            for (size_t k = 0; k < cos_coef.size(); ++k)
                v -= cos_coef[k] * two_pi * (k + 1) * std::sin(two_pi * (k + 1) * y);
            for (size_t k = 0; k < sin_coef.size(); ++k)
                v += sin_coef[k] * two_pi * (k + 1) * std::cos(two_pi * (k + 1) * y);
            return v;
        }
        default:
            throw std::logic_error("Profile: derivative undefined for this kind");
    }
}

double Profile::lipschitz() const {
    switch (kind) {
        case Kind::PiecewiseLinear: {
            double lip = 0.0;
            for (size_t i = 0; i < xs.size(); ++i) {
                const double x0 = xs[i];
                const double x1 = (i + 1 < xs.size()) ? xs[i + 1] : xs[0] + 1.0;
                const double y0 = ys[i];
                const double y1 = (i + 1 < xs.size()) ? ys[i + 1] : ys[0];
                lip = std::max(lip, std::abs((y1 - y0) / (x1 - x0)));
            }
            return lip;
        }
        case Kind::Fourier: {
            double lip = 0.0;
            for (size_t k = 0; k < cos_coef.size(); ++k) lip += std::abs(cos_coef[k]) * two_pi * (k + 1);
            for (size_t k = 0; k < sin_coef.size(); ++k) lip += std::abs(sin_coef[k]) * two_pi * (k + 1);
            return lip;
        }
        default:
            throw std::logic_error("Profile: Lipschitz constant undefined for this kind");
    }
}

Profile hat_profile() {
    Profile p;
    p.kind = Profile::Kind::PiecewiseLinear;
    p.xs = {0.0, 0.5};
    p.ys = {0.0, 0.5};
    return p;
}

Profile step_profile(double left, double right) {
    Profile p;
    p.kind = Profile::Kind::PiecewiseConstant;
    p.xs = {0.0, 0.5};
    p.ys = {left, right};
    return p;
}

Profile constant_profile(double c) {
    Profile p;
    p.kind = Profile::Kind::PiecewiseConstant;
    p.xs = {0.0};
    p.ys = {c};
    return p;
}

Profile fourier_profile(double a0, std::vector<double> cos_coef, std::vector<double> sin_coef) {
    Profile p;
    p.kind = Profile::Kind::Fourier;
    p.a0 = a0;
    p.cos_coef = std::move(cos_coef);
    p.sin_coef = std::move(sin_coef);
    return p;
}

namespace {

Field sample_profile(const Profile& prof, const GridPtr& g) {
    if (prof.kind == Profile::Kind::Samples) {
        if (static_cast<int>(prof.samples.size()) != g->n)
            throw std::invalid_argument("Profile: sample count does not match the grid");
        return Field{g, prof.samples};
    }
    return sample(g, [&](double x) { return prof.eval(x); });
}

void check_alpha(const Field& rho0, double alpha) {
    if (alpha > 0.0 && min_value(rho0) < alpha - 1e-12)
        throw std::invalid_argument("initial data: sampled rho0 violates the declared lower bound");
}

}  // namespace

State sample_initial(const RoughInitialData& data, const GridPtr& g) {
    Field u0 = sample_profile(data.u0, g);
    Field rho0 = sample_profile(data.rho0, g);
    check_alpha(rho0, data.alpha);
    return State{std::move(u0), std::move(rho0), 0.0, false};
}

InitialAssembly make_initial(const RoughInitialData& data, const GridPtr& g, const MollifierSpec& spec) {
    const Field u0 = sample_profile(data.u0, g);
    const Field rho0 = sample_profile(data.rho0, g);
    check_alpha(rho0, data.alpha);

    Field u0n = mollify(u0, spec);
    Field rho0n = mollify(rho0, spec);

    MollifyReport rep;
    rep.u0_l2 = l2_norm(u0);
    rep.u0n_l2 = l2_norm(u0n);
    const Field u0x = deriv(u0);
    const Field u0xn = deriv(u0n);
    rep.u0x_l2 = l2_norm(u0x);
    rep.u0xn_l2 = l2_norm(u0xn);
    rep.rho0_l2 = l2_norm(rho0);
    rep.rho0n_l2 = l2_norm(rho0n);
    rep.min_rho0 = min_value(rho0);
    rep.min_rho0n = min_value(rho0n);
    const Field du = u0n - u0;
    const Field dux = u0xn - u0x;
    rep.h1_dist = std::sqrt(l2_norm(du) * l2_norm(du) + l2_norm(dux) * l2_norm(dux));
    rep.normalizer = bump_integral();

    State state{std::move(u0n), std::move(rho0n), 0.0, false};
    ConservedInit init = conserved_init(state, data.alpha);
    return InitialAssembly{std::move(state), init, rep};
}

}  // namespace muhs
