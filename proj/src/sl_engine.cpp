#include "specgap/sl_engine.hpp"

#include "specgap/errors.hpp"
#include "specgap/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <boost/numeric/odeint.hpp>
#include <lapacke.h>

namespace specgap {

namespace {

namespace ode = boost::numeric::odeint;
constexpr double kPi = std::numbers::pi;

void require_solver_inputs(const SLProblem& p, int count) {
    p.validate();
    if (count < 1 || count > 10)
        throw std::invalid_argument("sl_engine: count must lie in [1, 10]");
}

// ---------------------------------------------------------------------------
// Finite-volume route
// ---------------------------------------------------------------------------

// Log-weights log w at the half-step points p_j = left + j h/2, j = 0..2N.
// w = exp(int F) up to a normalizing constant; pole parts of F are integrated
// exactly so only the smooth remainder goes through quadrature. Entries at
// singular endpoints are left untouched (w vanishes there).
std::vector<double> half_grid_log_weight(const SLProblem& p, int mesh) {
    const int n_half = 2 * mesh;
    const double h2 = p.length() / n_half;
    const bool sing_l = p.left_end.singular();
    const bool sing_r = p.right_end.singular();
    const double ml = p.left_end.multiplicity;
    const double mr = p.right_end.multiplicity;

    auto smooth_drift = [&](double x) {
        double v = p.drift(x);
        if (sing_l) v -= ml / (x - p.left);
        if (sing_r) v -= mr / (x - p.right);
        return v;
    };

    std::vector<double> logw(n_half + 1, 0.0);
    const int j_begin = sing_l ? 1 : 0;
    const int j_end = sing_r ? n_half - 1 : n_half;
    logw[j_begin] = 0.0;
    for (int j = j_begin; j < j_end; ++j) {
        const double a = p.left + j * h2;
        const double b = p.left + (j + 1) * h2;
        double inc = adaptive_gauss8(smooth_drift, a, b, 1e-13);
        if (sing_l) inc += ml * (std::log(b - p.left) - std::log(a - p.left));
        if (sing_r) inc += mr * (std::log(p.right - b) - std::log(p.right - a));
        logw[j + 1] = logw[j] + inc;
    }

    double top = -std::numeric_limits<double>::infinity();
    for (int j = j_begin; j <= j_end; ++j) top = std::max(top, logw[j]);
    for (int j = j_begin; j <= j_end; ++j) logw[j] -= top;
    return logw;
}

struct FDMatrix {
    std::vector<double> diag;     // symmetrized tridiagonal
    std::vector<double> offdiag;
    std::vector<double> measure;  // node measures mu_i (back-transform)
};

FDMatrix assemble_fd(const SLProblem& p, int mesh) {
    const int n = mesh + 1;  // nodes 0..mesh
    const double h = p.length() / mesh;
    const std::vector<double> logw = half_grid_log_weight(p, mesh);

    auto w_at = [&](int half_index) { return std::exp(logw[half_index]); };

    std::vector<double> cond(mesh);  // edge conductances w_{i+1/2} / h
    for (int i = 0; i < mesh; ++i) cond[i] = w_at(2 * i + 1) / h;

    std::vector<double> mu(n);
    for (int i = 1; i < mesh; ++i) mu[i] = w_at(2 * i) * h;
    if (p.left_end.singular()) {
        // int_0^{h/2} w ~ w(h/2) (h/2) / (m+1) for w ~ t^m
        mu[0] = w_at(1) * (0.5 * h) / (p.left_end.multiplicity + 1.0);
    } else {
        mu[0] = w_at(0) * 0.5 * h;
    }
    if (p.right_end.singular()) {
        mu[mesh] = w_at(2 * mesh - 1) * (0.5 * h) / (p.right_end.multiplicity + 1.0);
    } else {
        mu[mesh] = w_at(2 * mesh) * 0.5 * h;
    }

    FDMatrix m;
    m.diag.resize(n);
    m.offdiag.resize(n - 1);
    m.measure = mu;
    for (int i = 0; i < n; ++i) {
        const double cl = i > 0 ? cond[i - 1] : 0.0;
        const double cr = i < mesh ? cond[i] : 0.0;
        m.diag[i] = (cl + cr) / mu[i];
    }
    for (int i = 0; i < mesh; ++i) m.offdiag[i] = -cond[i] / std::sqrt(mu[i] * mu[i + 1]);
    return m;
}

std::vector<double> fd_eigenvalues_only(const SLProblem& p, int count, int mesh) {
    FDMatrix m = assemble_fd(p, mesh);
    const int n = static_cast<int>(m.diag.size());
    std::vector<double> w(n);
    lapack_int found = 0;
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(count));
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'I', n, m.diag.data(),
                                     m.offdiag.data(), 0.0, 0.0, 1, count,
                                     LAPACKE_dlamch('S'), &found, w.data(), nullptr,
                                     n, isuppz.data());
    if (info != 0 || found < count)
        throw NonConvergence("solve_neumann_fd: tridiagonal eigensolve failed");
    w.resize(count);
    return w;
}

// ---------------------------------------------------------------------------
// Shooting route
// ---------------------------------------------------------------------------

struct ShootingSetup {
    double xl = 0.0, xr = 0.0;  // integration span (poles offset by t0)
    double t0_left = 0.0, t0_right = 0.0;
    double atol = 0.0, rtol = 0.0;
    double min_step = 0.0;
};

using State1 = std::array<double, 1>;
using State2 = std::array<double, 2>;

// Adaptive Dormand-Prince integration of `sys` from x to x_end in place.
template <class System, class State>
void integrate_adaptive_to(const System& sys, State& state, double& x, double x_end,
                           const ShootingSetup& setup, double dt_initial) {
    auto stepper =
        ode::make_controlled(setup.atol, setup.rtol, ode::runge_kutta_dopri5<State>());
    double dt = std::min(dt_initial, x_end - x);
    long iterations = 0;
    while (x < x_end) {
        dt = std::min(dt, x_end - x);
        if (stepper.try_step(sys, state, x, dt) == ode::fail) {
            if (dt < setup.min_step)
                throw StiffIntegration("shooting: step size underflow near endpoint");
        }
        if (++iterations > 20'000'000)
            throw NonConvergence("shooting: integration step budget exhausted");
    }
}

template <class System, class State>
void integrate_adaptive_backward(const System& sys, State& state, double& x,
                                 double x_end, const ShootingSetup& setup,
                                 double dt_initial) {
    auto stepper =
        ode::make_controlled(setup.atol, setup.rtol, ode::runge_kutta_dopri5<State>());
    double dt = -std::min(dt_initial, x - x_end);
    long iterations = 0;
    while (x > x_end) {
        dt = -std::min(-dt, x - x_end);
        if (stepper.try_step(sys, state, x, dt) == ode::fail) {
            if (-dt < setup.min_step)
                throw StiffIntegration("shooting: step size underflow near endpoint");
        }
        if (++iterations > 20'000'000)
            throw NonConvergence("shooting: integration step budget exhausted");
    }
}

double initial_phase(const SLProblem& p, const ShootingSetup& setup, double lambda) {
    const double sq = std::sqrt(lambda);
    if (p.left_end.singular()) {
        const double m = p.left_end.multiplicity;
        const double t0 = setup.t0_left;
        const double v = 1.0 - lambda * t0 * t0 / (2.0 * (m + 1.0));
        const double dv = -lambda * t0 / (m + 1.0);
        return std::atan2(sq * v, dv);
    }
    return 0.5 * kPi;
}

// Terminal phase of the k-th mode. At a singular right endpoint the regular
// branch has v' = +lambda t0 v / (m+1), so the target sits slightly below
// pi/2 mod pi.
double target_phase(const SLProblem& p, const ShootingSetup& setup, double lambda, int k) {
    if (p.right_end.singular()) {
        const double m = p.right_end.multiplicity;
        const double t0 = setup.t0_right;
        const double sq = std::sqrt(lambda);
        const double v = 1.0 - lambda * t0 * t0 / (2.0 * (m + 1.0));
        const double dv = lambda * t0 / (m + 1.0);
        return k * kPi + std::atan2(sq * v, dv);
    }
    return 0.5 * kPi + k * kPi;
}

double phase_at_right(const SLProblem& p, const ShootingSetup& setup, double lambda) {
    const double sq = std::sqrt(lambda);
    auto sys = [&](const State1& y, State1& dy, double x) {
        dy[0] = sq + 0.5 * p.drift(x) * std::sin(2.0 * y[0]);
    };
    State1 phi{initial_phase(p, setup, lambda)};
    double x = setup.xl;
    const double dt0 = p.left_end.singular() ? 0.25 * setup.t0_left : p.length() / 64.0;
    integrate_adaptive_to(sys, phi, x, setup.xr, setup, dt0);
    return phi[0];
}

// max |F'| over the drift-sampling span; singular boundary layers excluded
// (their behaviour is carried by the Frobenius start, not the window).
double drift_derivative_scale(const SLProblem& p, const ShootingSetup& setup) {
    const double len = p.length();
    double a = p.left_end.singular() ? p.left + 0.1 * len : setup.xl;
    double b = p.right_end.singular() ? p.right - 0.1 * len : setup.xr;
    if (!(a < b)) return 0.0;
    double worst = 0.0;
    const int samples = 65;
    const double delta = 1e-5 * len;
    for (int i = 0; i < samples; ++i) {
        const double x = a + (b - a) * i / (samples - 1);
        double fp;
        if (p.drift_derivative) {
            fp = p.drift_derivative(x);
        } else {
            const double xm = std::max(a, x - delta), xp = std::min(b, x + delta);
            fp = (p.drift(xp) - p.drift(xm)) / (xp - xm);
        }
        worst = std::max(worst, std::abs(fp));
    }
    return worst;
}

struct MismatchFn {
    const SLProblem* p;
    const ShootingSetup* setup;
    int k;
    double operator()(double lambda) const {
        // lambda -> 0+ limit: the phase sits at pi/2 everywhere and the target
        // approaches pi/2 + k pi; at exactly 0 the atan2 branches degenerate.
        if (lambda <= 0.0) return -k * kPi;
        return phase_at_right(*p, *setup, lambda) - target_phase(*p, *setup, lambda, k);
    }
};

// Bracketed bisection with secant acceleration on the monotone mismatch.
double refine_eigenvalue(const MismatchFn& g, double lo, double glo, double hi,
                         double ghi, double tol, double lambda_floor) {
    for (int it = 0; it < 240; ++it) {
        if (hi - lo <= tol * std::max(hi, lambda_floor)) break;
        double mid;
        if (ghi != glo) {
            mid = lo - glo * (hi - lo) / (ghi - glo);  // secant
            const double margin = 0.1 * (hi - lo);
            if (!(mid > lo + margin && mid < hi - margin)) mid = 0.5 * (lo + hi);
        } else {
            mid = 0.5 * (lo + hi);
        }
        const double gm = g(mid);
        if (gm < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> shooting_eigenvalues(const SLProblem& p, const ShootingSetup& setup,
                                         int count, double tol,
                                         const ShootingOptions& opt) {
    std::vector<double> lambdas{0.0};  // Neumann zero mode, exact
    if (count == 1) return lambdas;

    const double len = p.length();
    const double base = kPi / len;
    const double unit_floor = base * base;
    const double fp_scale = drift_derivative_scale(p, setup);

    for (int k = 1; k < count; ++k) {
        // Design scan window, scaled by k^2 so higher modes stay coverable.
        double window = 4.0 * unit_floor * (1.0 + fp_scale * len * len);
        window *= static_cast<double>(k) * k;
        if (opt.window_cap_override > 0.0) window = opt.window_cap_override;

        MismatchFn g{&p, &setup, k};
        double lo = lambdas.back();
        double glo = g(lo);
        if (glo >= 0.0) {  // degenerate with the previous mode at this resolution
            lambdas.push_back(lo);
            continue;
        }

        const double step = window / opt.scan_subdivisions;
        std::optional<double> hi;
        double ghi = 0.0;
        const int j_start = static_cast<int>(std::floor(lo / step)) + 1;
        for (int j = j_start; j <= opt.scan_subdivisions; ++j) {
            const double s = j * step;
            if (s <= lo) continue;
            const double gs = g(s);
            if (gs > 0.0) {
                hi = s;
                ghi = gs;
                break;
            }
            lo = s;
            glo = gs;
        }
        if (!hi)
            throw BracketFailure(
                "shooting: no sign change of the mismatch in the scan window");
        lambdas.push_back(refine_eigenvalue(g, lo, glo, *hi, ghi, tol, unit_floor));
    }
    return lambdas;
}

struct FnTrace {
    std::vector<Sample> samples;
    std::vector<double> dv;  // v' from the integrator, same grid
    int stitch = -1;         // index where two sweeps meet (-1: single sweep)
};

// Integration away from each pole keeps the decaying (singular) companion
// solution suppressed, so with a singular right endpoint the eigenfunction is
// assembled from a left and a right sweep matched in the interior; forward
// integration alone would amplify the right pole's tau^(1-m) branch.
FnTrace shooting_eigenfunction(const SLProblem& p, const ShootingSetup& setup,
                               double lambda, int sample_points) {
    FnTrace trace;
    trace.samples.resize(sample_points);
    trace.dv.assign(sample_points, 0.0);
    std::vector<Sample>& samples = trace.samples;
    const double span = setup.xr - setup.xl;
    for (int j = 0; j < sample_points; ++j)
        samples[j].x = setup.xl + span * j / (sample_points - 1);

    if (lambda == 0.0) {
        for (auto& s : samples) s.v = 1.0;
        return trace;
    }

    auto sys = [&](const State2& y, State2& dy, double x) {
        dy[0] = y[1];
        dy[1] = -p.drift(x) * y[1] - lambda * y[0];
    };

    State2 yl;
    if (p.left_end.singular()) {
        const double m = p.left_end.multiplicity;
        const double t0 = setup.t0_left;
        yl = {1.0 - lambda * t0 * t0 / (2.0 * (m + 1.0)), -lambda * t0 / (m + 1.0)};
    } else {
        yl = {1.0, 0.0};
    }
    const double dt0 = p.left_end.singular() ? 0.25 * setup.t0_left : span / 64.0;

    const int mid = p.right_end.singular() ? sample_points / 2 : sample_points - 1;

    double x = setup.xl;
    samples[0].v = yl[0];
    trace.dv[0] = yl[1];
    for (int j = 1; j <= mid; ++j) {
        integrate_adaptive_to(sys, yl, x, samples[j].x, setup, dt0);
        samples[j].v = yl[0];
        trace.dv[j] = yl[1];
    }

    if (p.right_end.singular()) {
        trace.stitch = mid;
        const double m = p.right_end.multiplicity;
        const double t0 = setup.t0_right;
        State2 yr{1.0 - lambda * t0 * t0 / (2.0 * (m + 1.0)), lambda * t0 / (m + 1.0)};
        std::vector<State2> right_states(sample_points - mid);
        double xr = setup.xr;
        right_states.back() = yr;
        for (int j = sample_points - 2; j >= mid; --j) {
            integrate_adaptive_backward(sys, yr, xr, samples[j].x, setup,
                                        0.25 * setup.t0_right);
            right_states[j - mid] = yr;
        }
        // Least-squares match of the two sweeps at the stitch point.
        const double w = span / kPi;
        const State2& r = right_states.front();
        const double denom = r[0] * r[0] + w * w * r[1] * r[1];
        const double alpha =
            denom > 0.0 ? (yl[0] * r[0] + w * w * yl[1] * r[1]) / denom : 1.0;
        for (int j = mid; j < sample_points; ++j) {
            samples[j].v = alpha * right_states[j - mid][0];
            trace.dv[j] = alpha * right_states[j - mid][1];
        }
    }

    double top = 0.0;
    for (const auto& s : samples) top = std::max(top, std::abs(s.v));
    if (top > 0.0) {
        for (auto& s : samples) s.v /= top;
        for (double& d : trace.dv) d /= top;
    }
    return trace;
}

// Residual from the integrated derivative trace: only one numerical
// differentiation (of v'), so sample noise enters as eps/h rather than
// eps/h^2. Points straddling the sweep stitch are excluded.
double trace_residual(const FnTrace& trace, const DriftFn& drift, double lambda) {
    const int n = static_cast<int>(trace.samples.size());
    if (n < 7) return 0.0;
    const double h = trace.samples[1].x - trace.samples[0].x;
    double worst = 0.0;
    for (int j = 2; j < n - 2; ++j) {
        if (trace.stitch >= 0 && std::abs(j - trace.stitch) <= 2) continue;
        const double d2 = (-trace.dv[j + 2] + 8.0 * trace.dv[j + 1] -
                           8.0 * trace.dv[j - 1] + trace.dv[j - 2]) /
                          (12.0 * h);
        worst = std::max(worst, std::abs(d2 + drift(trace.samples[j].x) * trace.dv[j] +
                                         lambda * trace.samples[j].v));
    }
    return worst;
}

} // namespace

void SLProblem::validate() const {
    if (!(left < right))
        throw std::invalid_argument("SLProblem: interval_left must be < interval_right");
    if (!drift) throw std::invalid_argument("SLProblem: drift function is required");
    for (const Endpoint& e : {left_end, right_end}) {
        if (e.singular() && !(e.multiplicity > 0.0))
            throw InvalidEndpoint("SLProblem: singular endpoint requires multiplicity > 0");
    }
}

SpectrumResult solve_neumann_fd(const SLProblem& problem, int count, int mesh) {
    require_solver_inputs(problem, count);
    if (mesh < 64) throw std::invalid_argument("solve_neumann_fd: mesh must be >= 64");

    FDMatrix m = assemble_fd(problem, mesh);
    const int n = static_cast<int>(m.diag.size());
    std::vector<double> w(n), z(static_cast<std::size_t>(n) * count);
    lapack_int found = 0;
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(count));
    std::vector<double> diag = m.diag, off = m.offdiag;
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(),
                                     off.data(), 0.0, 0.0, 1, count,
                                     LAPACKE_dlamch('S'), &found, w.data(), z.data(),
                                     n, isuppz.data());
    if (info != 0 || found < count)
        throw NonConvergence("solve_neumann_fd: tridiagonal eigensolve failed");

    SpectrumResult result;
    result.method = SolveMethod::finite_difference;
    result.mesh_size = mesh;
    result.eigenvalues.assign(w.begin(), w.begin() + count);

    const double h = problem.length() / mesh;
    result.eigenfunctions.resize(count);
    for (int kidx = 0; kidx < count; ++kidx) {
        std::vector<Sample>& fn = result.eigenfunctions[kidx];
        fn.resize(n);
        double top = 0.0;
        for (int i = 0; i < n; ++i) {
            fn[i].x = problem.left + i * h;
            fn[i].v = z[static_cast<std::size_t>(kidx) * n + i] / std::sqrt(m.measure[i]);
            top = std::max(top, std::abs(fn[i].v));
        }
        double sign = 1.0;
        for (int i = 0; i < n; ++i) {
            if (std::abs(fn[i].v) > 1e-3 * top) {
                sign = fn[i].v > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (auto& s : fn) s.v *= sign / top;
        result.residual = std::max(
            result.residual, ode_residual(fn, problem.drift, result.eigenvalues[kidx]));
    }
    return result;
}

SpectrumResult solve_neumann_shooting(const SLProblem& problem, int count, double tol) {
    return solve_neumann_shooting(problem, count, tol, ShootingOptions{});
}

SpectrumResult solve_neumann_shooting(const SLProblem& problem, int count, double tol,
                                      const ShootingOptions& options) {
    require_solver_inputs(problem, count);
    if (!(tol >= 1e-12 && tol <= 1e-6))
        throw std::invalid_argument("solve_neumann_shooting: tol outside [1e-12, 1e-6]");

    const double len = problem.length();
    ShootingSetup setup;
    setup.t0_left = problem.left_end.singular() ? options.start_offset_factor * len : 0.0;
    setup.t0_right = problem.right_end.singular() ? options.start_offset_factor * len : 0.0;
    setup.xl = problem.left + setup.t0_left;
    setup.xr = problem.right - setup.t0_right;
    setup.atol = setup.rtol = tol / options.tol_divisor;
    setup.min_step = options.min_step_factor * len;

    SpectrumResult result;
    result.method = SolveMethod::shooting;
    result.mesh_size = options.sample_points;
    result.eigenvalues = shooting_eigenvalues(problem, setup, count, tol, options);
    result.eigenfunctions.reserve(count);
    for (double lambda : result.eigenvalues) {
        FnTrace trace =
            shooting_eigenfunction(problem, setup, lambda, options.sample_points);
        result.residual =
            std::max(result.residual, trace_residual(trace, problem.drift, lambda));
        result.eigenfunctions.push_back(std::move(trace.samples));
    }
    return result;
}

double fd_eigenvalue_extrapolated(const SLProblem& problem, int index, int mesh) {
    require_solver_inputs(problem, index + 1);
    if (mesh < 64)
        throw std::invalid_argument("fd_eigenvalue_extrapolated: mesh must be >= 64");
    const double coarse = fd_eigenvalues_only(problem, index + 1, mesh)[index];
    const double fine = fd_eigenvalues_only(problem, index + 1, 2 * mesh)[index];
    return (4.0 * fine - coarse) / 3.0;
}

double ode_residual(const std::vector<Sample>& samples, const DriftFn& drift,
                    double lambda) {
    const int n = static_cast<int>(samples.size());
    if (n < 7) return 0.0;
    const double h = samples[1].x - samples[0].x;
    double worst = 0.0;
    for (int j = 2; j < n - 2; ++j) {
        const double vm2 = samples[j - 2].v, vm1 = samples[j - 1].v, v0 = samples[j].v,
                     vp1 = samples[j + 1].v, vp2 = samples[j + 2].v;
        const double d1 = (-vp2 + 8.0 * vp1 - 8.0 * vm1 + vm2) / (12.0 * h);
        const double d2 =
            (-vp2 + 16.0 * vp1 - 30.0 * v0 + 16.0 * vm1 - vm2) / (12.0 * h * h);
        worst = std::max(worst, std::abs(d2 + drift(samples[j].x) * d1 + lambda * v0));
    }
    return worst;
}

} // namespace specgap
