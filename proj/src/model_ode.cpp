#include "specgap/model_ode.hpp"

#include "specgap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace specgap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kPoleGuard = 1e-9;        // scaled distance: hard rejection
constexpr double kPoleTightenBand = 1e-4;  // scaled distance: 100x tighter integrator

struct ScaledInterval {
    double ya = 0.0, yb = 0.0;  // sqrt(K)-scaled endpoints (K > 0), raw for K = 0
    double pole_distance = std::numeric_limits<double>::infinity();
};

ScaledInterval scaled_interval(const ModelProblem& p) {
    ScaledInterval s;
    if (p.K > 0.0) {
        const double sq = std::sqrt(p.K);
        s.ya = sq * p.a;
        s.yb = sq * (p.a + p.delta);
        s.pole_distance = std::min(kHalfPi - s.yb, s.ya + kHalfPi);
    } else {
        s.ya = p.a;
        s.yb = p.a + p.delta;
    }
    return s;
}

double solve_scaled(const ModelProblem& p, double tol, const ModelOptions& opt) {
    const ScaledInterval si = scaled_interval(p);
    SLProblem slp = model_reduction(p);

    ShootingOptions shoot;
    if (si.pole_distance < kPoleTightenBand) shoot.tol_divisor = 1000.0;

    const double lambda = solve_neumann_shooting(slp, 2, tol, shoot).eigenvalues[1];

    if (opt.cross_check) {
        const int mesh = std::max(64, opt.cross_check_mesh);
        const double coarse = solve_neumann_fd(slp, 2, mesh).eigenvalues[1];
        const double fine = solve_neumann_fd(slp, 2, 2 * mesh).eigenvalues[1];
        const double extrapolated = (4.0 * fine - coarse) / 3.0;
        // The FD pair also estimates its own remaining error, so the agreement
        // band self-scales where the mesh under-resolves a boundary layer.
        const double fd_error_estimate = std::abs(fine - coarse) / 3.0;
        const double band = std::max({100.0 * tol * lambda, 10.0 * fd_error_estimate,
                                      1e-9 * lambda});
        if (std::abs(lambda - extrapolated) > band)
            throw NonConvergence(
                "model_eigenvalue: shooting/finite-difference cross-check disagreement");
    }
    return lambda;
}

} // namespace

void ModelProblem::validate() const {
    if (n < 2) throw std::invalid_argument("ModelProblem: n must be >= 2");
    if (!(delta > 0.0)) throw std::invalid_argument("ModelProblem: delta must be positive");
    if (K < 0.0) throw std::invalid_argument("ModelProblem: K must be >= 0");
    if (K > 0.0) {
        const ScaledInterval s = scaled_interval(*this);
        if (s.pole_distance < kPoleGuard)
            throw DomainError("ModelProblem: interval touches a tan pole");
    }
}

SLProblem model_reduction(const ModelProblem& problem) {
    problem.validate();
    const ScaledInterval si = scaled_interval(problem);
    SLProblem slp;
    slp.left = si.ya;
    slp.right = si.yb;
    if (problem.K > 0.0) {
        const double c = static_cast<double>(problem.n - 1);
        slp.drift = [c](double y) { return -c * std::tan(y); };
        slp.drift_derivative = [c](double y) {
            const double sec = 1.0 / std::cos(y);
            return -c * sec * sec;
        };
    } else {
        slp.drift = [](double) { return 0.0; };
        slp.drift_derivative = [](double) { return 0.0; };
    }
    return slp;
}

double model_eigenvalue(const ModelProblem& problem, double tol) {
    return model_eigenvalue(problem, tol, ModelOptions{});
}

double model_eigenvalue(const ModelProblem& problem, double tol,
                        const ModelOptions& options) {
    problem.validate();
    const double scaled = solve_scaled(problem, tol, options);
    return problem.K > 0.0 ? problem.K * scaled : scaled;
}

CheckReport check_central_minimal(double K, int n, double delta, int grid, double tol,
                                  const ModelOptions& options) {
    if (!(K > 0.0)) throw std::invalid_argument("check_central_minimal: K must be > 0");
    if (grid < 8) throw std::invalid_argument("check_central_minimal: grid must be >= 8");
    const double sq = std::sqrt(K);
    if (!(delta < kPi / sq))
        throw std::invalid_argument("check_central_minimal: delta must be < pi/sqrt(K)");

    const double center = -0.5 * delta;
    // admissible a: (-pi/(2 sqrt(K)), pi/(2 sqrt(K)) - delta), symmetric about the center
    const double half_range = 0.5 * (kPi / sq - delta);
    const double span = 0.96 * half_range;

    const double reference =
        model_eigenvalue(ModelProblem{K, n, center, delta}, tol, options);

    CheckReport report;
    for (int j = 0; j < grid; ++j) {
        const double u = grid == 1 ? 0.0 : -1.0 + 2.0 * j / (grid - 1);
        const double a = center + u * span;
        const double lambda = model_eigenvalue(ModelProblem{K, n, a, delta}, tol, options);
        CheckItem item;
        item.parameter = a;
        item.value = lambda;
        item.reference = reference;
        item.margin = (lambda - reference) / reference + 1e-7;
        report.add(item);
    }
    return report;
}

CheckReport check_diameter_monotone(double K, int n, std::span<const double> d_grid,
                                    double tol, const ModelOptions& options) {
    if (K < 0.0) throw std::invalid_argument("check_diameter_monotone: K must be >= 0");
    CheckReport report;
    if (d_grid.size() < 2) return report;  // vacuously monotone

    std::vector<double> lambdas;
    lambdas.reserve(d_grid.size());
    double prev_d = 0.0;
    for (std::size_t i = 0; i < d_grid.size(); ++i) {
        const double d = d_grid[i];
        if (i > 0 && !(d > prev_d))
            throw std::invalid_argument("check_diameter_monotone: d_grid must ascend");
        prev_d = d;
        lambdas.push_back(model_eigenvalue(ModelProblem{K, n, -0.5 * d, d}, tol, options));
    }
    for (std::size_t i = 1; i < lambdas.size(); ++i) {
        CheckItem item;
        item.parameter = d_grid[i];
        item.value = lambdas[i];
        item.reference = lambdas[i - 1];
        item.margin = (lambdas[i - 1] - lambdas[i]) / lambdas[i - 1] + 1e-7;
        report.add(item);
    }
    return report;
}

} // namespace specgap
