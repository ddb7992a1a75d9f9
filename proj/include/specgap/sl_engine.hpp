#pragma once

// One-dimensional Neumann/singular eigensolver for drift operators
//
//   v'' + F(x) v' = -lambda v   on (a, b),
//
// the reduced form taken by radial Laplacians on warped intervals. Endpoints
// are either regular Neumann (v' = 0) or regular-singular poles where
// F(x) ~ m/(x - endpoint) with multiplicity m > 0; at a pole the admissible
// solution is the Frobenius branch v ~ v0 (1 - lambda t^2 / (2(m+1))).
//
// Two independent routes are provided:
//   * solve_neumann_shooting - scaled Pruefer phase integration, eigenvalues
//     located by bracketed bisection/secant on the terminal phase mismatch;
//   * solve_neumann_fd       - finite-volume discretization of the weighted
//     form (w v')' / w with w = exp(int F), symmetrized and handed to a
//     tridiagonal eigensolver. Second-order accurate in the mesh width.
//
// The two are used as oracles for one another throughout the test suite.

#include <functional>
#include <vector>

namespace specgap {

enum class EndpointType { neumann_regular, singular_pole };

struct Endpoint {
    EndpointType type = EndpointType::neumann_regular;
    double multiplicity = 0.0;  // pole strength m, used only for singular_pole

    static Endpoint neumann() { return {EndpointType::neumann_regular, 0.0}; }
    static Endpoint pole(double m) { return {EndpointType::singular_pole, m}; }
    bool singular() const { return type == EndpointType::singular_pole; }
};

using DriftFn = std::function<double(double)>;

struct SLProblem {
    double left = 0.0;
    double right = 0.0;
    DriftFn drift;             // F(x), finite on the open interval
    DriftFn drift_derivative;  // F'(x); may be empty, then sampled numerically
    Endpoint left_end = Endpoint::neumann();
    Endpoint right_end = Endpoint::neumann();

    double length() const { return right - left; }
    void validate() const;  // throws std::invalid_argument / InvalidEndpoint
};

enum class SolveMethod { shooting, finite_difference };

struct Sample {
    double x = 0.0;
    double v = 0.0;
};

struct SpectrumResult {
    std::vector<double> eigenvalues;                    // ascending, first `count`
    std::vector<std::vector<Sample>> eigenfunctions;    // normalized to max|v| = 1
    SolveMethod method = SolveMethod::shooting;
    double residual = 0.0;   // max |v'' + F v' + lambda v| over interior sample points
    int mesh_size = 0;       // FD: cell count; shooting: sample count
};

struct ShootingOptions {
    int scan_subdivisions = 200;       // bracket scan resolution of the window
    double window_cap_override = 0.0;  // > 0 replaces the automatic scan window
    int sample_points = 513;           // eigenfunction sample grid
    double start_offset_factor = 1e-6; // Frobenius offset t0 = factor * length
    double min_step_factor = 1e-14;    // StiffIntegration below this * length
    double tol_divisor = 10.0;         // integrator abs/rel tol = tol / divisor
};

/// `count` smallest Neumann eigenvalues (the zero mode included) by the
/// finite-volume route. Requires mesh >= 64, count in [1, 10].
SpectrumResult solve_neumann_fd(const SLProblem& problem, int count, int mesh);

/// Same spectrum by Pruefer shooting; tol in [1e-12, 1e-6].
SpectrumResult solve_neumann_shooting(const SLProblem& problem, int count, double tol);
SpectrumResult solve_neumann_shooting(const SLProblem& problem, int count, double tol,
                                      const ShootingOptions& options);

/// Richardson-extrapolated FD eigenvalue (index counts from the zero mode):
/// (4 lambda_{2N} - lambda_N) / 3 at meshes (mesh, 2*mesh).
double fd_eigenvalue_extrapolated(const SLProblem& problem, int index, int mesh);

/// Max |v'' + F v' + lambda v| of uniformly sampled eigenfunction values,
/// fourth-order central differences, two points trimmed at each end.
double ode_residual(const std::vector<Sample>& samples, const DriftFn& drift,
                    double lambda);

} // namespace specgap
