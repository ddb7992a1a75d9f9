#pragma once

// Bakry-Qian interval model: the first nonzero Neumann eigenvalue
// lambda(K, n, delta, a) of
//
//   v'' - (n-1) sqrt(K) tan(sqrt(K) x) v' = -lambda v   on (a, a + delta),
//   v'(a) = v'(a + delta) = 0,
//
// for K >= 0, n >= 2. For K > 0 the interval must avoid the tan poles at
// +-pi/(2 sqrt(K)). Internally only K in {0, 1} is solved (x -> sqrt(K) x
// rescaling) and the eigenvalue is multiplied back by K.

#include <span>

#include "specgap/checks.hpp"
#include "specgap/sl_engine.hpp"

namespace specgap {

struct ModelProblem {
    double K = 0.0;    // curvature constant, 1/length^2
    int n = 2;         // ambient dimension
    double a = 0.0;    // left endpoint
    double delta = 0.0;  // interval length

    void validate() const;  // DomainError near tan poles, invalid_argument otherwise
};

struct ModelOptions {
    bool cross_check = true;  // verify shooting against the FD oracle
    int cross_check_mesh = 1024;
};

/// First nonzero Neumann eigenvalue lambda(K, n, delta, a), shooting route,
/// cross-checked against the Richardson-extrapolated FD route.
double model_eigenvalue(const ModelProblem& problem, double tol);
double model_eigenvalue(const ModelProblem& problem, double tol,
                        const ModelOptions& options);

/// The drift problem the model reduces to (after the sqrt(K) rescaling when
/// K > 0; the returned problem is the one actually solved, eigenvalues scale
/// by K).
SLProblem model_reduction(const ModelProblem& problem);

/// lambda(K, n, delta, a) >= lambda(K, n, delta, -delta/2) over a symmetric
/// a-grid spanning the admissible range; slack 1e-7 relative.
CheckReport check_central_minimal(double K, int n, double delta, int grid,
                                  double tol = 1e-9,
                                  const ModelOptions& options = ModelOptions{});

/// d -> lambda(K, n, d, -d/2) is non-increasing along d_grid (ascending);
/// slack 1e-7 relative.
CheckReport check_diameter_monotone(double K, int n, std::span<const double> d_grid,
                                    double tol = 1e-9,
                                    const ModelOptions& options = ModelOptions{});

} // namespace specgap
