#pragma once

#include <functional>
#include <vector>

namespace specgap {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached Golub-Welsch construction (symmetric tridiagonal eigensolve).
/// Thread-safe.
const GaussLegendreRule& gauss_legendre(int n);

/// Integrate f over [a, b] with a fixed Gauss-Legendre rule.
double integrate_gauss(const std::function<double(double)>& f, double a, double b,
                       const GaussLegendreRule& rule);

/// Adaptive Simpson with absolute tolerance `tol`.
/// Throws QuadratureFailure when the recursion budget is exhausted.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

/// Panel-splitting GL-8 quadrature to mixed abs/rel tolerance.
/// Meant for smooth integrands that are steep near one end of the panel.
double adaptive_gauss8(const std::function<double(double)>& f, double a, double b,
                       double tol, int max_depth = 28);

} // namespace specgap
