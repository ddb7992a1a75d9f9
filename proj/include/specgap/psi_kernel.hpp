#pragma once

// Barrier machinery for diameter-based first-eigenvalue estimates.
//
// The central object is the odd function on [-pi/2, pi/2]
//
//   psi(theta) = (4/pi) (theta sec^2 theta + tan theta) - 2 tan theta sec theta,
//   psi(+-pi/2) = +-1,
//
// which solves  psi'' - 2 tan(theta) psi' - 2 sec^2(theta) psi = -2 tan(theta) sec(theta)
// and enters the refined gap bound
//
//   lambda_1 >= ((pi + (3/4) a^2 I) / d)^2,   a = (1-k)/(1+k),
//   I = int_0^{pi/2} psi^2 dtheta,
//
// where k in (0,1] is minus the minimum of the normalized eigenfunction and d
// the diameter. The closed form is a 0*inf combination at the interval ends;
// everything here is evaluated through the numerator forms
//
//   psi  = 2 (2 theta - pi sin theta + sin 2theta)            / (pi cos^2 theta),
//   psi' = 2 (4 theta sin theta + pi (cos^2 theta - 2) + 4 cos theta) / (pi cos^3 theta),
//   psi''= 2 (8 theta sin^2 theta + 4 theta - pi sin^3 theta
//             + 12 sin theta cos theta - 5 pi sin theta)      / (pi cos^4 theta),
//
// with exact endpoint series taking over near +-pi/2 so that values, derivatives
// and the ODE residual stay accurate where sec theta blows up.

#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "specgap/checks.hpp"

namespace specgap {

using Rational = boost::multiprecision::cpp_rational;

/// psi(theta) on [-pi/2, pi/2]. Throws DomainError outside.
double psi(double theta);

/// First and second derivatives of psi (same domain handling).
double psi_prime(double theta);
double psi_second(double theta);

/// |psi'' - 2 tan(theta) psi' - 2 sec^2(theta) psi + 2 tan(theta) sec(theta)|
/// from the analytically differentiated closed form.
/// Requires |theta| <= pi/2 - 1e-3.
double psi_ode_residual(double theta);

/// Signed residual with psi replaced by psi + offset. offset = 0 is the
/// plain residual; a nonzero offset is the fault-injection hook used by the
/// verification suites.
double psi_ode_residual_signed(double theta, double psi_offset = 0.0);

/// Coefficient (4k-1)!!/(4k)!! of the expansion
///   1/sqrt(1+x) + 1/sqrt(1-x) = 2 sum_k coeff(k) x^{2k},  coeff(0) = 1.
/// Exact rational arithmetic; k <= 30, larger k throws Overflow.
Rational series_coefficient(int k);

/// I = int_0^{pi/2} psi^2 dtheta by adaptive Simpson quadrature.
/// quad_tol must lie in [1e-12, 1e-6].
double barrier_integral(double quad_tol);

/// Same integral by fixed-order Gauss-Legendre (independent route).
double barrier_integral_gauss(int nodes = 256);

/// Refined gap bound ((pi + (3/4) a^2 I) / d)^2 with a = (1-k)/(1+k).
/// Reduces to pi^2/d^2 at k = 1.
double refined_zhong_yang(double d, double k);

/// Eigenfunction normalization bookkeeping: k is minus the minimum of the
/// normalized eigenfunction, epsilon the range-relaxation parameter.
struct Normalization {
    double k = 1.0;
    double epsilon = 0.0;
    double a_eps = 0.0;        // (1-k)/(1+k) / (1+epsilon)
    double delta_angle = 0.0;  // pi/2 - arcsin(1/(1+epsilon))

    Normalization(double k_value, double epsilon_value);
};

struct GradientReport {
    bool ok = false;
    double max_deviation = 0.0;
};

/// Saturation check of the gradient estimate |grad theta|^2 <= lambda (1 + a_eps psi)
/// for the exemplar u(t) = -cos(sqrt(lambda) t), where equality holds.
/// theta_grid lies in (-pi/2, pi/2); u_perturbation != 0 is the negative control.
GradientReport gradient_estimate_check(double lambda, const Normalization& norm,
                                       std::span<const double> theta_grid,
                                       double u_perturbation = 0.0);

} // namespace specgap
