#include "specgap/psi_kernel.hpp"

#include "specgap/errors.hpp"
#include "specgap/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace specgap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

// Near |theta| = pi/2 the numerators cancel across terms of size O(1) while
// cos^k(theta) underflows, so the quotient forms lose all accuracy. Within
// h = pi/2 - |theta| < kSeriesSwitch the numerators are evaluated by their
// exact Taylor series in h instead. Coefficients are q or q/pi with exact
// rational q; terms beyond h^21 are below 1e-24 relative for h <= 0.3.
constexpr double kSeriesSwitch = 0.2;

// W(h) = psi(pi/2 - h) cos^2(pi/2 - h) - sin(pi/2 - h) cos^2(pi/2 - h), from h^3.
double series_W(double h) {
    static const std::array<double, 19> c = {
        -8.0 / (3.0 * kPi),
        3.0 / 4.0,
        8.0 / (15.0 * kPi),
        -1.0 / 4.0,
        -16.0 / (315.0 * kPi),
        13.0 / 320.0,
        8.0 / (2835.0 * kPi),
        -41.0 / 10080.0,
        -16.0 / (155925.0 * kPi),
        671.0 / 2419200.0,
        16.0 / (6081075.0 * kPi),
        -73.0 / 5322240.0,
        -32.0 / (638512875.0 * kPi),
        597871.0 / 1162377216000.0,
        8.0 / (10854718875.0 * kPi),
        -7913.0 / 523069747200.0,
        -16.0 / (1856156927625.0 * kPi),
        28009.0 / 78173061120000.0,
        16.0 / (194896477400625.0 * kPi),
    };
    double acc = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * h + c[i];
    return acc * h * h * h;
}

// N1(h) = psi'(pi/2 - h) cos^3(pi/2 - h), from h^3.
double series_N1(double h) {
    static const std::array<double, 19> c = {
        8.0 / (3.0 * kPi),
        -1.0 / 2.0,
        -4.0 / (15.0 * kPi),
        1.0 / 12.0,
        1.0 / (105.0 * kPi),
        -1.0 / 160.0,
        -1.0 / (5670.0 * kPi),
        17.0 / 60480.0,
        1.0 / (498960.0 * kPi),
        -31.0 / 3628800.0,
        -1.0 / (64864800.0 * kPi),
        1.0 / 5322240.0,
        1.0 / (11675664000.0 * kPi),
        -5461.0 / 1743565824000.0,
        -1.0 / (2778808032000.0 * kPi),
        257.0 / 6276836966400.0,
        1.0 / (844757641728000.0 * kPi),
        -73.0 / 169374965760000.0,
        -1.0 / (319318388573184000.0 * kPi),
    };
    double acc = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * h + c[i];
    return acc * h * h * h;
}

// N2(h) = psi''(pi/2 - h) cos^4(pi/2 - h), from h^4.
double series_N2(double h) {
    static const std::array<double, 18> c = {
        1.0 / 2.0,
        -32.0 / (15.0 * kPi),
        1.0 / 6.0,
        128.0 / (315.0 * kPi),
        -9.0 / 160.0,
        -32.0 / (945.0 * kPi),
        53.0 / 7560.0,
        256.0 / (155925.0 * kPi),
        -1889.0 / 3628800.0,
        -64.0 / (1216215.0 * kPi),
        71.0 / 2661120.0,
        256.0 / (212837625.0 * kPi),
        -1771769.0 / 1743565824000.0,
        -32.0 / (1550674125.0 * kPi),
        47221.0 / 1569209241600.0,
        512.0 / (1856156927625.0 * kPi),
        -363241.0 / 508124897280000.0,
        -64.0 / (21655164155625.0 * kPi),
    };
    double acc = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * h + c[i];
    return acc * h * h * h * h;
}

void require_domain(double theta) {
    if (!(std::abs(theta) <= kHalfPi))
        throw DomainError("psi: theta outside [-pi/2, pi/2]");
}

Rational double_factorial(int m) {
    Rational r = 1;
    for (int j = m; j >= 2; j -= 2) r *= j;
    return r;
}

double barrier_integral_cached() {
    static const double value = barrier_integral(1e-10);
    return value;
}

} // namespace

double psi(double theta) {
    require_domain(theta);
    const double t = std::abs(theta);
    const double sign = theta < 0.0 ? -1.0 : 1.0;
    const double h = kHalfPi - t;
    if (h < kSeriesSwitch) {
        if (h == 0.0) return sign;
        const double c = std::sin(h);  // cos(t)
        return sign * (std::cos(h) + series_W(h) / (c * c));
    }
    const double c = std::cos(t);
    const double value = 2.0 * (2.0 * t - kPi * std::sin(t) + std::sin(2.0 * t)) / (kPi * c * c);
    return sign * value;
}

double psi_prime(double theta) {
    require_domain(theta);
    const double t = std::abs(theta);  // psi' is even
    const double h = kHalfPi - t;
    if (h < kSeriesSwitch) {
        if (h == 0.0) return 8.0 / (3.0 * kPi);
        const double c = std::sin(h);
        return series_N1(h) / (c * c * c);
    }
    const double s = std::sin(t), c = std::cos(t);
    return 2.0 * (4.0 * t * s + kPi * (c * c - 2.0) + 4.0 * c) / (kPi * c * c * c);
}

double psi_second(double theta) {
    require_domain(theta);
    const double t = std::abs(theta);
    const double sign = theta < 0.0 ? -1.0 : 1.0;
    const double h = kHalfPi - t;
    if (h < kSeriesSwitch) {
        if (h == 0.0) return sign * 0.5;
        const double c = std::sin(h);
        return sign * series_N2(h) / (c * c * c * c);
    }
    const double s = std::sin(t), c = std::cos(t);
    const double num =
        8.0 * t * s * s + 4.0 * t - kPi * s * s * s + 12.0 * s * c - 5.0 * kPi * s;
    return sign * 2.0 * num / (kPi * c * c * c * c);
}

double psi_ode_residual_signed(double theta, double psi_offset) {
    if (!(std::abs(theta) <= kHalfPi - 1e-3))
        throw DomainError("psi_ode_residual: requires |theta| <= pi/2 - 1e-3");
    const double t = std::abs(theta);
    const double sign = theta < 0.0 ? -1.0 : 1.0;
    const double h = kHalfPi - t;
    double residual;
    if (h < kSeriesSwitch) {
        // Grouped numerator combination: individually small series values, so
        // the analytic cancellation is not re-amplified by sec^4.
        const double s = std::cos(h), c = std::sin(h);
        const double c2 = c * c;
        residual = (series_N2(h) - 2.0 * s * series_N1(h) - 2.0 * series_W(h)) / (c2 * c2);
    } else {
        const double tan_t = std::tan(t), sec_t = 1.0 / std::cos(t);
        residual = psi_second(t) - 2.0 * tan_t * psi_prime(t) -
                   2.0 * sec_t * sec_t * psi(t) + 2.0 * tan_t * sec_t;
    }
    // The residual is odd in theta; the offset term -2 sec^2(theta) * offset is even.
    const double sec = 1.0 / std::cos(t);
    return sign * residual - 2.0 * sec * sec * psi_offset;
}

double psi_ode_residual(double theta) {
    return std::abs(psi_ode_residual_signed(theta, 0.0));
}

Rational series_coefficient(int k) {
    if (k < 0) throw std::invalid_argument("series_coefficient: k must be >= 0");
    if (k > 30) throw Overflow("series_coefficient: k > 30 exceeds the exact-arithmetic cap");
    if (k == 0) return Rational(1);
    return double_factorial(4 * k - 1) / double_factorial(4 * k);
}

double barrier_integral(double quad_tol) {
    if (!(quad_tol >= 1e-12 && quad_tol <= 1e-6))
        throw std::invalid_argument("barrier_integral: quad_tol outside [1e-12, 1e-6]");
    auto f = [](double theta) {
        const double p = psi(theta);
        return p * p;
    };
    return adaptive_simpson(f, 0.0, kHalfPi, quad_tol);
}

double barrier_integral_gauss(int nodes) {
    if (nodes < 2) throw std::invalid_argument("barrier_integral_gauss: nodes must be >= 2");
    auto f = [](double theta) {
        const double p = psi(theta);
        return p * p;
    };
    return integrate_gauss(f, 0.0, kHalfPi, gauss_legendre(nodes));
}

double refined_zhong_yang(double d, double k) {
    if (!(d > 0.0)) throw std::invalid_argument("refined_zhong_yang: d must be positive");
    if (!(k > 0.0 && k <= 1.0))
        throw std::invalid_argument("refined_zhong_yang: k must lie in (0, 1]");
    const double a = (1.0 - k) / (1.0 + k);
    const double base = (kPi + 0.75 * a * a * barrier_integral_cached()) / d;
    return base * base;
}

Normalization::Normalization(double k_value, double epsilon_value)
    : k(k_value), epsilon(epsilon_value) {
    if (!(k > 0.0 && k <= 1.0))
        throw std::invalid_argument("Normalization: k must lie in (0, 1]");
    if (!(epsilon >= 0.0))
        throw std::invalid_argument("Normalization: epsilon must be >= 0");
    a_eps = (1.0 - k) / (1.0 + k) / (1.0 + epsilon);
    delta_angle = kHalfPi - std::asin(1.0 / (1.0 + epsilon));
}

GradientReport gradient_estimate_check(double lambda, const Normalization& norm,
                                       std::span<const double> theta_grid,
                                       double u_perturbation) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("gradient_estimate_check: lambda must be positive");
    const double m = std::sqrt(lambda);
    GradientReport report;
    report.max_deviation = 0.0;
    for (double theta : theta_grid) {
        if (!(std::abs(theta) < kHalfPi))
            throw DomainError("gradient_estimate_check: grid point outside (-pi/2, pi/2)");
        // u(t) = -cos(m t) passes through theta at t = (theta + pi/2)/m.
        const double t = (theta + kHalfPi) / m;
        const double s = std::sin(m * t);
        const double du = m * s;
        double grad_sq;
        if (u_perturbation == 0.0) {
            grad_sq = du * du / (s * s);  // 1 - u^2 = sin^2(m t), no cancellation
        } else {
            const double u = -std::cos(m * t) + u_perturbation;
            const double denom = 1.0 - u * u;
            grad_sq = denom > 0.0 ? du * du / denom
                                  : std::numeric_limits<double>::infinity();
        }
        const double bound = lambda * (1.0 + norm.a_eps * psi(theta));
        const double deviation = std::abs(grad_sq - bound) / lambda;
        report.max_deviation = std::max(report.max_deviation, deviation);
    }
    report.ok = report.max_deviation <= 1e-9;
    return report;
}

} // namespace specgap
