#include "specgap/foliation_zoo.hpp"

#include "specgap/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace specgap {

namespace {

constexpr double kPi = std::numbers::pi;

SLProblem geodesic_sphere_reduction(int n) {
    // mean-curvature drift of concentric geodesic spheres in S^n
    const double m = n - 1;
    SLProblem p;
    p.left = 0.0;
    p.right = kPi;
    p.drift = [m](double t) { return m / std::tan(t); };
    p.drift_derivative = [m](double t) {
        const double s = std::sin(t);
        return -m / (s * s);
    };
    p.left_end = Endpoint::pole(m);
    p.right_end = Endpoint::pole(m);
    return p;
}

SLProblem clifford_reduction(int m1, int m2) {
    SLProblem p;
    p.left = 0.0;
    p.right = kPi / 2.0;
    p.drift = [m1, m2](double t) { return m1 / std::tan(t) - m2 * std::tan(t); };
    p.drift_derivative = [m1, m2](double t) {
        const double s = std::sin(t), c = std::cos(t);
        return -m1 / (s * s) - m2 / (c * c);
    };
    p.left_end = Endpoint::pole(m1);
    p.right_end = Endpoint::pole(m2);
    return p;
}

SLProblem half_circle_reduction(double lambda) {
    SLProblem p;
    p.left = 0.0;
    p.right = kPi / std::sqrt(lambda);
    p.drift = [](double) { return 0.0; };
    p.drift_derivative = [](double) { return 0.0; };
    return p;
}

} // namespace

FoliationExample hopf_example(int n_complex) {
    if (n_complex < 1)
        throw std::invalid_argument("hopf_example: n_complex must be >= 1");
    FoliationExample ex;
    ex.name = "hopf_S" + std::to_string(2 * n_complex + 1) + "_to_CP" +
              std::to_string(n_complex);
    ex.ambient_dim = 2 * n_complex + 1;
    ex.K_ambient = 1.0;
    ex.known_lambda1B = 2.0 * (2.0 * n_complex + 2.0);
    ex.known_diameter = kPi / 2.0;
    return ex;  // codimension 2, no interval reduction
}

FoliationExample isoparametric_example(int g, int n, int m1, int m2) {
    if (g != 1 && g != 2 && g != 3 && g != 4 && g != 6)
        throw std::invalid_argument("isoparametric_example: g must be one of {1,2,3,4,6}");
    if (n < 2) throw std::invalid_argument("isoparametric_example: n must be >= 2");
    if (g == 2 && m1 + m2 + 1 != n)
        throw InvalidMultiplicity(
            "isoparametric_example: g = 2 requires n = m1 + m2 + 1");

    FoliationExample ex;
    ex.name = "isoparametric_g" + std::to_string(g) + "_S" + std::to_string(n);
    ex.ambient_dim = n;
    ex.K_ambient = 1.0;
    ex.known_lambda1B = static_cast<double>(g) * (g + n - 1);
    ex.known_diameter = kPi / g;
    ex.multiplicity = MultiplicityData{g, m1, m2};
    if (g == 1) {
        ex.reduction = geodesic_sphere_reduction(n);
    } else if (g == 2) {
        if (m1 < 1 || m2 < 1)
            throw InvalidMultiplicity("isoparametric_example: multiplicities must be >= 1");
        ex.reduction = clifford_reduction(m1, m2);
    }
    return ex;
}

CheckReport verify_isoparametric_inequality(int g, int n,
                                            std::span<const double> s_grid) {
    if (g < 1) throw std::invalid_argument("verify_isoparametric_inequality: g >= 1");
    if (n < 2) throw std::invalid_argument("verify_isoparametric_inequality: n >= 2");
    CheckReport report;
    for (double s : s_grid) {
        if (!(s > 0.0 && s < 1.0))
            throw DomainError("verify_isoparametric_inequality: s outside (0, 1)");
        const double gg = static_cast<double>(g) * g;
        const double value = (1.0 - 4.0 * s * (1.0 - s)) * gg + (g - s) * (n - 1);
        CheckItem item;
        item.parameter = s;
        item.value = value;
        item.reference = 0.0;
        item.margin = value + 1e-12;
        report.add(item);
    }
    return report;
}

FoliationExample mapping_torus_example(double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("mapping_torus_example: lambda must be positive");
    FoliationExample ex;
    ex.name = "mapping_torus_lambda_" + std::to_string(lambda);
    ex.ambient_dim = 2;       // smallest realization: circle fiber over a circle
    ex.K_ambient = 0.0;       // Ric >= 0, flat direction along the base
    ex.known_lambda1B = lambda;
    ex.known_diameter = kPi / std::sqrt(lambda);
    // Periodic circle spectrum {k^2 lambda}: even/odd splitting reduces the
    // first nonzero mode to the Neumann problem on the half-circle.
    ex.reduction = half_circle_reduction(lambda);
    return ex;
}

GradientReport rigidity_certificate(double lambda, int grid_points,
                                    double u_perturbation) {
    if (grid_points < 2)
        throw std::invalid_argument("rigidity_certificate: grid_points must be >= 2");
    const double lo = -kPi / 2.0 + 1e-6;
    const double hi = kPi / 2.0 - 1e-6;
    std::vector<double> grid(grid_points);
    for (int j = 0; j < grid_points; ++j)
        grid[j] = lo + (hi - lo) * j / (grid_points - 1);
    const Normalization norm(1.0, 0.0);  // k = 1: a_eps = 0, saturated estimate
    return gradient_estimate_check(lambda, norm, grid, u_perturbation);
}

std::vector<FoliationExample> standard_zoo() {
    std::vector<FoliationExample> zoo;
    for (int nc : {1, 2, 3}) zoo.push_back(hopf_example(nc));
    for (int n : {2, 3, 5}) zoo.push_back(isoparametric_example(1, n, n - 1, n - 1));
    zoo.push_back(isoparametric_example(2, 3, 1, 1));
    zoo.push_back(isoparametric_example(2, 4, 1, 2));
    zoo.push_back(isoparametric_example(2, 5, 2, 2));
    zoo.push_back(isoparametric_example(3, 4, 1, 1));    // Cartan's minimal fixture
    zoo.push_back(isoparametric_example(4, 9, 3, 4));
    zoo.push_back(isoparametric_example(6, 7, 1, 1));
    zoo.push_back(isoparametric_example(6, 13, 2, 2));
    zoo.push_back(mapping_torus_example(1.0));
    zoo.push_back(mapping_torus_example(4.0));
    zoo.push_back(mapping_torus_example(kPi * kPi));
    return zoo;
}

} // namespace specgap
