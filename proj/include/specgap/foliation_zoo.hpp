#pragma once

// Foliation fixtures with known basic spectra, used as ground truth:
//
//   * Hopf circle actions on S^{2n+1}: leaf space CP^n, lambda_1^B = 2(2n+2),
//     diameter pi/2 (codimension 2, no interval reduction).
//   * Isoparametric foliations of the round sphere with g in {1,2,3,4,6}
//     distinct principal curvatures: lambda_1^B = g(g+n-1), diameter pi/g.
//     For g = 1 the transverse problem reduces to the drift (n-1) cot(t) on
//     (0, pi); for g = 2 with focal multiplicities (m1, m2), n = m1+m2+1, to
//     m1 cot(t) - m2 tan(t) on (0, pi/2). Higher g are closed-form only.
//   * Mapping tori (circle leaf space): lambda_1^B = lambda, diameter
//     pi/sqrt(lambda), basic spectrum {k^2 lambda}; the Zhong-Yang equality
//     case.

#include <optional>
#include <span>
#include <string>

#include "specgap/checks.hpp"
#include "specgap/psi_kernel.hpp"
#include "specgap/sl_engine.hpp"

namespace specgap {

struct MultiplicityData {
    int g = 0;
    int m1 = 0;
    int m2 = 0;
};

struct FoliationExample {
    std::string name;
    int ambient_dim = 0;          // n
    double K_ambient = 0.0;       // Ricci constant used in bound tests
    double known_lambda1B = 0.0;
    double known_diameter = 0.0;
    std::optional<SLProblem> reduction;  // codimension-1 transverse problem
    std::optional<MultiplicityData> multiplicity;
};

/// S^1 acting diagonally on S^{2 n_complex + 1}; leaf space CP^{n_complex}.
FoliationExample hopf_example(int n_complex);

/// Isoparametric foliation fixture. g in {1,2,3,4,6}; for g = 2 requires
/// n = m1 + m2 + 1 (InvalidMultiplicity otherwise).
FoliationExample isoparametric_example(int g, int n, int m1, int m2);

/// [1 - 4s(1-s)] g^2 + (g - s)(n - 1) >= 0 over the s-grid (slack 1e-12).
CheckReport verify_isoparametric_inequality(int g, int n, std::span<const double> s_grid);

/// Mapping torus of an isometry with first eigenvalue lambda on the circle
/// leaf space; reduction is the drift-free Neumann problem on the half-circle.
FoliationExample mapping_torus_example(double lambda);

/// Saturation |grad theta|^2 = lambda of the rigidity case, theta = arcsin(u),
/// u = -cos(sqrt(lambda) t), on a grid avoiding u = +-1 by 1e-6.
/// u_perturbation != 0 is the negative control and must break saturation.
GradientReport rigidity_certificate(double lambda, int grid_points,
                                    double u_perturbation = 0.0);

/// The fixture collection exercised by the verification suites.
std::vector<FoliationExample> standard_zoo();

} // namespace specgap
