#pragma once

// Closed-form lower bounds for the first nonzero basic eigenvalue in terms of
// the ambient dimension n, the Ricci constant K (Ric >= (n-1)K >= 0) and the
// leaf-space diameter d:
//
//   zhong_yang          pi^2 / d^2
//   lichnerowicz        n K                       (valid only for K > 0)
//   shi_zhang(s)        4 s (1-s) pi^2/d^2 + s (n-1) K,  0 < s < 1
//   li_type             the s = 1/2 member: pi^2/d^2 + (n-1)K/2
//   shi_zhang_optimal   max over s, with the regime split at s0 = (4A+B)/(8A)
//   model               lambda(K, n, d, -d/2) from the interval model
//
// plus the aggregator best_bound that evaluates and orders all of them.

#include <limits>
#include <string>
#include <vector>

#include "specgap/model_ode.hpp"

namespace specgap {

struct BoundInput {
    int n = 2;       // ambient dimension
    double K = 0.0;  // Ricci lower bound constant, 1/length^2
    double d = 1.0;  // leaf-space diameter, length

    void validate() const;  // DomainError when d > pi/sqrt(K) (Bonnet-Myers)
};

enum class BoundName {
    zhong_yang,
    lichnerowicz,
    li_type,
    shi_zhang,
    shi_zhang_optimal,
    refined_zy,
    model,
};

const char* bound_name_str(BoundName name);

struct BoundResult {
    BoundName name = BoundName::zhong_yang;
    double value = 0.0;
    bool valid = true;
    double s = std::numeric_limits<double>::quiet_NaN();  // set for shi_zhang family
    std::string note;
};

enum class OptimalRegime { interior, boundary };

struct OptimalS {
    double A = 0.0;   // pi^2 / d^2
    double B = 0.0;   // (n-1) K
    double s0 = 0.0;  // (4A+B)/(8A), the maximizer of b(s) = 4s(1-s)A + sB
    OptimalRegime regime = OptimalRegime::interior;
    double s_star = 0.0;
    double bound = 0.0;
    std::string note;
};

BoundResult zhong_yang(const BoundInput& input);
BoundResult lichnerowicz(const BoundInput& input);
BoundResult shi_zhang(const BoundInput& input, double s);  // DomainError off (0,1)
OptimalS optimal_s(const BoundInput& input);

/// All bounds sorted descending by value. With use_model and 0 < K,
/// d < pi/sqrt(K), includes the interval-model eigenvalue; at the exact
/// Bonnet-Myers diameter the model diameter is clamped just inside the
/// admissible range and the entry carries a warning note.
std::vector<BoundResult> best_bound(const BoundInput& input, bool use_model, double tol);

} // namespace specgap
