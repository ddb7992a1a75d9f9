#include "specgap/bounds.hpp"

#include "specgap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace specgap {

namespace {

constexpr double kPi = std::numbers::pi;

double diameter_term(const BoundInput& in) {
    return kPi * kPi / (in.d * in.d);  // A
}

double ricci_term(const BoundInput& in) {
    return (in.n - 1) * in.K;  // B
}

} // namespace

void BoundInput::validate() const {
    if (n < 2) throw std::invalid_argument("BoundInput: n must be >= 2");
    if (K < 0.0) throw std::invalid_argument("BoundInput: K must be >= 0");
    if (!(d > 0.0)) throw std::invalid_argument("BoundInput: d must be positive");
    if (K > 0.0 && d > kPi / std::sqrt(K) * (1.0 + 1e-12))
        throw DomainError("BoundInput: d exceeds the Bonnet-Myers diameter pi/sqrt(K)");
}

const char* bound_name_str(BoundName name) {
    switch (name) {
        case BoundName::zhong_yang: return "zhong_yang";
        case BoundName::lichnerowicz: return "lichnerowicz";
        case BoundName::li_type: return "li_type";
        case BoundName::shi_zhang: return "shi_zhang";
        case BoundName::shi_zhang_optimal: return "shi_zhang_optimal";
        case BoundName::refined_zy: return "refined_zy";
        case BoundName::model: return "model";
    }
    return "unknown";
}

BoundResult zhong_yang(const BoundInput& input) {
    input.validate();
    BoundResult r;
    r.name = BoundName::zhong_yang;
    r.value = diameter_term(input);
    r.valid = true;
    r.note = "requires Ric >= 0";
    return r;
}

BoundResult lichnerowicz(const BoundInput& input) {
    input.validate();
    BoundResult r;
    r.name = BoundName::lichnerowicz;
    r.value = input.n * input.K;
    r.valid = input.K > 0.0;
    r.note = r.valid ? "requires Ric >= (n-1)K > 0" : "inactive at K = 0";
    return r;
}

BoundResult shi_zhang(const BoundInput& input, double s) {
    input.validate();
    if (!(s > 0.0 && s < 1.0))
        throw DomainError("shi_zhang: s must lie in (0, 1)");
    BoundResult r;
    r.name = BoundName::shi_zhang;
    r.s = s;
    r.value = 4.0 * s * (1.0 - s) * diameter_term(input) + s * ricci_term(input);
    r.valid = true;
    return r;
}

OptimalS optimal_s(const BoundInput& input) {
    input.validate();
    OptimalS o;
    o.A = diameter_term(input);
    o.B = ricci_term(input);
    o.s0 = (4.0 * o.A + o.B) / (8.0 * o.A);
    if (o.s0 < 1.0) {
        o.regime = OptimalRegime::interior;
        o.s_star = o.s0;
        const double top = 4.0 * o.A + o.B;
        o.bound = top * top / (16.0 * o.A);
        o.note = "interior maximum of b(s)";
    } else {
        o.regime = OptimalRegime::boundary;
        o.s_star = 1.0 - 1e-9;
        o.bound = o.B;  // supremum approached as s -> 1, not attained
        o.note = "supremum at s -> 1 (d >= 2 pi / sqrt((n-1)K))";
    }
    if (input.n == 2) o.note += "; n = 2 via the same algebra as n >= 3";
    return o;
}

std::vector<BoundResult> best_bound(const BoundInput& input, bool use_model, double tol) {
    input.validate();
    std::vector<BoundResult> results;
    results.push_back(zhong_yang(input));
    results.push_back(lichnerowicz(input));

    BoundResult li = shi_zhang(input, 0.5);
    li.name = BoundName::li_type;
    li.note = "shi_zhang at s = 1/2";
    results.push_back(li);

    const OptimalS opt = optimal_s(input);
    BoundResult best_sz;
    best_sz.name = BoundName::shi_zhang_optimal;
    best_sz.value = opt.bound;
    best_sz.s = opt.s_star;
    best_sz.valid = true;
    best_sz.note = opt.note;
    results.push_back(best_sz);

    if (use_model && input.K > 0.0) {
        const double sq = std::sqrt(input.K);
        const double bonnet_myers = kPi / sq;
        double d_model = input.d;
        std::string note = "lambda(K, n, d, -d/2)";
        // Keep the model interval clear of the tan poles; at the exact
        // Bonnet-Myers diameter clamp just inside the admissible range.
        const double clearance = 2e-6 / sq;
        if (d_model > bonnet_myers - clearance) {
            d_model = bonnet_myers - clearance;
            note += "; d clamped off the Bonnet-Myers diameter (Lichnerowicz case)";
        }
        BoundResult model;
        model.name = BoundName::model;
        model.value = model_eigenvalue(ModelProblem{input.K, input.n, -0.5 * d_model,
                                                    d_model}, tol);
        model.valid = true;
        model.note = note;
        results.push_back(model);

        // Comparison-theorem hierarchy; a breach means the solver misbehaved.
        const double slack = 1e-7 * model.value;
        if (model.value + slack < opt.bound || model.value + slack < results[0].value)
            throw NonConvergence("best_bound: model eigenvalue fell below a closed-form bound");
    }

    std::stable_sort(results.begin(), results.end(),
                     [](const BoundResult& a, const BoundResult& b) {
                         return a.value > b.value;
                     });
    return results;
}

} // namespace specgap
