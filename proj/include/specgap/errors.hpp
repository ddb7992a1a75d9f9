#pragma once

#include <stdexcept>
#include <string>

namespace specgap {

/// Eigensolve or root refinement failed to converge.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A singular endpoint was declared without a usable pole multiplicity.
struct InvalidEndpoint : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// No sign change of the shooting mismatch inside the scan window.
struct BracketFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// IVP step size underflowed, typically next to a singular endpoint.
struct StiffIntegration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input outside the admissible domain of an operator.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Isoparametric multiplicities inconsistent with the ambient dimension.
struct InvalidMultiplicity : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Exact rational evaluation requested past the supported cap.
struct Overflow : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// Adaptive quadrature exhausted its subdivision budget.
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace specgap
