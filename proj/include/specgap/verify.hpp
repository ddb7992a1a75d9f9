#pragma once

// Cross-module verification suites: each suite exercises one of the toolkit's
// provable properties and reports a pass flag plus its worst margin
// (negative margin = violation). The psi_offset hook injects a deliberate
// fault into the ODE-residual suite for negative-control runs.

#include <cstdint>
#include <string>
#include <vector>

namespace specgap {

struct SuiteResult {
    std::string name;
    bool pass = false;
    double worst_margin = 0.0;
    std::string detail;
};

struct VerifyOptions {
    double tolerance = 1e-9;   // eigensolver tolerance
    int mesh = 1024;           // FD cross-check mesh
    std::uint64_t seed = 0;    // randomized suite seed
    double psi_offset = 0.0;   // fault injection: perturbs psi in the residual suite
    int dominance_samples = 50;
};

/// Runs every suite; failing suites are listed first in the returned order.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

} // namespace specgap
