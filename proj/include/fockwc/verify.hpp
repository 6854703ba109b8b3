#pragma once

// Self-validation of one symbol at truncations N and 2N: eigen residuals,
// norm convergence, adjoint consistency, kernel covariance and orbit route
// equivalence.

#include "fockwc/fock.hpp"

#include <string>
#include <vector>

namespace fockwc {

struct VerifyTolerances {
    double residual = 1e-8;
    /// Relative gap between the measured norm and the closed form (or the
    /// inflation of the norm bracket).
    double norm = 1e-2;
    /// Relative change of the measured norm between N and 2N.
    double norm_doubling = 1e-6;
    /// Relative to max(1, largest matrix entry).
    double adjoint = 1e-10;
    double kernel = 1e-8;
    double route = 1e-8;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    bool skipped = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Runs every applicable check at trunc.n and 2 trunc.n.  Checks that do
/// not apply to the symbol are reported as skipped.  Throws Unbounded for a
/// symbol that is not bounded; NoConvergence from the singular-value
/// solver is reported as a failed check.
std::vector<CheckResult> verify_symbol(const OperatorSymbol& op, const TruncationParams& trunc,
                                       const VerifyTolerances& tol = {});

} // namespace fockwc
