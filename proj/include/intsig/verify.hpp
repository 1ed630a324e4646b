#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intsig/expressions.hpp"

namespace intsig {

struct VerifyCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;  // e.g. the worst expression in a per-expression check
};

struct VerifyOptions {
    bool quick = false;            // reduced trial counts, runs in seconds
    std::uint64_t seed = 20260814;
    std::optional<MutationSpec> mutation;  // perturb one coefficient first
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
    std::string table_text() const;
};

// The numerical battery: counting/enumeration agreement, by-parts identities,
// exact equivariance of the potential table, per-expression rotation
// invariance and frame re-derivation, the planar and spatial invariant
// identities, quotient/scale laws, and the geometric oracles.
VerifyReport run_verify(const VerifyOptions& opts = {});

// Rotation-invariance and frame re-derivation residuals per expression under
// `tables`, as used by the mutation sentinel: returns the worst offender. A
// perturbed coefficient must push some residual above `threshold`.
struct SentinelOutcome {
    bool detected = false;
    std::string worst_expression;
    double worst_residual = 0.0;
};
SentinelOutcome run_sentinel(const ExpressionTables& tables, std::uint64_t seed,
                             double threshold = 1e-4);

}  // namespace intsig
