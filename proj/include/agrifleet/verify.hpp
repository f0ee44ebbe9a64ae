#pragma once

#include <string>
#include <vector>

#include "agrifleet/constraints.hpp"
#include "agrifleet/pbencode.hpp"
#include "agrifleet/sat.hpp"

namespace agrifleet {

/// CNF encoding of one design's budget and coverage check (the SAT
/// verifier's scope; structural rules stay with the constraints
/// module). Slot variables realize a unary order-encoded counter per
/// fleet line; unit clauses pin the design's unit counts.
struct DesignEncoding {
    CnfFormula formula;
    /// slot_vars[i][k] is the Boolean "line i deploys more than k
    /// units" (0-based k), so line i's count is the number of true
    /// slots.
    std::vector<std::vector<int>> slot_vars;
};

/// Encodes the design against budget and coverage. `line_bounds`, when
/// given, widens the unary expansion beyond each line's own count
/// (the count must not exceed its bound). Lines whose per-unit area
/// rounds to zero contribute no coverage terms; a zero-cost line
/// contributes no cost terms.
DesignEncoding encode_design(const FleetDesign& design, const ScenarioContext& ctx,
                             const std::vector<int>& line_bounds = {});

struct Verdict {
    bool valid = false;
    std::vector<bool> witness;       // satisfying model when valid
    std::string failed_constraint;   // "budget", "coverage", or both comma-joined
};

/// Independent SAT check of Eq.-level budget and coverage: encodes the
/// design, runs DPLL, and on failure isolates which constraint broke by
/// re-solving each alone.
Verdict verify(const FleetDesign& design, const ScenarioContext& ctx);

}  // namespace agrifleet
