#pragma once

#include <cstdint>
#include <vector>

#include "agrifleet/sat.hpp"

namespace agrifleet {

/// One term of a pseudo-Boolean constraint. Coefficients are positive
/// integers in scaled units (cents, m²).
struct PBTerm {
    std::int64_t coefficient = 0;
    Literal literal = 0;
};

enum class PBRelation { less_equal, greater_equal };

struct PBConstraint {
    std::vector<PBTerm> terms;
    PBRelation relation{PBRelation::less_equal};
    std::int64_t bound = 0;
};

/// State budget for the counter construction; constraints that would
/// exceed it switch to the adder network instead.
inline constexpr std::size_t kDefaultPbNodeLimit = 2'000'000;

/// Compiles a pseudo-Boolean constraint to CNF clauses appended to
/// `formula`, whose variables must already include every term literal.
///
/// The primary construction is a layered reachable-sum counter:
/// processing terms left to right, one Boolean per (layer, clamped
/// partial sum), with one-directional implications from each state
/// through the term literal to its successor, and final-layer states
/// violating the bound negated. Sums clamp at bound+1 (for ≤) or bound
/// (for ≥), which keeps the state space finite and the saturated state
/// sticky.
///
/// Distinct large coefficients can make the reachable-sum set grow
/// multiplicatively, so when the counter would pass the node budget
/// (the smaller of `node_limit` and an internal switch threshold) the
/// encoder rolls back and emits a Warners-style adder network — binary
/// addition of the coefficients' bit columns followed by a
/// lexicographic comparison against the bound — whose size stays
/// O(terms · bits) for any coefficients.
///
/// A trivially false constraint (e.g. ≤ with a negative bound) emits an
/// empty clause. Zero or negative coefficients raise EncodingError.
void encode_pb(CnfFormula& formula, const PBConstraint& constraint,
               std::size_t node_limit = kDefaultPbNodeLimit);

/// Exhaustive evaluator used by the encoder's oracle tests: does the
/// assignment satisfy the constraint?
bool pb_holds(const PBConstraint& constraint, const std::vector<bool>& model);

}  // namespace agrifleet
